# app/algebra/cmindex.py
"""
일반 CM 체의 층 인덱스 집합 C 와 곱 순서

leg 마다 (a, b) 가 주어지고, C 의 원소는 leg 별 (h, ℓ) 라벨의 튜플
(0 ≤ h ≤ ℓ ≤ min(a, b)). c' ≤ c ⇔ 모든 leg 에서 h' ≤ h ≤ ℓ ≤ ℓ'.
"""

import logging
from itertools import product
from math import prod
from typing import Dict, List, NamedTuple, Sequence, Tuple

from app.algebra.errors import BudgetExceeded, ShapeError
from app.algebra.localmodel import StratumLabel, dim_formula, labels

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 100_000

IndexC = Tuple[StratumLabel, ...]


class CMShape(NamedTuple):
    legs: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, legs: Sequence[Sequence[int]]) -> "CMShape":
        shape = cls(tuple((int(a), int(b)) for a, b in legs))
        validate_shape(shape)
        return shape

    def to_list(self) -> List[List[int]]:
        return [list(leg) for leg in self.legs]


def validate_shape(shape: CMShape) -> None:
    if not shape.legs:
        raise ShapeError("a CM shape needs at least one leg")
    for a, b in shape.legs:
        if a < 0 or b < 0:
            raise ShapeError(f"leg ({a},{b}) has a negative entry")


def triangular(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def size_C(shape: CMShape) -> int:
    validate_shape(shape)
    return prod(triangular(min(a, b)) for a, b in shape.legs)


def gen_C(shape: CMShape, limit: int = DEFAULT_LIMIT) -> List[IndexC]:
    size = size_C(shape)
    if size > limit:
        raise BudgetExceeded("index set C", size, limit)
    per_leg = [labels(min(a, b)) for a, b in shape.legs]
    return [tuple(c) for c in product(*per_leg)]


def _check_index(shape: CMShape, c: IndexC) -> None:
    if len(c) != len(shape.legs):
        raise ShapeError(f"index of length {len(c)} for a shape with {len(shape.legs)} legs")
    for (a, b), lab in zip(shape.legs, c):
        if not 0 <= lab[0] <= lab[1] <= min(a, b):
            raise ShapeError(f"label {tuple(lab)} out of range for leg ({a},{b})")


def leq_C(shape: CMShape, lower: IndexC, upper: IndexC) -> bool:
    """lower ≤ upper (X_lower ⊆ closure(X_upper))"""
    _check_index(shape, lower)
    _check_index(shape, upper)
    return all(lo[0] <= up[0] <= up[1] <= lo[1] for lo, up in zip(lower, upper))


def closure_set(shape: CMShape, c: IndexC, limit: int = DEFAULT_LIMIT) -> List[IndexC]:
    return [x for x in gen_C(shape, limit) if leq_C(shape, x, c)]


def hasse_diagram(shape: CMShape, limit: int = DEFAULT_LIMIT) -> List[Tuple[IndexC, IndexC]]:
    """덮개 관계: 한 leg 에서 h 를 1 내리거나 ℓ 을 1 올리는 쌍"""
    elements = set(gen_C(shape, limit))
    edges = []
    for c in sorted(elements):
        for i, (h, l) in enumerate(c):
            for lab in (StratumLabel(h - 1, l), StratumLabel(h, l + 1)):
                lower = c[:i] + (lab,) + c[i + 1:]
                if lower in elements:
                    edges.append((lower, c))
    return sorted(edges)


def conjectural_dimension(shape: CMShape, c: IndexC) -> int:
    """leg 별 dim_formula 의 합 (일반 공식이 알려져 있지 않으므로 보고용)"""
    _check_index(shape, c)
    return sum(
        dim_formula(min(a, b), max(a, b), lab[0], lab[1])
        for (a, b), lab in zip(shape.legs, c)
    )


def partial_order_violations(shape: CMShape, limit: int = 200) -> List[str]:
    elements = gen_C(shape, limit)
    problems = []
    for x in elements:
        if not leq_C(shape, x, x):
            problems.append(f"{x} ≰ itself")
    for x, y in product(elements, repeat=2):
        if x != y and leq_C(shape, x, y) and leq_C(shape, y, x):
            problems.append(f"{x} and {y} are mutually ≤")
    for x, y, z in product(elements, repeat=3):
        if leq_C(shape, x, y) and leq_C(shape, y, z) and not leq_C(shape, x, z):
            problems.append(f"{x} ≤ {y} ≤ {z} but {x} ≰ {z}")
    return problems


def export_C(shape: CMShape, limit: int = DEFAULT_LIMIT) -> Dict[str, object]:
    elements = gen_C(shape, limit)
    return {
        "shape": shape.to_list(),
        "size": len(elements),
        "elements": [[lab.to_list() for lab in c] for c in elements],
        "hasse": [
            [[lab.to_list() for lab in lo], [lab.to_list() for lab in up]]
            for lo, up in hasse_diagram(shape, limit)
        ],
        "conjectural_dimension": {
            ";".join(str(lab) for lab in c): conjectural_dimension(shape, c) for c in elements
        },
    }
