# app/algebra/weights.py
"""
보형형식 무게 (k, ℓ, r) 의 조합론: 지배성, ^PW 원소 열거, 소멸 판정, 전수 오라클

오라클 규약:
    λ = (-k_1, ..., -k_a, -ℓ_b, ..., -ℓ_1)
    k 블록 i 번째 자리 ← λ_{a+1-w₁(i)},  ℓ 블록 j 번째 자리 ← λ_{a+b+1-w₂(j)} = -ℓ_{w₂(j)}
    h = 0 의 유일한 원소 (두 블록 모두 역순) 가 항등으로 작용한다.
"""

import logging
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Iterator, List, NamedTuple, Sequence, Tuple

from app.algebra.errors import WeightError

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 5


class Weight(NamedTuple):
    k: Tuple[int, ...]
    l: Tuple[int, ...]
    r: int = 0

    @property
    def a(self) -> int:
        return len(self.k)

    @property
    def b(self) -> int:
        return len(self.l)


class PWElement(NamedTuple):
    w1: Tuple[int, ...]
    w2: Tuple[int, ...]
    h: int


def dominant(v: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(v, v[1:]))


def make_weight(k: Sequence[int], l: Sequence[int], r: int = 0) -> Weight:
    w = Weight(tuple(k), tuple(l), r)
    if not dominant(w.k) or not dominant(w.l):
        raise WeightError(f"weight {w.k}, {w.l} is not weakly decreasing in each block")
    return w


def criterion_indexes(w: Weight, h: int) -> bool:
    """
    a-h 개의 같은 k 값 κ 와, κ 이상인 ℓ 값 b-h 개를 고를 수 있으면 True.
    False 이면 해당 층에서 단면이 없다고 예측한다.
    """
    a, b = w.a, w.b
    if not 0 <= h < a:
        raise WeightError(f"criterion needs 0 <= h < a (h={h}, a={a})")
    for kappa in set(w.k):
        if w.k.count(kappa) >= a - h and sum(1 for x in w.l if x >= kappa) >= b - h:
            return True
    return False


def intro_criterion(w: Weight, h: int) -> bool:
    """
    한 개의 경계 ℓ_{b-h+1} 만 쓰는 형태: κ 가 a-h 번 반복되고 κ <= ℓ_{b-h+1}.
    h = 0 에서는 경계 인덱스가 없으므로 정의되지 않는다.
    """
    a, b = w.a, w.b
    if not 0 < h < a or h > b:
        raise WeightError(f"single-bound criterion needs 0 < h < a and h <= b (h={h})")
    bound = w.l[b - h]
    return any(w.k.count(kappa) >= a - h and kappa <= bound for kappa in set(w.k))


def _satisfies(w1: Sequence[int], w2: Sequence[int], h: int) -> bool:
    a, b = len(w1), len(w2)
    return (
        dominant(w1[:h])
        and dominant(w1[h:])
        and dominant(w2[: b - h])
        and dominant(w2[b - h:])
    )


def enumerate_PW(a: int, b: int, h: int) -> List[PWElement]:
    """
    w₁(1) ≥ … ≥ w₁(h), w₁(h+1) ≥ … ≥ w₁(a),
    w₂(1) ≥ … ≥ w₂(b-h), w₂(b-h+1) ≥ … ≥ w₂(b) 인 쌍 전부 (C(a,h)·C(b,h) 개).
    """
    if not 0 <= h <= min(a, b):
        raise WeightError(f"need 0 <= h <= min(a, b), got h={h}")
    out = []
    for head in combinations(range(1, a + 1), h):
        tail = sorted(set(range(1, a + 1)) - set(head), reverse=True)
        w1 = tuple(sorted(head, reverse=True)) + tuple(tail)
        for front in combinations(range(1, b + 1), b - h):
            back = sorted(set(range(1, b + 1)) - set(front), reverse=True)
            w2 = tuple(sorted(front, reverse=True)) + tuple(back)
            out.append(PWElement(w1, w2, h))
    return out


def enumerate_PW_exhaustive(a: int, b: int, h: int) -> List[PWElement]:
    """S_a × S_b 전체를 거르는 기준 구현"""
    return [
        PWElement(tuple(w1), tuple(w2), h)
        for w1 in permutations(range(1, a + 1))
        for w2 in permutations(range(1, b + 1))
        if _satisfies(w1, w2, h)
    ]


def pw_count(a: int, b: int, h: int) -> int:
    return comb(a, h) * comb(b, h)


def transform(pw: PWElement, w: Weight) -> Tuple[int, ...]:
    a, b = w.a, w.b
    lam = tuple(-x for x in w.k) + tuple(-x for x in reversed(w.l))
    kpart = tuple(lam[a - pw.w1[i]] for i in range(a))
    lpart = tuple(lam[a + b - pw.w2[j]] for j in range(b))
    return kpart + lpart


def orbit_dominance_oracle(w: Weight, h: int) -> bool:
    if w.a > ORACLE_LIMIT or w.b > ORACLE_LIMIT:
        raise WeightError(f"oracle is limited to a, b <= {ORACLE_LIMIT}")
    return any(dominant(transform(pw, w)) for pw in enumerate_PW(w.a, w.b, h))


def weights_in_range(a: int, b: int, bound: int) -> Iterator[Weight]:
    """성분이 [-bound, bound] 인 지배적 무게 전부"""
    values = range(bound, -bound - 1, -1)
    for k in combinations_with_replacement(values, a):
        for l in combinations_with_replacement(values, b):
            yield Weight(tuple(k), tuple(l))


class SweepRow(NamedTuple):
    a: int
    b: int
    h: int
    k: Tuple[int, ...]
    l: Tuple[int, ...]
    criterion: bool
    oracle: bool


def sweep(a: int, b: int, h: int, bound: int = 2) -> List[SweepRow]:
    rows = [
        SweepRow(a, b, h, w.k, w.l, criterion_indexes(w, h), orbit_dominance_oracle(w, h))
        for w in weights_in_range(a, b, bound)
    ]
    logger.debug("weight sweep (a=%d, b=%d, h=%d): %d rows", a, b, h, len(rows))
    return rows


def whole_flag_violations(rows: Sequence[SweepRow]) -> List[SweepRow]:
    """h = 0 에서 k_1 > k_a 또는 k_a > ℓ_b 인데 오라클이 참인 행"""
    return [
        r for r in rows
        if r.h == 0 and r.oracle and (r.k[0] > r.k[-1] or (r.l and r.k[-1] > r.l[-1]))
    ]
