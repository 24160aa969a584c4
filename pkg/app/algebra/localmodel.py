# app/algebra/localmodel.py
"""
특수 섬유의 점 (ω₁ ⊆ ω), 불변량 (h, ℓ), 층 순서, 전수 열거와 점 개수 세기

- h = dim Πω,  ℓ = dim ω₁ ∩ ω₂  (ω₂ = ker Π 안에서 {,} 에 대한 ω₁ 의 직교)
- 열거 순서: ω₁ ⊆ ker Π (사다리꼴 열거) → S = ω₁ + ω₂ 고정 →
  ω/S 는 (Π⁻¹ω₁ ∩ S^⊥)/S 의 ℓ 차원 등방 부분공간
"""

import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from app.algebra.errors import BudgetExceeded, InterpolationError, PointError, SpaceError
from app.algebra.field import Fq, Matrix, mat_add, mat_mul, rank, transpose
from app.algebra.pimodule import (
    MODIFIED,
    ODD,
    PiSpace,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    orthogonal,
    standard_space,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000


class StratumLabel(NamedTuple):
    h: int
    l: int

    def to_list(self) -> List[int]:
        return [self.h, self.l]

    def __str__(self) -> str:
        return f"({self.h},{self.l})"


@dataclass(frozen=True)
class LMPoint:
    space: PiSpace = dc_field(compare=False, repr=False)
    omega: Subspace
    omega1: Subspace

    def to_dict(self) -> dict:
        return {"omega": self.omega.to_list(), "omega1": self.omega1.to_list()}


# ---------- 점과 불변량 ----------
def validate_point(point: LMPoint) -> None:
    space, w, w1 = point.space, point.omega, point.omega1
    if w.ambient != space.dim or w1.ambient != space.dim:
        raise PointError("subspaces live in the wrong ambient space")
    if w.dim != space.m:
        raise PointError(f"dim ω = {w.dim}, expected {space.m}")
    if w1.dim != space.a:
        raise PointError(f"dim ω₁ = {w1.dim}, expected {space.a}")
    if not space.is_isotropic(w):
        raise PointError("ω is not totally isotropic")
    if not w1 <= space.kernel():
        raise PointError("Π·ω₁ ≠ 0")
    if not space.image_under_pi(w) <= w1:
        raise PointError("Π·ω ⊄ ω₁")
    if not w1 <= w:
        raise PointError("ω₁ ⊄ ω")


def is_valid(point: LMPoint) -> bool:
    try:
        validate_point(point)
    except PointError:
        return False
    return True


def omega2(point: LMPoint) -> Subspace:
    validate_point(point)
    return orthogonal(point.space, point.omega1, MODIFIED)


def invariants(point: LMPoint) -> StratumLabel:
    validate_point(point)
    space = point.space
    h = space.image_under_pi(point.omega).dim
    l = space.a - rank(space.field, space.modified_gram_on(point.omega1))
    return StratumLabel(h, l)


def dim_formula(a: int, b: int, h: int, l: int) -> int:
    if not 0 <= h <= l <= a:
        raise PointError(f"label ({h},{l}) out of range for a={a}")
    return a * b - (l - h) * (l - h + 1) // 2


def labels(a: int) -> List[StratumLabel]:
    return [StratumLabel(h, l) for h in range(a + 1) for l in range(h, a + 1)]


def stratum_leq(lower: Tuple[int, int], upper: Tuple[int, int]) -> bool:
    """X_lower ⊆ closure(X_upper) 순서: h' ≤ h 이고 ℓ' ≥ ℓ"""
    return lower[0] <= upper[0] and lower[1] >= upper[1]


def hasse_edges(a: int) -> List[Tuple[StratumLabel, StratumLabel]]:
    """덮개 관계 (lower, upper) 목록"""
    labs = labels(a)
    edges = []
    for lo in labs:
        for up in labs:
            if lo == up or not stratum_leq(lo, up):
                continue
            if any(
                mid not in (lo, up) and stratum_leq(lo, mid) and stratum_leq(mid, up)
                for mid in labs
            ):
                continue
            edges.append((lo, up))
    return sorted(edges)


# ---------- 표준 점 ----------
def base_point(space: PiSpace, h: int, l: int) -> LMPoint:
    """표준 홀수 틀에서 X_{h,ℓ} 의 대표점"""
    a, b, m, F = space.a, space.b, space.m, space.field
    if space.case != ODD:
        raise SpaceError("base points are defined for the odd standard frame")
    if not 0 <= h <= l <= a:
        raise PointError(f"label ({h},{l}) out of range for a={a}")
    half = F.inv(F.embed(2))
    w1 = [space.basis_f(i) for i in range(l)]
    for i in range(l, a):
        v = space.basis_f(i)
        v[m + b + i] = half
        w1.append(v)
    w = [space.basis_f(i) for i in range(m) if not b <= i < b + h]
    w += [space.basis_e(i) for i in range(h)]
    point = LMPoint(space, space.span(w), space.span(w1))
    validate_point(point)
    return point


def point_from_XYZ(space: PiSpace, X: Matrix, Y: Matrix, Z: Matrix) -> LMPoint:
    """
    X_{0,a} 주변 차트의 점:
        u_j = f_j + Σ X_ij f_{a+i} + Σ Y_ij f_{b+i}
        n_i = f_{a+i} - Σ X_ik f_{b+k}
        v_j = f_{b+j} + Σ Z_ij ẽ_i    (ẽ_i 는 u_i 의 e-좌표판)
    """
    a, b, m, F = space.a, space.b, space.m, space.field
    _check_chart_shapes(a, b, X, Y, Z)
    if any(Z[i][j] != Z[j][i] for i in range(a) for j in range(a)):
        raise PointError("Z is not symmetric")
    M = chart_matrix(F, X, Y)
    if any(x for row in mat_mul(F, M, Z) for x in row):
        raise PointError("(Y + ᵗY + ᵗXX)·Z ≠ 0")
    u = []
    for j in range(a):
        v = [0] * (2 * m)
        v[m + j] = 1
        for i in range(b - a):
            v[m + a + i] = X[i][j]
        for i in range(a):
            v[m + b + i] = Y[i][j]
        u.append(v)
    n = []
    for i in range(b - a):
        v = [0] * (2 * m)
        v[m + a + i] = 1
        for k in range(a):
            v[m + b + k] = F.neg(X[i][k])
        n.append(v)
    vs = []
    for j in range(a):
        v = [0] * (2 * m)
        v[m + b + j] = 1
        for i in range(a):
            if Z[i][j]:
                for k in range(m):
                    v[k] = F.add(v[k], F.mul(Z[i][j], u[i][m + k]))
        vs.append(v)
    point = LMPoint(space, space.span(u + n + vs), space.span(u))
    validate_point(point)
    return point


def chart_matrix(F: Fq, X: Matrix, Y: Matrix) -> Matrix:
    """Y + ᵗY + ᵗX X"""
    a = len(Y)
    M = mat_add(F, Y, transpose(Y)) if a else []
    if X and X[0]:
        M = mat_add(F, M, mat_mul(F, transpose(X), X))
    return M


def _check_chart_shapes(a: int, b: int, X: Matrix, Y: Matrix, Z: Matrix) -> None:
    if len(X) != b - a or any(len(r) != a for r in X):
        raise PointError(f"X must be {(b - a)}x{a}")
    for name, A in (("Y", Y), ("Z", Z)):
        if len(A) != a or any(len(r) != a for r in A):
            raise PointError(f"{name} must be {a}x{a}")


# ---------- 열거 ----------
def estimate_count(space: PiSpace) -> int:
    q, a, b = space.field.q, space.a, space.b
    return sum((q + 1) ** dim_formula(a, b, c.h, c.l) for c in labels(a))


def enumerate_points(space: PiSpace, budget: int = DEFAULT_BUDGET) -> Iterator[LMPoint]:
    """모든 점을 정확히 한 번씩, 결정적 순서로"""
    F, a, m = space.field, space.a, space.m
    estimate = estimate_count(space)
    logger.debug("enumeration estimate for %r: %d (budget %d)", space, estimate, budget)
    if estimate > budget:
        raise BudgetExceeded("point enumeration", estimate, budget)

    work = 0
    for coords in enumerate_subspaces(F, m, a):
        work += 1
        w1 = space.span_f(coords)
        w2 = orthogonal(space, w1, MODIFIED)
        S = w1.sum(w2)
        l = a - rank(F, space.modified_gram_on(w1))
        if S.dim != m - l:
            raise SpaceError(f"dim(ω₁ + ω₂) = {S.dim}, expected {m - l}")
        U = space.preimage_under_pi(w1).intersect(S.orthogonal(space.G))
        comp = S.complement_in(U)
        for coef in enumerate_subspaces(F, len(comp), l):
            work += 1
            if work > budget:
                raise BudgetExceeded("point enumeration", max(estimate, work), budget)
            extra = [
                [F.total(F.mul(c, v[k]) for c, v in zip(row, comp)) for k in range(space.dim)]
                for row in coef
            ]
            if any(space.pairing(x, y) for i, x in enumerate(extra) for y in extra[i + 1:]):
                continue
            point = LMPoint(space, S.sum(space.span(extra)), w1)
            validate_point(point)
            yield point


def count_points(space: PiSpace, budget: int = DEFAULT_BUDGET) -> Dict[StratumLabel, int]:
    counts: Counter = Counter()
    for point in enumerate_points(space, budget):
        counts[invariants(point)] += 1
    return {c: counts.get(c, 0) for c in labels(space.a)}


def count_by_stratum(a: int, b: int, field: Fq, case: str = ODD, budget: int = DEFAULT_BUDGET) -> Dict[StratumLabel, int]:
    return count_points(standard_space(a, b, field, case), budget)


# ---------- 보간 ----------
def _fit(samples: Sequence[Tuple[int, int]]) -> List[Fraction]:
    """정확한 유리수 보간 계수 (낮은 차수부터)"""
    n = len(samples)
    rows = [[Fraction(x) ** k for k in range(n)] + [Fraction(y)] for x, y in samples]
    for c in range(n):
        piv = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        pv = rows[c][c]
        rows[c] = [x / pv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    coeffs = [rows[i][n] for i in range(n)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def interpolate(counts: Dict[int, int]) -> List[Fraction]:
    """
    q → 개수 표본의 보간 다항식.
    마지막 표본을 뺀 보간이 같은 다항식을 줄 때만 일관적이라고 본다.
    """
    samples = sorted(counts.items())
    if len(samples) < 2:
        raise InterpolationError("need at least two sample values of q")
    full = _fit(samples)
    reduced = _fit(samples[:-1])
    if full != reduced:
        raise InterpolationError(
            f"counts {dict(samples)} are not confirmed by a polynomial of degree < {len(samples) - 1}"
        )
    return full


def interpolate_degree(counts: Dict[int, int]) -> int:
    return len(interpolate(counts)) - 1


# ---------- 차트 개수 ----------
def _matrices(F: Fq, rows: int, cols: int) -> Iterable[Matrix]:
    for values in product(range(F.q), repeat=rows * cols):
        yield [list(values[r * cols:(r + 1) * cols]) for r in range(rows)]


def chart_count(a: int, b: int, field: Fq, budget: int = DEFAULT_BUDGET) -> int:
    """
    #{(X, Y, Z) : Z = ᵗZ, (Y + ᵗY + ᵗXX) Z = 0}.
    고정된 (X, Y) 에서 해 Z 는 ker M 위 대칭행렬이므로 q^{k(k+1)/2}, k = nullity M.
    """
    if field.p == 2:
        raise SpaceError("chart counts are defined for odd characteristic")
    q = field.q
    estimate = q ** ((b - a) * a + a * a)
    if estimate > budget:
        raise BudgetExceeded("chart count", estimate, budget)
    total = 0
    for X in _matrices(field, b - a, a):
        for Y in _matrices(field, a, a):
            k = a - rank(field, chart_matrix(field, X, Y)) if a else 0
            total += q ** (k * (k + 1) // 2)
    return total


def chart_count_exhaustive(a: int, b: int, field: Fq, budget: int = DEFAULT_BUDGET) -> int:
    q = field.q
    sym = [(i, j) for i in range(a) for j in range(i, a)]
    estimate = q ** ((b - a) * a + a * a + len(sym))
    if estimate > budget:
        raise BudgetExceeded("exhaustive chart count", estimate, budget)
    total = 0
    for X in _matrices(field, b - a, a):
        for Y in _matrices(field, a, a):
            M = chart_matrix(field, X, Y)
            for values in product(range(q), repeat=len(sym)):
                Z = [[0] * a for _ in range(a)]
                for (i, j), z in zip(sym, values):
                    Z[i][j] = Z[j][i] = z
                if not any(x for row in mat_mul(field, M, Z) for x in row):
                    total += 1
    return total
