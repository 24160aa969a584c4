# app/algebra/deform.py
"""
R_N = F_q[t]/(t^N) 위의 족 (family), 일반/특수 층, 접공간 차원, 제곱영 올림

족은 기저 행렬 B (2m × m, ω) 와 B1 (2m × a, ω₁) 로 주어지며 t = 0 에서 계수가 꽉 찬다.
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from app.algebra.errors import (
    ConstraintViolation,
    FamilyError,
    PreconditionError,
    SpaceError,
    TruncationError,
)
from app.algebra.field import (
    INF,
    Fq,
    Matrix,
    SeriesMatrix,
    TruncRing,
    TruncSeries,
    get_field,
    independent_rows,
    rank,
    rref,
    smith_valuations,
    summand_residual,
    transpose,
)
from app.algebra.localmodel import (
    LMPoint,
    StratumLabel,
    invariants,
    stratum_leq,
    validate_point,
)
from app.algebra.pimodule import CASE1, ODD, PiSpace, lift_isometry, random_isometry, standard_gram

logger = logging.getLogger(__name__)

DEFAULT_N = 6
HEADROOM = 2


class StrataPair(NamedTuple):
    special: StratumLabel
    generic: StratumLabel


@dataclass(frozen=True)
class FamilyPoint:
    space: PiSpace = dc_field(compare=False, repr=False)
    ring: TruncRing = dc_field(compare=False, repr=False)
    omega: Tuple[Tuple[TruncSeries, ...], ...]
    omega1: Tuple[Tuple[TruncSeries, ...], ...]
    predicted: Optional[StratumLabel] = None

    @property
    def B(self) -> SeriesMatrix:
        return [list(r) for r in self.omega]

    @property
    def B1(self) -> SeriesMatrix:
        return [list(r) for r in self.omega1]

    def special_point(self) -> LMPoint:
        space, ring = self.space, self.ring
        w = transpose(ring.reduce(self.B))
        w1 = transpose(ring.reduce(self.B1))
        point = LMPoint(space, space.span(w), space.span(w1))
        validate_point(point)
        return point


class WitnessResult(NamedTuple):
    found: bool
    family: Optional[FamilyPoint]
    attempts: int
    source: str


class LiftResult(NamedTuple):
    solvable: bool
    dimension: Optional[int]
    order: int


def _freeze(A: SeriesMatrix) -> Tuple[Tuple[TruncSeries, ...], ...]:
    return tuple(tuple(r) for r in A)


def _columns_to_matrix(ring: TruncRing, cols: Sequence[Sequence[TruncSeries]], rows: int) -> SeriesMatrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [[col[r] for col in cols] for r in range(rows)]


def make_family(space: PiSpace, ring: TruncRing, omega_cols, omega1_cols, predicted: Optional[StratumLabel] = None) -> FamilyPoint:
    """열 벡터 목록 (각 원소는 int / 계수열 / TruncSeries) 으로 족을 만들고 검증"""
    n = space.dim
    w = [[ring.series(x) for x in col] for col in omega_cols]
    w1 = [[ring.series(x) for x in col] for col in omega1_cols]
    fam = FamilyPoint(
        space,
        ring,
        _freeze(_columns_to_matrix(ring, w, n)),
        _freeze(_columns_to_matrix(ring, w1, n)),
        predicted,
    )
    validate_family(fam)
    return fam


# ---------- 검증 ----------
def validate_family(fam: FamilyPoint) -> None:
    space, ring = fam.space, fam.ring
    F, m, a = space.field, space.m, space.a
    B, B1 = fam.B, fam.B1
    if len(B) != space.dim or any(len(r) != m for r in B):
        raise FamilyError(f"ω basis must be {space.dim}x{m}")
    if len(B1) != space.dim or any(len(r) != a for r in B1):
        raise FamilyError(f"ω₁ basis must be {space.dim}x{a}")
    if rank(F, ring.reduce(B)) != m or rank(F, ring.reduce(B1)) != a:
        raise FamilyError("basis reduction at t=0 is not of full rank")

    G = ring.lift(space.G)
    Pi = ring.lift(space.Pi)
    iso = ring.mat_mul(ring.mat_mul(ring.transpose(B), G), B)
    if not ring.is_zero_matrix(iso):
        raise ConstraintViolation("ᵗB·G·B = 0", ring.matrix_valuation(iso))
    pi1 = ring.mat_mul(Pi, B1)
    if not ring.is_zero_matrix(pi1):
        raise ConstraintViolation("Π·ω₁ = 0", ring.matrix_valuation(pi1))
    _, res = summand_residual(ring, B1, ring.mat_mul(Pi, B))
    if not ring.is_zero_matrix(res):
        raise ConstraintViolation("Π·ω ⊆ ω₁", ring.matrix_valuation(res))
    _, res = summand_residual(ring, B, B1)
    if not ring.is_zero_matrix(res):
        raise ConstraintViolation("ω₁ ⊆ ω", ring.matrix_valuation(res))
    fam.special_point()


def _check_headroom(vals: Sequence[float], N: int, what: str) -> None:
    for v in vals:
        if v != INF and v > N - HEADROOM:
            raise TruncationError(f"{what}: valuation {v} leaves no headroom below t^{N}")


def generic_rank(M: SeriesMatrix, N: int, what: str = "rank") -> int:
    vals = smith_valuations(M)
    _check_headroom(vals, N, what)
    return sum(1 for v in vals if v != INF)


def generic_special_strata(fam: FamilyPoint) -> StrataPair:
    validate_family(fam)
    space, ring = fam.space, fam.ring
    m, a, N = space.m, space.a, ring.N
    B, B1 = fam.B, fam.B1
    vals_h = smith_valuations(B[:m])
    P1 = B1[m:]
    gram = ring.mat_mul(ring.mat_mul(ring.transpose(P1), ring.lift(space.Q)), P1)
    vals_l = smith_valuations(gram)
    _check_headroom(vals_h, N, "rank of Π on ω")
    _check_headroom(vals_l, N, "rank of the modified Gram on ω₁")
    special = StratumLabel(
        sum(1 for v in vals_h if v == 0),
        a - sum(1 for v in vals_l if v == 0),
    )
    generic = StratumLabel(
        sum(1 for v in vals_h if v != INF),
        a - sum(1 for v in vals_l if v != INF),
    )
    return StrataPair(special, generic)


# ---------- 명시적 족 ----------
def _require_odd_standard(space: PiSpace) -> None:
    if space.case != ODD:
        raise FamilyError("this construction needs odd characteristic")
    if space.Q != standard_gram(space.a, space.b, space.field, ODD):
        raise FamilyError("this construction needs the standard odd frame")


def _as_matrix(ring: TruncRing, A, rows: int, cols: int, name: str) -> SeriesMatrix:
    A = [] if A is None else A
    if rows == 0:
        return []
    if not A:
        return ring.zeros(rows, cols)
    M = ring.matrix(A)
    if len(M) != rows or any(len(r) != cols for r in M):
        raise FamilyError(f"{name} must be {rows}x{cols}")
    return M


def _check_in_tR(M: SeriesMatrix, name: str) -> None:
    for row in M:
        for x in row:
            if x.constant():
                raise ConstraintViolation(f"{name} ∈ t·R_N", 0, "constant term must vanish")


def _check_symmetric(ring: TruncRing, Z: SeriesMatrix, name: str = "Z") -> None:
    diff = ring.mat_sub(Z, ring.transpose(Z))
    if not ring.is_zero_matrix(diff):
        raise ConstraintViolation(f"{name} = ᵗ{name}", ring.matrix_valuation(diff))


def _check_zero_product(ring: TruncRing, A: SeriesMatrix, B: SeriesMatrix, equation: str) -> None:
    if not A or not B or not B[0]:
        return
    prod = ring.mat_mul(A, B)
    if not ring.is_zero_matrix(prod):
        raise ConstraintViolation(equation, ring.matrix_valuation(prod))


def family_from_XYZ(space: PiSpace, ring: TruncRing, X, Y, Z) -> FamilyPoint:
    """
    X_{0,a} 점 주변의 족.
        ũ_j  = f_j + Σ X_ij f_{a+i} + Σ Y_ij f_{b+i}
        n''_i = f_{a+i} - Σ X_ik f_{b+k}
        v_j  = f_{b+j} + Σ Z_ij ẽ_i
    조건: Z = ᵗZ, (Y + ᵗY + ᵗXX) Z = 0.  일반 층 = (rank Z, nullity(Y + ᵗY + ᵗXX)).
    """
    _require_odd_standard(space)
    a, b, m, N = space.a, space.b, space.m, ring.N
    X = _as_matrix(ring, X, b - a, a, "X")
    Y = _as_matrix(ring, Y, a, a, "Y")
    Z = _as_matrix(ring, Z, a, a, "Z")
    for name, A in (("X", X), ("Y", Y), ("Z", Z)):
        _check_in_tR(A, name)
    _check_symmetric(ring, Z)
    M = ring.mat_add(Y, ring.transpose(Y))
    if X:
        M = ring.mat_add(M, ring.mat_mul(ring.transpose(X), X))
    _check_zero_product(ring, M, Z, "(Y + ᵗY + ᵗXX)·Z = 0")

    zero, one = ring.zero(), ring.one()
    n = 2 * m
    u = []
    for j in range(a):
        v = [zero] * n
        v[m + j] = one
        for i in range(b - a):
            v[m + a + i] = X[i][j]
        for i in range(a):
            v[m + b + i] = Y[i][j]
        u.append(v)
    n2 = []
    for i in range(b - a):
        v = [zero] * n
        v[m + a + i] = one
        for k in range(a):
            v[m + b + k] = -X[i][k]
        n2.append(v)
    vs = []
    for j in range(a):
        v = [zero] * n
        v[m + b + j] = one
        for i in range(a):
            if not Z[i][j].is_zero():
                for k in range(m):
                    v[k] = v[k] + Z[i][j] * u[i][m + k]
        vs.append(v)

    predicted = StratumLabel(generic_rank(Z, N, "rank Z"), a - generic_rank(M, N, "rank of Y + ᵗY + ᵗXX"))
    return make_family(space, ring, u + n2 + vs, u, predicted)


def family_general(space: PiSpace, ring: TruncRing, h: int, l: int, Y2=None, Z=None, T=None) -> FamilyPoint:
    """
    X_{h,ℓ} 표준점 주변의 족. r = ℓ - h 라 할 때
        ũ_j = u_j + Σ T_kj u*_k,      ẽ_i = e_{h+i} + Σ T_ki e_{b+h+k}
        v_j = u*_j + Σ Z_ij ẽ_i,      ñ_i = n_i + Σ Y₂_ij u*_j
    (u_j = f_{h+j}, u*_j = f_{b+h+j}, n_i = f_i + ½ f_{b+i}, n'_i = f_i - ½ f_{b+i}, i ≥ ℓ).
    조건: Z = ᵗZ, Y₂ Z = 0, (T + ᵗT) Z = 0.
    일반 층 = (h + rank Z, h + nullity(T + ᵗT - ᵗY₂ Y₂)).
    T = 0 이고 rank ᵗY₂Y₂ = rank Y₂ 이면 (예: Y₂ 의 열공간이 비등방) 둘째 값은 h + dim ker Y₂.
    ᵗY₂Y₂ 가 더 퇴화하면 (𝔽₅ 의 Y₂ = ᵗ(t, 2t) 처럼) nullity 쪽이 맞다.
    """
    _require_odd_standard(space)
    a, b, m, N = space.a, space.b, space.m, ring.N
    F = space.field
    if not 0 <= h <= l <= a:
        raise FamilyError(f"label ({h},{l}) out of range for a={a}")
    r = l - h
    Y2 = _as_matrix(ring, Y2, a - l, r, "Y₂")
    Z = _as_matrix(ring, Z, r, r, "Z")
    T = _as_matrix(ring, T, r, r, "T")
    for name, A in (("Y₂", Y2), ("Z", Z), ("T", T)):
        _check_in_tR(A, name)
    _check_symmetric(ring, Z)
    _check_zero_product(ring, Y2, Z, "Y₂·Z = 0")
    S = ring.mat_add(T, ring.transpose(T)) if r else []
    _check_zero_product(ring, S, Z, "(T + ᵗT)·Z = 0")

    zero, one = ring.zero(), ring.one()
    half = ring.const(F.inv(F.embed(2)))
    n = 2 * m

    def f(i: int) -> List[TruncSeries]:
        v = [zero] * n
        v[m + i] = one
        return v

    def e(i: int) -> List[TruncSeries]:
        v = [zero] * n
        v[i] = one
        return v

    def combo(*terms) -> List[TruncSeries]:
        out = [zero] * n
        for c, vec in terms:
            if not c.is_zero():
                out = [x + c * y for x, y in zip(out, vec)]
        return out

    u_tilde = [combo((one, f(h + j)), *[(T[k][j], f(b + h + k)) for k in range(r)]) for j in range(r)]
    e_tilde = [combo((one, e(h + i)), *[(T[k][i], e(b + h + k)) for k in range(r)]) for i in range(r)]
    v = [combo((one, f(b + h + j)), *[(Z[i][j], e_tilde[i]) for i in range(r)]) for j in range(r)]
    n_tilde = [
        combo((one, f(l + i)), (half, f(b + l + i)), *[(Y2[i][j], f(b + h + j)) for j in range(r)])
        for i in range(a - l)
    ]
    n_prime = [combo((one, f(i)), (-half, f(b + i))) for i in range(l, a)]
    W0 = [f(i) for i in range(h)]
    middle = [f(i) for i in range(a, b)]
    E0 = [e(i) for i in range(h)]

    omega1 = W0 + u_tilde + n_tilde
    omega = W0 + u_tilde + n_tilde + middle + n_prime + E0 + v

    quad = S
    if Y2 and r:
        quad = ring.mat_sub(S, ring.mat_mul(ring.transpose(Y2), Y2))
    rank_z = generic_rank(Z, N, "rank Z") if r else 0
    rank_q = generic_rank(quad, N, "rank of T + ᵗT - ᵗY₂Y₂") if r else 0
    predicted = StratumLabel(h + rank_z, h + (r - rank_q))
    return make_family(space, ring, omega, omega1, predicted)


def constant_family(point: LMPoint, ring: TruncRing) -> FamilyPoint:
    space = point.space
    return make_family(space, ring, point.omega.vectors(), point.omega1.vectors(), invariants(point))


# ---------- 닫힘 증인 탐색 ----------
def _diag(ring: TruncRing, size: int, entries: Dict[int, TruncSeries]) -> SeriesMatrix:
    M = ring.zeros(size, size)
    M = [list(row) for row in M]
    for i, x in entries.items():
        M[i][i] = x
    return M


def _structured_candidates(space: PiSpace, ring: TruncRing, special: StratumLabel, generic: StratumLabel) -> Iterator[Tuple[str, dict]]:
    a = space.a
    F = space.field
    t = ring.t()
    multipliers = [t, t * t, t.scale(F.generator)]
    h, l = special
    hg, lg = generic
    for c in multipliers:
        if special == (0, a):
            Z = _diag(ring, a, {i: c for i in range(hg)})
            Y = _diag(ring, a, {i: c for i in range(lg, a)})
            yield "structured-xyz", {"X": None, "Y": Y, "Z": Z}
        r = l - h
        s = hg - h
        Z = _diag(ring, r, {i: c for i in range(s)})
        T = _diag(ring, r, {i: c for i in range(r - (l - lg), r)})
        yield "structured-general", {"h": h, "l": l, "Z": Z, "T": T, "Y2": None}


def _random_candidate(space: PiSpace, ring: TruncRing, special: StratumLabel, rng: random.Random) -> dict:
    F, a = space.field, space.a
    h, l = special
    r = l - h
    s = rng.randint(0, r)

    def entry() -> TruncSeries:
        if rng.random() < 0.5:
            return ring.zero()
        return ring.monomial(rng.randrange(1, F.q), rng.randint(1, 2))

    Z = [[ring.zero()] * r for _ in range(r)]
    for i in range(s):
        for j in range(i, s):
            Z[i][j] = Z[j][i] = entry()
    Y2 = [[entry() if j >= s else ring.zero() for j in range(r)] for _ in range(a - l)]
    T = [[entry() if (i >= s and j >= s) else ring.zero() for j in range(r)] for i in range(r)]
    return {"h": h, "l": l, "Z": Z, "T": T, "Y2": Y2}


def closure_witness_search(
    space: PiSpace,
    special: Tuple[int, int],
    generic: Tuple[int, int],
    N: int = DEFAULT_N,
    budget: int = 200,
    seed: int = 0,
) -> WitnessResult:
    """special ∈ closure(generic) 을 보이는 족을 구조적 후보 → 무작위 후보 순으로 찾는다."""
    special, generic = StratumLabel(*special), StratumLabel(*generic)
    if not stratum_leq(special, generic):
        raise PreconditionError(f"{special} is not below {generic} in the closure order")
    _require_odd_standard(space)
    ring = TruncRing(space.field, N)

    def attempt(kind: str, params: dict) -> Optional[FamilyPoint]:
        try:
            if kind == "structured-xyz":
                fam = family_from_XYZ(space, ring, params["X"], params["Y"], params["Z"])
            else:
                fam = family_general(space, ring, params["h"], params["l"], params["Y2"], params["Z"], params["T"])
            pair = generic_special_strata(fam)
        except (ConstraintViolation, TruncationError) as e:
            logger.debug("candidate rejected: %s", e)
            return None
        if pair == (special, generic):
            return fam
        return None

    attempts = 0
    for kind, params in _structured_candidates(space, ring, special, generic):
        attempts += 1
        fam = attempt(kind, params)
        if fam is not None:
            return WitnessResult(True, fam, attempts, kind)

    rng = random.Random(seed)
    while attempts < budget:
        attempts += 1
        fam = attempt("random", _random_candidate(space, ring, special, rng))
        if fam is not None:
            return WitnessResult(True, fam, attempts, "random")
    logger.info("witness search %s -> %s exhausted after %d attempts", special, generic, attempts)
    return WitnessResult(False, None, attempts, "exhausted")


def random_family(space: PiSpace, ring: TruncRing, rng: random.Random) -> FamilyPoint:
    """무작위 (h, ℓ) 주변 족을 무작위 등거리변환으로 옮긴 것"""
    a = space.a
    l = rng.randint(0, a)
    h = rng.randint(0, l)
    params = _random_candidate(space, ring, StratumLabel(h, l), rng)
    fam = family_general(space, ring, h, l, params["Y2"], params["Z"], params["T"])
    phi = ring.lift(lift_isometry(random_isometry(space, rng)))
    moved = FamilyPoint(
        space,
        ring,
        _freeze(ring.mat_mul(phi, fam.B)),
        _freeze(ring.mat_mul(phi, fam.B1)),
        fam.predicted,
    )
    validate_family(moved)
    return moved


# ---------- 일차 변형 선형계 ----------
class _LinearSystem:
    def __init__(self) -> None:
        self.nvars = 0
        self.rows: List[Dict[int, int]] = []
        self.consts: List[int] = []

    def var(self) -> int:
        self.nvars += 1
        return self.nvars - 1


def _deformation_system(
    space: PiSpace,
    B0: Matrix,
    B10: Matrix,
    C0: Matrix,
    E0: Matrix,
    gauge: Sequence[int],
    gauge1: Sequence[int],
    K: Optional[Matrix] = None,
    R3: Optional[Matrix] = None,
    R4: Optional[Matrix] = None,
) -> _LinearSystem:
    """
    미지수: D (ω 기저의 변형, gauge 행 고정), D1 (ω₁ 기저, ker Π 안 · gauge1 행 고정), C', E'.
        ᵗB G D + ᵗD G B + K = 0            (i < j)
        Π D - B1 C' - D1 C + R3 = 0
        D1 - B E' - D E + R4 = 0
    """
    F, m, a = space.field, space.m, space.a
    n = 2 * m
    G = space.G
    sysm = _LinearSystem()
    gauge, gauge1 = set(gauge), set(gauge1)
    D = [[sysm.var() if r not in gauge else None for _ in range(m)] for r in range(n)]
    D1 = [[sysm.var() if (r >= m and r not in gauge1) else None for _ in range(a)] for r in range(n)]
    Cp = [[sysm.var() for _ in range(m)] for _ in range(a)]
    Ep = [[sysm.var() for _ in range(a)] for _ in range(m)]

    BtG = [[F.total(F.mul(B0[r][i], G[r][s]) for r in range(n)) for s in range(n)] for i in range(m)]
    GB = [[F.total(F.mul(G[r][s], B0[s][j]) for s in range(n)) for j in range(m)] for r in range(n)]

    def add_row(terms: Dict[int, int], const: int) -> None:
        row = {k: v for k, v in terms.items() if v}
        sysm.rows.append(row)
        sysm.consts.append(const)

    def acc(terms: Dict[int, int], var: Optional[int], coeff: int) -> None:
        if var is not None and coeff:
            terms[var] = F.add(terms.get(var, 0), coeff)

    for i in range(m):
        for j in range(i + 1, m):
            terms: Dict[int, int] = {}
            for s in range(n):
                acc(terms, D[s][j], BtG[i][s])
            for r in range(n):
                acc(terms, D[r][i], GB[r][j])
            add_row(terms, K[i][j] if K else 0)

    for r in range(n):
        for c in range(m):
            terms = {}
            if r >= m:
                acc(terms, D[r - m][c], 1)
            for k in range(a):
                acc(terms, Cp[k][c], F.neg(B10[r][k]))
                acc(terms, D1[r][k], F.neg(C0[k][c]))
            add_row(terms, R3[r][c] if R3 else 0)

    for r in range(n):
        for c in range(a):
            terms = {}
            acc(terms, D1[r][c], 1)
            for k in range(m):
                acc(terms, Ep[k][c], F.neg(B0[r][k]))
                acc(terms, D[r][k], F.neg(E0[k][c]))
            add_row(terms, R4[r][c] if R4 else 0)
    return sysm


def _system_ranks(F: Fq, sysm: _LinearSystem) -> Tuple[int, int]:
    """(계수행렬 rank, 확대행렬 rank)"""
    dense = []
    for row, c in zip(sysm.rows, sysm.consts):
        vec = [0] * (sysm.nvars + 1)
        for k, v in row.items():
            vec[k] = v
        vec[sysm.nvars] = F.neg(c)
        dense.append(vec)
    if not dense:
        return 0, 0
    _, pivots = rref(F, dense)
    aug_rank = len(pivots)
    coeff_rank = len([p for p in pivots if p < sysm.nvars])
    return coeff_rank, aug_rank


def tangent_dim(point: LMPoint) -> int:
    """이중수 F_q[ε]/(ε²) 위 올림들의 공간 차원"""
    validate_point(point)
    space = point.space
    F, m = space.field, space.m
    B0 = point.omega.matrix()
    B10 = point.omega1.matrix()
    gauge = point.omega.pivots
    gauge1 = point.omega1.pivots
    PiB = [[F.dot(space.Pi[r], [B0[s][c] for s in range(space.dim)]) for c in range(m)] for r in range(space.dim)]
    C0 = [PiB[r] for r in gauge1]
    E0 = [B10[r] for r in gauge]
    sysm = _deformation_system(space, B0, B10, C0, E0, gauge, gauge1)
    coeff_rank, _ = _system_ranks(F, sysm)
    return sysm.nvars - coeff_rank


def lift_step(fam: FamilyPoint) -> LiftResult:
    """R_n 위 족이 R_{n+1} 로 올라가는지 (제곱영 올림은 아핀-선형 문제)"""
    validate_family(fam)
    space, ring = fam.space, fam.ring
    F, n = space.field, ring.N
    up = TruncRing(F, n + 1)
    B = ring.resize(fam.B, n + 1)
    B1 = ring.resize(fam.B1, n + 1)
    Pi = up.lift(space.Pi)
    C, _ = summand_residual(ring, fam.B1, ring.mat_mul(ring.lift(space.Pi), fam.B))
    E, _ = summand_residual(ring, fam.B, fam.B1)
    C = ring.resize(C, n + 1)
    E = ring.resize(E, n + 1)

    K = up.coefficient(up.mat_mul(up.mat_mul(up.transpose(B), up.lift(space.G)), B), n)
    R3 = up.coefficient(up.mat_sub(up.mat_mul(Pi, B), up.mat_mul(B1, C)), n)
    R4 = up.coefficient(up.mat_sub(B1, up.mat_mul(B, E)), n)

    B0, B10 = ring.reduce(fam.B), ring.reduce(fam.B1)
    gauge = independent_rows(F, B0)
    gauge1 = independent_rows(F, B10)
    sysm = _deformation_system(space, B0, B10, ring.reduce(C), ring.reduce(E), gauge, gauge1, K, R3, R4)
    coeff_rank, aug_rank = _system_ranks(F, sysm)
    if coeff_rank != aug_rank:
        return LiftResult(False, None, n + 1)
    return LiftResult(True, sysm.nvars - coeff_rank, n + 1)


# ---------- 장애 점 ----------
def obstruction_point_odd(field: Fq, a: int, b: int, h: int, l: int) -> FamilyPoint:
    """
    X_{h,ℓ} (h < ℓ) 점의 ε² 올림 중 ε³ 로 더 올라가지 않는 것.
    Q_ℓ = [[0,0,I_ℓ],[0,I,0],[I_ℓ,0,0]] 틀에서
        ω₁' = span(f_1 + ε f_{m-ℓ+1}, f_2, ..., f_a)
        ω'  = ω₁' + span(f_{a+1}..f_{m-h}, 단 f_{m-ℓ+1} → f_{m-ℓ+1} + ε e_1) + span(e_{ℓ-h+1}..e_ℓ)
    """
    if field.p == 2:
        raise FamilyError("odd obstruction point needs odd characteristic")
    if not (0 <= h < l <= min(a, b)):
        raise FamilyError(f"need 0 <= h < l <= min(a, b), got h={h}, l={l}")
    m = a + b
    Q = [[0] * m for _ in range(m)]
    for i in range(l):
        Q[i][m - l + i] = 1
        Q[m - l + i][i] = 1
    for i in range(l, m - l):
        Q[i][i] = 1
    space = PiSpace.from_gram(field, a, b, Q)
    ring = TruncRing(field, 2)
    eps = [0, 1]
    n = 2 * m

    def vec(entries: Dict[int, object]) -> List[object]:
        v: List[object] = [0] * n
        for k, x in entries.items():
            v[k] = x
        return v

    w1 = [vec({m + 0: 1, m + (m - l): eps})] + [vec({m + i: 1}) for i in range(1, a)]
    rest = []
    for i in range(a, m - h):
        if i == m - l:
            rest.append(vec({m + i: 1, 0: eps}))
        else:
            rest.append(vec({m + i: 1}))
    es = [vec({i: 1}) for i in range(l - h, l)]
    return make_family(space, ring, w1 + rest + es, w1)


def obstruction_point_char2(field: Fq, a: int, b: int) -> FamilyPoint:
    """
    case 1 (Q = I) 에서 X_{1,1} 점의 t² 올림:
        ω₁' = span((1+t) f_1 + f_2, f_3, ..., f_{a+1})
        ω'  = ω₁' + span(f_{a+2}, ..., f_m) + span((1+t) e_1 + e_2)
    ((1+t)f_1 + f_2 의 노름이 t² 이라 t³ 로 올라가지 않는다)
    """
    if field.p != 2:
        raise FamilyError("char-2 obstruction point needs characteristic 2")
    if a < 1 or b < 1:
        raise FamilyError("need a >= 1 and b >= 1")
    m = a + b
    space = PiSpace.standard(a, b, field, CASE1)
    ring = TruncRing(field, 2)
    n = 2 * m
    one_t = [1, 1]

    def vec(entries: Dict[int, object]) -> List[object]:
        v: List[object] = [0] * n
        for k, x in entries.items():
            v[k] = x
        return v

    w1 = [vec({m + 0: one_t, m + 1: 1})] + [vec({m + i: 1}) for i in range(2, a + 1)]
    rest = [vec({m + i: 1}) for i in range(a + 1, m)]
    ev = [vec({0: one_t, 1: 1})]
    return make_family(space, ring, w1 + rest + ev, w1)


# ---------- 직렬화 ----------
def family_to_dict(fam: FamilyPoint) -> dict:
    return {
        "space": fam.space.to_dict(),
        "N": fam.ring.N,
        "omega": [[x.to_list() for x in row] for row in fam.omega],
        "omega1": [[x.to_list() for x in row] for row in fam.omega1],
        "predicted": list(fam.predicted) if fam.predicted is not None else None,
    }


def family_from_dict(data: dict) -> FamilyPoint:
    sp = data["space"]
    field = get_field(sp["field"]["p"], sp["field"]["f"])
    try:
        space = PiSpace(field, sp["a"], sp["b"], sp["Q"], sp["case"])
    except SpaceError as e:
        raise FamilyError(f"invalid space in family record: {e}") from e
    ring = TruncRing(field, int(data["N"]))
    predicted = StratumLabel(*data["predicted"]) if data.get("predicted") is not None else None
    fam = FamilyPoint(
        space,
        ring,
        _freeze(ring.matrix(data["omega"])),
        _freeze(ring.matrix(data["omega1"])),
        predicted,
    )
    validate_family(fam)
    return fam
