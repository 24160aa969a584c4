# app/algebra/hasse.py
"""
부호 (1, n) 의 Verschiebung 자료, 켤레 부분공간 𝓕₁ ⊆ ... , 네 불변량과 9-층 라벨

규약 (m = n + 1, 좌표는 e-블록 뒤에 f-블록):
    V(x) = M · frob(x),  M = [[A, 0], [C, A]]
    - ΠM = MΠ 이면 M 은 위 블록 모양이 된다
    - C 는 ker Π ≅ ℰ/ker Π 위의 V_π, 수반 F_π = Q⁻¹ Cᵀ Q  ({F_π x, y} = {x, V_π y})
    - 𝓕_i = frob⁻¹(ker A ∩ C⁻¹ ω_i)  (f-좌표)
    - hasse₂ = 0 ⇔ ω₁ ⊆ 𝓕₂,  hasse₁ = 0 ⇔ ω₁ = 𝓕₁
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from app.algebra.errors import DatumError, PointError, SpaceError
from app.algebra.field import (
    Fq,
    Matrix,
    Vector,
    bilinear,
    block,
    get_field,
    inverse,
    mat_frobenius,
    mat_mul,
    mat_vec,
    nullspace,
    transpose,
    vec_add,
    vec_scale,
    vec_sub,
    zeros,
)
from app.algebra.localmodel import LMPoint, StratumLabel, invariants, stratum_leq, validate_point
from app.algebra.pimodule import CASE1, MODIFIED, ODD, PiSpace, Subspace, lift_isometry, orthogonal, random_isometry

logger = logging.getLogger(__name__)

XORD, R1, R2, B0, B1, B2, P0, P1, P2 = "Xord", "R1", "R2", "B0", "B1", "B2", "P0", "P1", "P2"
LABELS9: Tuple[str, ...] = (XORD, R1, R2, B0, B1, B2, P0, P1, P2)

COARSE: Dict[str, StratumLabel] = {
    XORD: StratumLabel(1, 1),
    R1: StratumLabel(1, 1),
    R2: StratumLabel(1, 1),
    B0: StratumLabel(0, 0),
    B1: StratumLabel(0, 0),
    B2: StratumLabel(0, 0),
    P0: StratumLabel(0, 1),
    P1: StratumLabel(0, 1),
    P2: StratumLabel(0, 1),
}


class Invariants4(NamedTuple):
    b_nonzero: bool
    m_nonzero: bool
    hasse1_zero: bool
    hasse2_zero: bool


@dataclass(frozen=True)
class DieudonneDatum:
    point: LMPoint
    M: Tuple[Tuple[int, ...], ...] = dc_field(repr=False)

    @property
    def space(self) -> PiSpace:
        return self.point.space

    @property
    def A(self) -> Matrix:
        m = self.space.m
        return [list(row[:m]) for row in self.M[:m]]

    @property
    def C(self) -> Matrix:
        m = self.space.m
        return [list(row[:m]) for row in self.M[m:]]


def make_datum(point: LMPoint, M: Matrix) -> DieudonneDatum:
    return DieudonneDatum(point, tuple(tuple(row) for row in M))


def datum_from_blocks(point: LMPoint, A: Matrix, C: Matrix) -> DieudonneDatum:
    return make_datum(point, block([[A, zeros(len(A), len(A))], [C, A]]))


# ---------- 켤레 부분공간 ----------
def _f_coords(space: PiSpace, W: Subspace) -> List[Vector]:
    return [space.f_part(v) for v in W.basis]


def _from_f_coords(space: PiSpace, coords: List[Vector]) -> Subspace:
    return space.span_f(coords)


def _omega_i(datum: DieudonneDatum, i: int) -> Subspace:
    if i == 1:
        return datum.point.omega1
    if i == 2:
        return orthogonal(datum.space, datum.point.omega1, MODIFIED)
    raise DatumError(f"conjugate index must be 1 or 2, got {i}")


def _conjugate(datum: DieudonneDatum, i: int) -> Subspace:
    space, F = datum.space, datum.space.field
    m = space.m
    target = Subspace.span(F, m, _f_coords(space, _omega_i(datum, i)))
    kerA = Subspace.span(F, m, nullspace(F, datum.A, ncols=m))
    pre = target.preimage_under(datum.C).intersect(kerA)
    return _from_f_coords(space, pre.frobenius_image(inverse_map=True).vectors())


def _conjugate_dual(datum: DieudonneDatum) -> Subspace:
    """𝓕₁ = frob⁻¹(ker A ∩ (F_π ω₂)^⊥')"""
    space, F = datum.space, datum.space.field
    m, Q = space.m, space.Q
    F_pi = mat_mul(F, mat_mul(F, inverse(F, Q), transpose(datum.C)), Q)
    w2 = Subspace.span(F, m, _f_coords(space, _omega_i(datum, 2)))
    perp = w2.image_under(F_pi).orthogonal(Q)
    kerA = Subspace.span(F, m, nullspace(F, datum.A, ncols=m))
    return _from_f_coords(space, perp.intersect(kerA).frobenius_image(inverse_map=True).vectors())


# ---------- 검증 ----------
def _similitude(datum: DieudonneDatum) -> Optional[int]:
    """ker A 위에서 {Cy, Cz} = λ {y, z} 인 λ. 형식이 ker A 위에서 0 이면 None."""
    F, Q = datum.space.field, datum.space.Q
    K = nullspace(F, datum.A, ncols=datum.space.m)
    CK = [mat_vec(F, datum.C, y) for y in K]
    base = [[bilinear(F, y, Q, z) for z in K] for y in K]
    image = [[bilinear(F, y, Q, z) for z in CK] for y in CK]
    pivot = next(((i, j) for i, row in enumerate(base) for j, x in enumerate(row) if x), None)
    if pivot is None:
        if any(x for row in image for x in row):
            raise DatumError("V_π does not scale the modified form on ker A")
        return None
    i, j = pivot
    lam = F.div(image[i][j], base[i][j])
    if lam == 0 or any(
        image[r][c] != F.mul(lam, base[r][c]) for r in range(len(K)) for c in range(len(K))
    ):
        raise DatumError("V_π does not scale the modified form on ker A")
    return lam


def validate_datum(datum: DieudonneDatum) -> Optional[int]:
    """모든 자료 조건을 확인하고 유사 인자 λ (또는 None) 를 돌려준다"""
    space = datum.space
    F, m = space.field, space.m
    if space.a != 1:
        raise DatumError(f"Hasse data need signature (1, n), got a={space.a}")
    M = [list(r) for r in datum.M]
    if len(M) != 2 * m or any(len(r) != 2 * m for r in M):
        raise DatumError(f"V must be {2 * m}x{2 * m}")
    try:
        validate_point(datum.point)
    except PointError as e:
        raise DatumError(f"underlying point is invalid: {e}") from e
    if mat_mul(F, M, space.Pi) != mat_mul(F, space.Pi, M):
        raise DatumError("V does not commute with Π")
    if space.span(transpose(M)) != datum.point.omega:
        raise DatumError("image of V is not ω")
    kernel = space.span(nullspace(F, M, ncols=2 * m))
    if not space.is_isotropic(kernel):
        raise DatumError("ker V is not totally isotropic")
    lam = _similitude(datum)
    d1, d2 = _conjugate(datum, 1).dim, _conjugate(datum, 2).dim
    if (d1, d2) != (1, space.b):
        raise DatumError(f"dim 𝓕₁ = {d1}, dim 𝓕₂ = {d2}; expected 1 and {space.b}")
    return lam


def is_valid_datum(datum: DieudonneDatum) -> bool:
    try:
        validate_datum(datum)
    except DatumError:
        return False
    return True


def conjugate_F(datum: DieudonneDatum, i: int) -> Subspace:
    validate_datum(datum)
    return _conjugate(datum, i)


def conjugate_F_dual(datum: DieudonneDatum) -> Subspace:
    validate_datum(datum)
    return _conjugate_dual(datum)


# ---------- 불변량과 라벨 ----------
def invariants4(datum: DieudonneDatum) -> Invariants4:
    validate_datum(datum)
    h, l = invariants(datum.point)
    w1 = datum.point.omega1
    f1, f2 = _conjugate(datum, 1), _conjugate(datum, 2)
    return Invariants4(
        b_nonzero=(l == 0),
        m_nonzero=(h == 1),
        hasse1_zero=(w1 == f1),
        hasse2_zero=(w1 <= f2),
    )


def stratum9(datum: DieudonneDatum) -> str:
    inv = invariants4(datum)
    if inv.b_nonzero and inv.m_nonzero:
        raise DatumError("b and m are both nonzero")
    if inv.b_nonzero:
        if inv.hasse1_zero and inv.hasse2_zero:
            raise DatumError("b ≠ 0 with both Hasse invariants vanishing")
        if inv.hasse1_zero:
            return B2
        return B1 if inv.hasse2_zero else B0
    if inv.hasse1_zero and not inv.hasse2_zero:
        raise DatumError("hasse₁ = 0 without hasse₂ = 0 on the b = 0 locus")
    if inv.m_nonzero:
        if not inv.hasse2_zero:
            return XORD
        return R2 if inv.hasse1_zero else R1
    if not inv.hasse2_zero:
        return P0
    return P2 if inv.hasse1_zero else P1


def coarse_label(label: str) -> StratumLabel:
    try:
        return COARSE[label]
    except KeyError:
        raise DatumError(f"unknown stratum label '{label}'") from None


# ---------- 닫힘 포셋 ----------
_CLOSURE_GENERAL: Dict[str, Tuple[str, ...]] = {
    XORD: (XORD, R1, R2, P0, P1, P2),
    R1: (R1, R2, P1, P2),
    R2: (R2, P2),
    B0: (B0, B1, B2, P0, P1, P2),
    B1: (B1, P1, P2),
    B2: (B2,),
    P0: (P0, P1, P2),
    P1: (P1, P2),
    P2: (P2,),
}

_CLOSURE_N1: Dict[str, Tuple[str, ...]] = {
    XORD: (XORD, P0),
    R2: (R2, P2),
    B0: (B0, B1, B2, P0, P2),
    B1: (B1,),
    B2: (B2,),
    P0: (P0,),
    P2: (P2,),
}


def poset9(n: int) -> Dict[str, FrozenSet[str]]:
    """라벨 → 닫힘에 들어가는 라벨 집합. n ≤ 2 에서는 R1, P1 이 비어 있다."""
    if n < 1:
        raise DatumError(f"n must be >= 1, got {n}")
    if n == 1:
        return {k: frozenset(v) for k, v in _CLOSURE_N1.items()}
    empty = {R1, P1} if n == 2 else set()
    return {
        k: frozenset(v) - empty
        for k, v in _CLOSURE_GENERAL.items()
        if k not in empty
    }


def poset9_edges(n: int) -> List[Tuple[str, str]]:
    """덮개 관계 (lower, upper)"""
    closure = poset9(n)
    edges = []
    for up, below in closure.items():
        for lo in below:
            if lo == up:
                continue
            if any(mid not in (lo, up) and lo in closure[mid] for mid in below):
                continue
            edges.append((lo, up))
    return sorted(edges, key=lambda e: (LABELS9.index(e[0]), LABELS9.index(e[1])))


def poset9_consistency(n: int) -> List[str]:
    """반사성, 반대칭성, 추이성, 거친 층 순서와의 호환성 위반 목록"""
    closure = poset9(n)
    problems = []
    for x, below in closure.items():
        if x not in below:
            problems.append(f"{x} not in its own closure")
        for y in below:
            if y not in closure:
                problems.append(f"{y} in closure of {x} is not a stratum")
                continue
            if not closure[y] <= below:
                problems.append(f"closure of {y} escapes closure of {x}")
            if y != x and x in closure[y]:
                problems.append(f"{x} and {y} lie in each other's closure")
            if not stratum_leq(COARSE[y], COARSE[x]):
                problems.append(f"{y} ≤ {x} does not map to {COARSE[y]} ≤ {COARSE[x]}")
    return problems


# ---------- 기저 변환 ----------
def conjugate_datum(datum: DieudonneDatum, g: Matrix) -> DieudonneDatum:
    """φ = diag(g, g) 로 옮긴 자료: M' = φ · M · frob(φ⁻¹)"""
    space = datum.space
    F = space.field
    phi = lift_isometry(g)
    phi_inv = inverse(F, phi)
    M = mat_mul(F, mat_mul(F, phi, [list(r) for r in datum.M]), mat_frobenius(F, phi_inv))
    point = LMPoint(space, datum.point.omega.image_under(phi), datum.point.omega1.image_under(phi))
    return make_datum(point, M)


# ---------- 예제 탐색 ----------
class LabeledDatum(NamedTuple):
    datum: DieudonneDatum
    label: str
    similitude: Optional[int]


class SearchResult(NamedTuple):
    data: List[LabeledDatum]
    attempts: int
    rejected: int

    @property
    def realized(self) -> List[str]:
        seen = {d.label for d in self.data}
        return [lab for lab in LABELS9 if lab in seen]


def hasse_space(n: int, field: Fq) -> PiSpace:
    return PiSpace.standard(1, n, field, CASE1 if field.p == 2 else ODD)


def _random_vector(F: Fq, m: int, rng: random.Random) -> Vector:
    while True:
        v = [rng.randrange(F.q) for _ in range(m)]
        if any(v):
            return v


def _random_isotropic(space: PiSpace, rng: random.Random) -> Vector:
    F, Q = space.field, space.Q
    for _ in range(256):
        v = _random_vector(F, space.m, rng)
        if bilinear(F, v, Q, v) == 0:
            return v
    raise DatumError("no isotropic vector found")


def _candidate(space: PiSpace, rng: random.Random) -> DieudonneDatum:
    F, m, Q = space.field, space.m, space.Q
    g = random_isometry(space, rng)
    lam = rng.randrange(1, F.q)
    lam_g = [[F.mul(lam, x) for x in row] for row in g]

    if rng.random() < 0.5:
        # h = 0: ω = ker Π, A = 0
        w1 = _random_vector(F, m, rng)
        point = LMPoint(space, space.kernel(), space.span_f([w1]))
        return datum_from_blocks(point, zeros(m, m), lam_g)

    # h = 1: ω₁ = <w₁> 등방, ω = (0, ω₂) + <(w₁, s)>
    w1 = _random_isotropic(space, rng)
    s = [rng.randrange(F.q) for _ in range(m)]
    mu = rng.randrange(1, F.q)
    w2 = nullspace(F, [mat_vec(F, Q, w1)], ncols=m)
    w_hat = mat_vec(F, inverse(F, g), w1)
    alpha = mat_vec(F, Q, w_hat)
    A = [[F.mul(mu, F.mul(x, y)) for y in alpha] for x in w1]
    j = next(i for i, x in enumerate(alpha) if x)
    y0 = [0] * m
    y0[j] = F.inv(alpha[j])
    c0 = vec_scale(F, mu, s)
    for v in w2:
        c0 = vec_add(F, c0, vec_scale(F, rng.randrange(F.q), v))
    corr = vec_sub(F, c0, mat_vec(F, lam_g, y0))
    C = [[F.add(lam_g[i][k], F.mul(corr[i], alpha[k])) for k in range(m)] for i in range(m)]
    omega = space.span([space.f_vector(v) for v in w2] + [list(w1) + list(s)])
    point = LMPoint(space, omega, space.span_f([w1]))
    return datum_from_blocks(point, A, C)


def search_examples(n: int, field: Fq, budget: int = 200, seed: int = 0) -> SearchResult:
    """거절 표본추출로 유효한 자료를 모은다. budget 은 시도 횟수."""
    if n < 1 or n > 3:
        raise DatumError(f"search supports 1 <= n <= 3, got {n}")
    if field.q > 9:
        raise DatumError(f"search supports q <= 9, got {field.q}")
    space = hasse_space(n, field)
    rng = random.Random(seed)
    data: List[LabeledDatum] = []
    rejected = 0
    for _ in range(budget):
        try:
            datum = _candidate(space, rng)
            lam = validate_datum(datum)
        except (DatumError, SpaceError) as e:
            logger.debug("candidate rejected: %s", e)
            rejected += 1
            continue
        # 유효한 자료의 라벨 실패는 거절이 아니라 오류
        data.append(LabeledDatum(datum, stratum9(datum), lam))
    logger.info(
        "hasse search n=%d q=%d: %d accepted, %d rejected", n, field.q, len(data), rejected
    )
    return SearchResult(data, budget, rejected)


# ---------- 직렬화 ----------
def datum_to_dict(datum: DieudonneDatum) -> dict:
    return {
        "space": datum.space.to_dict(),
        "omega": datum.point.omega.to_list(),
        "omega1": datum.point.omega1.to_list(),
        "M": [list(r) for r in datum.M],
    }


def datum_from_dict(data: dict) -> DieudonneDatum:
    sp = data["space"]
    field = get_field(sp["field"]["p"], sp["field"]["f"])
    try:
        space = PiSpace(field, sp["a"], sp["b"], sp["Q"], sp["case"])
    except SpaceError as e:
        raise DatumError(f"invalid space in datum record: {e}") from e
    point = LMPoint(space, space.span(data["omega"]), space.span(data["omega1"]))
    datum = make_datum(point, data["M"])
    validate_datum(datum)
    return datum
