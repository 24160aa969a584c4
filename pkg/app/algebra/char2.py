# app/algebra/char2.py
"""
표수 2 대칭 쌍선형형식 도구

- classify_form: 직교기저(case 1, q ≢ 0) 또는 쌍곡 블록 A = [[0,1],[1,0]] (case 2, q ≡ 0)
- isotropic_normal_basis: 등방 W 를 span(e₁+e₂, ..., e_{2h-1}+e_{2h}) 위치로
- parity_empty_check / smooth_locus_table: 국소모형 전수 열거 위의 보고
"""

import logging
from collections import defaultdict
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from app.algebra.deform import tangent_dim
from app.algebra.errors import FormError, NormalPositionError, SpaceError
from app.algebra.field import (
    Fq,
    Matrix,
    Vector,
    bilinear,
    inverse,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
    transpose,
    vec_add,
    vec_scale,
)
from app.algebra.localmodel import (
    DEFAULT_BUDGET,
    StratumLabel,
    enumerate_points,
    invariants,
    labels,
)
from app.algebra.pimodule import CASE1, CASE2, PiSpace

logger = logging.getLogger(__name__)

CASE_ORTHONORMAL = 1
CASE_HYPERBOLIC = 2


class FormClassification(NamedTuple):
    case: int
    P: Matrix  # 열 = 새 기저


class ParityReport(NamedTuple):
    counts: Dict[StratumLabel, int]
    violations: List[StratumLabel]
    passed: bool


def _check_form(field: Fq, G: Sequence[Sequence[int]]) -> int:
    if field.p != 2:
        raise FormError("characteristic-2 form tools need p = 2")
    d = len(G)
    if any(len(row) != d for row in G):
        raise FormError("Gram matrix must be square")
    if any(G[i][j] != G[j][i] for i in range(d) for j in range(d)):
        raise FormError("Gram matrix is not symmetric")
    if rank(field, G) != d:
        raise FormError("Gram matrix is degenerate")
    return d


def form_case(field: Fq, G: Sequence[Sequence[int]]) -> int:
    """q(x) = ⟨x,x⟩ 는 표수 2 에서 가법적이므로 대각성분만 보면 된다"""
    return CASE_ORTHONORMAL if any(G[i][i] for i in range(len(G))) else CASE_HYPERBOLIC


def _perp_within(field: Fq, G, W: List[Vector], vs: List[Vector]) -> List[Vector]:
    """span(W) 안에서 vs 모두와 직교하는 부분공간 (RREF 기저)"""
    if not W:
        return []
    coef = [[bilinear(field, w, G, v) for w in W] for v in vs]
    sols = nullspace(field, coef) if coef else [[1 if i == j else 0 for i in range(len(W))] for j in range(len(W))]
    d = len(W[0])
    vecs = [[field.total(field.mul(c, w[k]) for c, w in zip(sol, W)) for k in range(d)] for sol in sols]
    if not vecs:
        return []
    R, pivots = rref(field, vecs)
    return [R[i] for i in range(len(pivots))]


def _decompose(field: Fq, G, W: List[Vector]) -> Tuple[List[Vector], List[Tuple[Vector, Vector]]]:
    """W 를 노름 1 벡터들과 쌍곡쌍들의 직교합으로 (앞에서부터 탐욕적으로)"""
    ones: List[Vector] = []
    pairs: List[Tuple[Vector, Vector]] = []
    while W:
        v = next((x for x in W if bilinear(field, x, G, x)), None)
        if v is not None:
            v = vec_scale(field, field.inv(field.sqrt(bilinear(field, v, G, v))), v)
            ones.append(v)
            W = _perp_within(field, G, W, [v])
            continue
        v = W[0]
        w = next((x for x in W if bilinear(field, v, G, x)), None)
        if w is None:
            raise FormError("restricted form is degenerate")
        w = vec_scale(field, field.inv(bilinear(field, v, G, w)), w)
        pairs.append((v, w))
        W = _perp_within(field, G, W, [v, w])
    return ones, pairs


def _to_orthonormal(field: Fq, o: Vector, v: Vector, w: Vector) -> List[Vector]:
    """Gram 이 1 ⊕ A 인 (o, v, w) 를 직교정규 세 벡터로: 변환행렬 T⁻¹, TᵀT = 1 ⊕ A"""
    T = [[1, 1, 0], [1, 1, 1], [1, 0, 1]]
    P = inverse(field, T)
    frame = [o, v, w]
    out = []
    for k in range(3):
        vec = [0] * len(o)
        for i in range(3):
            if P[i][k]:
                vec = vec_add(field, vec, vec_scale(field, P[i][k], frame[i]))
        out.append(vec)
    return out


def classify_form(field: Fq, G: Sequence[Sequence[int]]) -> FormClassification:
    d = _check_form(field, G)
    case = form_case(field, G)
    W = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    ones, pairs = _decompose(field, G, W)
    if case == CASE_ORTHONORMAL:
        if not ones:
            raise FormError("form with nonzero norm produced no orthonormal vector")
        for v, w in pairs:
            o = ones.pop()
            ones.extend(_to_orthonormal(field, o, v, w))
        basis = ones
    else:
        if ones:
            raise FormError("alternating form produced a vector of nonzero norm")
        basis = [x for pair in pairs for x in pair]
    P = transpose(basis)
    logger.debug("classified %dx%d form over F_%d as case %d", d, d, field.q, case)
    return FormClassification(case, P)


def normal_form(d: int, case: int) -> Matrix:
    if case == CASE_ORTHONORMAL:
        return [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    return [[1 if (i // 2 == j // 2 and i != j) else 0 for j in range(d)] for i in range(d)]


def characteristic_vector(field: Fq, G: Sequence[Sequence[int]]) -> Vector:
    """⟨x, s⟩² = q(x) 인 유일한 s"""
    d = len(G)
    target = [field.sqrt(G[i][i]) for i in range(d)]
    s = solve(field, G, target)
    if s is None:
        raise FormError("Gram matrix is degenerate")
    return s


def isotropic_normal_basis(field: Fq, G: Sequence[Sequence[int]], W: Sequence[Sequence[int]]) -> Matrix:
    """
    직교정규 기저 e 를 돌려주되 span(W) = span(e₁+e₂, ..., e_{2h-1}+e_{2h}).
    특성벡터 s 가 W 에 있고 2h < d 이면 그런 기저가 없으므로 NormalPositionError.
    """
    d = _check_form(field, G)
    if form_case(field, G) != CASE_ORTHONORMAL:
        raise FormError("normal position needs a form that is not alternating")
    vecs = [list(v) for v in W]
    if vecs:
        R, pivots = rref(field, vecs)
        f = [R[i] for i in range(len(pivots))]
    else:
        f = []
    h = len(f)
    if any(bilinear(field, x, G, y) for x in f for y in f):
        raise NormalPositionError("W is not totally isotropic")
    if 2 * h > d:
        raise NormalPositionError(f"isotropic subspace of dim {h} in dimension {d}")

    s = characteristic_vector(field, G)
    s_in_W = bool(f) and rank(field, f + [s]) == h
    if s_in_W and 2 * h < d:
        raise NormalPositionError("W contains the characteristic vector and 2h < d")
    if s_in_W:
        # s = Σ f_i 가 되도록 기저 교체
        rest: List[Vector] = []
        for x in f:
            if len(rest) == h - 1:
                break
            if rank(field, [s] + rest + [x]) == len(rest) + 2:
                rest.append(x)
        first = list(s)
        for x in rest:
            first = vec_add(field, first, vec_scale(field, field.neg(1), x))
        f = [first] + rest

    # 쌍대: ⟨g_i, f_j⟩ = δ_ij
    FtG = [mat_vec(field, transpose(G), x) for x in f]
    g: List[Vector] = []
    for i in range(h):
        sol = solve(field, FtG, [1 if j == i else 0 for j in range(h)])
        if sol is None:
            raise NormalPositionError("no dual vector for W")
        g.append(sol)

    fixed: List[Vector] = []
    for i in range(h):
        gi = g[i]
        for k, gk in enumerate(fixed):
            lam = bilinear(field, gi, G, gk)
            if lam:
                gi = vec_add(field, gi, vec_scale(field, field.neg(lam), f[k]))
        norm = bilinear(field, gi, G, gi)
        if norm != 1:
            T = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
            T = _perp_within(field, G, T, f + fixed)
            v = next((x for x in T if bilinear(field, x, G, x)), None)
            if v is None:
                raise NormalPositionError("no vector of nonzero norm to repair the dual basis")
            mu = field.sqrt(field.div(field.add(1, norm), bilinear(field, v, G, v)))
            gi = vec_add(field, gi, vec_scale(field, mu, v))
        fixed.append(gi)

    e: List[Vector] = []
    for i in range(h):
        e.append(vec_add(field, f[i], vec_scale(field, field.neg(1), fixed[i])))
        e.append(fixed[i])

    full = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    C = _perp_within(field, G, full, e) if e else full
    if C:
        Gc = [[bilinear(field, x, G, y) for y in C] for x in C]
        if form_case(field, Gc) != CASE_ORTHONORMAL:
            raise NormalPositionError("complement of W's frame carries an alternating form")
        Pc = classify_form(field, Gc).P
        for k in range(len(C)):
            vec = [0] * d
            for i, x in enumerate(C):
                if Pc[i][k]:
                    vec = vec_add(field, vec, vec_scale(field, Pc[i][k], x))
            e.append(vec)
    return transpose(e)


def in_normal_position(field: Fq, G, P: Matrix, W: Sequence[Sequence[int]]) -> bool:
    d = len(G)
    cols = transpose(P)
    gram = [[bilinear(field, x, G, y) for y in cols] for x in cols]
    if gram != normal_form(d, CASE_ORTHONORMAL):
        return False
    h = rank(field, [list(x) for x in W]) if W else 0
    pairs = [vec_add(field, cols[2 * i], cols[2 * i + 1]) for i in range(h)]
    if not pairs:
        return True
    return rank(field, pairs) == h and rank(field, pairs + [list(x) for x in W]) == h


# ---------- 국소모형 위 보고 ----------
def parity_empty_check(a: int, b: int, field: Fq, budget: int = DEFAULT_BUDGET) -> ParityReport:
    """case 2 에서 ℓ ≢ a (mod 2) 층이 비어 있는지 전수 확인"""
    if field.p != 2:
        raise SpaceError("parity check is a characteristic-2 statement")
    space = PiSpace.standard(a, b, field, CASE2)
    counts: Dict[StratumLabel, int] = {c: 0 for c in labels(a)}
    for point in enumerate_points(space, budget):
        counts[invariants(point)] += 1
    violations = [c for c, n in counts.items() if n and (c.l - a) % 2]
    return ParityReport(counts, violations, not violations)


def predicted_smooth_dimension(a: int, b: int, label: Tuple[int, int], case: str) -> Optional[int]:
    """
    표수 2 에서 열린 부분의 차원이 알려진 층만 값을 준다.
    case 1: X_{0,0} 만 ab.  case 2: X_{h,h} ∪ X_{h-1,h} (h ≡ a mod 2) 는 ab + h, a 짝수이면 X_{0,0} 은 ab.
    """
    h, l = label
    if case == CASE1:
        return a * b if (h, l) == (0, 0) else None
    if case == CASE2:
        if l >= 1 and (l - a) % 2 == 0 and h in (l, l - 1):
            return a * b + l
        if (h, l) == (0, 0) and a % 2 == 0:
            return a * b
        return None
    raise SpaceError(f"no characteristic-2 prediction for case '{case}'")


def smooth_locus_table(space: PiSpace, budget: int = DEFAULT_BUDGET) -> Dict[StratumLabel, List[int]]:
    """층별로 관측된 접공간 차원 (정렬된 목록)"""
    seen: Dict[StratumLabel, set] = defaultdict(set)
    for point in enumerate_points(space, budget):
        seen[invariants(point)].add(tangent_dim(point))
    return {c: sorted(v) for c, v in sorted(seen.items())}
