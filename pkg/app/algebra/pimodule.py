# app/algebra/pimodule.py
"""
특수 섬유의 선형대수 데이터: Π-가군 F_q^{2m}, 교대쌍 ⟨,⟩, 변형 대칭형식 {,}

좌표 규약 (0-based):
    e_i  -> 인덱스 i          (i = 0..m-1)
    πe_i -> 인덱스 m + i      (f_i 로 표기)
    Π(e_i) = f_i,  Π(f_i) = 0
    ⟨,⟩ 의 Gram = [[0, -Q], [Q, 0]]  ->  {f_i, f_j} = ⟨f_i, e_j⟩ = Q_ij
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from app.algebra.errors import SpaceError
from app.algebra.field import (
    Fq,
    Matrix,
    Vector,
    bilinear,
    block,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rref,
    transpose,
    zeros,
)

logger = logging.getLogger(__name__)

ODD = "odd"
CASE1 = "char2-case1"
CASE2 = "char2-case2"
CASES = (ODD, CASE1, CASE2)

PAIRING = "pairing"
MODIFIED = "modified"


# ---------- 부분공간 ----------
@dataclass(frozen=True)
class Subspace:
    """
    F_q^n 의 부분공간. 기저 벡터를 행으로 둔 기약 사다리꼴(RREF)로 저장하므로
    같은 공간이면 표현도 같다 (= 열 사다리꼴 표준형).
    """

    field: Fq
    ambient: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def span(cls, field: Fq, ambient: int, vectors: Sequence[Sequence[int]]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise SpaceError(f"vector of length {len(v)} in ambient dimension {ambient}")
        if not vecs:
            return cls(field, ambient, ())
        R, pivots = rref(field, vecs)
        return cls(field, ambient, tuple(tuple(R[i]) for i in range(len(pivots))))

    @classmethod
    def zero(cls, field: Fq, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def whole(cls, field: Fq, ambient: int) -> "Subspace":
        return cls.span(field, ambient, identity(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]

    def vectors(self) -> List[Vector]:
        return [list(v) for v in self.basis]

    def matrix(self) -> Matrix:
        """기저 벡터를 열로 둔 ambient × dim 행렬"""
        if not self.basis:
            return [[] for _ in range(self.ambient)]
        return transpose(self.basis)

    def annihilator(self) -> List[Vector]:
        """이 공간을 0 으로 보내는 일차 범함수들의 기저"""
        if not self.basis:
            return identity(self.ambient)
        return nullspace(self.field, self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return all(self.field.dot(a, v) == 0 for a in self.annihilator())

    def __le__(self, other: "Subspace") -> bool:
        ann = other.annihilator()
        return all(self.field.dot(a, v) == 0 for a in ann for v in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        F = self.field
        ann = other.annihilator()
        if not ann:
            return self
        # x = Σ c_i u_i 가 ann 에 모두 소멸되는 조건
        coef = [[F.dot(a, u) for u in self.basis] for a in ann]
        sols = nullspace(F, coef)
        vecs = [
            [F.total(F.mul(c, u[k]) for c, u in zip(sol, self.basis)) for k in range(self.ambient)]
            for sol in sols
        ]
        return Subspace.span(F, self.ambient, vecs)

    def image_under(self, M: Sequence[Sequence[int]]) -> "Subspace":
        return Subspace.span(self.field, len(M), [mat_vec(self.field, M, v) for v in self.basis])

    def preimage_under(self, M: Sequence[Sequence[int]]) -> "Subspace":
        """{x : M x ∈ self}"""
        F = self.field
        n = len(M[0]) if M else 0
        ann = self.annihilator()
        if not ann:
            return Subspace.whole(F, n)
        return Subspace.span(F, n, nullspace(F, mat_mul(F, ann, M), ncols=n))

    def orthogonal(self, G: Sequence[Sequence[int]]) -> "Subspace":
        """{x : vᵀ G x = 0  for v in self}"""
        F = self.field
        if not self.basis:
            return Subspace.whole(F, self.ambient)
        functionals = mat_mul(F, list(self.basis), G)
        return Subspace.span(F, self.ambient, nullspace(F, functionals))

    def frobenius_image(self, inverse_map: bool = False) -> "Subspace":
        F = self.field
        op = F.frobenius_inv if inverse_map else F.frobenius
        return Subspace.span(F, self.ambient, [[op(x) for x in v] for v in self.basis])

    def complement_in(self, larger: "Subspace") -> List[Vector]:
        """larger = self ⊕ span(반환값) 이 되도록 larger 의 기저에서 고른 벡터들"""
        chosen: List[Vector] = []
        current = self.vectors()
        r = len(current)
        for v in larger.vectors():
            if rank(self.field, current + [v]) > r:
                current.append(v)
                chosen.append(v)
                r += 1
        return chosen

    def to_list(self) -> List[List[int]]:
        return [list(v) for v in self.basis]


def enumerate_subspaces(field: Fq, n: int, k: int) -> Iterator[List[Vector]]:
    """F_q^n 의 k 차원 부분공간 전부 (RREF 행 기저). pivot 조합 → 자유 성분 사전순."""
    if k == 0:
        yield []
        return
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        for values in product(range(field.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield rows


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------- 표준 Gram ----------
def standard_gram(a: int, b: int, field: Fq, case: str) -> Matrix:
    m = a + b
    if case == ODD:
        if a > b:
            raise SpaceError(f"standard odd frame needs a <= b (got a={a}, b={b})")
        Q = zeros(m, m)
        for i in range(a):
            Q[i][b + i] = 1
            Q[b + i][i] = 1
        for i in range(a, b):
            Q[i][i] = 1
        return Q
    if case == CASE1:
        return identity(m)
    if case == CASE2:
        if m % 2:
            raise SpaceError(f"char-2 case 2 needs even a+b (got {m})")
        Q = zeros(m, m)
        for i in range(0, m, 2):
            Q[i][i + 1] = 1
            Q[i + 1][i] = 1
        return Q
    raise SpaceError(f"unknown case '{case}'")


def _infer_case(field: Fq, Q: Sequence[Sequence[int]]) -> str:
    if field.p != 2:
        return ODD
    return CASE1 if any(Q[i][i] for i in range(len(Q))) else CASE2


class PiSpace:
    """(F_q^{2m}, Π, ⟨,⟩) 와 ker Π 위 변형 형식 {,} (Gram Q)"""

    def __init__(self, field: Fq, a: int, b: int, Q: Sequence[Sequence[int]], case: Optional[str] = None):
        if a < 0 or b < 0 or a + b == 0:
            raise SpaceError(f"invalid signature (a={a}, b={b})")
        m = a + b
        if len(Q) != m or any(len(row) != m for row in Q):
            raise SpaceError(f"modified Gram must be {m}x{m}")
        self.field = field
        self.a = a
        self.b = b
        self.m = m
        self.Q: Matrix = [list(row) for row in Q]
        self.case = case or _infer_case(field, Q)
        if self.case not in CASES:
            raise SpaceError(f"unknown case '{self.case}'")
        self.Pi: Matrix = block([[zeros(m, m), zeros(m, m)], [identity(m), zeros(m, m)]])
        negQ = [[field.neg(x) for x in row] for row in self.Q]
        self.G: Matrix = block([[zeros(m, m), negQ], [self.Q, zeros(m, m)]])
        self.validate()

    @classmethod
    def standard(cls, a: int, b: int, field: Fq, case: str = ODD) -> "PiSpace":
        return cls(field, a, b, standard_gram(a, b, field, case), case)

    @classmethod
    def from_gram(cls, field: Fq, a: int, b: int, Q: Sequence[Sequence[int]]) -> "PiSpace":
        return cls(field, a, b, Q)

    def validate(self) -> None:
        F, m, Q = self.field, self.m, self.Q
        if any(Q[i][j] != Q[j][i] for i in range(m) for j in range(m)):
            raise SpaceError("modified Gram is not symmetric")
        if rank(F, Q) != m:
            raise SpaceError("modified Gram is degenerate")
        if self.case == ODD and F.p == 2:
            raise SpaceError("odd case needs odd characteristic")
        if self.case in (CASE1, CASE2):
            if F.p != 2:
                raise SpaceError(f"{self.case} needs characteristic 2")
            has_norm = any(Q[i][i] for i in range(m))
            if self.case == CASE1 and not has_norm:
                raise SpaceError("case 1 needs a modified form with nonzero norm")
            if self.case == CASE2 and (has_norm or m % 2):
                raise SpaceError("case 2 needs an alternating modified form on even rank")
        # Π² = 0, rank Π = m
        if any(x for row in mat_mul(F, self.Pi, self.Pi) for x in row) or rank(F, self.Pi) != m:
            raise SpaceError("Π is not square-zero of rank m")
        G = self.G
        if any(G[i][i] for i in range(2 * m)) or any(
            G[i][j] != F.neg(G[j][i]) for i in range(2 * m) for j in range(2 * m)
        ):
            raise SpaceError("pairing is not alternating")
        # ⟨Πx, y⟩ = -⟨x, Πy⟩
        PtG = mat_mul(F, transpose(self.Pi), G)
        GP = mat_mul(F, G, self.Pi)
        if any(PtG[i][j] != F.neg(GP[i][j]) for i in range(2 * m) for j in range(2 * m)):
            raise SpaceError("Π is not anti-self-adjoint for the pairing")

    # ---------- 좌표 ----------
    @property
    def dim(self) -> int:
        return 2 * self.m

    def f_vector(self, coords: Sequence[int]) -> Vector:
        return [0] * self.m + list(coords)

    def e_vector(self, coords: Sequence[int]) -> Vector:
        return list(coords) + [0] * self.m

    def f_part(self, v: Sequence[int]) -> Vector:
        return list(v[self.m:])

    def e_part(self, v: Sequence[int]) -> Vector:
        return list(v[: self.m])

    def basis_f(self, i: int) -> Vector:
        v = [0] * self.dim
        v[self.m + i] = 1
        return v

    def basis_e(self, i: int) -> Vector:
        v = [0] * self.dim
        v[i] = 1
        return v

    # ---------- 형식 ----------
    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return bilinear(self.field, x, self.G, y)

    def modified(self, x: Sequence[int], y: Sequence[int]) -> int:
        """ker Π 원소 (ambient 좌표) 사이의 {x, y}"""
        return bilinear(self.field, self.f_part(x), self.Q, self.f_part(y))

    def norm(self, x: Sequence[int]) -> int:
        return self.modified(x, x)

    def apply_pi(self, v: Sequence[int]) -> Vector:
        return mat_vec(self.field, self.Pi, v)

    def kernel(self) -> Subspace:
        return Subspace.span(self.field, self.dim, [self.basis_f(i) for i in range(self.m)])

    def whole(self) -> Subspace:
        return Subspace.whole(self.field, self.dim)

    def span(self, vectors: Sequence[Sequence[int]]) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def span_f(self, coords: Sequence[Sequence[int]]) -> Subspace:
        return self.span([self.f_vector(c) for c in coords])

    def modified_gram_on(self, W: Subspace) -> Matrix:
        vecs = [self.f_part(v) for v in W.basis]
        return [[bilinear(self.field, u, self.Q, v) for v in vecs] for u in vecs]

    def is_isotropic(self, W: Subspace) -> bool:
        return all(self.pairing(u, v) == 0 for u in W.basis for v in W.basis)

    def image_under_pi(self, W: Subspace) -> Subspace:
        return W.image_under(self.Pi)

    def preimage_under_pi(self, W: Subspace) -> Subspace:
        return W.preimage_under(self.Pi)

    def to_dict(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "a": self.a,
            "b": self.b,
            "case": self.case,
            "Q": [list(r) for r in self.Q],
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PiSpace) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.field, self.a, self.b, tuple(map(tuple, self.Q))))

    def __repr__(self) -> str:
        return f"PiSpace(q={self.field.q}, a={self.a}, b={self.b}, case={self.case})"


def standard_space(a: int, b: int, field: Fq, case: str = ODD) -> PiSpace:
    return PiSpace.standard(a, b, field, case)


def orthogonal(space: PiSpace, W: Subspace, form: str = PAIRING) -> Subspace:
    """
    W 의 직교여공간.
    pairing  : F_q^{2m} 안에서 ⟨,⟩ 기준
    modified : W ⊆ ker Π 일 때 ker Π 안에서 {,} 기준
    """
    if form == PAIRING:
        return W.orthogonal(space.G)
    if form == MODIFIED:
        kernel = space.kernel()
        if not W <= kernel:
            raise SpaceError("modified orthogonal needs a subspace of ker Π")
        # {f(u), f(x)} = f(u)ᵀ Q f(x)
        functionals = [space.f_vector(mat_vec(space.field, transpose(space.Q), space.f_part(v))) for v in W.basis]
        if not functionals:
            return kernel
        return Subspace.span(space.field, space.dim, nullspace(space.field, functionals)).intersect(kernel)
    raise SpaceError(f"unknown form '{form}'")


# ---------- 자기동형 ----------
def lift_isometry(g: Sequence[Sequence[int]]) -> Matrix:
    """F_q^m 의 등거리변환 g 를 diag(g, g) 로 올림 (Π, ⟨,⟩ 보존)"""
    m = len(g)
    return block([[list(map(list, g)), zeros(m, m)], [zeros(m, m), list(map(list, g))]])


def is_isometry(space: PiSpace, g: Sequence[Sequence[int]]) -> bool:
    F = space.field
    return mat_mul(F, mat_mul(F, transpose(g), space.Q), g) == space.Q


def random_isometry(space: PiSpace, rng: random.Random, steps: Optional[int] = None) -> Matrix:
    """
    {,} 를 보존하는 F_q^m 의 무작위 변환 g.
    홀수 표수: 비등방 벡터에 대한 반사의 곱
    표수 2   : 등방 벡터에 대한 transvection (case 1 은 좌표 치환도 섞음)
    """
    F, m, Q = space.field, space.m, space.Q
    steps = steps if steps is not None else m + 2
    g = identity(m)

    def random_vector() -> Vector:
        while True:
            v = [rng.randrange(F.q) for _ in range(m)]
            if any(v):
                return v

    for _ in range(steps):
        if space.case == CASE1 and rng.random() < 0.5:
            perm = list(range(m))
            rng.shuffle(perm)
            step = [[1 if perm[j] == i else 0 for j in range(m)] for i in range(m)]
        else:
            for _attempt in range(64):
                v = random_vector()
                Qv = mat_vec(F, Q, v)
                nv = F.dot(v, Qv)
                if F.p != 2 and nv != 0:
                    # x ↦ x - 2{x,v}/{v,v} v
                    c = F.neg(F.div(F.embed(2), nv))
                    break
                if F.p == 2 and nv == 0:
                    c = rng.randrange(F.q)
                    break
            else:
                continue
            step = identity(m)
            for i in range(m):
                if v[i]:
                    for j in range(m):
                        if Qv[j]:
                            step[i][j] = F.add(step[i][j], F.mul(c, F.mul(v[i], Qv[j])))
        g = mat_mul(F, step, g)

    if not is_isometry(space, g):
        raise SpaceError("sampled transformation does not preserve the modified form")
    return g


def invert(field: Fq, g: Sequence[Sequence[int]]) -> Matrix:
    return inverse(field, g)
