# app/algebra/field.py
"""
유한체 F_q (q = p^f) 와 절단 멱급수환 R_N = F_q[t]/(t^N) 위의 정확한 연산

원소 인코딩:
    x = c_0 + c_1·p + ... + c_{f-1}·p^{f-1}   (c_i = 다항식 기저 x^i 의 계수)

고정 기약다항식 표 (f = 1 은 소체 그대로):
    p = 2  :  f=2  x^2 + x + 1          f=3  x^3 + x + 1
    p = 3  :  f=2  x^2 + 2x + 2         f=3  x^3 + 2x + 1
    p = 5  :  f=2  x^2 + 4x + 2         f=3  x^3 + 3x + 3
    p = 7  :  f=2  x^2 + 6x + 3         f=3  x^3 + 6x^2 + 4
    p = 11 :  f=2  x^2 + 7x + 2         f=3  x^3 + 2x + 9
    p = 13 :  f=2  x^2 + 12x + 2        f=3  x^3 + 2x + 11
    p = 17 :  f=2  x^2 + 16x + 3        f=3  x^3 + x + 3

- 곱셈/역원: 가장 작은 원시원소 인코딩을 생성원으로 하는 log / antilog 표
- 덧셈: f = 1 이면 mod p, 그 외에는 q <= 729 일 때 표, 아니면 자리별 덧셈
- 행렬은 list[list[int]] (행 우선), 벡터는 list[int]
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.algebra.errors import FieldError

logger = logging.getLogger(__name__)

PRIMES: Tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17)
MAX_DEGREE = 3
ADD_TABLE_LIMIT = 729

# (p, f) -> 최고차항(모닉)을 제외한 계수, 낮은 차수부터
_IRREDUCIBLE: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (7, 2): (3, 6),
    (7, 3): (4, 0, 6),
    (11, 2): (2, 7),
    (11, 3): (9, 2, 0),
    (13, 2): (2, 12),
    (13, 3): (11, 2, 0),
    (17, 2): (3, 16),
    (17, 3): (3, 1, 0),
}

INF = math.inf

Matrix = List[List[int]]
Vector = List[int]


def prime_power(q: int) -> Tuple[int, int]:
    """q = p^f 분해. 지원 범위 밖이면 FieldError"""
    for p in PRIMES:
        f, r = 0, q
        while r % p == 0:
            r //= p
            f += 1
        if r == 1 and 1 <= f <= MAX_DEGREE:
            return p, f
    raise FieldError(f"unsupported field size q={q}")


class Fq:
    """F_{p^f} 기술자. 같은 (p, f) 는 get_field 캐시로 공유된다."""

    def __init__(self, p: int, f: int = 1):
        if p not in PRIMES:
            raise FieldError(f"unsupported characteristic p={p} (supported: {PRIMES})")
        if not 1 <= f <= MAX_DEGREE:
            raise FieldError(f"unsupported degree f={f} (1..{MAX_DEGREE})")

        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus: Tuple[int, ...] = _IRREDUCIBLE.get((p, f), ())

        if f > 1:
            self._check_irreducible()

        self._digits: List[Tuple[int, ...]] = [self._to_digits(x) for x in range(self.q)]
        self._neg = [self._encode(tuple((-c) % p for c in d)) for d in self._digits]

        self._add: Optional[List[List[int]]] = None
        if f > 1 and self.q <= ADD_TABLE_LIMIT:
            self._add = [
                [self._add_digits(x, y) for y in range(self.q)] for x in range(self.q)
            ]

        self.generator = self._find_generator()
        self._exp: List[int] = [1] * (self.q - 1)
        self._log: List[int] = [0] * self.q
        x = 1
        for k in range(self.q - 1):
            self._exp[k] = x
            self._log[x] = k
            x = self._poly_mul(x, self.generator)

        self._frob = [self.power(x, p) for x in range(self.q)]
        self._frob_inv = [0] * self.q
        for x, y in enumerate(self._frob):
            self._frob_inv[y] = x

        logger.debug("built F_%d (p=%d, f=%d, generator=%d)", self.q, p, f, self.generator)

    # ---------- 내부 인코딩 ----------
    def _to_digits(self, x: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.f):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def _encode(self, digits: Sequence[int]) -> int:
        x = 0
        for c in reversed(digits):
            x = x * self.p + c
        return x

    def _add_digits(self, x: int, y: int) -> int:
        dx, dy = self._digits[x], self._digits[y]
        return self._encode(tuple((a + b) % self.p for a, b in zip(dx, dy)))

    def _poly_mul(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x * y) % self.p
        p, f = self.p, self.f
        dx, dy = self._digits[x], self._digits[y]
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(dx):
            if a:
                for j, b in enumerate(dy):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # x^f = -(modulus) 로 높은 차수 소거
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(self.modulus):
                    prod[k - f + i] = (prod[k - f + i] - c * m) % p
        return self._encode(prod[:f])

    def _check_irreducible(self) -> None:
        # 차수 <= 3 이므로 근이 없으면 기약
        coeffs = list(self.modulus) + [1]
        for r in range(self.p):
            if sum(c * pow(r, i, self.p) for i, c in enumerate(coeffs)) % self.p == 0:
                raise FieldError(f"modulus for (p={self.p}, f={self.f}) has root {r}")

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = self._poly_mul(x, g)
                order += 1
                if order > self.q - 1:
                    break
            if order == self.q - 1:
                return g
        raise FieldError(f"no primitive element found for q={self.q}")

    # ---------- 체 연산 ----------
    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def embed(self, n: int) -> int:
        """정수 n 의 소체 상 (n mod p)"""
        return n % self.p

    def add(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x + y) % self.p
        if self._add is not None:
            return self._add[x][y]
        return self._add_digits(x, y)

    def neg(self, x: int) -> int:
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self._neg[y])

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("division by zero")
        return self._exp[(-self._log[x]) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def power(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise FieldError("zero to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[x] * n) % (self.q - 1)]

    def frobenius(self, x: int) -> int:
        return self._frob[x]

    def frobenius_inv(self, x: int) -> int:
        return self._frob_inv[x]

    def sqrt(self, x: int) -> int:
        """제곱근. 표수 2 에서는 항상 유일하게 존재."""
        if self.p == 2:
            return self._frob_inv[x]
        if x == 0:
            return 0
        k = self._log[x]
        if k % 2:
            raise FieldError(f"{x} is not a square in F_{self.q}")
        return self._exp[k // 2]

    def is_square(self, x: int) -> bool:
        return self.p == 2 or x == 0 or self._log[x] % 2 == 0

    def total(self, values: Iterable[int]) -> int:
        s = 0
        for v in values:
            s = self.add(s, v)
        return s

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        for a, b in zip(u, v):
            if a and b:
                s = self.add(s, self.mul(a, b))
        return s

    def descriptor(self) -> dict:
        return {"p": self.p, "f": self.f, "q": self.q, "modulus": list(self.modulus)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fq) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash(("Fq", self.p, self.f))

    def __repr__(self) -> str:
        return f"Fq(p={self.p}, f={self.f})"


@lru_cache(maxsize=None)
def get_field(p: int, f: int = 1) -> Fq:
    return Fq(p, f)


def field_of_size(q: int) -> Fq:
    return get_field(*prime_power(q))


# ---------- 행렬 유틸 (F_q) ----------
def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def block(rows_of_blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """블록 행렬 조립 (각 블록은 직사각 행렬)"""
    out: Matrix = []
    for blocks in rows_of_blocks:
        height = len(blocks[0])
        for r in range(height):
            row: List[int] = []
            for blk in blocks:
                row.extend(blk[r])
            out.append(row)
    return out


def mat_mul(F: Fq, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if len(A[0]) != inner:
        raise FieldError(f"shape mismatch {len(A)}x{len(A[0])} * {inner}x{cols}")
    out = zeros(len(A), cols)
    for i, row in enumerate(A):
        acc = out[i]
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(cols):
                    b = Bk[j]
                    if b:
                        acc[j] = F.add(acc[j], F.mul(a, b))
    return out


def mat_vec(F: Fq, A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [F.dot(row, v) for row in A]


def mat_add(F: Fq, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: Fq, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F: Fq, c: int, A: Sequence[Sequence[int]]) -> Matrix:
    return [[F.mul(c, x) for x in row] for row in A]


def mat_frobenius(F: Fq, A: Sequence[Sequence[int]], inverse: bool = False) -> Matrix:
    op = F.frobenius_inv if inverse else F.frobenius
    return [[op(x) for x in row] for row in A]


def is_zero_matrix(A: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in A for x in row)


def vec_add(F: Fq, u: Sequence[int], v: Sequence[int]) -> Vector:
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_sub(F: Fq, u: Sequence[int], v: Sequence[int]) -> Vector:
    return [F.sub(a, b) for a, b in zip(u, v)]


def vec_scale(F: Fq, c: int, v: Sequence[int]) -> Vector:
    return [F.mul(c, a) for a in v]


def bilinear(F: Fq, u: Sequence[int], G: Sequence[Sequence[int]], v: Sequence[int]) -> int:
    """uᵀ G v"""
    return F.dot(u, mat_vec(F, G, v))


def rref(F: Fq, A: Sequence[Sequence[int]]) -> Tuple[Matrix, List[int]]:
    """기약 행 사다리꼴 (R, pivot 열 목록). 영행은 제거하지 않는다."""
    R = [list(row) for row in A]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        if inv != 1:
            R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                factor = R[i][c]
                R[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Fq, A: Sequence[Sequence[int]]) -> int:
    return len(rref(F, A)[1])


def nullspace(F: Fq, A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[Vector]:
    """{x : A x = 0} 의 기저 (자유변수마다 하나)"""
    if not A:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    n = len(A[0])
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis: List[Vector] = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R[i][fc])
        basis.append(x)
    return basis


def solve(F: Fq, A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vector]:
    """A x = b 의 해 하나 (자유변수 0). 해가 없으면 None."""
    if not A:
        return [] if all(x == 0 for x in b) else None
    n = len(A[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [0] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][n]
    return x


def inverse(F: Fq, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return [row[n:] for row in R]


# ---------- 절단 멱급수 R_N ----------
@dataclass(frozen=True)
class TruncSeries:
    """F_q[t]/(t^N) 의 원소. coeffs[i] = t^i 계수."""

    base: Fq
    N: int
    coeffs: Tuple[int, ...]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        F = self.base
        return TruncSeries(F, self.N, tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        F = self.base
        return TruncSeries(F, self.N, tuple(F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncSeries":
        F = self.base
        return TruncSeries(F, self.N, tuple(F.neg(a) for a in self.coeffs))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        F, N = self.base, self.N
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return TruncSeries(F, N, tuple(out))

    def scale(self, c: int) -> "TruncSeries":
        F = self.base
        return TruncSeries(F, self.N, tuple(F.mul(c, a) for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> float:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def constant(self) -> int:
        return self.coeffs[0]

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < self.N else 0

    def inverse(self) -> "TruncSeries":
        F, N = self.base, self.N
        if not self.is_unit():
            raise FieldError("series is not a unit")
        u0_inv = F.inv(self.coeffs[0])
        v = [0] * N
        v[0] = u0_inv
        for k in range(1, N):
            s = 0
            for i in range(1, k + 1):
                if self.coeffs[i] and v[k - i]:
                    s = F.add(s, F.mul(self.coeffs[i], v[k - i]))
            v[k] = F.neg(F.mul(u0_inv, s))
        return TruncSeries(F, N, tuple(v))

    def shift_down(self, d: int) -> "TruncSeries":
        """t^d 로 나누기 (valuation >= d 필요). 상위 자리는 0 으로 채운다."""
        if d == 0:
            return self
        if self.valuation() < d:
            raise FieldError(f"series not divisible by t^{d}")
        return TruncSeries(self.base, self.N, self.coeffs[d:] + (0,) * d)

    def shift_up(self, d: int) -> "TruncSeries":
        if d == 0:
            return self
        return TruncSeries(self.base, self.N, ((0,) * d + self.coeffs)[: self.N])

    def resize(self, N: int) -> "TruncSeries":
        coeffs = (self.coeffs + (0,) * N)[:N]
        return TruncSeries(self.base, N, coeffs)

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "(" + (" + ".join(terms) or "0") + f" mod t^{self.N})"


SeriesMatrix = List[List[TruncSeries]]


class TruncRing:
    """R_N = F_q[t]/(t^N) 와 그 위의 행렬 연산"""

    def __init__(self, base: Fq, N: int):
        if N < 1:
            raise FieldError("truncation order must be positive")
        self.base = base
        self.N = N

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncRing) and (self.base, self.N) == (other.base, other.N)

    def __hash__(self) -> int:
        return hash(("R", self.base, self.N))

    def __repr__(self) -> str:
        return f"TruncRing(q={self.base.q}, N={self.N})"

    # ---------- 원소 ----------
    def zero(self) -> TruncSeries:
        return TruncSeries(self.base, self.N, (0,) * self.N)

    def one(self) -> TruncSeries:
        return self.const(1)

    def const(self, c: int) -> TruncSeries:
        return TruncSeries(self.base, self.N, (c,) + (0,) * (self.N - 1))

    def monomial(self, c: int, d: int) -> TruncSeries:
        coeffs = [0] * self.N
        if d < self.N:
            coeffs[d] = c
        return TruncSeries(self.base, self.N, tuple(coeffs))

    def t(self) -> TruncSeries:
        return self.monomial(1, 1)

    def series(self, value) -> TruncSeries:
        """int (상수), 계수 시퀀스, 또는 TruncSeries 를 R_N 원소로"""
        if isinstance(value, TruncSeries):
            return value.resize(self.N)
        if isinstance(value, int):
            if not 0 <= value < self.base.q:
                raise FieldError(f"{value} is not an element encoding of F_{self.base.q}")
            return self.const(value)
        coeffs = tuple((list(value) + [0] * self.N)[: self.N])
        return TruncSeries(self.base, self.N, coeffs)

    # ---------- 행렬 ----------
    def matrix(self, rows) -> SeriesMatrix:
        return [[self.series(x) for x in row] for row in rows]

    def zeros(self, rows: int, cols: int) -> SeriesMatrix:
        z = self.zero()
        return [[z] * cols for _ in range(rows)]

    def identity(self, n: int) -> SeriesMatrix:
        return [[self.one() if i == j else self.zero() for j in range(n)] for i in range(n)]

    def lift(self, A: Sequence[Sequence[int]]) -> SeriesMatrix:
        return [[self.const(x) for x in row] for row in A]

    def reduce(self, A: Sequence[Sequence[TruncSeries]]) -> Matrix:
        """t = 0 으로 보낸 F_q 행렬"""
        return [[x.coeffs[0] for x in row] for row in A]

    def coefficient(self, A: Sequence[Sequence[TruncSeries]], i: int) -> Matrix:
        return [[x.coeff(i) for x in row] for row in A]

    def resize(self, A: Sequence[Sequence[TruncSeries]], N: int) -> SeriesMatrix:
        return [[x.resize(N) for x in row] for row in A]

    def mat_mul(self, A, B) -> SeriesMatrix:
        if not A:
            return []
        cols = len(B[0]) if B else 0
        out = self.zeros(len(A), cols)
        for i, row in enumerate(A):
            acc = list(out[i])
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                Bk = B[k]
                for j in range(cols):
                    if not Bk[j].is_zero():
                        acc[j] = acc[j] + a * Bk[j]
            out[i] = acc
        return out

    def mat_add(self, A, B) -> SeriesMatrix:
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]

    def mat_sub(self, A, B) -> SeriesMatrix:
        return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]

    def transpose(self, A) -> SeriesMatrix:
        return [list(col) for col in zip(*A)] if A else []

    def is_zero_matrix(self, A) -> bool:
        return all(x.is_zero() for row in A for x in row)

    def matrix_valuation(self, A) -> float:
        return min((x.valuation() for row in A for x in row), default=INF)

    def inverse(self, A) -> SeriesMatrix:
        """단위 피벗 소거로 역행렬. 가역이 아니면 FieldError."""
        n = len(A)
        aug = [list(row) + [self.one() if i == j else self.zero() for j in range(n)] for i, row in enumerate(A)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c].is_unit()), None)
            if piv is None:
                raise FieldError("matrix is not invertible over R_N")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [inv * x for x in aug[c]]
            for i in range(n):
                if i != c and not aug[i][c].is_zero():
                    factor = aug[i][c]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[c])]
        return [row[n:] for row in aug]


def independent_rows(F: Fq, A: Sequence[Sequence[int]]) -> List[int]:
    """A 의 열 수만큼의 일차독립 행 인덱스 (사전순 최소)"""
    _, pivots = rref(F, transpose(A))
    return pivots


def smith_valuations(M: Sequence[Sequence[TruncSeries]]) -> List[float]:
    """
    R_N 위 행렬의 Smith 불변량 valuation (오름차순, 길이 min(r, c)).
    t^N = 0 으로 사라진 항은 INF.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    size = min(rows, cols)
    if size == 0:
        return []
    A = [list(row) for row in M]
    vals: List[float] = []
    for k in range(size):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                v = A[i][j].valuation()
                if v != INF and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        d, pi, pj = best
        A[k], A[pi] = A[pi], A[k]
        for row in A:
            row[k], row[pj] = row[pj], row[k]
        unit_inv = A[k][k].shift_down(d).inverse()
        for i in range(k + 1, rows):
            e = A[i][k]
            if e.is_zero():
                continue
            factor = e.shift_down(d) * unit_inv
            A[i] = [x - factor * y for x, y in zip(A[i], A[k])]
        for j in range(k + 1, cols):
            e = A[k][j]
            if e.is_zero():
                continue
            factor = e.shift_down(d) * unit_inv
            for row in A:
                row[j] = row[j] - factor * row[k]
        vals.append(d)
    vals.extend([INF] * (size - len(vals)))
    return vals


def summand_residual(ring: TruncRing, A, Y) -> Tuple[SeriesMatrix, SeriesMatrix]:
    """
    A (n×k, 직합인자 기저) 의 가역 소행렬로 C 를 정하고 잔차 Y - A·C 를 함께 반환.
    잔차의 valuation 이 Y ∈ span(A) 가 처음 깨지는 t-차수.
    """
    F = ring.base
    k = len(A[0]) if A else 0
    if k == 0:
        return [], [list(row) for row in Y]
    rows = independent_rows(F, ring.reduce(A))
    if len(rows) < k:
        raise FieldError("basis is not a direct summand (reduction has deficient rank)")
    minor_inv = ring.inverse([A[r] for r in rows])
    C = ring.mat_mul(minor_inv, [Y[r] for r in rows])
    return C, ring.mat_sub(Y, ring.mat_mul(A, C))


def solve_direct_summand(ring: TruncRing, A, Y) -> Optional[SeriesMatrix]:
    """A·C = Y 의 해 C. Y 가 A 의 열 생성 공간에 없으면 None."""
    C, residual = summand_residual(ring, A, Y)
    if not ring.is_zero_matrix(residual):
        return None
    return C
