# tests/test_field.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.errors import FieldError
from app.algebra.field import (
    INF,
    TruncRing,
    field_of_size,
    get_field,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    prime_power,
    rank,
    smith_valuations,
    solve,
    solve_direct_summand,
)

SIZES = [2, 3, 4, 5, 7, 8, 9, 25, 27]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(13) == (13, 1)
    for bad in (1, 6, 16, 19, 81):
        with pytest.raises(FieldError):
            prime_power(bad)


def test_unsupported_field_rejected():
    with pytest.raises(FieldError):
        get_field(19)
    with pytest.raises(FieldError):
        get_field(3, 4)


def test_get_field_is_cached():
    assert get_field(3, 2) is get_field(3, 2)
    assert field_of_size(9) == get_field(3, 2)


@st.composite
def field_triples(draw):
    F = field_of_size(draw(st.sampled_from(SIZES)))
    elem = st.integers(0, F.q - 1)
    return F, draw(elem), draw(elem), draw(elem)


@given(field_triples())
@settings(max_examples=300)
def test_field_axioms(triple):
    F, x, y, z = triple
    assert F.add(x, y) == F.add(y, x)
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.add(x, F.neg(x)) == 0
    if x:
        assert F.mul(x, F.inv(x)) == 1


@given(field_triples())
@settings(max_examples=200)
def test_frobenius_is_additive_and_invertible(triple):
    F, x, y, _ = triple
    assert F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y))
    assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))
    assert F.frobenius_inv(F.frobenius(x)) == x


@pytest.mark.parametrize("q", SIZES)
def test_multiplicative_group_is_cyclic(q):
    F = field_of_size(q)
    powers = {F.power(F.generator, k) for k in range(q - 1)}
    assert powers == set(F.nonzero())


def test_sqrt_char2_is_inverse_frobenius():
    F = get_field(2, 3)
    for x in F.elements():
        assert F.mul(F.sqrt(x), F.sqrt(x)) == x


def test_sqrt_rejects_non_square(F3):
    assert not F3.is_square(2)
    with pytest.raises(FieldError):
        F3.sqrt(2)


def test_division_by_zero(F3):
    with pytest.raises(FieldError):
        F3.inv(0)


# ---------- 선형대수 ----------
@st.composite
def matrices(draw):
    F = field_of_size(draw(st.sampled_from([2, 3, 4, 5])))
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 5))
    A = [[draw(st.integers(0, F.q - 1)) for _ in range(cols)] for _ in range(rows)]
    return F, A


@given(matrices())
@settings(max_examples=200)
def test_rank_nullity(data):
    F, A = data
    kernel = nullspace(F, A)
    assert rank(F, A) + len(kernel) == len(A[0])
    for v in kernel:
        assert mat_vec(F, A, v) == [0] * len(A)
    if kernel:
        assert rank(F, kernel) == len(kernel)


@given(matrices())
@settings(max_examples=200)
def test_solve_finds_preimage(data):
    F, A = data
    x = [1] * len(A[0])
    b = mat_vec(F, A, x)
    sol = solve(F, A, b)
    assert sol is not None
    assert mat_vec(F, A, sol) == b


def test_solve_inconsistent(F3):
    assert solve(F3, [[1, 0], [1, 0]], [0, 1]) is None


def test_inverse(F3):
    A = [[1, 2, 0], [0, 1, 1], [2, 0, 1]]
    assert mat_mul(F3, A, inverse(F3, A)) == identity(3)
    with pytest.raises(FieldError):
        inverse(F3, [[1, 2], [2, 1]])


# ---------- R_N ----------
def test_series_inverse(F3):
    R = TruncRing(F3, 5)
    u = R.series([2, 1, 0, 1])
    assert u * u.inverse() == R.one()
    with pytest.raises(FieldError):
        R.t().inverse()


def test_series_truncates(F3):
    R = TruncRing(F3, 3)
    t = R.t()
    assert (t * t * t).is_zero()
    assert (t * t).valuation() == 2
    assert R.zero().valuation() == INF


def test_series_rejects_bad_constant(F3):
    with pytest.raises(FieldError):
        TruncRing(F3, 3).series(7)


def test_smith_valuations_of_diagonal(F3):
    R = TruncRing(F3, 6)
    t = R.t()
    M = [[t, R.zero()], [R.zero(), t * t]]
    assert smith_valuations(M) == [1, 2]


def test_smith_valuations_invariant_under_units(F3):
    R = TruncRing(F3, 6)
    t = R.t()
    D = [[t, R.zero(), R.zero()], [R.zero(), t * t * t, R.zero()]]
    U = R.matrix([[1, 1], [2, 0]])
    V = R.matrix([[1, 0, 2], [1, 1, 0], [0, 0, 1]])
    V[0][1] = R.series([0, 1])
    M = R.mat_mul(R.mat_mul(U, D), V)
    assert smith_valuations(M) == [1, 3]


def test_smith_valuations_vanished_entries(F3):
    R = TruncRing(F3, 2)
    t = R.t()
    assert smith_valuations([[t * t, R.zero()], [R.zero(), R.one()]]) == [0, INF]


def test_solve_direct_summand(F3):
    R = TruncRing(F3, 4)
    A = R.matrix([[1, 0], [0, 1], [1, 1]])
    C = R.matrix([[2], [1]])
    C[0][0] = R.series([2, 1])
    Y = R.mat_mul(A, C)
    assert solve_direct_summand(R, A, Y) == C
    off = [row[:] for row in Y]
    off[2][0] = off[2][0] + R.monomial(1, 3)
    assert solve_direct_summand(R, A, off) is None
