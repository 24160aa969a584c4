# tests/test_deform.py
import json
import random

import pytest

from app.algebra.deform import (
    closure_witness_search,
    constant_family,
    family_from_XYZ,
    family_from_dict,
    family_general,
    family_to_dict,
    generic_special_strata,
    lift_step,
    make_family,
    obstruction_point_char2,
    obstruction_point_odd,
    random_family,
    tangent_dim,
)
from app.algebra.errors import ConstraintViolation, FamilyError, PreconditionError, TruncationError
from app.algebra.field import TruncRing, get_field
from app.algebra.localmodel import base_point, enumerate_points, invariants, labels, stratum_leq
from app.algebra.pimodule import CASE1, standard_space
from app.services.reports import jsonable


@pytest.fixture
def space11(F3):
    return standard_space(1, 1, F3)


@pytest.fixture
def space12(F3):
    return standard_space(1, 2, F3)


@pytest.fixture
def space22(F3):
    return standard_space(2, 2, F3)


# ---------- 족 ----------
def test_xyz_family_degenerates_to_special_stratum(space12, F3):
    # X = (t) : 일반 층 (0,0), 특수 층 (0,1)
    fam = family_from_XYZ(space12, TruncRing(F3, 4), [[[0, 1]]], None, None)
    pair = generic_special_strata(fam)
    assert pair.special == (0, 1)
    assert pair.generic == (0, 0)
    assert fam.predicted == pair.generic


def test_xyz_family_without_headroom(space12, F3):
    with pytest.raises(TruncationError):
        family_from_XYZ(space12, TruncRing(F3, 3), [[[0, 1]]], None, None)


def test_xyz_family_rejects_constant_term(space11, F3):
    with pytest.raises(ConstraintViolation) as exc:
        family_from_XYZ(space11, TruncRing(F3, 4), None, None, [[1]])
    assert exc.value.order == 0


def test_xyz_family_rejects_broken_equation(space11, F3):
    t = [0, 1]
    with pytest.raises(ConstraintViolation) as exc:
        family_from_XYZ(space11, TruncRing(F3, 4), None, [[t]], [[t]])
    assert exc.value.order == 2


def test_make_family_checks_isotropy(space11, F3):
    ring = TruncRing(F3, 4)
    t = [0, 1]
    f0 = [0, 0, 1, 0]
    # 좌표 (e0, e1, f0, f1): f1 + t·e1 은 f0 와 t 차수에서 짝지어진다
    with pytest.raises(ConstraintViolation) as exc:
        make_family(space11, ring, [f0, [0, t, 0, 1]], [f0])
    assert exc.value.order == 1
    fam = make_family(space11, ring, [f0, [t, 0, 0, 1]], [f0])
    assert generic_special_strata(fam) == ((0, 1), (1, 1))


def test_general_family_prediction(space22, F3):
    ring = TruncRing(F3, 6)
    t = [0, 1]
    fam = family_general(space22, ring, 0, 2, Z=[[t, 0], [0, 0]], T=[[0, 0], [0, t]])
    pair = generic_special_strata(fam)
    assert pair.special == (0, 2)
    assert pair.generic == fam.predicted
    assert stratum_leq(pair.special, pair.generic)


def test_general_family_at_zero_T_uses_kernel_of_Y2(space22, F3):
    ring = TruncRing(F3, 6)
    t = [0, 1]
    # Y₂ = (t): dim ker Y₂ = 0, 특수 층 (0,1) 에서 일반 층 (0,0) 으로
    fam = family_general(space22, ring, 0, 1, Y2=[[t]])
    assert fam.predicted == (0, 0)
    assert generic_special_strata(fam) == ((0, 1), (0, 0))
    # Y₂ = 0: dim ker Y₂ = 1
    fam = family_general(space22, ring, 0, 1, Y2=[[0]])
    assert fam.predicted == (0, 1)
    assert generic_special_strata(fam) == ((0, 1), (0, 1))


def test_general_family_with_isotropic_Y2_column():
    # 𝔽₅ 에서 1 + 2² = 0: ᵗY₂Y₂ = 0 이라 ker Y₂ = 0 이어도 ℓ 이 내려가지 않는다
    F5 = get_field(5)
    space = standard_space(3, 3, F5)
    fam = family_general(space, TruncRing(F5, 6), 0, 1, Y2=[[[0, 1]], [[0, 2]]])
    assert fam.predicted == (0, 1)
    assert generic_special_strata(fam) == ((0, 1), (0, 1))


def test_general_family_rejects_bad_label(space22, F3):
    with pytest.raises(FamilyError):
        family_general(space22, TruncRing(F3, 4), 2, 1)


def test_constant_family_keeps_stratum(space22, F3):
    ring = TruncRing(F3, 4)
    for c in labels(2):
        pair = generic_special_strata(constant_family(base_point(space22, c.h, c.l), ring))
        assert pair.special == c
        assert pair.generic == c


def test_family_round_trip_through_json(space12, F3):
    fam = family_from_XYZ(space12, TruncRing(F3, 4), [[[0, 1]]], None, None)
    record = json.loads(json.dumps(jsonable(family_to_dict(fam))))
    again = family_from_dict(record)
    assert again == fam
    assert generic_special_strata(again) == generic_special_strata(fam)


# ---------- 닫힘 증인 ----------
@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_witness_for_every_comparable_pair(a, b, F3):
    space = standard_space(a, b, F3)
    for special in labels(a):
        for generic in labels(a):
            if not stratum_leq(special, generic):
                continue
            res = closure_witness_search(space, special, generic, N=6)
            assert res.found, f"{special} -> {generic}"
            assert generic_special_strata(res.family) == (special, generic)


def test_witness_search_rejects_incomparable(space22):
    with pytest.raises(PreconditionError):
        closure_witness_search(space22, (0, 0), (1, 1))


def test_witness_search_is_deterministic(space22):
    first = closure_witness_search(space22, (0, 2), (2, 2), seed=7)
    second = closure_witness_search(space22, (0, 2), (2, 2), seed=7)
    assert first.attempts == second.attempts
    assert family_to_dict(first.family) == family_to_dict(second.family)


def test_random_families_are_semicontinuous(space22, F3):
    ring = TruncRing(F3, 6)
    rng = random.Random(0)
    checked = 0
    for _ in range(60):
        try:
            fam = random_family(space22, ring, rng)
            pair = generic_special_strata(fam)
        except FamilyError:
            continue
        assert stratum_leq(pair.special, pair.generic)
        assert pair.generic == fam.predicted
        checked += 1
    assert checked > 0


# ---------- 접공간과 올림 ----------
@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_tangent_dimension_detects_smooth_locus(a, b, F3):
    space = standard_space(a, b, F3)
    for point in enumerate_points(space):
        c = invariants(point)
        assert (tangent_dim(point) == a * b) == (c.h == c.l)


def test_tangent_dimension_at_least_ab(space22):
    for c in labels(2):
        assert tangent_dim(base_point(space22, c.h, c.l)) >= 4


def test_constant_family_lifts_with_tangent_dimension(space22, F3):
    ring = TruncRing(F3, 2)
    for c in labels(2):
        point = base_point(space22, c.h, c.l)
        res = lift_step(constant_family(point, ring))
        assert res.solvable
        assert res.dimension == tangent_dim(point)
        assert res.order == 3


@pytest.mark.parametrize("a,b,h,l", [(1, 1, 0, 1), (1, 2, 0, 1), (2, 2, 0, 1), (2, 2, 1, 2), (2, 2, 0, 2)])
def test_odd_obstruction_point_does_not_lift(a, b, h, l):
    fam = obstruction_point_odd(get_field(3), a, b, h, l)
    assert invariants(fam.special_point()) == (h, l)
    assert not lift_step(fam).solvable


def test_char2_obstruction_point_does_not_lift(F2):
    fam = obstruction_point_char2(F2, 1, 1)
    assert fam.space.case == CASE1
    assert not lift_step(fam).solvable


def test_obstruction_point_preconditions(F2, F3):
    with pytest.raises(FamilyError):
        obstruction_point_odd(F2, 1, 1, 0, 1)
    with pytest.raises(FamilyError):
        obstruction_point_odd(F3, 1, 1, 1, 1)
    with pytest.raises(FamilyError):
        obstruction_point_char2(F3, 1, 1)
