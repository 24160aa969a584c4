# tests/test_localmodel.py
from fractions import Fraction

import pytest

from app.algebra.errors import BudgetExceeded, InterpolationError, PointError, SpaceError
from app.algebra.field import field_of_size, get_field
from app.algebra.localmodel import (
    LMPoint,
    StratumLabel,
    base_point,
    chart_count,
    chart_count_exhaustive,
    count_by_stratum,
    count_points,
    dim_formula,
    enumerate_points,
    estimate_count,
    hasse_edges,
    interpolate,
    interpolate_degree,
    invariants,
    labels,
    omega2,
    point_from_XYZ,
    stratum_leq,
    validate_point,
)
from app.algebra.pimodule import CASE1, CASE2, PiSpace, standard_space


def test_labels_and_order():
    assert labels(1) == [StratumLabel(0, 0), StratumLabel(0, 1), StratumLabel(1, 1)]
    assert len(labels(2)) == 6
    assert stratum_leq((0, 1), (0, 0))
    assert stratum_leq((0, 1), (1, 1))
    assert not stratum_leq((0, 0), (1, 1))
    assert not stratum_leq((1, 1), (0, 0))


def test_hasse_edges_a1():
    assert hasse_edges(1) == [
        (StratumLabel(0, 1), StratumLabel(0, 0)),
        (StratumLabel(0, 1), StratumLabel(1, 1)),
    ]


def test_dim_formula():
    assert dim_formula(2, 2, 2, 2) == 4
    assert dim_formula(2, 2, 0, 2) == 1
    assert dim_formula(1, 2, 0, 1) == 1
    with pytest.raises(PointError):
        dim_formula(1, 1, 1, 0)


def test_counts_a1_b1_q3(F3):
    assert count_by_stratum(1, 1, F3) == {
        StratumLabel(0, 0): 2,
        StratumLabel(0, 1): 2,
        StratumLabel(1, 1): 6,
    }


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_every_point_satisfies_label_inequality(a, b, F3):
    space = standard_space(a, b, F3)
    seen = set()
    for point in enumerate_points(space):
        c = invariants(point)
        assert 0 <= c.h <= c.l <= a
        key = (point.omega, point.omega1)
        assert key not in seen
        seen.add(key)


@pytest.mark.parametrize("a,b,case", [(1, 1, CASE1), (1, 2, CASE1), (2, 2, CASE2)])
def test_char2_points_satisfy_label_inequality(a, b, case, F2):
    for point in enumerate_points(standard_space(a, b, F2, case)):
        c = invariants(point)
        assert 0 <= c.h <= c.l <= a


def test_omega2_contains_omega(F3):
    space = standard_space(2, 2, F3)
    for point in enumerate_points(space):
        assert omega2(point) <= point.omega
        assert omega2(point).dim == space.m - space.a


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2)])
def test_degree_matches_dimension_formula(a, b):
    per_label = {c: {} for c in labels(a)}
    for q in (3, 5, 7, 11):
        for c, n in count_by_stratum(a, b, get_field(q)).items():
            per_label[c][q] = n
    for c, samples in per_label.items():
        assert interpolate_degree(samples) == dim_formula(a, b, c.h, c.l)


def test_degree_matches_dimension_formula_a2_b2():
    # 차수 4 를 확정하려면 q 가 6 개 필요
    per_label = {c: {} for c in labels(2)}
    for q in (3, 5, 7, 9, 11, 13):
        for c, n in count_by_stratum(2, 2, field_of_size(q)).items():
            per_label[c][q] = n
    assert per_label[StratumLabel(0, 0)][3] == 90
    for c, samples in per_label.items():
        assert interpolate_degree(samples) == dim_formula(2, 2, c.h, c.l), c


@pytest.mark.parametrize("h,l", [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)])
def test_base_point_has_requested_label(h, l, F3):
    space = standard_space(2, 2, F3)
    assert invariants(base_point(space, h, l)) == (h, l)


def test_base_point_rejects_char2(F2):
    with pytest.raises(SpaceError):
        base_point(standard_space(1, 1, F2, CASE1), 0, 0)


def test_validate_point_rejects_unstable_flag(F3):
    space = standard_space(1, 1, F3)
    good = base_point(space, 1, 1)
    bad = LMPoint(space, space.span([space.basis_e(0), space.basis_e(1)]), good.omega1)
    with pytest.raises(PointError):
        validate_point(bad)


def test_point_from_XYZ(F3):
    space = standard_space(1, 1, F3)
    assert invariants(point_from_XYZ(space, [], [[0]], [[1]])) == (1, 1)
    assert invariants(point_from_XYZ(space, [], [[0]], [[0]])) == (0, 1)
    assert invariants(point_from_XYZ(space, [], [[1]], [[0]])) == (0, 0)
    with pytest.raises(PointError):
        point_from_XYZ(space, [], [[1]], [[1]])


def test_enumeration_budget(F3):
    space = standard_space(1, 1, F3)
    assert estimate_count(space) == 4 + 1 + 4
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_points(space, budget=3))
    assert exc.value.estimate == 9


def test_count_points_under_congruent_gram(F3):
    # 같은 판별식의 다른 Gram 에서도 층별 개수가 같다
    twisted = PiSpace.from_gram(F3, 1, 1, [[1, 0], [0, 2]])
    assert count_points(twisted) == count_by_stratum(1, 1, F3)


def test_interpolate():
    assert interpolate({3: 5, 5: 9, 7: 13}) == [Fraction(-1), Fraction(2)]
    assert interpolate_degree({3: 2, 5: 2}) == 0
    with pytest.raises(InterpolationError):
        interpolate({3: 1, 5: 2, 7: 10})
    with pytest.raises(InterpolationError):
        interpolate({3: 1})


@pytest.mark.parametrize("q", [3, 5, 7])
def test_chart_count_a1_b1(q):
    assert chart_count(1, 1, get_field(q)) == 2 * q - 1


@pytest.mark.parametrize("a,b,q", [(1, 1, 3), (1, 2, 3), (2, 2, 3)])
def test_chart_count_agrees_with_exhaustive(a, b, q):
    F = get_field(q)
    assert chart_count(a, b, F) == chart_count_exhaustive(a, b, F)


def test_chart_count_needs_odd(F2):
    with pytest.raises(SpaceError):
        chart_count(1, 1, F2)
