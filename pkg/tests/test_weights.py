# tests/test_weights.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.errors import WeightError
from app.algebra import weights as W


def test_dominance():
    assert W.dominant((3, 3, 1))
    assert W.dominant(())
    assert not W.dominant((0, 1))
    with pytest.raises(WeightError):
        W.make_weight((0, 1), (0,))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)])
def test_pw_matches_exhaustive_filter(a, b):
    for h in range(min(a, b) + 1):
        fast = W.enumerate_PW(a, b, h)
        assert len(fast) == W.pw_count(a, b, h)
        assert len(set(fast)) == len(fast)
        assert sorted(fast) == sorted(W.enumerate_PW_exhaustive(a, b, h))


def test_pw_rejects_out_of_range_h():
    with pytest.raises(WeightError):
        W.enumerate_PW(1, 2, 2)


def test_h0_element_acts_as_identity():
    (pw,) = W.enumerate_PW(2, 2, 0)
    w = W.make_weight((1, 0), (3, 2))
    assert W.transform(pw, w) == (-1, 0, -2, -3)


def test_whole_flag_oracle():
    assert W.orbit_dominance_oracle(W.make_weight((1, 1), (2,)), 0)
    assert W.orbit_dominance_oracle(W.make_weight((1, 1), (1,)), 0)
    assert not W.orbit_dominance_oracle(W.make_weight((2, 1), (2,)), 0)
    assert not W.orbit_dominance_oracle(W.make_weight((1, 1), (0,)), 0)


def test_criterion_examples():
    assert W.criterion_indexes(W.make_weight((1, 0), (0, -1)), 1)
    assert not W.criterion_indexes(W.make_weight((2, 1), (0, 0)), 1)
    with pytest.raises(WeightError):
        W.criterion_indexes(W.make_weight((1,), (0,)), 1)


def test_single_bound_criterion():
    w = W.make_weight((1, 1, 0), (2, 1, 1))
    assert W.intro_criterion(w, 1)
    with pytest.raises(WeightError):
        W.intro_criterion(w, 0)


def test_weights_in_range():
    assert len(list(W.weights_in_range(1, 1, 2))) == 25
    assert all(W.dominant(w.k) and W.dominant(w.l) for w in W.weights_in_range(2, 2, 1))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_criterion_failure_implies_no_sections(a, b):
    for h in range(a):
        for row in W.sweep(a, b, h, 2):
            if not row.criterion:
                assert not row.oracle, row


def test_whole_flag_sweep_has_no_violations():
    assert W.whole_flag_violations(W.sweep(2, 2, 0, 2)) == []


@given(st.data())
@settings(max_examples=200)
def test_criterion_soundness_on_random_weights(data):
    k = data.draw(st.lists(st.integers(-2, 2), min_size=1, max_size=2))
    l = data.draw(st.lists(st.integers(-2, 2), min_size=len(k), max_size=2))
    w = W.make_weight(sorted(k, reverse=True), sorted(l, reverse=True))
    h = data.draw(st.integers(0, w.a - 1))
    if not W.criterion_indexes(w, h):
        assert not W.orbit_dominance_oracle(w, h)


def test_oracle_limit():
    with pytest.raises(WeightError):
        W.orbit_dominance_oracle(W.make_weight((0,) * 6, (0,)), 0)
