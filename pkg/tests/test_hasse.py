# tests/test_hasse.py
import json
import random
from pathlib import Path

import pytest

from app.algebra import hasse
from app.algebra.errors import DatumError
from app.algebra.field import get_field
from app.algebra.localmodel import invariants
from app.algebra.pimodule import MODIFIED, orthogonal, random_isometry

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "poset9.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def search_n1():
    return hasse.search_examples(1, get_field(3), budget=120, seed=0)


@pytest.fixture(scope="module")
def search_n2():
    return hasse.search_examples(2, get_field(3), budget=120, seed=0)


# ---------- 포셋 ----------
@pytest.mark.parametrize("n", [1, 2, 3])
def test_poset_matches_reviewed_table(n):
    expected = FIXTURE[str(n)]
    closure = hasse.poset9(n)
    assert {k: sorted(v) for k, v in closure.items()} == {k: sorted(v) for k, v in expected["closure"].items()}
    assert [list(e) for e in hasse.poset9_edges(n)] == expected["edges"]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_poset_is_consistent(n):
    assert hasse.poset9_consistency(n) == []


def test_small_n_drops_r1_and_p1():
    for n in (1, 2):
        assert hasse.R1 not in hasse.poset9(n)
        assert hasse.P1 not in hasse.poset9(n)
    assert set(hasse.poset9(3)) == set(hasse.LABELS9)


def test_poset_rejects_nonpositive_n():
    with pytest.raises(DatumError):
        hasse.poset9(0)


def test_coarse_label():
    assert hasse.coarse_label(hasse.XORD) == (1, 1)
    assert hasse.coarse_label(hasse.B0) == (0, 0)
    assert hasse.coarse_label(hasse.P2) == (0, 1)
    with pytest.raises(DatumError):
        hasse.coarse_label("Q7")


# ---------- 탐색 ----------
def test_search_accepts_only_valid_data(search_n1, search_n2):
    for result in (search_n1, search_n2):
        assert result.data
        assert result.attempts == 120
        assert len(result.data) + result.rejected == result.attempts
        for item in result.data:
            assert hasse.is_valid_datum(item.datum)
            assert item.label in hasse.LABELS9


def test_small_n_never_realizes_r1_or_p1(search_n1, search_n2):
    for result in (search_n1, search_n2):
        assert hasse.R1 not in result.realized
        assert hasse.P1 not in result.realized


def test_conjugates_are_mutually_orthogonal(search_n2):
    for item in search_n2.data:
        d = item.datum
        f1, f2 = hasse.conjugate_F(d, 1), hasse.conjugate_F(d, 2)
        assert orthogonal(d.space, f1, MODIFIED) == f2
        assert hasse.conjugate_F_dual(d) == f1


def test_label_refines_coarse_stratum(search_n1, search_n2):
    for result in (search_n1, search_n2):
        for item in result.data:
            assert hasse.coarse_label(item.label) == invariants(item.datum.point)


def test_hasse1_vanishing_forces_hasse2(search_n2):
    for item in search_n2.data:
        inv = hasse.invariants4(item.datum)
        if not inv.b_nonzero and inv.hasse1_zero:
            assert inv.hasse2_zero


def test_label_survives_change_of_basis(search_n2):
    rng = random.Random(3)
    for item in search_n2.data[:20]:
        g = random_isometry(item.datum.space, rng)
        assert hasse.stratum9(hasse.conjugate_datum(item.datum, g)) == item.label


def test_search_is_deterministic(search_n1):
    again = hasse.search_examples(1, get_field(3), budget=120, seed=0)
    assert [i.label for i in again.data] == [i.label for i in search_n1.data]
    assert again.rejected == search_n1.rejected


def test_search_in_char2():
    result = hasse.search_examples(1, get_field(2, 2), budget=60, seed=1)
    for item in result.data:
        assert hasse.is_valid_datum(item.datum)
        assert item.label in hasse.poset9(1)


def test_search_limits():
    with pytest.raises(DatumError):
        hasse.search_examples(4, get_field(3))
    with pytest.raises(DatumError):
        hasse.search_examples(1, get_field(11))


def test_conjugate_index_must_be_one_or_two(search_n1):
    with pytest.raises(DatumError):
        hasse.conjugate_F(search_n1.data[0].datum, 3)


def test_datum_round_trip(search_n2):
    item = search_n2.data[0]
    record = json.loads(json.dumps(hasse.datum_to_dict(item.datum)))
    again = hasse.datum_from_dict(record)
    assert hasse.stratum9(again) == item.label
