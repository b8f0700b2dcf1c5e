from fractions import Fraction

import pytest

from propquant.freelie import project_lie
from propquant.verma import Verma, eulerian_first, pbw_split, set_partitions


def test_dimodule_axioms():
    vm = Verma(2, 3)
    res = vm.verify()
    assert len(res) == 2 * 3 * 4
    assert all(res.values()), [k for k, ok in res.items() if not ok]


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_eulerian_idempotent_is_lie(L):
    poly = {w: c for w, c in eulerian_first(L)}
    coords = project_lie(poly)
    assert coords
    if L == 1:
        assert poly == {(0,): 1}


def test_pbw_split_in_degree_two():
    parts = pbw_split(2)
    assert parts[2].terms == {((1, 1), ((0,), (1,))): Fraction(1)}
    assert parts[1].terms == {((1, 1), ((0, 1),)): Fraction(1, 2), ((1, 1), ((1, 0),)): Fraction(-1, 2)}


def test_set_partitions_count():
    # Bell numbers
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(6)] == [1, 1, 2, 5, 15, 52]
