import math

import pytest

from propquant.errors import TruncationExceeded
from propquant.freelie import lyndon_poly, lyndon_words
from propquant.ideal import TensorIdeal, generated_by, ideal_power, quotient_dim
from propquant.linalg import rank
from propquant.prop import Morphism, enumerate_diagrams
from propquant.signatures import load_preset


def multilinear_lyndon_count(n):
    """Independent count: Lyndon words using each of n letters once, checked to be independent."""
    words = [w for w in lyndon_words(n, n) if sorted(w) == list(range(n))]
    assert rank(lyndon_poly(w) for w in words) == len(words)
    return len(words)


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 6)])
def test_lie_operad_dimensions(n, expected):
    ideal = load_preset("LA").ideal()
    got = ideal.quotient_dim(n, 1, (n - 1,))
    assert got == expected == multilinear_lyndon_count(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_associative_operad_dimensions(n):
    assert load_preset("AA").ideal().quotient_dim(n, 1, (n - 1,)) == math.factorial(n)


def test_reduction_is_a_projection():
    p = load_preset("LA")
    ideal = p.ideal()
    for d in enumerate_diagrams(p.sig, 3, 1, (2,)):
        f = Morphism.from_diagram(d)
        r = ideal.reduce(f)
        assert ideal.reduce(r) == r
        assert ideal.contains(f - r)
    for name, lhs, rhs in p.equations:
        assert ideal.contains(lhs - rhs)


def test_ideal_powers_of_a_generator():
    p = load_preset("LBA")
    dl = TensorIdeal(generated_by(p.sig, ["delta"]))
    sq = ideal_power(dl, 2)
    # every diagram with a delta lies in the ideal; with two deltas in the square
    assert quotient_dim(dl, 1, 2, (0, 1)) == 0
    total = len(enumerate_diagrams(p.sig, 1, 2, (0, 1)))
    assert quotient_dim(sq, 1, 2, (0, 1)) == total
    assert quotient_dim(sq, 1, 3, (0, 2)) == 0


def test_budget_is_enforced():
    ideal = TensorIdeal(load_preset("LA").relation_set(), budget=(2,))
    ideal.span(3, 1, (2,))
    with pytest.raises(TruncationExceeded):
        ideal.span(4, 1, (3,))


def test_cache_round_trip(tmp_path):
    rels = load_preset("LA").relation_set()
    a = TensorIdeal(rels, cache_dir=str(tmp_path))
    dim = a.quotient_dim(4, 1, (3,))
    files = list(tmp_path.glob("ideal-*.json"))
    assert files
    b = TensorIdeal(rels, cache_dir=str(tmp_path))
    assert b.quotient_dim(4, 1, (3,)) == dim
    assert sorted(a.span(4, 1, (3,)).rows) == sorted(b.span(4, 1, (3,)).rows)


def test_cache_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("PROPQUANT_CACHE", str(tmp_path))
    TensorIdeal(load_preset("LA").relation_set()).quotient_dim(3, 1, (2,))
    assert list(tmp_path.glob("ideal-*.json"))


def test_lie_bialgebra_small_cells():
    ideal = load_preset("LBA").ideal()
    # [1] -> [2] with one cobracket: delta modulo antisymmetry
    assert ideal.quotient_dim(1, 2, (0, 1)) == 1
    assert ideal.quotient_dim(2, 1, (1, 0)) == 1
