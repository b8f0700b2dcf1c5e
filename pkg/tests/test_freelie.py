import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from propquant.errors import PropError, TruncationMismatch
from propquant.freelie import (
    GroupSeries,
    LieSeries,
    bch,
    bracket,
    is_lyndon,
    lyndon_poly,
    lyndon_words,
    padd,
    pcomm,
    pexp,
    pinv,
    plog,
    pmul,
    project_lie,
    witt_dimension,
)
from propquant.linalg import rank

AL = ("a", "b", "c")
AL2 = ("x", "y")


def bracket_span_dim(k, d):
    """Rank of all left-normed brackets of d letters: spans the degree-d Lie part."""
    polys = []
    for w in itertools.product(range(k), repeat=d):
        p = {(w[0],): Fraction(1)}
        for x in w[1:]:
            p = pcomm(p, {(x,): Fraction(1)}, d)
        polys.append(p)
    return rank(polys)


@pytest.mark.parametrize("d,expected", list(zip(range(1, 9), [2, 1, 2, 3, 6, 9, 18, 30])))
def test_witt_dimensions(d, expected):
    assert witt_dimension(2, d) == expected
    assert len(lyndon_words(2, d)) == expected
    assert bracket_span_dim(2, d) == expected


def test_lyndon_words_are_lyndon():
    for d in range(1, 7):
        ws = lyndon_words(3, d)
        assert list(ws) == sorted(ws)
        assert all(is_lyndon(w) for w in ws)
        assert len(ws) == witt_dimension(3, d)


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def lie_series(draw, N=4, alphabet=AL, lowest=1):
    coeffs = {}
    for d in range(lowest, N + 1):
        for w in lyndon_words(len(alphabet), d):
            c = draw(coeff)
            if c:
                coeffs[w] = c
    return LieSeries(tuple(alphabet), N, coeffs)


@given(lie_series(N=5, alphabet=AL2), lie_series(N=5, alphabet=AL2), lie_series(N=5, alphabet=AL2))
@settings(max_examples=15)
def test_bch_associative_degree5(a, b, c):
    assert bch(a, bch(b, c)) == bch(bch(a, b), c)


@given(lie_series(N=3), lie_series(N=3), lie_series(N=3))
@settings(max_examples=25)
def test_bch_associative_three_letters(a, b, c):
    assert bch(a, bch(b, c)) == bch(bch(a, b), c)


@given(lie_series(N=4))
@settings(max_examples=25)
def test_bch_low_degree_terms(a):
    # log(e^a e^b) = a + b + [a,b]/2 + ...: the lowest two degrees of a one-letter-each input
    x = LieSeries.letter(AL, 3, "a")
    y = LieSeries.letter(AL, 3, "b")
    z = bch(x, y)
    assert z.component(1) == (x + y).component(1)
    assert z.component(2) == bracket(x, y).scale(Fraction(1, 2)).component(2)
    assert bch(a, -a) == LieSeries.zero(AL, 4)
    assert bch(a, LieSeries.zero(AL, 4)) == a


@given(lie_series(N=4), lie_series(N=4))
@settings(max_examples=50)
def test_bracket_antisymmetric_and_lie(a, b):
    assert bracket(a, b) == -bracket(b, a)
    # to_poly of a Lie series projects back to itself
    assert LieSeries.from_poly(AL, 4, a.to_poly()) == a


@given(lie_series(N=4))
@settings(max_examples=50)
def test_exp_log_inverse(a):
    p = pexp(a.to_poly(), 4)
    assert plog(p, 4) == {w: c for w, c in a.to_poly().items()}
    one = pmul(p, pinv(p, 4), 4)
    assert one == {(): Fraction(1)}


@given(lie_series(N=3), lie_series(N=3))
@settings(max_examples=30)
def test_group_series(a, b):
    g, h = GroupSeries(a), GroupSeries(b)
    assert (g * h) * g.inverse() == GroupSeries.from_poly(AL, 3, pmul(pmul(g.to_poly(), h.to_poly(), 3),
                                                                      g.inverse().to_poly(), 3))
    assert (g * g.inverse()).is_one()
    assert GroupSeries.from_json(g.to_json()) == g


def test_non_lie_rejected():
    with pytest.raises(PropError):
        project_lie({(0, 1): Fraction(1)})
    assert project_lie(padd(lyndon_poly((0, 1)), {}, 1)) == {(0, 1): 1}


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        bch(LieSeries.zero(AL, 3), LieSeries.zero(AL, 4))
    with pytest.raises(PropError):
        LieSeries.from_json({"alphabet": ["a", "b"], "truncation": 2, "components": {"2": {"b.a": "1"}}})
