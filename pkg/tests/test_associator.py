"""Associator checks, with an independent matrix route for the degree-2 coefficient.

The oracle represents t_ij by the transposition P_ij acting on (Q^2)^{x3}
(these satisfy the infinitesimal braid relations) and solves the degree-2 part
of the first hexagon for the coefficient c in log Phi = c [X, Y] + ... with sympy.
"""
from fractions import Fraction

import pytest
import sympy

from propquant.associator import (
    AssociatorSolution,
    check_solution,
    chord_algebra,
    hexagon_residuals,
    insertion_is_homomorphism,
    pentagon_residual,
    solve_associator,
)
from propquant.errors import TruncationExceeded
from propquant.freelie import GT_ALPHABET, GroupSeries, LieSeries

EPS = sympy.Symbol("eps")


def transposition(i, j, n=3, dim=2):
    import itertools

    idx = list(itertools.product(range(dim), repeat=n))
    pos = {v: k for k, v in enumerate(idx)}
    M = sympy.zeros(len(idx))
    for k, v in enumerate(idx):
        w = list(v)
        w[i], w[j] = w[j], w[i]
        M[pos[tuple(w)], k] = 1
    return M


def _trunc(M, N):
    return M.applyfunc(lambda e: sympy.expand(sympy.series(e, EPS, 0, N + 1).removeO()) if e.has(EPS) else e)


def _exp(A, N):
    out, term = sympy.eye(A.shape[0]), sympy.eye(A.shape[0])
    for k in range(1, N + 1):
        term = _trunc(term * A / k, N)
        out = out + term
    return out


def oracle_degree2_coefficient(sign=1):
    c = sympy.Symbol("c")
    t12, t13, t23 = (EPS * transposition(i, j) for i, j in ((0, 1), (0, 2), (1, 2)))
    h = sympy.Rational(sign, 2)

    def phi(X, Y):
        return sympy.eye(8) + c * (X * Y - Y * X)

    def phi_inv(X, Y):
        return sympy.eye(8) - c * (X * Y - Y * X)

    lhs = _exp(h * (t13 + t23), 2)
    rhs = _trunc(phi(t13, t12) * _exp(h * t13, 2) * phi_inv(t13, t23) * _exp(h * t23, 2) * phi(t12, t23), 2)
    eqs = [sympy.expand(e).coeff(EPS, 2) for e in (lhs - rhs)]
    eqs = [e for e in eqs if e != 0]
    sol = sympy.solve(eqs, c, dict=True)
    assert len(sol) == 1
    return Fraction(str(sol[0][c]))


def test_oracle_is_nondegenerate():
    # the commutator [t12, t23] is nonzero in the representation, so c is determined
    t12, t23 = transposition(0, 1), transposition(1, 2)
    assert t12 * t23 != t23 * t12


@pytest.mark.parametrize("sign", [1, -1])
def test_degree2_coefficient_matches_oracle(sign):
    sol = solve_associator(3, sign=sign)
    c = oracle_degree2_coefficient(sign)
    assert sol.degree2_coefficient() == c
    if sign == 1:
        assert c == Fraction(1, 24)


def test_degree3_solution():
    sol = solve_associator(3)
    assert all(sol.residuals.values()), sol.residuals
    assert set(sol.residuals) == {"pentagon", "hexagon_1", "hexagon_2", "inversion", "degree_1_zero"}
    assert not sol.phi.log.component(1)
    assert set(sol.phi.log.component(2)) == {(0, 1)}


def test_hexagon_in_representation_at_degree3():
    """The degree-3 solution satisfies the first hexagon in the transposition representation too."""
    sol = solve_associator(3)
    P = sol.phi.to_poly()

    def ev(X, Y):
        out = sympy.zeros(8)
        for w, cf in P.items():
            m = sympy.eye(8)
            for letter in w:
                m = m * (X if letter == 0 else Y)
            out += sympy.Rational(cf.numerator, cf.denominator) * m
        return _trunc(out, 3)

    def inv(A):
        # (1 + x)^-1 through degree 3
        x = A - sympy.eye(8)
        return _trunc(sympy.eye(8) - x + x * x - x * x * x, 3)

    t12, t13, t23 = (EPS * transposition(i, j) for i, j in ((0, 1), (0, 2), (1, 2)))
    h = sympy.Rational(1, 2)
    lhs = _exp(h * (t13 + t23), 3)
    rhs = _trunc(ev(t13, t12) * _exp(h * t13, 3) * inv(ev(t13, t23)) * _exp(h * t23, 3) * ev(t12, t23), 3)
    assert (lhs - rhs).applyfunc(sympy.expand) == sympy.zeros(8)


def test_trivial_series_is_not_an_associator():
    one = GroupSeries.one(GT_ALPHABET, 2)
    r1, r2 = hexagon_residuals(one)
    assert r1 and r2
    assert not pentagon_residual(one)


def test_perturbed_solution_fails_pentagon_or_hexagon():
    sol = solve_associator(3)
    bad = GroupSeries(sol.phi.log + LieSeries(GT_ALPHABET, 3, {(0, 0, 1): Fraction(1)}))
    report = check_solution(bad)
    assert not all(report.values())


def test_even_solution():
    sol = solve_associator(4, even=True)
    assert all(sol.residuals.values())
    assert not sol.phi.log.component(3)


def test_json_round_trip():
    sol = solve_associator(3)
    back = AssociatorSolution.from_json(sol.to_json())
    assert back.phi == sol.phi and back.sign == sol.sign and back.N == sol.N


def test_degree_cap():
    with pytest.raises(TruncationExceeded):
        solve_associator(9)


def test_chord_algebra_dimensions_and_insertions():
    alg = chord_algebra(3)
    # U(t_3) = Q<t12, t23> (x) Q[c]: degree-2 dimension is 4 + 2 + 1 = 7... counted as words
    assert alg.dim(1) == 3
    assert alg.dim(2) == 7
    for pattern in (((1,), (2,), (3, 4)), ((1, 2), (3,), (4,)), ((1,), (2, 3), (4,))):
        assert insertion_is_homomorphism(pattern)
