"""Universal quantum R-matrix of a quasitriangular Lie bialgebra, in chord words.

Given a classical r-matrix r (CYBE holds and r + r^21 is invariant), the twist
J(r) = 1 + r/2 + ... is solved degree by degree from

    J12 (D x 1)(J) = J23 (1 x D)(J) Phi(O12, O23),      O = r + r^21,

inside chord words modulo CYBE and invariance of O, where the unknown is the
inverse twist K = J^-1 (the coproduct is J^-1 D0 J).  Then

    R = (J^21)^-1 exp(O/2) J,

and R12 R13 R23 - R23 R13 R12 is reduced modulo the CYBE ideal only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import chords as C
from .chords import CKey, CPoly, ChordQuotient
from .errors import PropError, TruncationExceeded
from .freelie import GroupSeries
from .linalg import RowReducer, solve_affine

MAX_TWIST_DEGREE = 3


def two_strand_words(d: int) -> List[CKey]:
    """Chord words with d chords on two strands, both strands nonempty (counital)."""
    legs = [(c, s) for c in range(d) for s in (0, 1)]
    seen = set()
    for choice in itertools.product((0, 1), repeat=len(legs)):
        a = [l for l, x in zip(legs, choice) if x == 0]
        b = [l for l, x in zip(legs, choice) if x == 1]
        if not a or not b:
            continue
        for pa in itertools.permutations(a):
            for pb in itertools.permutations(b):
                seen.add(C.canon([pa, pb]))
    return sorted(seen)


def _dx1(a: CPoly) -> CPoly:
    return C.double_strand(a, 0)


def _1xd(a: CPoly) -> CPoly:
    return C.double_strand(a, 1)


def _twist_defect(K: CPoly, phi3: CPoly, N: int) -> CPoly:
    """K12 (D x 1)K - K23 (1 x D)K Phi on three strands."""
    lhs = C.cmul(C.place(K, 3, (0, 1)), _dx1(K), N)
    rhs = C.cmul(C.cmul(C.place(K, 3, (1, 2)), _1xd(K), N), phi3, N)
    return C.cadd(lhs, rhs, -1)


def phi_on_chords(phi: Dict[Tuple[int, ...], Fraction], N: int) -> CPoly:
    return C.substitute(phi, [C.omega(3, 0, 1), C.omega(3, 1, 2)], N, 3)


@dataclass
class Twist:
    N: int
    J: CPoly
    J_inv: CPoly
    free_parameters: Dict[int, int] = field(default_factory=dict)


def solve_twist(phi: GroupSeries, N: int, quotient: Optional[ChordQuotient] = None) -> Twist:
    """Solve the twist equation through chord degree N with J = 1 + r/2 + ..."""
    if N > MAX_TWIST_DEGREE:
        raise TruncationExceeded(f"truncation exceeded: twist degree {N} > {MAX_TWIST_DEGREE}")
    if phi.N < N:
        raise TruncationExceeded(f"truncation exceeded: associator known to degree {phi.N} < {N}")
    if quotient is None:
        quotient = ChordQuotient([C.cybe()] + C.invariance_relations())
    phi3 = phi_on_chords(phi.to_poly(), N)
    K = C.cadd(C.one(2), C.r_elem(2, 0, 1, Fraction(-1, 2)))
    free = {1: 0}
    for d in range(2, N + 1):
        base = C.degree_part(_twist_defect(K, phi3, d), d)
        words = two_strand_words(d)
        cols = []
        for w in words:
            x = {w: Fraction(1)}
            cols.append(C.cadd(C.cadd(C.place(x, 3, (0, 1)), _dx1(x)),
                               C.cadd(C.place(x, 3, (1, 2)), _1xd(x)), -1))
        ideal = quotient.reducer(3, d)
        gens = [row for _, row in ideal.basis()]
        sol, rest = solve_affine(cols + gens, {k: -v for k, v in base.items()})
        if rest:
            raise PropError(f"twist equation has no solution at chord degree {d}")
        K = C.cadd(K, {w: c for w, c in zip(words, sol) if c})
        free[d] = len(words) - _rank(cols, ideal)
    return Twist(N, C.cinv(K, N), K, free)


def _rank(cols, ideal) -> int:
    rr = RowReducer()
    for _, row in ideal.basis():
        rr.add(row)
    base = rr.rank
    for c in cols:
        rr.add(c)
    return rr.rank - base


def r_matrix(tw: Twist) -> CPoly:
    N = tw.N
    om = C.omega(2, 0, 1)
    e = C.cexp(C.cscale(om, Fraction(1, 2)), N, 2)
    jop_inv = C.flip(tw.J_inv)
    return C.cmul(C.cmul(jop_inv, e, N), tw.J, N)


def qybe_residual(R: CPoly, N: int, quotient: Optional[ChordQuotient] = None) -> CPoly:
    """R12 R13 R23 - R23 R13 R12 modulo the CYBE ideal, through chord degree N."""
    if quotient is None:
        quotient = ChordQuotient([C.cybe()])
    R12, R13, R23 = (C.place(R, 3, s) for s in ((0, 1), (0, 2), (1, 2)))
    lhs = C.cmul(C.cmul(R12, R13, N), R23, N)
    rhs = C.cmul(C.cmul(R23, R13, N), R12, N)
    return quotient.reduce(C.cadd(lhs, rhs, -1))


def twist_residual(tw: Twist, phi: GroupSeries, quotient: Optional[ChordQuotient] = None) -> CPoly:
    if quotient is None:
        quotient = ChordQuotient([C.cybe()] + C.invariance_relations())
    phi3 = phi_on_chords(phi.to_poly(), tw.N)
    return quotient.reduce(C.truncate(_twist_defect(tw.J_inv, phi3, tw.N), tw.N))


def format_chords(a: CPoly) -> str:
    """Readable form: leg a<c> is the first factor of chord c, b<c> the second."""
    if not a:
        return "0"
    parts = []
    for k in sorted(a, key=lambda k: (C.n_chords(k), k)):
        strands = []
        for row in k:
            strands.append("".join(("a" if s == 0 else "b") + str(c) for c, s in row) or "1")
        parts.append(f"{a[k]}*[{' (x) '.join(strands)}]")
    return " + ".join(parts)


@dataclass
class QYBResult:
    N: int
    R: CPoly
    twist: Twist
    qybe: CPoly
    twist_res: CPoly

    @property
    def ok(self) -> bool:
        return not self.qybe and not self.twist_res

    def first_order(self) -> CPoly:
        return C.degree_part(self.R, 1)

    def to_json(self):
        return {
            "degree": self.N,
            "R": {d: format_chords(C.degree_part(self.R, d)) for d in range(self.N + 1)},
            "twist_free_parameters": self.twist.free_parameters,
            "qybe_residual_zero": not self.qybe,
            "twist_residual_zero": not self.twist_res,
        }


def qyb_r_matrix(phi: GroupSeries, N: int = 2) -> QYBResult:
    """Universal R through chord degree N together with its QYBE and twist checks."""
    tw = solve_twist(phi, N)
    R = r_matrix(tw)
    return QYBResult(N, R, tw, qybe_residual(R, N), twist_residual(tw, phi))
