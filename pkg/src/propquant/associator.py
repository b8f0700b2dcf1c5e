"""Infinitesimal braid (chord) algebras U(t_n) and a rational associator solver.

Generators t_ij (i < j) with relations [t_ij, t_kl] = 0 for disjoint pairs and
[t_ij, t_ik + t_jk] = 0.  Elements are associative polynomials in the
generators, reduced degree by degree modulo the two-sided ideal.

Associators are group-like series Phi(X, Y) = exp(P(X, Y)) in two letters;
inside U(t_3) they are evaluated at X = t12, Y = t23.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import PropError, TruncationExceeded
from .freelie import (
    GT_ALPHABET,
    GroupSeries,
    LieSeries,
    Poly,
    degree_part,
    lyndon_words,
    padd,
    pexp,
    pinv,
    pmul,
    pscale,
    psubst,
)
from .linalg import RowReducer, solve_affine

MAX_DEGREE = {3: 7, 4: 5}


class ChordAlgebra:
    def __init__(self, n: int):
        if n < 2:
            raise PropError("need at least two strands")
        self.n = n
        self.gens = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self.index = {g: k for k, g in enumerate(self.gens)}
        self._ideal: Dict[int, RowReducer] = {}
        self.relations = self._relations()

    def t(self, i, j, c=1) -> Poly:
        if i == j:
            raise PropError("t_ii is not a generator")
        return {(self.index[(min(i, j), max(i, j))],): Fraction(c)}

    def name(self, k) -> str:
        i, j = self.gens[k]
        return f"t{i}{j}"

    def _relations(self) -> List[Poly]:
        rels = []
        n = self.n
        for a, b in itertools.combinations(self.gens, 2):
            if not set(a) & set(b):
                rels.append(padd(pmul(self.t(*a), self.t(*b), 2), pmul(self.t(*b), self.t(*a), 2), -1))
        for i, j, k in itertools.permutations(range(1, n + 1), 3):
            if i > j:
                continue
            x = self.t(i, j)
            y = padd(self.t(i, k), self.t(j, k))
            rels.append(padd(pmul(x, y, 2), pmul(y, x, 2), -1))
        return rels

    def ideal(self, d: int) -> RowReducer:
        if d > MAX_DEGREE.get(self.n, 4):
            raise TruncationExceeded(f"truncation exceeded: degree {d} for t_{self.n}")
        rr = self._ideal.get(d)
        if rr is None:
            rr = RowReducer()
            g = len(self.gens)
            if d >= 2:
                for rel in self.relations:
                    for left in range(d - 1):
                        right = d - 2 - left
                        for u in itertools.product(range(g), repeat=left):
                            for v in itertools.product(range(g), repeat=right):
                                rr.add({u + w + v: c for w, c in rel.items()})
            self._ideal[d] = rr
        return rr

    def basis(self, d: int) -> List[Tuple[int, ...]]:
        rr = self.ideal(d)
        return [w for w in itertools.product(range(len(self.gens)), repeat=d) if w not in rr.rows]

    def dim(self, d: int) -> int:
        return len(self.gens) ** d - self.ideal(d).rank

    def reduce(self, a: Poly) -> Poly:
        out: Poly = {}
        degs = sorted({len(w) for w in a})
        for d in degs:
            part = degree_part(a, d)
            out.update(self.ideal(d).reduce(part) if d >= 2 else part)
        return {w: c for w, c in out.items() if c}

    def mul(self, a: Poly, b: Poly, N: int) -> Poly:
        return self.reduce(pmul(a, b, N))

    def format(self, a: Poly) -> str:
        if not a:
            return "0"
        parts = []
        for w, c in sorted(a.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "*".join(self.name(k) for k in w) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


_ALG: Dict[int, ChordAlgebra] = {}


def chord_algebra(n: int) -> ChordAlgebra:
    if n not in _ALG:
        _ALG[n] = ChordAlgebra(n)
    return _ALG[n]


def tn_basis(n: int, d: int):
    if n not in (3, 4):
        raise PropError("only t_3 and t_4 are supported")
    return chord_algebra(n).basis(d)


def tsum(alg: ChordAlgebra, pairs) -> Poly:
    out: Poly = {}
    for i, j in pairs:
        out = padd(out, alg.t(i, j))
    return out


def evaluate_phi(phi_poly: Poly, alg: ChordAlgebra, A: Poly, B: Poly, N: int) -> Poly:
    return alg.reduce(psubst(phi_poly, [A, B], N))


# residuals ---------------------------------------------------------------------

def pentagon_residual(phi: GroupSeries, N: int | None = None) -> Poly:
    """Phi_{1,2,34} Phi_{12,3,4} - Phi_{2,3,4} Phi_{1,23,4} Phi_{1,2,3} in U(t_4)."""
    N = phi.N if N is None else N
    alg = chord_algebra(4)
    P = phi.to_poly()
    T = lambda *ps: tsum(alg, ps)
    p1 = evaluate_phi(P, alg, T((1, 2)), T((2, 3), (2, 4)), N)
    p2 = evaluate_phi(P, alg, T((1, 3), (2, 3)), T((3, 4)), N)
    p3 = evaluate_phi(P, alg, T((2, 3)), T((3, 4)), N)
    p4 = evaluate_phi(P, alg, T((1, 2), (1, 3)), T((2, 4), (3, 4)), N)
    p5 = evaluate_phi(P, alg, T((1, 2)), T((2, 3)), N)
    lhs = alg.mul(p1, p2, N)
    rhs = alg.mul(alg.mul(p3, p4, N), p5, N)
    return alg.reduce(padd(lhs, rhs, -1))


def hexagon_residual(phi: GroupSeries, sign: int = 1, N: int | None = None, scale=1) -> Poly:
    """Both hexagons with braiding exp(sign * scale * t / 2), in U(t_3).

    H1: exp(h(t13+t23)) = Phi(t13,t12) exp(h t13) Phi(t13,t23)^-1 exp(h t23) Phi(t12,t23)
    H2: exp(h(t12+t13)) = Phi(t23,t13)^-1 exp(h t13) Phi(t12,t13) exp(h t12) Phi(t12,t23)^-1
    Both residuals go into one dict, keys prefixed by "H1" or "H2".
    """
    r1, r2 = hexagon_residuals(phi, sign, N, scale)
    out = {("H1",) + w: c for w, c in r1.items()}
    out.update({("H2",) + w: c for w, c in r2.items()})
    return out


def hexagon_residuals(phi: GroupSeries, sign: int = 1, N: int | None = None, scale=1):
    N = phi.N if N is None else N
    alg = chord_algebra(3)
    h = Fraction(sign) * Fraction(scale) / 2
    P = phi.to_poly()
    t12, t13, t23 = alg.t(1, 2), alg.t(1, 3), alg.t(2, 3)
    E = lambda a: alg.reduce(pexp(pscale(a, h), N))
    ph = lambda A, B: evaluate_phi(P, alg, A, B, N)
    inv = lambda a: alg.reduce(pinv(a, N))
    mul = lambda *xs: _chain(alg, xs, N)
    lhs1 = E(padd(t13, t23))
    rhs1 = mul(ph(t13, t12), E(t13), inv(ph(t13, t23)), E(t23), ph(t12, t23))
    lhs2 = E(padd(t12, t13))
    rhs2 = mul(inv(ph(t23, t13)), E(t13), ph(t12, t13), E(t12), inv(ph(t12, t23)))
    return alg.reduce(padd(lhs1, rhs1, -1)), alg.reduce(padd(lhs2, rhs2, -1))


def _chain(alg, xs, N):
    acc = xs[0]
    for x in xs[1:]:
        acc = alg.mul(acc, x, N)
    return acc


def insertion_map(pattern: Sequence[Sequence[int]]) -> Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]]:
    """Strand-doubling t_ij -> sum of t_kl over k in block i, l in block j.

    ``pattern`` lists the blocks of t_4 strands assigned to each t_3 strand,
    e.g. ((1,), (2,), (3, 4)) for the map used in Phi_{1,2,34}.
    """
    out = {}
    for a, b in itertools.combinations(range(len(pattern)), 2):
        out[(a + 1, b + 1)] = tuple((min(k, l), max(k, l)) for k in pattern[a] for l in pattern[b])
    return out


def insertion_is_homomorphism(pattern) -> bool:
    src, dst = chord_algebra(len(pattern)), chord_algebra(sum(len(b) for b in pattern))
    mp = insertion_map(pattern)
    images = [tsum(dst, mp[g]) for g in src.gens]
    return all(not dst.reduce(psubst(rel, images, 2)) for rel in src.relations)


# solver ---------------------------------------------------------------------------

def _degree_coords(res: Poly, d: int, tag) -> Dict:
    return {(tag,) + w: c for w, c in res.items() if len(w) == d}


def _all_residuals(phi: GroupSeries, d: int, sign: int) -> Dict:
    out = _degree_coords(pentagon_residual(phi, d), d, "P")
    r1, r2 = hexagon_residuals(phi, sign, d)
    out.update(_degree_coords(r1, d, "H1"))
    out.update(_degree_coords(r2, d, "H2"))
    return out


@dataclass
class AssociatorSolution:
    phi: GroupSeries
    N: int
    sign: int = 1
    even: bool = False
    residuals: Dict[str, bool] = field(default_factory=dict)

    def degree2_coefficient(self) -> Fraction:
        return self.phi.log.coeffs.get((0, 1), Fraction(0))

    def to_json(self):
        return {
            "log_phi": self.phi.log.to_json(),
            "degree": self.N,
            "hexagon_exponent": "+1/2" if self.sign > 0 else "-1/2",
            "even": self.even,
            "residuals_zero": dict(sorted(self.residuals.items())),
        }

    @classmethod
    def from_json(cls, obj):
        sign = 1 if obj.get("hexagon_exponent", "+1/2").startswith("+") else -1
        return cls(GroupSeries(LieSeries.from_json(obj["log_phi"])), int(obj["degree"]), sign,
                   bool(obj.get("even", False)), dict(obj.get("residuals_zero", {})))


def check_solution(phi: GroupSeries, sign: int = 1) -> Dict[str, bool]:
    r1, r2 = hexagon_residuals(phi, sign)
    # Phi(Y, X) Phi(X, Y) = 1
    yx = psubst(phi.to_poly(), [{(1,): Fraction(1)}, {(0,): Fraction(1)}], phi.N)
    inv_ok = pmul(yx, phi.to_poly(), phi.N) == {(): Fraction(1)}
    return {
        "pentagon": not pentagon_residual(phi),
        "hexagon_1": not r1,
        "hexagon_2": not r2,
        "inversion": inv_ok,
        "degree_1_zero": not phi.log.component(1),
    }


def solve_associator(N: int, even: bool = False, sign: int = 1) -> AssociatorSolution:
    """Rational associator through degree N, free parameters set to zero."""
    if N > MAX_DEGREE[4]:
        raise TruncationExceeded(f"truncation exceeded: associator degree {N} > {MAX_DEGREE[4]}")
    al = GT_ALPHABET
    log = LieSeries.zero(al, N)
    for d in range(1, N + 1):
        base = GroupSeries(log)
        r0 = _all_residuals(base, d, sign)
        words = list(lyndon_words(2, d))
        if even and d % 2 == 1:
            if r0:
                raise PropError(f"no even solution at degree {d} with the chosen lower degrees")
            continue
        cols = []
        for w in words:
            trial = GroupSeries(log + LieSeries(al, N, {w: Fraction(1)}))
            cols.append(padd(_all_residuals(trial, d, sign), r0, -1))
        x, rest = solve_affine(cols, {k: -c for k, c in r0.items()})
        if rest:
            raise PropError(f"associator equations inconsistent at degree {d} (rank {len(words)})")
        log = log + LieSeries(al, N, {w: c for w, c in zip(words, x) if c})
    phi = GroupSeries(log)
    return AssociatorSolution(phi, N, sign, even, check_solution(phi, sign))
