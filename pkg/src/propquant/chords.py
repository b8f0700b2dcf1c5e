"""Elements of A^{(x)n} built from a classical r-matrix: chord words.

A term places k chords (copies of r) on n strands.  Each strand carries the
ordered product of the legs sitting on it; a leg is (chord, side) with side 0
the first tensor factor of r.  Chords are renumbered by first appearance, so
equal products get equal keys.  This is Hom(0, n) of the free associative
algebra with an element r, before any relation is imposed.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .linalg import RowReducer

Leg = Tuple[int, int]
CKey = Tuple[Tuple[Leg, ...], ...]
CPoly = Dict[CKey, Fraction]


def canon(strands: Sequence[Sequence[Leg]]) -> CKey:
    ren: Dict[int, int] = {}
    out = []
    for s in strands:
        row = []
        for c, side in s:
            if c not in ren:
                ren[c] = len(ren)
            row.append((ren[c], side))
        out.append(tuple(row))
    return tuple(out)


def n_chords(k: CKey) -> int:
    return sum(len(s) for s in k) // 2


def cadd(a: CPoly, b: CPoly, s=1) -> CPoly:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + s * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def cscale(a: CPoly, s) -> CPoly:
    return {k: v * s for k, v in a.items()} if s else {}


def one(n: int) -> CPoly:
    return {tuple(() for _ in range(n)): Fraction(1)}


def r_elem(n: int, i: int, j: int, c=1) -> CPoly:
    """The r-matrix with first leg on strand i and second on strand j."""
    strands: List[List[Leg]] = [[] for _ in range(n)]
    strands[i].append((0, 0))
    strands[j].append((0, 1))
    return {canon(strands): Fraction(c)}


def omega(n: int, i: int, j: int) -> CPoly:
    return cadd(r_elem(n, i, j), r_elem(n, j, i))


def _mul_keys(a: CKey, b: CKey) -> CKey:
    off = n_chords(a)
    return canon([sa + tuple((c + off, s) for c, s in sb) for sa, sb in zip(a, b)])


def cmul(a: CPoly, b: CPoly, N: int | None = None) -> CPoly:
    out: CPoly = {}
    for ka, va in a.items():
        na = n_chords(ka)
        for kb, vb in b.items():
            if N is not None and na + n_chords(kb) > N:
                continue
            k = _mul_keys(ka, kb)
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def degree_part(a: CPoly, d: int) -> CPoly:
    return {k: v for k, v in a.items() if n_chords(k) == d}


def truncate(a: CPoly, N: int) -> CPoly:
    return {k: v for k, v in a.items() if n_chords(k) <= N}


def cinv(a: CPoly, N: int) -> CPoly:
    """Inverse of 1 + (higher degree) up to degree N."""
    n = len(next(iter(a)))
    e = one(n)
    x = cadd(a, e, -1)
    out, term = dict(e), dict(e)
    for _ in range(N):
        term = cscale(cmul(term, x, N), -1)
        if not term:
            break
        out = cadd(out, term)
    return out


def cexp(a: CPoly, N: int, n: int) -> CPoly:
    out, term = one(n), one(n)
    for k in range(1, N + 1):
        term = cscale(cmul(term, a, N), Fraction(1, k))
        out = cadd(out, term)
    return out


def place(a: CPoly, n: int, slots: Sequence[int]) -> CPoly:
    """Put strand s of a on strand slots[s] of an n-strand element (other strands empty)."""
    out: CPoly = {}
    for k, v in a.items():
        strands: List[List[Leg]] = [[] for _ in range(n)]
        for s, row in enumerate(k):
            strands[slots[s]].extend(row)
        kk = canon(strands)
        out[kk] = out.get(kk, 0) + v
    return {k: v for k, v in out.items() if v}


def double_strand(a: CPoly, i: int) -> CPoly:
    """Coproduct on strand i (legs are primitive): each leg goes to copy i or i+1, order kept."""
    out: CPoly = {}
    for k, v in a.items():
        row = k[i]
        for choice in itertools.product((0, 1), repeat=len(row)):
            left = tuple(l for l, c in zip(row, choice) if c == 0)
            right = tuple(l for l, c in zip(row, choice) if c == 1)
            kk = canon(list(k[:i]) + [left, right] + list(k[i + 1:]))
            out[kk] = out.get(kk, 0) + v
    return {k: v for k, v in out.items() if v}


def flip(a: CPoly) -> CPoly:
    """Exchange the two strands of a 2-strand element."""
    return place(a, 2, (1, 0))


def substitute(poly: Dict[Tuple[int, ...], Fraction], images: Sequence[CPoly], N: int, n: int) -> CPoly:
    """Evaluate a noncommutative polynomial in letters 0, 1, ... at chord elements (each letter degree 1)."""
    out: CPoly = {}
    for w, c in poly.items():
        if len(w) > N:
            continue
        t = one(n)
        for letter in w:
            t = cmul(t, images[letter], N)
        out = cadd(out, cscale(t, c))
    return out


# relations ---------------------------------------------------------------------------------

def cybe(n: int = 3) -> CPoly:
    """[r12, r13] + [r12, r23] + [r13, r23]."""
    r12, r13, r23 = r_elem(n, 0, 1), r_elem(n, 0, 2), r_elem(n, 1, 2)
    out: CPoly = {}
    for a, b in ((r12, r13), (r12, r23), (r13, r23)):
        out = cadd(out, cmul(a, b))
        out = cadd(out, cmul(b, a), -1)
    return out


def invariance_relations() -> List[CPoly]:
    """[Omega_ij, r_ik + r_jk] and [Omega_ij, r_ki + r_kj] on three strands."""
    rels = []
    for i, j, k in itertools.permutations(range(3)):
        if i > j:
            continue
        om = omega(3, i, j)
        for x in (cadd(r_elem(3, i, k), r_elem(3, j, k)), cadd(r_elem(3, k, i), r_elem(3, k, j))):
            rels.append(cadd(cmul(om, x), cmul(x, om), -1))
    return rels


def ideal_elements(rel: CPoly, n: int, k: int) -> List[CPoly]:
    """Spanning set of the degree-k part of the ideal generated by a 3-strand relation in Hom(0, n).

    The relation's strands and the legs of k - deg(rel) extra chords are
    distributed over the n strands as contiguous blocks in every order.
    """
    d = n_chords(next(iter(rel)))
    extra = k - d
    if extra < 0:
        return []
    m = len(next(iter(rel)))
    out: List[CPoly] = []
    seen = set()
    # extra chord legs are single-leg blocks labelled after the relation's chords
    extra_legs = [(d + c, s) for c in range(extra) for s in (0, 1)]
    nblocks = m + len(extra_legs)
    for target in itertools.product(range(n), repeat=nblocks):
        groups = [[b for b in range(nblocks) if target[b] == t] for t in range(n)]
        for orders in itertools.product(*[list(itertools.permutations(g)) for g in groups]):
            sig = (target, orders)
            if sig in seen:
                continue
            seen.add(sig)
            acc: CPoly = {}
            for key, v in rel.items():
                blocks = list(key) + [(l,) for l in extra_legs]
                strands = [tuple(l for b in order for l in blocks[b]) for order in orders]
                kk = canon(strands)
                acc[kk] = acc.get(kk, 0) + v
            acc = {a: b for a, b in acc.items() if b}
            if acc:
                out.append(acc)
    return out


class ChordQuotient:
    """Degree-wise reduction modulo ideals generated by 3-strand relations."""

    def __init__(self, relations: Sequence[CPoly]):
        self.relations = list(relations)
        self._rr: Dict[Tuple[int, int], RowReducer] = {}

    def reducer(self, n: int, k: int) -> RowReducer:
        key = (n, k)
        if key not in self._rr:
            rr = RowReducer()
            for rel in self.relations:
                for e in ideal_elements(rel, n, k):
                    rr.add(e)
            self._rr[key] = rr
        return self._rr[key]

    def reduce(self, a: CPoly) -> CPoly:
        if not a:
            return {}
        n = len(next(iter(a)))
        out: CPoly = {}
        degs = sorted({n_chords(k) for k in a})
        for d in degs:
            part = degree_part(a, d)
            out = cadd(out, self.reducer(n, d).reduce(part))
        return out

    def is_zero(self, a: CPoly) -> bool:
        return not self.reduce(a)
