"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping sortable keys to Fractions. The pivot of a row is its
largest key, so reduced forms are written in the smallest keys and depend only
on the key order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable

Vec = Dict[Hashable, Fraction]


def vadd(a: Vec, b: Vec, s=1) -> Vec:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + s * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vscale(a: Vec, s) -> Vec:
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


def axpy_inplace(out: dict, b: dict, s) -> None:
    for k, v in b.items():
        x = out.get(k, 0) + s * v
        if x:
            out[k] = x
        else:
            del out[k]


class RowReducer:
    """Incremental reduced row echelon form with max-key pivots."""

    def __init__(self, order=None):
        self.rows: Dict[Hashable, Vec] = {}
        self._key = order

    def _pivot(self, v: Vec):
        return max(v, key=self._key) if self._key else max(v)

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            for k in hits:
                c = v.get(k)
                if c:
                    axpy_inplace(v, self.rows[k], -c)

    def add(self, v: Vec) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = self._pivot(v)
        c = v[p]
        v = {k: x / c for k, x in v.items()}
        # keep the basis fully reduced
        for q, row in self.rows.items():
            c2 = row.get(p)
            if c2:
                axpy_inplace(row, v, -c2)
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def basis(self):
        ks = sorted(self.rows, key=self._key) if self._key else sorted(self.rows)
        return [(k, self.rows[k]) for k in ks]


def rank(vectors: Iterable[Vec]) -> int:
    rr = RowReducer()
    for v in vectors:
        rr.add(v)
    return rr.rank


def solve_affine(columns: list, target: Vec):
    """Solve sum_i x_i columns[i] = target exactly.

    Returns (x, residual) where free parameters are set to zero and residual is
    target minus the best combination (empty when solvable).
    """
    # Gaussian elimination on augmented columns with tracked combinations
    rr: Dict[Hashable, tuple] = {}
    for i, col in enumerate(columns):
        v = dict(col)
        comb = {i: Fraction(1)}
        while True:
            hits = [k for k in v if k in rr]
            if not hits:
                break
            for k in hits:
                c = v.get(k)
                if c:
                    row, rc = rr[k]
                    axpy_inplace(v, row, -c)
                    axpy_inplace(comb, rc, -c)
        if v:
            p = max(v)
            c = v[p]
            rr[p] = ({k: x / c for k, x in v.items()}, {k: x / c for k, x in comb.items()})
    v = dict(target)
    sol: Dict[int, Fraction] = {}
    while True:
        hits = [k for k in v if k in rr]
        if not hits:
            break
        for k in hits:
            c = v.get(k)
            if c:
                row, rc = rr[k]
                axpy_inplace(v, row, -c)
                axpy_inplace(sol, rc, c)
    return [sol.get(i, Fraction(0)) for i in range(len(columns))], v
