"""Verma dimodules over the canonical Lie bialgebra, as graded families.

M (lower Verma): action = left multiplication in U(a) written in the
symmetric (PBW) picture; coaction fixed by the compatibility formula with
zero coaction on the unit.  P (dual upper Verma): action and coaction are the
transposes, with a sign, of the coaction and action of M.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from . import lba
from .families import (
    DELTA,
    MU,
    Family,
    State,
    apply,
    source_state,
    swap,
)
from .lba import LBAElem, add_into


# PBW decomposition ------------------------------------------------------------------

@lru_cache(maxsize=None)
def eulerian_first(L: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    """First Eulerian idempotent applied to the word 0 1 ... L-1.

    e1 = sum_k (-1)^(k-1)/k * (sum over ordered splittings into k nonempty
    subsets of the concatenated increasing subwords).
    """
    acc: Dict[Tuple[int, ...], Fraction] = {}
    letters = tuple(range(L))
    for k in range(1, L + 1):
        c = Fraction((-1) ** (k - 1), k)
        for labels in itertools.product(range(k), repeat=L):
            if len(set(labels)) != k:
                continue
            w = tuple(x for b in range(k) for x in letters if labels[x] == b)
            acc[w] = acc.get(w, 0) + c
    return tuple((w, c) for w, c in sorted(acc.items()) if c)


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@lru_cache(maxsize=None)
def pbw_split(q: int) -> Dict[int, LBAElem]:
    """x_1 ... x_q = sum_r beta_r(E_{q,r}(x)); returns r -> E_{q,r} (outputs sorted)."""
    out: Dict[int, Dict] = {}
    lens = (1,) * q
    for part in set_partitions(range(q)):
        r = len(part)
        acc = out.setdefault(r, {})
        factors = [[(tuple(block[i] for i in w), c) for w, c in eulerian_first(len(block))] for block in part]
        for combo in itertools.product(*factors):
            coef = Fraction(1)
            words = []
            for w, c in combo:
                coef *= c
                words.append(w)
            add_into(acc, (lens, tuple(sorted(words))), coef)
    return {r: LBAElem(q, r, t) for r, t in out.items()}


# the two Verma dimodules ------------------------------------------------------------------

class Verma:
    """Action/coaction families of M and P truncated at cobracket degree N."""

    def __init__(self, N: int, D: Optional[int] = None):
        self.N = N
        self.D = D
        self.residuals: Dict[Tuple[str, str, int], bool] = {}
        self._K: Dict[int, Family] = {}
        self._T: Dict[int, Family] = {}
        self.action = {
            "M": Family("pi_M", "aM", "M", self._pi_M),
            "P": Family("pi_P", "aP", "P", self._pi_P, budgeted=True),
        }
        self.coaction = {
            "M": Family("pistar_M", "M", "aM", self._pistar_M),
            "P": Family("pistar_P", "P", "aP", self._pistar_P, budgeted=True),
        }

    # M -------------------------------------------------------------------------------------
    def _pi_M(self, cell):
        _, p = cell
        out = {}
        for r, e in pbw_split(p + 1).items():
            e = lba.symmetrize_inputs(e, (1, p))
            out[(r,)] = lba.canonical_outputs(e, (r,))
        return out

    def T(self, p: int) -> Family:
        """Iterated action a^p -> M, x_1 (x_2 ( ... 1))."""
        if p not in self._T:
            def fn(cell, p=p):
                if p == 0:
                    return {(0,): lba.identity(0)}
                return {(r,): e for r, e in pbw_split(p).items()}
            self._T[p] = Family(f"T{p}", "a" * p, "M", fn)
        return self._T[p]

    def K(self, p: int) -> Family:
        """Coaction after iterated action, a^p -> (a, M), from the compatibility recursion."""
        if p in self._K:
            return self._K[p]
        N = self.N

        def fn(cell, p=p):
            if p == 0:
                return {}
            src = source_state("a" * p, (1,) * p)
            prev = self.K(p - 1)
            # (1 x pi) s12 (1 x K_{p-1})
            s = apply(prev, src, 1, N)
            t1 = apply(self.action["M"], swap(s, 0, 1), 1, N)
            # (mu x 1)(1 x K_{p-1})
            t3 = apply(MU, s, 0, N)
            # -(1 x pi)(delta x 1)(1 x T_{p-1})
            u = apply(self.T(p - 1), src, 1, N)
            u = apply(DELTA, u, 0, N)
            t2 = apply(self.action["M"], u, 1, N)
            tot = t1 + t3 - t2
            return dict(tot.comps)

        self._K[p] = Family(f"K{p}", "a" * p, "aM", fn)
        return self._K[p]

    def _pistar_M(self, cell):
        # pistar(x.v) from the compatibility rule, minus pistar of the lower PBW
        # terms of x.v, then symmetrized over x and v
        (p,) = cell
        if p == 0:
            return {}
        N = self.N
        pi, co = self.action["M"], self.coaction["M"]
        src = source_state(("a", "M"), (1, p - 1))
        s = apply(co, src, 1, N)
        tot = apply(pi, swap(s, 0, 1), 1, N) + apply(MU, s, 0, N)
        tot = tot - apply(pi, apply(DELTA, src, 0, N), 1, N)
        prod = apply(pi, src, 0, N)
        lower = State(prod.slots, prod.m, {c: e for c, e in prod.comps.items() if c != (p,)})
        tot = tot - apply(co, lower, 0, N)
        return {oc: lba.canonical_outputs(lba.symmetrize_head(e, 0, p), oc) for oc, e in tot.comps.items() if e}

    # P: transposes ---------------------------------------------------------------------------
    def _pi_P(self, cell, budget=None):
        _, q = cell
        b = self.N if budget is None else min(budget, self.N)
        out = {}
        for p in range(q, q + b + 1):
            e = self.coaction["M"].component((p,)).get((1, q))
            if e is None:
                continue
            t = lba.transpose(e).scale(-1)
            t = lba.symmetrize_inputs(t, (1, q))
            out[(p,)] = lba.canonical_outputs(t, (p,)).truncate(b)
        return out

    def _pistar_P(self, cell, budget=None):
        (p,) = cell
        b = self.N if budget is None else min(budget, self.N)
        out = {}
        for q in range(max(p - 1, 0), p + b):
            e = self.action["M"].component((1, q)).get((p,))
            if e is None:
                continue
            t = lba.transpose(e).scale(-1).truncate(b)
            t = lba.symmetrize_inputs(t, (p,))
            t = lba.canonical_outputs(t, (1, q))
            if t:
                out[(1, q)] = t
        return out

    # checks ------------------------------------------------------------------------------------
    def verify(self, D: Optional[int] = None) -> Dict[Tuple[str, str, int], bool]:
        """Run the three dimodule axioms for M and P on S^d, d <= D."""
        D = self.D if D is None else D
        for kind in ("M", "P"):
            for d in range(D + 1):
                self.residuals[(kind, "action", d)] = self.action_residual(kind, d).is_zero()
                self.residuals[(kind, "coaction", d)] = self.coaction_residual(kind, d).is_zero()
                self.residuals[(kind, "compatibility", d)] = self.compatibility_residual(kind, d).is_zero()
        return self.residuals

    def action_residual(self, kind: str, d: int) -> State:
        """x.(y.v) - y.(x.v) - [x,y].v on a x a x S^d."""
        pi = self.action[kind]
        src = source_state(("a", "a", kind), (1, 1, d))
        xy = apply(pi, apply(pi, src, 1, self.N), 0, self.N)
        yx = apply(pi, apply(pi, swap(src, 0, 1), 1, self.N), 0, self.N)
        br = apply(pi, apply(MU, src, 0, self.N), 0, self.N)
        return xy - yx - br

    def coaction_residual(self, kind: str, d: int) -> State:
        """Alt_21 (1 x pistar) pistar - (delta x 1) pistar on S^d."""
        co = self.coaction[kind]
        src = source_state((kind,), (d,))
        c1 = apply(co, src, 0, self.N)
        c2 = apply(co, c1, 1, self.N)
        alt = swap(c2, 0, 1) - c2
        return alt - apply(DELTA, c1, 0, self.N)

    def compatibility_residual(self, kind: str, d: int) -> State:
        pi, co = self.action[kind], self.coaction[kind]
        src = source_state(("a", kind), (1, d))
        lhs = apply(co, apply(pi, src, 0, self.N), 0, self.N)
        s = apply(co, src, 1, self.N)  # (x, a', v)
        t1 = apply(pi, swap(s, 0, 1), 1, self.N)
        t2 = apply(pi, apply(DELTA, src, 0, self.N), 1, self.N)
        t3 = apply(MU, s, 0, self.N)
        return lhs - (t1 - t2 + t3)
