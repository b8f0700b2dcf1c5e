"""Graded families of Lie bialgebra morphisms between symmetric powers.

An object is a list of slots.  Slot kinds: 'a' (the generating object, always
degree 1), 'M' (S a, the lower Verma dimodule) and 'P' (the completed S a
carrying the dual Verma structure).  A *cell* assigns a degree to every slot.

A State is a morphism out of one fixed source cell: a map from target cells to
LBA elements (outputs ordered block by block).  States are kept with inputs
symmetrized inside every source block and outputs reduced to sorted orbit
representatives inside every target block.  Every family below is stored the
same way, so composing a family after a state needs no further
symmetrization.
"""
from __future__ import annotations

from typing import Callable, Dict, Optional, Sequence, Tuple

from . import lba
from .errors import ArityError, PropError
from .lba import LBAElem

Cell = Tuple[int, ...]


class State:
    __slots__ = ("slots", "m", "comps")

    def __init__(self, slots: Sequence[str], m: int, comps: Dict[Cell, LBAElem] | None = None):
        self.slots = tuple(slots)
        self.m = m
        self.comps = {c: e for c, e in (comps or {}).items() if e}

    def __add__(self, other):
        if self.slots != other.slots or self.m != other.m:
            raise ArityError(f"cannot add states over {self.slots} and {other.slots}")
        out = dict(self.comps)
        for c, e in other.comps.items():
            out[c] = out[c] + e if c in out else e
        return State(self.slots, self.m, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return State(self.slots, self.m, {c: e.scale(s) for c, e in self.comps.items()})

    def __bool__(self):
        return any(bool(e) for e in self.comps.values())

    def truncate(self, N):
        return State(self.slots, self.m, {c: e.truncate(N) for c, e in self.comps.items()})

    def delta_part(self, d):
        return State(self.slots, self.m, {c: e.delta_part(d) for c, e in self.comps.items()})

    def __eq__(self, other):
        return isinstance(other, State) and (self - other).is_zero()

    def is_zero(self):
        return not any(e.terms for e in self.comps.values())

    def n_terms(self):
        return sum(len(e.terms) for e in self.comps.values())

    def __repr__(self):
        return f"State({''.join(self.slots)}, {len(self.comps)} cells, {self.n_terms()} terms)"


def zero_state(slots, m) -> State:
    return State(slots, m, {})


def source_state(slots: Sequence[str], cell: Cell) -> State:
    """Symmetrized identity on a source cell."""
    _check_cell(slots, cell)
    m = sum(cell)
    e = lba.symmetrize_inputs(lba.identity(m), cell)
    return State(slots, m, {tuple(cell): lba.canonical_outputs(e, cell)})


def _check_cell(slots, cell):
    if len(slots) != len(cell):
        raise ArityError("cell and slot list differ in length")
    for k, d in zip(slots, cell):
        if k == "a" and d != 1:
            raise ArityError("slot of kind 'a' must have degree 1")
        if d < 0:
            raise ArityError("negative degree")


class Family:
    """A lazily evaluated graded morphism between slot lists."""

    def __init__(self, name: str, src: Sequence[str], dst: Sequence[str], fn: Callable[..., Dict[Cell, LBAElem]],
                 budgeted: bool = False):
        self.name = name
        self.src = tuple(src)
        self.dst = tuple(dst)
        self._fn = fn
        # budgeted families take (cell, budget) and may skip terms of cobracket degree > budget
        self.budgeted = budgeted
        self._memo: Dict[Cell, Dict[Cell, LBAElem]] = {}
        self._budget: Dict[Cell, Optional[int]] = {}
        self._views: Dict[Tuple[Cell, int], Dict[Cell, LBAElem]] = {}

    def component(self, cell: Cell, budget: Optional[int] = None) -> Dict[Cell, LBAElem]:
        cell = tuple(cell)
        if not self.budgeted:
            budget = None
        if cell in self._memo:
            have = self._budget[cell]
            if have is None or (budget is not None and budget <= have):
                if budget is None or budget == have:
                    return self._memo[cell]
                v = self._views.get((cell, budget))
                if v is None:
                    v = {c: e.truncate(budget) for c, e in self._memo[cell].items()}
                    v = {c: e for c, e in v.items() if e}
                    self._views[(cell, budget)] = v
                return v
        r = self._fn(cell, budget) if self.budgeted else self._fn(cell)
        r = {c: e for c, e in r.items() if e}
        self._memo[cell] = r
        self._budget[cell] = budget
        return r

    def __repr__(self):
        return f"Family({self.name}: {''.join(self.src)} -> {''.join(self.dst)})"


def family_from_states(name, src, dst, state_fn: Callable[[Cell], State]) -> Family:
    def fn(cell):
        st = state_fn(cell)
        if st.slots != tuple(dst):
            raise PropError(f"{name}: expected target {dst}, got {st.slots}")
        return dict(st.comps)
    return Family(name, src, dst, fn)


def apply(fam: Family, st: State, pos: int, N: Optional[int] = None) -> State:
    """Apply a family to the slots pos .. pos+len(fam.src)-1 of a state."""
    k = len(fam.src)
    if st.slots[pos:pos + k] != fam.src:
        raise ArityError(f"{fam.name} expects {fam.src} at slot {pos}, state has {st.slots}")
    slots = st.slots[:pos] + fam.dst + st.slots[pos + k:]
    out: Dict[Cell, LBAElem] = {}
    for cell, e in st.comps.items():
        sub = cell[pos:pos + k]
        off = sum(cell[:pos])
        budget = None
        if N is not None:
            budget = N - min(lba.delta_degree(t) for t in e.terms)
            if budget < 0:
                continue
        for fc, fe in fam.component(sub, budget).items():
            res = lba.compose_at(fe, e, off, N)
            if not res:
                continue
            nc = cell[:pos] + fc + cell[pos + k:]
            res = lba.canonical_outputs(res, nc)
            out[nc] = out[nc] + res if nc in out else res
    return State(slots, st.m, out)


def permute(st: State, order: Sequence[int]) -> State:
    """New slot j is old slot order[j]."""
    slots = tuple(st.slots[i] for i in order)
    out = {}
    for cell, e in st.comps.items():
        starts = [sum(cell[:i]) for i in range(len(cell))]
        wires = []
        for i in order:
            wires.extend(range(starts[i], starts[i] + cell[i]))
        nc = tuple(cell[i] for i in order)
        out[nc] = lba.permute_outputs(e, wires)
    return State(slots, st.m, out)


def swap(st: State, i: int, j: int) -> State:
    order = list(range(len(st.slots)))
    order[i], order[j] = order[j], order[i]
    return permute(st, order)


def move(st: State, src: int, dst: int) -> State:
    """Move slot src so that it ends up at index dst."""
    order = list(range(len(st.slots)))
    x = order.pop(src)
    order.insert(dst, x)
    return permute(st, order)


def drop_degree_zero(st: State, pos: int) -> State:
    """Project slot pos onto its degree-0 component and remove it."""
    slots = st.slots[:pos] + st.slots[pos + 1:]
    out = {}
    for cell, e in st.comps.items():
        if cell[pos] == 0:
            out[cell[:pos] + cell[pos + 1:]] = e
    return State(slots, st.m, out)


def insert_degree_zero(st: State, pos: int, kind: str) -> State:
    slots = st.slots[:pos] + (kind,) + st.slots[pos:]
    return State(slots, st.m, {c[:pos] + (0,) + c[pos:]: e for c, e in st.comps.items()})


def state_from_family(fam: Family, cell: Cell) -> State:
    st = source_state(fam.src, cell)
    return apply(fam, st, 0)


# elementary families on the generating object --------------------------------------

def _single(elem: LBAElem, outcell: Cell):
    return {outcell: elem}


MU = Family("mu", "aa", "a", lambda c: _single(lba.bracket(), (1,)))
DELTA = Family("delta", "a", "aa", lambda c: _single(lba.cobracket(), (1, 1)))
