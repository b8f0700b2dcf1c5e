"""Universal quantization of the canonical Lie bialgebra, truncated.

Everything lives in the biword model of the LBA PROP.  A structure map is a
Family on graded components S^p of M = U(a); the formal parameter h is never
stored in the result: every term must carry exactly as many h's as it has
cobrackets, which check_bigrading verifies from explicit h-tracking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import lba
from .errors import PropError, TruncationExceeded
from .families import (
    Family,
    State,
    apply,
    drop_degree_zero,
    move,
    source_state,
    swap,
)
from .freelie import GroupSeries, pinv
from .lba import LBAElem
from .verma import Verma
from .yangbaxter import QYBResult, qyb_r_matrix  # noqa: F401  (re-exported: the universal R lives with the chord model)

Pair = Tuple[int, int]
OpWord = Tuple[Pair, ...]


# h-graded states ---------------------------------------------------------------------------

class HState:
    """A polynomial in h with State coefficients."""

    def __init__(self, slots, m: int, parts: Dict[int, State] | None = None):
        self.slots = tuple(slots)
        self.m = m
        self.parts = {k: s for k, s in (parts or {}).items() if not s.is_zero()}

    @classmethod
    def of(cls, st: State, h: int = 0) -> "HState":
        return cls(st.slots, st.m, {h: st})

    def __add__(self, other: "HState") -> "HState":
        out = dict(self.parts)
        for k, s in other.parts.items():
            out[k] = out[k] + s if k in out else s
        return HState(self.slots, self.m, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "HState":
        return HState(self.slots, self.m, {k: s.scale(c) for k, s in self.parts.items()})

    def map(self, fn) -> "HState":
        parts = {k: fn(s) for k, s in self.parts.items()}
        slots = next(iter(parts.values())).slots if parts else self.slots
        return HState(slots, self.m, parts)

    def is_zero(self) -> bool:
        return not self.parts

    def collapse(self) -> State:
        """Forget h (after the bigrading has been checked)."""
        tot = State(self.slots, self.m, {})
        for s in self.parts.values():
            tot = tot + s
        return tot

    def bigrading_defects(self) -> List[Tuple[int, Tuple[int, ...], int]]:
        """(h, cell, delta degree) for every stored term whose h-power differs from its cobracket count."""
        bad = []
        for h, s in self.parts.items():
            for cell, e in s.comps.items():
                for k in e.terms:
                    d = lba.delta_degree(k)
                    if d != h:
                        bad.append((h, cell, d))
        return bad


# r-matrix and Casimir operators ------------------------------------------------------------

class Operators:
    """Action of r_ij and Omega_ij on states whose slots are dimodules."""

    def __init__(self, vm: Verma):
        self.vm = vm

    def r(self, st: State, i: int, j: int, N: Optional[int] = None) -> State:
        """Coact on slot j, carry the new a-slot in front of slot i, act there."""
        if i == j:
            raise PropError("r-matrix needs two distinct slots")
        N = self.vm.N if N is None else N
        s = apply(self.vm.coaction[st.slots[j]], st, j, N)
        s = move(s, j, i)
        return apply(self.vm.action[s.slots[i + 1]], s, i, N)

    def omega(self, st: State, i: int, j: int, N: Optional[int] = None) -> State:
        return self.r(st, i, j, N) + self.r(st, j, i, N)

    def apply_poly(self, poly: Dict[OpWord, Fraction], hst: HState, N: int) -> HState:
        """Apply sum c_w * Omega_{w_1} ... Omega_{w_k} (rightmost first); each factor carries one h."""
        trie: Dict = {}
        for w, c in poly.items():
            if len(w) > N or not c:
                continue
            node = trie
            for pair in reversed(w):
                node = node.setdefault(pair, {})
            node[None] = node.get(None, 0) + c

        out = HState(hst.slots, hst.m)
        for h0, st in hst.parts.items():
            parts: Dict[int, State] = {}

            def walk(node, cur: State, h: int):
                c = node.get(None, 0)
                if c:
                    parts[h] = parts[h] + cur.scale(c) if h in parts else cur.scale(c)
                if h >= N:
                    return
                for pair, child in node.items():
                    if pair is None:
                        continue
                    nxt = self.omega(cur, pair[0], pair[1], N)
                    if not nxt.is_zero():
                        walk(child, nxt, h + 1)

            walk(trie, st, h0)
            out = out + HState(st.slots, st.m, parts)
        return out


def build_verma(D: int, N: int, verify: bool = True) -> Verma:
    """Verma dimodules M and P at symmetric cap D and cobracket cap N, axioms checked on S^{<=D}."""
    if D < 2 or N < 1:
        raise PropError(f"caps too small to state the dimodule axioms: need D >= 2 and N >= 1 (got D={D}, N={N})")
    vm = Verma(N, D)
    if verify:
        bad = [k for k, ok in vm.verify().items() if not ok]
        if bad:
            raise PropError(f"dimodule axioms fail at {bad}")
    return vm


def r_matrix(vm: Verma, kinds: Tuple[str, str], cell: Tuple[int, int], N: Optional[int] = None) -> Tuple[State, State]:
    """r = (pi x 1) s12 (1 x pi*) and Omega = r + r^op on the source cell of M1 x M2."""
    ops = Operators(vm)
    src = source_state(kinds, cell)
    r = ops.r(src, 0, 1, N)
    return r, r + ops.r(src, 1, 0, N)


def expand_poly(poly: Dict[Tuple[int, ...], Fraction], images: Sequence[Sequence[Pair]], N: int) -> Dict[OpWord, Fraction]:
    """Substitute letter k -> sum of Omega_pair over images[k]; words longer than N dropped."""
    out: Dict[OpWord, Fraction] = {}
    for w, c in poly.items():
        if len(w) > N:
            continue
        acc = {(): Fraction(c)}
        for letter in w:
            acc = {u + (p,): x for u, x in acc.items() for p in images[letter]}
        for u, x in acc.items():
            out[u] = out.get(u, 0) + x
    return {u: x for u, x in out.items() if x}


def exp_poly(c: Fraction, N: int) -> Dict[Tuple[int, ...], Fraction]:
    """exp(c * X) in one letter."""
    return {(0,) * k: Fraction(c) ** k / factorial(k) for k in range(N + 1)}


# elementary families on M -------------------------------------------------------------------

def _sym_identity(cell_in: Tuple[int, ...], cell_out: Tuple[int, ...]) -> LBAElem:
    m = sum(cell_in)
    e = lba.symmetrize_inputs(lba.identity(m), cell_in)
    return lba.canonical_outputs(e, cell_out)


MULT_P = Family("mult_P", "aP", "P", lambda c: {(c[1] + 1,): _sym_identity(c, (c[1] + 1,))})
UNIT = Family("unit", "", "M", lambda c: {(0,): lba.identity(0)})
COUNIT = Family("counit", "M", "", lambda c: {(): lba.identity(0)} if c == (0,) else {})


def _delta0(cell):
    (p,) = cell
    return {(i, p - i): _sym_identity((p,), (i, p - i)).scale(comb(p, i)) for i in range(p + 1)}


COPRODUCT_0 = Family("Delta_0", "M", "MM", _delta0)


# eta and psi ----------------------------------------------------------------------------------

@dataclass
class EtaPsi:
    eta: Family          # M -> (P, M), the coinvariant lift of X_0
    psi: Family          # (M, M) -> (P, M), u (x) v -> u . eta(v)
    certificates: Dict[int, Fraction] = field(default_factory=dict)  # p -> c with mult o split = c id


def split_certificate(vm: Verma, p: int) -> Fraction:
    """mult o (leading part of the P coaction) on S^p, as a scalar multiple of the identity."""
    src = source_state(("P",), (p,))
    co = apply(vm.coaction["P"], src, 0, 0)
    lead = State(co.slots, co.m, {c: e for c, e in co.comps.items() if c == (1, p - 1)})
    back = apply(MULT_P, lead, 0, 0)
    ident = src.comps[(p,)]
    got = back.comps.get((p,))
    if got is None:
        raise PropError(f"split map vanishes on S^{p}: kernel is nonzero")
    k, v = next(iter(ident.terms.items()))
    c = got.terms.get(k, Fraction(0)) / v
    if c == 0 or got != ident.scale(c) or len(back.comps) != 1:
        raise PropError(f"mult o split is not invertible on S^{p}")
    return c


def solve_eta_psi(vm: Verma) -> EtaPsi:
    N = vm.N
    certs: Dict[int, Fraction] = {p: split_certificate(vm, p) for p in range(1, N + 1)}

    def eta_fn(cell):
        (d,) = cell
        st = State(("P", "M"), d, {(0, d): source_state(("M",), (d,)).comps[(d,)]})
        for p in range(1, N + 1):
            c1 = apply(vm.coaction["P"], st, 0, N)
            c2 = swap(apply(vm.coaction["M"], st, 1, N), 0, 1)
            tot = c1 + c2
            rhs = State(tot.slots, d, {c: e for c, e in tot.comps.items() if c[1] == p - 1}).scale(-1)
            st = st + apply(MULT_P, rhs, 0, N).scale(1 / certs[p])
        return dict(st.comps)

    eta = Family("eta", "M", "PM", eta_fn)

    def act_PX(st: State) -> State:
        """a acting on (P, X) as a tensor product of modules; a sits in slot 0."""
        t = apply(vm.action["P"], st, 0, N)
        return t + apply(vm.action["M"], move(st, 0, 1), 1, N)

    def psi_fn(cell):
        k, d = cell
        if k == 0:
            src = source_state(("M",), (d,))
            return dict(apply(eta, src, 0, N).comps)
        src = source_state(("a", "M", "M"), (1, k - 1, d))
        tot = act_PX(apply(psi, src, 1, N))
        prod = apply(vm.action["M"], src, 0, N)
        lower = State(prod.slots, prod.m, {c: e for c, e in prod.comps.items() if c[0] != k})
        tot = tot - apply(psi, lower, 0, N)
        return {oc: lba.canonical_outputs(lba.symmetrize_head(e, 0, k), oc) for oc, e in tot.comps.items() if e}

    psi = Family("psi", "MM", "PM", psi_fn)
    return EtaPsi(eta, psi, certs)


def eta_residual(vm: Verma, ep: EtaPsi, d: int) -> State:
    """Coaction of P (x) M applied to eta on S^d; zero when eta is a comodule map from X_0."""
    N = vm.N
    st = apply(ep.eta, source_state(("M",), (d,)), 0, N)
    return apply(vm.coaction["P"], st, 0, N) + swap(apply(vm.coaction["M"], st, 1, N), 0, 1)


def psi_comodule_residual(vm: Verma, ep: EtaPsi, cell: Tuple[int, int]) -> State:
    """Coaction after psi minus psi after coaction (X_0 carries the zero coaction)."""
    N = vm.N
    src = source_state(("M", "M"), cell)
    st = apply(ep.psi, src, 0, N)
    lhs = apply(vm.coaction["P"], st, 0, N) + swap(apply(vm.coaction["M"], st, 1, N), 0, 1)
    rhs = apply(ep.psi, apply(vm.coaction["M"], src, 0, N), 1, N)
    return lhs - rhs


# evaluating diagrams through families ----------------------------------------------------------

def evaluate_diagram(d, families: Dict[str, Family], cell: Tuple[int, ...], N: int, kind: str = "M") -> State:
    """Interpret a diagram whose wires all carry the object `kind`, on one source cell."""
    from .prop import topological_order

    smap = d.src_map()
    st = source_state((kind,) * d.m, cell)
    frontier: List = [(-1, j) for j in range(d.m)]
    for v in topological_order(d):
        name, a, b = d.nodes[v]
        fam = families.get(name)
        if fam is None:
            raise PropError(f"no structure map for generator {name!r}")
        ins = [frontier.index(smap[(v, k)]) for k in range(a)]
        rest = [i for i in range(len(frontier)) if i not in ins]
        st = apply(fam, _permute(st, rest + ins), len(rest), N)
        frontier = [frontier[i] for i in rest] + [(v, k) for k in range(b)]
    order = [frontier.index(smap[(-1, j)]) for j in range(d.n)]
    return _permute(st, order)


def _permute(st: State, order: Sequence[int]) -> State:
    from .families import permute
    if list(order) == list(range(len(order))):
        return st
    return permute(st, order)


def evaluate_morphism(f, families: Dict[str, Family], cell: Tuple[int, ...], N: int, kind: str = "M") -> State:
    tot = State((kind,) * f.n, sum(cell), {})
    for dgm, c in f.terms.items():
        tot = tot + evaluate_diagram(dgm, families, cell, N, kind).scale(c)
    return tot


def source_cells(m: int, D: int):
    """All degree tuples of length m with total at most D."""
    if m == 0:
        yield ()
        return
    for first in range(D + 1):
        for rest in source_cells(m - 1, D - first):
            yield (first,) + rest


# the quantized Hopf algebra -------------------------------------------------------------------

@dataclass
class QuantizeConfig:
    delta_cap: int = 2       # N: cobracket degree (= h-degree) kept
    sym_cap: int = 3         # D: total symmetric degree of checked source cells
    associator_sign: int = 1


class QuantizedHopf:
    """Product, coproduct, unit, counit, antipode and its inverse on M = U(a), truncated."""

    def __init__(self, phi: GroupSeries, cfg: QuantizeConfig = QuantizeConfig(), vm: Verma | None = None):
        if phi.N < cfg.delta_cap:
            raise TruncationExceeded(f"truncation exceeded: associator known to degree {phi.N} < {cfg.delta_cap}")
        if cfg.sym_cap < 2 or cfg.delta_cap < 1:
            raise PropError("need sym_cap >= 2 and delta_cap >= 1")
        self.cfg = cfg
        self.N = N = cfg.delta_cap
        self.vm = vm or Verma(N)
        self.ops = Operators(self.vm)
        self.ep = solve_eta_psi(self.vm)
        self.phi_series = phi
        self.phi = phi.to_poly()
        self.phi_inv = pinv(self.phi, N)
        self.h_states: Dict[Tuple[str, Tuple[int, ...], int], HState] = {}
        self.twist_corruption: Fraction = Fraction(0)

        self.product = Family("mu", "MM", "M", self._product, budgeted=True)
        self.twist = Family("J", "MM", "MM", self._twist, budgeted=True)
        self.twist_inverse = Family("J^-1", "MM", "MM", self._twist_inverse, budgeted=True)
        self.coproduct = Family("Delta", "M", "MM", self._coproduct, budgeted=True)
        self.unit = UNIT
        self.counit = COUNIT
        self.antipode = Family("S", "M", "M", lambda c, b: self._antipode(c, b, False), budgeted=True)
        self.antipode_inv = Family("Sinv", "M", "M", lambda c, b: self._antipode(c, b, True), budgeted=True)

    def _cap(self, budget) -> int:
        return self.N if budget is None else min(self.N, budget)

    def families(self) -> Dict[str, Family]:
        return {"mu": self.product, "Delta": self.coproduct, "iota": self.unit, "eps": self.counit,
                "S": self.antipode, "Sinv": self.antipode_inv}

    # product: (1+ x 1+ x 1) Phi^-1(Omega12, Omega23) (1 x psi)(eta x 1); psi takes the Verma
    # factor from eta's second output and the second argument as X_0, and the associator
    # moves P x (P x X) back to (P x P) x X
    def _product(self, cell, budget=None):
        N = self._cap(budget)
        src = source_state(("M", "M"), cell)
        st = apply(self.ep.psi, apply(self.ep.eta, src, 0, N), 1, N)
        poly = expand_poly(self.phi_inv, [[(0, 1)], [(1, 2)]], N)
        hst = self.ops.apply_poly(poly, HState.of(st), N)
        hst = hst.map(lambda s: drop_degree_zero(drop_degree_zero(s, 0), 0))
        self.h_states[("mu", cell, N)] = hst
        return dict(hst.collapse().comps)

    # twist: (1+ x 1 x 1+ x 1) Phi^-1_{1,3,24} Phi_{3,2,4} e^{-Omega23/2} Phi^-1_{2,3,4} Phi_{1,2,34} (eta x eta)
    def _twist(self, cell, budget=None):
        N = self._cap(budget)
        src = source_state(("M", "M"), cell)
        st = apply(self.ep.eta, apply(self.ep.eta, src, 1, N), 0, N)
        hst = HState.of(st)
        steps = [
            (self.phi, [[(0, 1)], [(1, 2), (1, 3)]]),
            (self.phi_inv, [[(1, 2)], [(2, 3)]]),
            (exp_poly(Fraction(-1, 2), N), [[(1, 2)]]),
            (self.phi, [[(1, 2)], [(1, 3)]]),
            (self.phi_inv, [[(0, 2)], [(1, 2), (2, 3)]]),
        ]
        for poly, images in steps:
            hst = self.ops.apply_poly(expand_poly(poly, images, N), hst, N)
        hst = hst.map(lambda s: drop_degree_zero(drop_degree_zero(s, 2), 0))
        if self.twist_corruption and 1 in hst.parts:
            # negative control: perturb the first-order coefficient
            hst.parts[1] = hst.parts[1].scale(1 + self.twist_corruption)
        self.h_states[("J", cell, N)] = hst
        return dict(hst.collapse().comps)

    def _twist_inverse(self, cell, budget=None):
        N = self._cap(budget)
        src = source_state(("M", "M"), cell)
        res, term = src, src
        for _ in range(N):
            term = (apply(self.twist, term, 0, N) - term).scale(-1)
            if term.is_zero():
                break
            res = res + term
        return dict(res.comps)

    def _coproduct(self, cell, budget=None):
        N = self._cap(budget)
        st = apply(COPRODUCT_0, source_state(("M",), cell), 0, N)
        return dict(apply(self.twist_inverse, st, 0, N).comps)

    def _antipode(self, cell, budget, inverse: bool):
        # S(v) = eps(v) - mu((S x 1)(Delta(v) - v x 1)); for S^-1 use the opposite coproduct
        b = self.N if budget is None else budget
        (p,) = cell
        src = source_state(("M",), cell)
        d = apply(self.coproduct, src, 0, b)
        if inverse:
            d = swap(d, 0, 1)
        rest = State(d.slots, d.m, {c: e for c, e in d.comps.items() if c[1] != 0})
        fam = self.antipode_inv if inverse else self.antipode
        t = apply(self.product, apply(fam, rest, 0, b), 0, b)
        out = {c: -e for c, e in t.comps.items()}
        if p == 0:
            out[(0,)] = out.get((0,), LBAElem(0, 0)) + lba.identity(0)
        return out

    # checks ---------------------------------------------------------------------------------------
    def relation_residual(self, rel, cell) -> State:
        return evaluate_morphism(rel, self.families(), cell, self.N)

    def check_hopf(self, D: Optional[int] = None, axioms: Optional[Sequence[str]] = None) -> "HopfReport":
        """Evaluate every Hopf-algebra axiom on all source cells of total degree <= D."""
        from .signatures import load_preset

        D = self.cfg.sym_cap if D is None else D
        pre = load_preset("HA")
        entries = []
        for name, _, _ in pre.equations:
            if axioms is not None and name not in axioms:
                continue
            rel = pre.relation(name)
            for cell in source_cells(rel.m, D):
                res = self.relation_residual(rel, cell)
                entries.append(AxiomCheck(name, cell, res.is_zero(), res.n_terms()))
        return HopfReport(self.N, D, entries)

    def check_bigrading(self) -> List[Tuple[str, Tuple[int, ...], int, Tuple[int, ...], int]]:
        """Terms of the stored h-tracked product and twist whose h-power differs from the cobracket count."""
        bad = []
        for (name, cell, cap), hst in self.h_states.items():
            for h, oc, d in hst.bigrading_defects():
                bad.append((name, cell, h, oc, d))
        return bad

    def classical_limit(self) -> LBAElem:
        """(Delta' - Delta'^op) at cobracket degree 1 on [1], minus the cobracket; zero when the limit is right."""
        d = apply(self.coproduct, source_state(("M",), (1,)), 0, 1)
        e = d.comps.get((1, 1), LBAElem(1, 2))
        e = e - lba.permute_outputs(e, [1, 0])
        return e.delta_part(1) - lba.cobracket()

    def classical_part(self, fam: Family, cell) -> State:
        """Cobracket-degree-0 part of a structure family on one source cell."""
        return apply(fam, source_state(fam.src, cell), 0, 0)

    def twist_anchor_residual(self, cell: Tuple[int, int]) -> State:
        """First-order part of J minus r/2 on M x M; zero when J = 1 + r/2 + O(h^2)."""
        src = source_state(("M", "M"), cell)
        j1 = apply(self.twist, src, 0, 1).delta_part(1)
        return j1 - self.ops.r(src, 0, 1, 1).scale(Fraction(1, 2))

    def to_json(self, D: Optional[int] = None, report: Optional["HopfReport"] = None, provenance=None):
        """Every structure family on all source cells of total degree <= D, plus the check report."""
        D = self.cfg.sym_cap if D is None else D
        fams = {}
        for name, fam in self.families().items():
            comps = []
            for cell in source_cells(len(fam.src), D):
                for oc, e in sorted(fam.component(cell, self.N).items()):
                    comps.append({"in": list(cell), "out": list(oc), "elem": e.to_json()})
            fams[name] = {"src": "".join(fam.src), "dst": "".join(fam.dst), "components": comps}
        out = {"schema": "propquant.hopf/1", "delta_cap": self.N, "sym_cap": D, "families": fams,
               "provenance": provenance or {}}
        if report is not None:
            out["attestation"] = report.to_json()
        return out


@dataclass
class AxiomCheck:
    axiom: str
    cell: Tuple[int, ...]
    ok: bool
    residual_terms: int
    checked: bool = True

    @property
    def status(self) -> str:
        return "not checked" if not self.checked else ("pass" if self.ok else "fail")


@dataclass
class HopfReport:
    delta_cap: int
    sym_cap: int
    entries: List[AxiomCheck]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> List[AxiomCheck]:
        return [e for e in self.entries if not e.ok]

    def to_json(self):
        return {
            "delta_cap": self.delta_cap,
            "sym_cap": self.sym_cap,
            "ok": self.ok,
            "checks": [{"axiom": e.axiom, "cell": list(e.cell), "status": e.status, "residual_terms": e.residual_terms}
                       for e in self.entries],
        }


# stored structures -----------------------------------------------------------------------------

def families_from_json(obj) -> Dict[str, Family]:
    """Rebuild structure families from a serialized Hopf structure; cells outside the stored range raise."""
    out = {}
    for name, f in obj["families"].items():
        table: Dict[Tuple[int, ...], Dict[Tuple[int, ...], LBAElem]] = {}
        for c in f["components"]:
            table.setdefault(tuple(c["in"]), {})[tuple(c["out"])] = LBAElem.from_json(c["elem"])

        def fn(cell, table=table, name=name):
            if cell not in table and sum(cell) > obj["sym_cap"]:
                raise TruncationExceeded(f"truncation exceeded: {name} not stored on cell {cell}")
            return table.get(cell, {})
        out[name] = Family(name, f["src"], f["dst"], fn)
    return out


def verify_stored(obj, axioms: Optional[Sequence[str]] = None, D: Optional[int] = None) -> HopfReport:
    """Re-check Hopf axioms against a serialized structure, without recomputing it."""
    from .signatures import load_preset

    fams = families_from_json(obj)
    N = obj["delta_cap"]
    D = obj["sym_cap"] if D is None else D
    pre = load_preset("HA")
    entries = []
    for name, _, _ in pre.equations:
        if axioms is not None and name not in axioms:
            continue
        rel = pre.relation(name)
        for cell in source_cells(rel.m, D):
            try:
                res = evaluate_morphism(rel, fams, cell, N)
            except TruncationExceeded:
                entries.append(AxiomCheck(name, cell, True, 0, checked=False))
                continue
            entries.append(AxiomCheck(name, cell, res.is_zero(), res.n_terms()))
    return HopfReport(N, D, entries)

