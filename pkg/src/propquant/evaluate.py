"""Concrete finite-dimensional Lie bialgebras and evaluation of universal formulas on them.

Tensors are sparse dicts from index tuples to Fractions.  A universal element
of the LBA PROP is evaluated through its biword normal form: an input coword
of length L sends a basis vector x to (1/L) (delta x 1 ... ) ... (delta x 1) delta(x)
with leaves in coword order, and an output word of length k is read as
(1/k) [[y1, y2], ..., yk].  Every cobracket carries one power of h.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ArityError, PropError, TruncationExceeded
from .lba import LBAElem

Idx = Tuple[int, ...]
Tensor = Dict[Idx, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def tadd(a: Tensor, b: Tensor, s=1) -> Tensor:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + s * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def tscale(a: Tensor, s) -> Tensor:
    return {k: v * s for k, v in a.items()} if s else {}


def tprod(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def tpermute(a: Tensor, order: Sequence[int]) -> Tensor:
    """New factor j is old factor order[j]."""
    return {tuple(k[i] for i in order): v for k, v in a.items()}


# the bialgebra ---------------------------------------------------------------------------------

@dataclass
class FiniteLieBialgebra:
    """Structure constants: [x_i, x_j] = sum_k c[i][j][k] x_k and delta(x_i) = sum_jk f[i][j][k] x_j (x) x_k."""

    basis: List[str]
    c: Dict[Tuple[int, int], Dict[int, Fraction]]
    f: Dict[int, Dict[Tuple[int, int], Fraction]]
    r: Optional[Dict[Tuple[int, int], Fraction]] = None
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    # constructors
    @classmethod
    def from_arrays(cls, basis, c, f, r=None, name="") -> "FiniteLieBialgebra":
        n = len(basis)
        cc = {}
        ff = {}
        for i in range(n):
            for j in range(n):
                row = {k: _frac(c[i][j][k]) for k in range(n) if _frac(c[i][j][k])}
                if row:
                    cc[(i, j)] = row
            row = {(j, k): _frac(f[i][j][k]) for j in range(n) for k in range(n) if _frac(f[i][j][k])}
            if row:
                ff[i] = row
        rr = None
        if r is not None:
            rr = {(i, j): _frac(r[i][j]) for i in range(n) for j in range(n) if _frac(r[i][j])}
        return cls(list(basis), cc, ff, rr, name)

    @classmethod
    def from_json(cls, obj) -> "FiniteLieBialgebra":
        if obj["dim"] != len(obj["basis"]):
            raise PropError("bialgebra JSON: dim does not match the basis")
        return cls.from_arrays(obj["basis"], obj["c"], obj["f"], obj.get("r"), obj.get("name", ""))

    def to_json(self):
        n = self.dim
        c = [[[str(self.c.get((i, j), {}).get(k, 0)) for k in range(n)] for j in range(n)] for i in range(n)]
        f = [[[str(self.f.get(i, {}).get((j, k), 0)) for k in range(n)] for j in range(n)] for i in range(n)]
        out = {"name": self.name, "dim": n, "basis": list(self.basis), "c": c, "f": f}
        if self.r is not None:
            out["r"] = [[str(self.r.get((i, j), 0)) for j in range(n)] for i in range(n)]
        return out

    def with_scaled_cobracket(self, t) -> "FiniteLieBialgebra":
        t = _frac(t)
        return FiniteLieBialgebra(self.basis, self.c, {i: {k: v * t for k, v in row.items()} for i, row in self.f.items()},
                                  None if self.r is None else {k: v * t for k, v in self.r.items()}, self.name)

    # elementary tensors
    def bracket(self, u: Tensor, v: Tensor) -> Tensor:
        """[u, v] for vectors given as {(i,): coef}."""
        out: Tensor = {}
        for (i,), a in u.items():
            for (j,), b in v.items():
                for k, x in self.c.get((i, j), {}).items():
                    out[(k,)] = out.get((k,), 0) + a * b * x
        return {k: v for k, v in out.items() if v}

    def cobracket(self, i: int) -> Tensor:
        return dict(self.f.get(i, {}))

    def bracket_on(self, t: Tensor, p: int) -> Tensor:
        """Bracket the tensor factors p and p+1 of t."""
        out: Tensor = {}
        for k, v in t.items():
            for z, x in self.c.get((k[p], k[p + 1]), {}).items():
                kk = k[:p] + (z,) + k[p + 2:]
                out[kk] = out.get(kk, 0) + v * x
        return {k: v for k, v in out.items() if v}

    def cobracket_on(self, t: Tensor, p: int) -> Tensor:
        out: Tensor = {}
        for k, v in t.items():
            for (a, b), x in self.f.get(k[p], {}).items():
                kk = k[:p] + (a, b) + k[p + 1:]
                out[kk] = out.get(kk, 0) + v * x
        return {k: v for k, v in out.items() if v}

    def act(self, i: int, t: Tensor) -> Tensor:
        """Adjoint action of x_i on every factor of t."""
        out: Tensor = {}
        for p in range(len(next(iter(t))) if t else 0):
            for k, v in t.items():
                for z, x in self.c.get((i, k[p]), {}).items():
                    kk = k[:p] + (z,) + k[p + 1:]
                    out[kk] = out.get(kk, 0) + v * x
        return {k: v for k, v in out.items() if v}

    def r_tensor(self) -> Tensor:
        if self.r is None:
            raise PropError(f"{self.name or 'bialgebra'} has no r-matrix")
        return dict(self.r)


def load_bialgebra(path) -> FiniteLieBialgebra:
    return FiniteLieBialgebra.from_json(json.loads(Path(path).read_text()))


def shipped(name: str) -> FiniteLieBialgebra:
    """One of the bundled examples: abelian2, borel2, sl2 and their doubles (suffix _double)."""
    from importlib import resources

    text = resources.files("propquant").joinpath("bialgebras", f"{name}.json").read_text()
    return FiniteLieBialgebra.from_json(json.loads(text))


SHIPPED = ("abelian2", "borel2", "sl2", "abelian2_double", "borel2_double", "sl2_double")


# validation ------------------------------------------------------------------------------------

def _unit(i: int) -> Tensor:
    return {(i,): Fraction(1)}


def _swap2(t: Tensor) -> Tensor:
    return tpermute(t, (1, 0))


def cybe_tensor(b: FiniteLieBialgebra, r: Tensor) -> Tensor:
    """[r12, r13] + [r12, r23] + [r13, r23] in a^(x)3."""
    out: Tensor = {}
    for (i, j), x in r.items():
        for (k, l), y in r.items():
            # [r12, r13]: brackets in factor 1
            for z, w in b.c.get((i, k), {}).items():
                out[(z, j, l)] = out.get((z, j, l), 0) + x * y * w
            # [r12, r23]: factor 2 pairs j with k
            for z, w in b.c.get((j, k), {}).items():
                out[(i, z, l)] = out.get((i, z, l), 0) + x * y * w
            # [r13, r23]: factor 3 pairs j with l
            for z, w in b.c.get((j, l), {}).items():
                out[(i, k, z)] = out.get((i, k, z), 0) + x * y * w
    return {k: v for k, v in out.items() if v}


def coboundary(b: FiniteLieBialgebra, r: Tensor, i: int) -> Tensor:
    """[x_i (x) 1 + 1 (x) x_i, r]."""
    return b.act(i, r)


def validate(b: FiniteLieBialgebra) -> Dict[str, bool]:
    """Lie bialgebra axioms checked exactly; quasitriangular axioms when r is present."""
    n = b.dim
    rng = range(n)
    rep: Dict[str, bool] = {}
    rep["antisymmetry"] = all(tadd(b.bracket(_unit(i), _unit(j)), b.bracket(_unit(j), _unit(i))) == {}
                              for i in rng for j in rng)
    jac = True
    for i, j, k in itertools.product(rng, repeat=3):
        s = {}
        for a, bb, cc in ((i, j, k), (j, k, i), (k, i, j)):
            s = tadd(s, b.bracket(_unit(a), b.bracket(_unit(bb), _unit(cc))))
        jac &= not s
    rep["jacobi"] = jac
    rep["co_antisymmetry"] = all(not tadd(b.cobracket(i), _swap2(b.cobracket(i))) for i in rng)
    cojac = True
    for i in rng:
        t = b.cobracket_on(b.cobracket(i), 0)
        s = tadd(tadd(t, tpermute(t, (1, 2, 0))), tpermute(t, (2, 0, 1)))
        cojac &= not s
    rep["co_jacobi"] = cojac
    # delta[x, y] = x.delta(y) - y.delta(x)
    coc = True
    for i, j in itertools.product(rng, repeat=2):
        lhs: Tensor = {}
        for k, v in b.c.get((i, j), {}).items():
            lhs = tadd(lhs, b.cobracket(k), v)
        rhs = tadd(b.act(i, b.cobracket(j)), b.act(j, b.cobracket(i)), -1)
        coc &= not tadd(lhs, rhs, -1)
    rep["cocycle"] = coc
    if b.r is not None:
        r = b.r_tensor()
        rep["cybe"] = not cybe_tensor(b, r)
        om = tadd(r, _swap2(r))
        rep["omega_invariant"] = all(not b.act(i, om) for i in rng)
        rep["coboundary"] = all(not tadd(coboundary(b, r, i), b.cobracket(i), -1) for i in rng)
    return rep


# evaluation of universal elements ------------------------------------------------------------

class Evaluator:
    """Evaluates biword normal forms on basis vectors, tracking the power of h."""

    def __init__(self, b: FiniteLieBialgebra):
        self.b = b
        self._cot: Dict[Tuple[int, int], Tensor] = {}
        self._br: Dict[Idx, Tensor] = {}

    def cotree(self, i: int, L: int) -> Tensor:
        """(1/L) times the left-normed iterated cobracket of x_i, leaves in order."""
        key = (i, L)
        if key not in self._cot:
            t: Tensor = {(i,): Fraction(1)}
            for _ in range(L - 1):
                t = self.b.cobracket_on(t, 0)
            self._cot[key] = tscale(t, Fraction(1, L))
        return self._cot[key]

    def word(self, letters: Idx) -> Tensor:
        """(1/k) [[y1, y2], ..., yk] as a vector."""
        if letters not in self._br:
            t: Tensor = {(letters[0],): Fraction(1)}
            for y in letters[1:]:
                t = self.b.bracket(t, _unit(y))
            self._br[letters] = tscale(t, Fraction(1, len(letters)))
        return self._br[letters]

    def term(self, key, inputs: Idx) -> Tensor:
        lens, outs = key
        vals: Tensor = {(): Fraction(1)}
        for i, L in zip(inputs, lens):
            vals = tprod(vals, self.cotree(i, L))
            if not vals:
                return {}
        out: Tensor = {}
        for letters, c in vals.items():
            acc: Tensor = {(): c}
            for w in outs:
                acc = tprod(acc, self.word(tuple(letters[x] for x in w)))
                if not acc:
                    break
            out = tadd(out, acc)
        return out

    def apply(self, e: LBAElem, inputs: Idx, N: Optional[int] = None) -> Dict[int, Tensor]:
        """h-power -> output tensor of e on the basis inputs."""
        if len(inputs) != e.m:
            raise ArityError(f"{e.m}-input element evaluated on {len(inputs)} vectors")
        res: Dict[int, Tensor] = {}
        for key, c in e.terms.items():
            h = sum(key[0]) - len(key[0])
            if N is not None and h > N:
                continue
            t = self.term(key, inputs)
            if t:
                res[h] = tadd(res.get(h, {}), tscale(t, c))
        return {h: t for h, t in res.items() if t}

    def tensor(self, e: LBAElem, N: Optional[int] = None) -> Dict[int, Dict[Idx, Tensor]]:
        """Full multilinear map: h-power -> input tuple -> output tensor."""
        out: Dict[int, Dict[Idx, Tensor]] = {}
        for inputs in itertools.product(range(self.b.dim), repeat=e.m):
            for h, t in self.apply(e, inputs, N).items():
                out.setdefault(h, {})[inputs] = t
        return out


def evaluate_morphism(b: FiniteLieBialgebra, m, h_order: Optional[int] = None) -> Dict[int, Dict[Idx, Tensor]]:
    """G(m) for a morphism of the LBA PROP (or its normal form), split by powers of h."""
    from .lba import from_morphism

    e = m if isinstance(m, LBAElem) else from_morphism(m)
    return Evaluator(b).tensor(e, h_order)


def compose_maps(f: Dict[Idx, Tensor], g: Dict[Idx, Tensor], m: int) -> Dict[Idx, Tensor]:
    """f after g for maps stored as input tuple -> output tensor (f consumes all outputs of g)."""
    out: Dict[Idx, Tensor] = {}
    for inp, t in g.items():
        acc: Tensor = {}
        for mid, c in t.items():
            acc = tadd(acc, f.get(mid, {}), c)
        if acc:
            out[inp] = acc
    return out


# concrete quantization -------------------------------------------------------------------------

Mono = Tuple[int, ...]               # sorted basis indices: a symmetrized PBW monomial
HKey = Tuple[Tuple[Mono, ...], int]  # (monomial per tensor factor, power of h)
HElem = Dict[HKey, Fraction]


def monomials(dim: int, p: int) -> List[Mono]:
    return list(itertools.combinations_with_replacement(range(dim), p))


def hadd(a: HElem, b: HElem, s=1) -> HElem:
    return tadd(a, b, s)


class ConcreteHopf:
    """Structure tensors of the quantized enveloping algebra of a concrete bialgebra, in powers of h.

    The basis of S^p is the symmetrized monomials; a universal family is
    evaluated on the monomial's index tuple (its inputs are symmetric) and its
    outputs are collected by sorting each output block.
    """

    NAMES = ("mu", "Delta", "S", "Sinv")

    def __init__(self, b: FiniteLieBialgebra, hopf, sym_cap: int):
        self.b = b
        self.hopf = hopf
        self.N = hopf.N
        self.D = sym_cap
        self.ev = Evaluator(b)
        self.tables: Dict[str, Dict[Tuple[Tuple[Mono, ...], int], HElem]] = {n: {} for n in self.NAMES}

    def _family(self, name: str):
        return self.hopf.families()[name]

    def structure(self, name: str, inputs: Tuple[Mono, ...], budget: Optional[int] = None) -> HElem:
        """The structure map on basis monomials, through h^budget (default: the full order)."""
        budget = self.N if budget is None else budget
        tab = self.tables[name]
        key = (inputs, budget)
        if key not in tab:
            fam = self._family(name)
            cell = tuple(len(m) for m in inputs)
            flat = tuple(i for m in inputs for i in m)
            out: HElem = {}
            for oc, e in fam.component(cell, budget).items():
                for h, t in self.ev.apply(e, flat, budget).items():
                    for k, v in t.items():
                        monos, s = [], 0
                        for size in oc:
                            monos.append(tuple(sorted(k[s:s + size])))
                            s += size
                        k2 = (tuple(monos), h)
                        out[k2] = out.get(k2, 0) + v
            tab[key] = {k: v for k, v in out.items() if v}
        return tab[key]

    # linear algebra on H^(x)k with h truncated at N
    def apply_at(self, x: HElem, name: str, pos: int, nin: int) -> HElem:
        out: HElem = {}
        for (monos, h), c in x.items():
            # terms already carrying h^k only need the structure through h^(N-k)
            img = self.structure(name, monos[pos:pos + nin], self.N - h)
            for (om, h2), c2 in img.items():
                key = (monos[:pos] + om + monos[pos + nin:], h + h2)
                out[key] = out.get(key, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    def unit_at(self, x: HElem, pos: int) -> HElem:
        return {(m[:pos] + ((),) + m[pos:], h): c for (m, h), c in x.items()}

    def counit_at(self, x: HElem, pos: int) -> HElem:
        out: HElem = {}
        for (m, h), c in x.items():
            if m[pos] == ():
                key = (m[:pos] + m[pos + 1:], h)
                out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def permute(self, x: HElem, order: Sequence[int]) -> HElem:
        return {(tuple(m[i] for i in order), h): c for (m, h), c in x.items()}

    # convenience
    def mul(self, a: Mono, b: Mono) -> HElem:
        return self.structure("mu", (a, b))

    def coproduct(self, a: Mono) -> HElem:
        return self.structure("Delta", (a,))

    def antipode(self, a: Mono) -> HElem:
        return self.structure("S", (a,))

    def check(self, axioms: Optional[Sequence[str]] = None) -> Dict[str, List[Tuple[Tuple[Mono, ...], bool]]]:
        """Every Hopf axiom on all monomial inputs of total degree <= sym_cap."""
        D, dim = self.D, self.b.dim
        A = lambda name, x, p, k: self.apply_at(x, name, p, k)
        one = lambda *ms: {(tuple(ms), 0): Fraction(1)}
        sides = {
            "assoc": (3, lambda x: A("mu", A("mu", x, 0, 2), 0, 2), lambda x: A("mu", A("mu", x, 1, 2), 0, 2)),
            "unit_l": (1, lambda x: A("mu", self.unit_at(x, 0), 0, 2), lambda x: x),
            "unit_r": (1, lambda x: A("mu", self.unit_at(x, 1), 0, 2), lambda x: x),
            "coassoc": (1, lambda x: A("Delta", A("Delta", x, 0, 1), 0, 1), lambda x: A("Delta", A("Delta", x, 0, 1), 1, 1)),
            "counit_l": (1, lambda x: self.counit_at(A("Delta", x, 0, 1), 0), lambda x: x),
            "counit_r": (1, lambda x: self.counit_at(A("Delta", x, 0, 1), 1), lambda x: x),
            "bialgebra": (2, lambda x: A("Delta", A("mu", x, 0, 2), 0, 1),
                          lambda x: A("mu", A("mu", self.permute(A("Delta", A("Delta", x, 1, 1), 0, 1), (0, 2, 1, 3)), 2, 2), 0, 2)),
            "unit_coproduct": (0, lambda x: A("Delta", self.unit_at(x, 0), 0, 1), lambda x: self.unit_at(self.unit_at(x, 0), 0)),
            "counit_product": (2, lambda x: self.counit_at(A("mu", x, 0, 2), 0), lambda x: self.counit_at(self.counit_at(x, 0), 0)),
            "counit_unit": (0, lambda x: self.counit_at(self.unit_at(x, 0), 0), lambda x: x),
            "antipode_l": (1, lambda x: A("mu", A("S", A("Delta", x, 0, 1), 0, 1), 0, 2), lambda x: self.unit_at(self.counit_at(x, 0), 0)),
            "antipode_r": (1, lambda x: A("mu", A("S", A("Delta", x, 0, 1), 1, 1), 0, 2), lambda x: self.unit_at(self.counit_at(x, 0), 0)),
            "inverse_l": (1, lambda x: A("S", A("Sinv", x, 0, 1), 0, 1), lambda x: x),
            "inverse_r": (1, lambda x: A("Sinv", A("S", x, 0, 1), 0, 1), lambda x: x),
        }
        report: Dict[str, List[Tuple[Tuple[Mono, ...], bool]]] = {}
        for name, (arity, lhs, rhs) in sides.items():
            if axioms is not None and name not in axioms:
                continue
            rows = []
            for degs in _degree_tuples(arity, D):
                for monos in itertools.product(*[monomials(dim, d) for d in degs]):
                    x = one(*monos)
                    rows.append((monos, not hadd(lhs(x), rhs(x), -1)))
            report[name] = rows
        return report

    def quasiclassical_residual(self) -> Dict[int, Tensor]:
        """(Delta - Delta^op)(x_i) at h^1 minus delta(x_i), as tensors in a (x) a, for every basis vector."""
        out = {}
        for i in range(self.b.dim):
            d = {k: v for k, v in self.coproduct((i,)).items() if k[1] == 1}
            t: Tensor = {}
            for ((u, w), _), c in d.items():
                if len(u) == 1 and len(w) == 1:
                    t = tadd(t, {(u[0], w[0]): c})
                    t = tadd(t, {(w[0], u[0]): c}, -1)
            res = tadd(t, self.b.cobracket(i), -1)
            if res:
                out[i] = res
        return out


def _degree_tuples(k: int, D: int):
    if k == 0:
        yield ()
        return
    for first in range(D + 1):
        for rest in _degree_tuples(k - 1, D - first):
            yield (first,) + rest


def quantize_concrete(b: FiniteLieBialgebra, hopf, sym_cap: Optional[int] = None) -> ConcreteHopf:
    """Concrete truncated quantization of b from the universal structure; b must validate."""
    bad = [k for k, ok in validate(b).items() if not ok]
    if bad:
        raise PropError(f"{b.name or 'bialgebra'} fails {bad}")
    D = hopf.cfg.sym_cap if sym_cap is None else sym_cap
    if D > hopf.cfg.sym_cap:
        raise TruncationExceeded(f"truncation exceeded: sym cap {D} > universal cap {hopf.cfg.sym_cap}")
    return ConcreteHopf(b, hopf, D)


# the double and the map tau ------------------------------------------------------------------------

def double(b: FiniteLieBialgebra) -> FiniteLieBialgebra:
    """a + a* with the bracket making the pairing <x_i, f_j> = delta_ij invariant, r = sum x_i (x) f_i.

    [f_j, f_k] = sum_i f[i][j][k] f_i and [x_i, f_j] = sum_k f[i][j][k] x_k - sum_k c[i][k][j] f_k;
    the cobracket is the coboundary of r.
    """
    n = b.dim
    c: Dict[Tuple[int, int], Dict[int, Fraction]] = {}

    def put(i, j, k, v):
        if v:
            row = c.setdefault((i, j), {})
            row[k] = row.get(k, 0) + v
            row2 = c.setdefault((j, i), {})
            row2[k] = row2.get(k, 0) - v

    for (i, j), row in b.c.items():
        if i < j:
            for k, v in row.items():
                put(i, j, k, v)
    for i, row in b.f.items():
        for (j, k), v in row.items():
            if j < k:
                put(n + j, n + k, n + i, v)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                put(i, n + j, k, b.f.get(i, {}).get((j, k), 0))
                put(i, n + j, n + k, -b.c.get((i, k), {}).get(j, 0))
    c = {k: {z: v for z, v in row.items() if v} for k, row in c.items()}
    c = {k: row for k, row in c.items() if row}
    r = {(i, n + i): Fraction(1) for i in range(n)}
    d = FiniteLieBialgebra(list(b.basis) + [x + "*" for x in b.basis], c, {}, r,
                           (b.name + "_double") if b.name else "double")
    d.f = {i: t for i in range(2 * n) if (t := coboundary(d, r, i))}
    return d


def tau(b: FiniteLieBialgebra) -> Dict[int, Tensor]:
    """The map D(b) -> b: x_i -> x_i and f_j -> (f_j (x) 1)(r) = sum_k r[j][k] x_k."""
    r = b.r_tensor()
    n = b.dim
    out: Dict[int, Tensor] = {i: _unit(i) for i in range(n)}
    for j in range(n):
        out[n + j] = {(k,): v for (i, k), v in r.items() if i == j}
    return out


def _lin(m: Dict[int, Tensor], t: Tensor) -> Tensor:
    """Apply a linear map factorwise to a tensor."""
    out: Tensor = {}
    for k, v in t.items():
        acc: Tensor = {(): v}
        for i in k:
            acc = tprod(acc, m.get(i, {}))
        out = tadd(out, acc)
    return out


def tau_checks(b: FiniteLieBialgebra) -> Dict[str, Dict]:
    """Residuals of tau: brackets of two dual vectors, mixed brackets, cobrackets, and (tau x tau)(r~) - r.

    Each entry maps the offending basis pair (or index) to the nonzero residual; empty dicts mean exact.
    """
    d = double(b)
    t = tau(b)
    n = b.dim
    res: Dict[str, Dict] = {"dual_pairs": {}, "mixed_pairs": {}, "restriction": {}, "cobracket": {}, "r_matrix": {}}
    for i in range(2 * n):
        for j in range(2 * n):
            lhs = _lin(t, d.bracket(_unit(i), _unit(j)))
            rhs = b.bracket(t[i], t[j])
            diff = tadd(lhs, rhs, -1)
            if diff:
                key = "dual_pairs" if i >= n and j >= n else ("mixed_pairs" if (i >= n) != (j >= n) else "restriction")
                res[key][(i, j)] = diff
    for i in range(2 * n):
        lhs = _lin(t, d.cobracket(i))
        rhs: Tensor = {}
        for (k,), v in t[i].items():
            rhs = tadd(rhs, b.cobracket(k), v)
        diff = tadd(lhs, rhs, -1)
        if diff:
            res["cobracket"][i] = diff
    diff = tadd(_lin(t, d.r_tensor()), b.r_tensor(), -1)
    if diff:
        res["r_matrix"]["r"] = diff
    return res


# the enveloping algebra and the concrete R-matrix ------------------------------------------------

class Envelope:
    """U(b) in the ordered PBW basis: sorted index tuples, straightened with x_j x_i = x_i x_j + [x_j, x_i]."""

    def __init__(self, b: FiniteLieBialgebra):
        self.b = b
        self._memo: Dict[Tuple[Mono, Mono], Tensor] = {}

    def mono_mul(self, u: Mono, v: Mono) -> Tensor:
        key = (u, v)
        if key in self._memo:
            return self._memo[key]
        if not v:
            res = {u: Fraction(1)}
        elif not u:
            res = {v: Fraction(1)}
        elif len(v) > 1:
            res = {}
            for w, c in self.mono_mul(u, v[:1]).items():
                res = tadd(res, tscale(self.mono_mul(w, v[1:]), c))
        else:
            (j,) = v
            i = u[-1]
            if i <= j:
                res = {u + v: Fraction(1)}
            else:
                # u' x_i x_j = u' x_j x_i + u' [x_i, x_j]
                head = u[:-1]
                res = {}
                for w, c in self.mono_mul(head, (j,)).items():
                    res = tadd(res, tscale(self.mono_mul(w, (i,)), c))
                for z, c in self.b.c.get((i, j), {}).items():
                    res = tadd(res, tscale(self.mono_mul(head, (z,)), c))
        self._memo[key] = res
        return res

    def mul(self, a: Tensor, b: Tensor) -> Tensor:
        out: Tensor = {}
        for u, x in a.items():
            for v, y in b.items():
                out = tadd(out, tscale(self.mono_mul(u, v), x * y))
        return out


# elements of U(b)^(x)n with h: key (monomial per factor, h)
def _umul(U: Envelope, a: HElem, b: HElem, N: int) -> HElem:
    out: HElem = {}
    for (ma, ha), x in a.items():
        for (mb, hb), y in b.items():
            if ha + hb > N:
                continue
            acc: Dict[Tuple[Mono, ...], Fraction] = {(): x * y}
            for u, v in zip(ma, mb):
                acc = {k + (w,): c * d for k, c in acc.items() for w, d in U.mono_mul(u, v).items()}
            for k, c in acc.items():
                key = (k, ha + hb)
                out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def evaluate_chords(b: FiniteLieBialgebra, a, U: Optional[Envelope] = None) -> HElem:
    """Chord words at the r-matrix of b, in U(b)^(x)n; a chord with k chords carries h^k."""
    from .chords import n_chords

    U = U or Envelope(b)
    r = b.r_tensor()
    out: HElem = {}
    for key, coef in a.items():
        k = n_chords(key)
        # sum over basis indices of every chord leg
        for choice in itertools.product(list(r.items()), repeat=k):
            c = coef
            for _, v in choice:
                c *= v
            acc: Dict[Tuple[Mono, ...], Fraction] = {(): c}
            for row in key:
                prod: Tensor = {(): Fraction(1)}
                for chord, side in row:
                    prod = U.mul(prod, {(choice[chord][0][side],): Fraction(1)})
                acc = {kk + (w,): x * y for kk, x in acc.items() for w, y in prod.items()}
            for kk, x in acc.items():
                out[(kk, k)] = out.get((kk, k), 0) + x
    return {k: v for k, v in out.items() if v}


@dataclass
class ConcreteR:
    R: HElem
    qybe: HElem
    N: int

    def part(self, h: int) -> Dict[Tuple[Mono, ...], Fraction]:
        return {m: c for (m, hh), c in self.R.items() if hh == h}


def concrete_R(b: FiniteLieBialgebra, phi, N: int = 2) -> ConcreteR:
    """R = (J^21)^-1 e^{Omega/2} J evaluated at the r-matrix of b, with the QYBE residual through h^N."""
    from .yangbaxter import r_matrix, solve_twist

    if b.r is None:
        raise PropError(f"{b.name or 'bialgebra'} has no r-matrix")
    bad = [k for k, ok in validate(b).items() if not ok]
    if bad:
        raise PropError(f"{b.name or 'bialgebra'} fails {bad}")
    U = Envelope(b)
    R = evaluate_chords(b, r_matrix(solve_twist(phi, N)), U)
    place = lambda slots: {(tuple(m[slots.index(p)] if p in slots else () for p in range(3)), h): c
                           for (m, h), c in R.items()}
    R12, R13, R23 = place((0, 1)), place((0, 2)), place((1, 2))
    lhs = _umul(U, _umul(U, R12, R13, N), R23, N)
    rhs = _umul(U, _umul(U, R23, R13, N), R12, N)
    return ConcreteR(R, hadd(lhs, rhs, -1), N)
