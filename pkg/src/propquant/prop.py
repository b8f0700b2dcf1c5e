"""Free PROPs: ported acyclic diagrams, linear morphisms and composition.

A diagram m -> n is a list of generator nodes plus one source for every sink.
Sinks are node input ports ``(v, k)`` and outputs ``(-1, j)``; sources are node
output ports ``(v, k)`` and inputs ``(-1, j)``.  Diagrams are stored only in
canonical form and interned by their certificate string.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ArityError, CycleError, PropError

Node = Tuple[str, int, int]  # (generator name, inputs, outputs)
Port = Tuple[int, int]


@dataclass(frozen=True)
class Generator:
    name: str
    n_in: int
    n_out: int
    grade: Tuple[int, ...]


@dataclass
class GeneratorSignature:
    channels: Tuple[str, ...]
    generators: Dict[str, Generator] = field(default_factory=dict)

    @classmethod
    def build(cls, channels, gens: Iterable[Tuple[str, int, int, Sequence[int]]]):
        sig = cls(tuple(channels))
        for name, a, b, g in gens:
            sig.add(name, a, b, g)
        return sig

    def add(self, name, n_in, n_out, grade):
        grade = tuple(int(x) for x in grade)
        if len(grade) != len(self.channels):
            raise PropError(f"grade of {name} has wrong length")
        self.generators[name] = Generator(name, n_in, n_out, grade)

    def __getitem__(self, name) -> Generator:
        try:
            return self.generators[name]
        except KeyError:
            raise PropError(f"unknown generator {name!r}") from None

    def grade_vector(self, grade) -> Tuple[int, ...]:
        if isinstance(grade, dict):
            unknown = set(grade) - set(self.channels)
            if unknown:
                raise PropError(f"unknown grade channels {sorted(unknown)}")
            return tuple(int(grade.get(c, 0)) for c in self.channels)
        grade = tuple(int(x) for x in grade)
        if len(grade) != len(self.channels):
            raise PropError("grade has wrong length")
        return grade

    def diagram_grade(self, d: "Diagram") -> Tuple[int, ...]:
        tot = [0] * len(self.channels)
        for name, _, _ in d.nodes:
            for i, x in enumerate(self[name].grade):
                tot[i] += x
        return tuple(tot)

    def to_json(self):
        return {
            "channels": list(self.channels),
            "generators": [
                {"name": g.name, "in": g.n_in, "out": g.n_out, "grade": list(g.grade)}
                for g in sorted(self.generators.values(), key=lambda g: g.name)
            ],
        }

    @classmethod
    def from_json(cls, obj):
        return cls.build(obj["channels"], [(g["name"], g["in"], g["out"], g["grade"]) for g in obj["generators"]])


# canonical labeling ---------------------------------------------------------

def _src_ref(s: Port, pos) -> str:
    return f"i{s[1]}" if s[0] < 0 else f"{pos[s[0]]}.{s[1]}"


def _node_code(v, nodes, src, pos) -> str:
    name, a, b = nodes[v]
    ins = ",".join(_src_ref(src[(v, k)], pos) for k in range(a))
    return f"{name}/{a}/{b}[{ins}]"


def _bfs(starts, nodes, src, sink_of, pos, order, allowed=None):
    q = deque()
    for v in starts:
        if v not in pos:
            pos[v] = len(order)
            order.append(v)
            q.append(v)
    while q:
        v = q.popleft()
        _, a, b = nodes[v]
        nb = []
        for k in range(a):
            s = src[(v, k)]
            if s[0] >= 0:
                nb.append(s[0])
        for k in range(b):
            t = sink_of.get((v, k))
            if t is not None and t[0] >= 0:
                nb.append(t[0])
        for w in nb:
            if w not in pos and (allowed is None or w in allowed):
                pos[w] = len(order)
                order.append(w)
                q.append(w)


def _components(vs, nodes, src, sink_of):
    vs = set(vs)
    comps = []
    while vs:
        root = min(vs)
        pos, order = {}, []
        _bfs([root], nodes, src, sink_of, pos, order, allowed=vs)
        comps.append(order)
        vs -= set(order)
    return comps


def canonical_order(m, n, nodes, src, ordered_outputs=True):
    """Return (node order, certificate) for a diagram given as a sink->source map.

    Components touching the ordered boundary are labeled rigidly by breadth
    first search; closed components are individualized at every root and the
    least encoding is kept.
    """
    sink_of = {s: t for t, s in src.items()}
    pos: Dict[int, int] = {}
    order: List[int] = []
    starts = []
    if ordered_outputs:
        for j in range(n):
            s = src[(-1, j)]
            if s[0] >= 0:
                starts.append(s[0])
    for j in range(m):
        t = sink_of.get((-1, j))
        if t is not None and t[0] >= 0:
            starts.append(t[0])
    _bfs(starts, nodes, src, sink_of, pos, order)
    rest = [v for v in range(len(nodes)) if v not in pos]
    if rest:
        blocks = []
        for comp in _components(rest, nodes, src, sink_of):
            allowed = set(comp)
            best = None
            for root in comp:
                lp, lo = {}, []
                _bfs([root], nodes, src, sink_of, lp, lo, allowed=allowed)
                code = ";".join(_node_code(v, nodes, src, lp) for v in lo)
                if best is None or code < best[0]:
                    best = (code, lo)
            blocks.append(best)
        blocks.sort(key=lambda b: b[0])
        for _, lo in blocks:
            for v in lo:
                pos[v] = len(order)
                order.append(v)
    body = ";".join(_node_code(v, nodes, src, pos) for v in order)
    if ordered_outputs:
        tail = ",".join(_src_ref(src[(-1, j)], pos) for j in range(n))
    else:
        used = set(src.values())
        free = [(-1, j) for j in range(m)] + [(v, k) for v in range(len(nodes)) for k in range(nodes[v][2])]
        tail = ",".join(sorted(_src_ref(s, pos) for s in free if s not in used))
    return order, f"{m}>{n}|{body}|{tail}"


def topological_order(d: "Diagram") -> List[int]:
    """Nodes sorted so that every node comes after its predecessors (least index first)."""
    import heapq
    indeg = [0] * len(d.nodes)
    succ = [[] for _ in d.nodes]
    for sink, s in d.src_map().items():
        if sink[0] >= 0 and s[0] >= 0:
            indeg[sink[0]] += 1
            succ[s[0]].append(sink[0])
    q = [v for v in range(len(d.nodes)) if indeg[v] == 0]
    heapq.heapify(q)
    out = []
    while q:
        v = heapq.heappop(q)
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(q, w)
    return out


def _check_acyclic(nodes, src):
    indeg = [0] * len(nodes)
    succ = [[] for _ in nodes]
    for sink, s in src.items():
        if sink[0] >= 0 and s[0] >= 0:
            indeg[sink[0]] += 1
            succ[s[0]].append(sink[0])
    q = [v for v in range(len(nodes)) if indeg[v] == 0]
    seen = 0
    while q:
        v = q.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                q.append(w)
    if seen != len(nodes):
        raise CycleError("diagram wiring contains a directed cycle")


@dataclass(frozen=True, eq=False)
class Diagram:
    m: int
    n: int
    nodes: Tuple[Node, ...]
    src: Tuple[Port, ...]  # sources for sinks: node inputs in node order, then outputs
    key: str

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Diagram({self.key})"

    def sinks(self) -> List[Port]:
        out = [(v, k) for v, (_, a, _) in enumerate(self.nodes) for k in range(a)]
        return out + [(-1, j) for j in range(self.n)]

    def src_map(self) -> Dict[Port, Port]:
        return dict(zip(self.sinks(), self.src))

    def gen_counts(self) -> Counter:
        return Counter(name for name, _, _ in self.nodes)

    def is_identity(self) -> bool:
        return not self.nodes and self.m == self.n and all(s == (-1, j) for j, s in enumerate(self.src))


_INTERN: Dict[str, Diagram] = {}
_INTERN_LOCK = threading.Lock()


def intern_size() -> int:
    return len(_INTERN)


def make_diagram(m: int, n: int, nodes: Sequence[Node], src: Dict[Port, Port], check=True) -> Diagram:
    """Canonicalize and intern a diagram given by an arbitrary node labeling."""
    nodes = list(nodes)
    if check:
        _validate(m, n, nodes, src)
        _check_acyclic(nodes, src)
    order, key = canonical_order(m, n, nodes, src)
    d = _INTERN.get(key)
    if d is not None:
        return d
    new = {v: i for i, v in enumerate(order)}
    cn = tuple(nodes[v] for v in order)

    def rs(s):
        return s if s[0] < 0 else (new[s[0]], s[1])

    csrc = []
    for v in order:
        for k in range(nodes[v][1]):
            csrc.append(rs(src[(v, k)]))
    for j in range(n):
        csrc.append(rs(src[(-1, j)]))
    d = Diagram(m, n, cn, tuple(csrc), key)
    with _INTERN_LOCK:
        return _INTERN.setdefault(key, d)


def _validate(m, n, nodes, src):
    sinks = [(v, k) for v, (_, a, _) in enumerate(nodes) for k in range(a)] + [(-1, j) for j in range(n)]
    if set(src) != set(sinks):
        raise PropError("every sink needs exactly one source")
    sources = [(-1, j) for j in range(m)] + [(v, k) for v, (_, _, b) in enumerate(nodes) for k in range(b)]
    vals = list(src.values())
    if sorted(vals) != sorted(sources):
        raise PropError("every source must feed exactly one sink")


def canonicalize(d: Diagram) -> Diagram:
    """Canonical representative of the isomorphism class (idempotent)."""
    return make_diagram(d.m, d.n, d.nodes, d.src_map())


# elementary diagrams ----------------------------------------------------------

def identity_diagram(n: int) -> Diagram:
    return make_diagram(n, n, [], {(-1, j): (-1, j) for j in range(n)}, check=False)


def permutation_diagram(p: Sequence[int]) -> Diagram:
    """Input i is wired to output p[i] (zero-based)."""
    n = len(p)
    if sorted(p) != list(range(n)):
        raise PropError(f"not a permutation: {list(p)}")
    return make_diagram(n, n, [], {(-1, p[i]): (-1, i) for i in range(n)}, check=False)


def generator_diagram(name: str, a: int, b: int) -> Diagram:
    src = {(0, k): (-1, k) for k in range(a)}
    src.update({(-1, j): (0, j) for j in range(b)})
    return make_diagram(a, b, [(name, a, b)], src, check=False)


def compose_diagrams(f: Diagram, g: Diagram) -> Diagram:
    """f after g."""
    if g.n != f.m:
        raise ArityError(f"cannot compose: inner target arity {g.n} != outer source arity {f.m}")
    off = len(g.nodes)
    gmap, fmap = g.src_map(), f.src_map()
    src = {k: s for k, s in gmap.items() if k[0] >= 0}
    for sink, s in fmap.items():
        sk = (sink[0] + off, sink[1]) if sink[0] >= 0 else sink
        src[sk] = (s[0] + off, s[1]) if s[0] >= 0 else gmap[(-1, s[1])]
    return make_diagram(g.m, f.n, g.nodes + f.nodes, src, check=False)


def tensor_diagrams(f: Diagram, g: Diagram) -> Diagram:
    off = len(f.nodes)
    src = dict(f.src_map())
    for sink, s in g.src_map().items():
        sk = (sink[0] + off, sink[1]) if sink[0] >= 0 else (-1, sink[1] + f.n)
        src[sk] = (s[0] + off, s[1]) if s[0] >= 0 else (-1, s[1] + f.m)
    return make_diagram(f.m + g.m, f.n + g.n, f.nodes + g.nodes, src, check=False)


def substitute_node(d: Diagram, v: int, h: Diagram) -> Diagram:
    """Replace node v of d (arity a->b) by the diagram h: a->b."""
    name, a, b = d.nodes[v]
    if (h.m, h.n) != (a, b):
        raise ArityError(f"substitution arity {h.m}->{h.n} does not match node {a}->{b}")
    dm = d.src_map()
    keep = [u for u in range(len(d.nodes)) if u != v]
    renum = {u: i for i, u in enumerate(keep)}
    off = len(keep)
    hm = h.src_map()

    def d_source(s):
        # source in d, resolved through h when it is an output of node v
        if s[0] == v:
            hs = hm[(-1, s[1])]
            if hs[0] >= 0:
                return (hs[0] + off, hs[1])
            return d_source(dm[(v, hs[1])])
        return s if s[0] < 0 else (renum[s[0]], s[1])

    src = {}
    for sink, s in dm.items():
        if sink[0] == v:
            continue
        sk = sink if sink[0] < 0 else (renum[sink[0]], sink[1])
        src[sk] = d_source(s)
    for sink, s in hm.items():
        if sink[0] < 0:
            continue
        src[(sink[0] + off, sink[1])] = (s[0] + off, s[1]) if s[0] >= 0 else d_source(dm[(v, s[1])])
    nodes = [d.nodes[u] for u in keep] + list(h.nodes)
    return make_diagram(d.m, d.n, nodes, src, check=False)


def diagram_to_json(d: Diagram):
    """Nodes as [name, inputs, outputs]; wires as [sink, source] port pairs (node -1 is the boundary)."""
    return {
        "m": d.m,
        "n": d.n,
        "nodes": [list(v) for v in d.nodes],
        "wires": [[list(t), list(s)] for t, s in zip(d.sinks(), d.src)],
        "key": d.key,
    }


def diagram_from_json(obj) -> Diagram:
    nodes = [tuple(v) for v in obj["nodes"]]
    src = {tuple(t): tuple(s) for t, s in obj["wires"]}
    d = make_diagram(int(obj["m"]), int(obj["n"]), nodes, src)
    if "key" in obj and obj["key"] != d.key:
        raise PropError("diagram JSON: stored canonical key does not match the wiring")
    return d


# linear morphisms --------------------------------------------------------------

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Morphism:
    """Finite linear combination of canonical diagrams m -> n."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Dict[Diagram, Fraction] | None = None):
        self.m, self.n = m, n
        self.terms = {}
        for d, c in (terms or {}).items():
            if (d.m, d.n) != (m, n):
                raise ArityError(f"term {d.m}->{d.n} in morphism {m}->{n}")
            c = _frac(c)
            if c:
                self.terms[d] = self.terms.get(d, 0) + c
        self.terms = {d: c for d, c in self.terms.items() if c}

    @classmethod
    def from_diagram(cls, d: Diagram, c=1):
        return cls(d.m, d.n, {d: c})

    @classmethod
    def zero(cls, m, n):
        return cls(m, n)

    def to_json(self):
        return {"m": self.m, "n": self.n,
                "terms": [{"coef": str(c), "diagram": diagram_to_json(d)} for d, c in self.items()]}

    @classmethod
    def from_json(cls, obj) -> "Morphism":
        return cls(int(obj["m"]), int(obj["n"]),
                   {diagram_from_json(t["diagram"]): Fraction(t["coef"]) for t in obj["terms"]})

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ArityError(f"arity mismatch {self.m}->{self.n} vs {other.m}->{other.n}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for d, c in other.terms.items():
            t[d] = t.get(d, 0) + c
        return Morphism(self.m, self.n, t)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, s):
        s = _frac(s)
        return Morphism(self.m, self.n, {d: c * s for d, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Morphism) and (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .grammar import format_morphism
        return f"Morphism({self.m}->{self.n}: {format_morphism(self)})"

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].key)

    def homogeneous_parts(self, sig: GeneratorSignature) -> Dict[Tuple[int, ...], "Morphism"]:
        parts: Dict[Tuple[int, ...], Dict] = {}
        for d, c in self.terms.items():
            parts.setdefault(sig.diagram_grade(d), {})[d] = c
        return {g: Morphism(self.m, self.n, t) for g, t in parts.items()}

    def to_vector(self):
        return {d.key: c for d, c in self.terms.items()}


def compose(f: Morphism, g: Morphism) -> Morphism:
    """f after g (g acts first)."""
    if g.n != f.m:
        raise ArityError(f"cannot compose: inner target arity {g.n} != outer source arity {f.m}")
    t: Dict[Diagram, Fraction] = {}
    for d1, c1 in f.terms.items():
        for d2, c2 in g.terms.items():
            d = compose_diagrams(d1, d2)
            t[d] = t.get(d, 0) + c1 * c2
    return Morphism(g.m, f.n, t)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    t: Dict[Diagram, Fraction] = {}
    for d1, c1 in f.terms.items():
        for d2, c2 in g.terms.items():
            d = tensor_diagrams(d1, d2)
            t[d] = t.get(d, 0) + c1 * c2
    return Morphism(f.m + g.m, f.n + g.n, t)


def identity(n: int) -> Morphism:
    return Morphism.from_diagram(identity_diagram(n))


def permutation(p: Sequence[int]) -> Morphism:
    return Morphism.from_diagram(permutation_diagram(p))


def generator(sig: GeneratorSignature, name: str) -> Morphism:
    g = sig[name]
    return Morphism.from_diagram(generator_diagram(name, g.n_in, g.n_out))


def substitute(d: Diagram, v: int, h: Morphism) -> Morphism:
    t: Dict[Diagram, Fraction] = {}
    for hd, c in h.terms.items():
        nd = substitute_node(d, v, hd)
        t[nd] = t.get(nd, 0) + c
    return Morphism(d.m, d.n, t)


# enumeration -------------------------------------------------------------------

def node_multisets(sig: GeneratorSignature, grade) -> List[Dict[str, int]]:
    target = sig.grade_vector(grade)
    gens = sorted(sig.generators.values(), key=lambda g: g.name)
    for g in gens:
        if not any(g.grade):
            raise PropError(f"generator {g.name} has zero grade; enumeration would not terminate")
        if any(x < 0 for x in g.grade):
            raise PropError(f"generator {g.name} has a negative grade")
    out = []

    def rec(i, rem, acc):
        if i == len(gens):
            if not any(rem):
                out.append(dict(acc))
            return
        g = gens[i]
        c = 0
        r = list(rem)
        while all(x >= 0 for x in r):
            if c:
                acc[g.name] = c
            rec(i + 1, tuple(r), acc)
            acc.pop(g.name, None)
            c += 1
            r = [x - y for x, y in zip(r, g.grade)]

    rec(0, target, {})
    return out


def _enumerate_multiset(sig, m, n, counts: Dict[str, int]) -> List[Diagram]:
    gens = {name: sig[name] for name in counts}
    total = sum(counts.values())
    n_src = m + sum(c * gens[g].n_out for g, c in counts.items())
    n_snk = n + sum(c * gens[g].n_in for g, c in counts.items())
    if n_src != n_snk:
        return []
    start = ((), (), tuple((-1, j) for j in range(m)), tuple(sorted(counts.items())))
    frontier = {"": start}
    for _ in range(total):
        new = {}
        for nodes, srcitems, free, rem in frontier.values():
            for idx, (gname, c) in enumerate(rem):
                if not c:
                    continue
                g = gens[gname]
                nrem = rem[:idx] + ((gname, c - 1),) + rem[idx + 1:]
                v = len(nodes)
                for sel in itertools.permutations(range(len(free)), g.n_in):
                    nsrc = srcitems + tuple(((v, k), free[sel[k]]) for k in range(g.n_in))
                    chosen = set(sel)
                    nfree = tuple(s for i, s in enumerate(free) if i not in chosen) + tuple((v, k) for k in range(g.n_out))
                    nnodes = nodes + ((gname, g.n_in, g.n_out),)
                    _, cert = canonical_order(m, 0, nnodes, dict(nsrc), ordered_outputs=False)
                    key = cert + repr(nrem)
                    if key not in new:
                        new[key] = (nnodes, nsrc, nfree, nrem)
        frontier = new
    found = {}
    for nodes, srcitems, free, _ in frontier.values():
        if len(free) != n:
            continue
        base = dict(srcitems)
        for perm in itertools.permutations(free):
            src = dict(base)
            for j, s in enumerate(perm):
                src[(-1, j)] = s
            d = make_diagram(m, n, nodes, src, check=False)
            found[d.key] = d
    return list(found.values())


def enumerate_diagrams(sig: GeneratorSignature, m: int, n: int, grade) -> List[Diagram]:
    """All pairwise non-isomorphic diagrams m -> n of the given grade, sorted by key."""
    out: Dict[str, Diagram] = {}
    for counts in node_multisets(sig, grade):
        for d in _enumerate_multiset(sig, m, n, counts):
            out[d.key] = d
    return [out[k] for k in sorted(out)]
