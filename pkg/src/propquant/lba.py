"""Normal forms in the Lie bialgebra PROP.

A morphism m -> n is a combination of "biwords": the N middle letters are
spread over m input cowords and n output words.  Cowords stand for transposed
Lie trees (iterated cobrackets) and words for Lie brackets, both expanded in
the associative/coassociative model.  A key is

    (lengths of the input cowords, output words)

with letters renamed by first occurrence in the concatenated cowords, so the
cowords themselves are implicit.  The number of cobrackets is N - m and the
number of brackets is N - n.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ArityError, PropError

Key = Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]


def _canon(cowords: Sequence[Sequence[int]], outs: Sequence[Sequence[int]]) -> Key:
    ren = {}
    for cw in cowords:
        for x in cw:
            ren[x] = len(ren)
    return tuple(len(cw) for cw in cowords), tuple(tuple(ren[x] for x in w) for w in outs)


def _cowords(lens: Sequence[int]) -> List[List[int]]:
    out, s = [], 0
    for L in lens:
        out.append(list(range(s, s + L)))
        s += L
    return out


class LBAElem:
    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Dict[Key, Fraction] | None = None):
        self.m, self.n = m, n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # linear structure
    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            x = t.get(k, 0) + v
            if x:
                t[k] = x
            else:
                t.pop(k, None)
        return LBAElem(self.m, self.n, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        if not s:
            return LBAElem(self.m, self.n)
        return LBAElem(self.m, self.n, {k: v * s for k, v in self.terms.items()})

    __rmul__ = scale

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ArityError(f"arity mismatch {self.m}->{self.n} vs {other.m}->{other.n}")

    def __eq__(self, other):
        return isinstance(other, LBAElem) and (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LBAElem({self.m}->{self.n}, {len(self.terms)} terms)"

    def items(self):
        return sorted(self.terms.items())

    def truncate(self, max_delta: int) -> "LBAElem":
        return LBAElem(self.m, self.n, {k: v for k, v in self.terms.items() if delta_degree(k) <= max_delta})

    def delta_part(self, d: int) -> "LBAElem":
        return LBAElem(self.m, self.n, {k: v for k, v in self.terms.items() if delta_degree(k) == d})

    def delta_degrees(self):
        return sorted({delta_degree(k) for k in self.terms})

    def to_json(self):
        return {"m": self.m, "n": self.n,
                "terms": [[list(lens), [list(w) for w in outs], str(c)] for (lens, outs), c in self.items()]}

    @classmethod
    def from_json(cls, obj) -> "LBAElem":
        terms = {(tuple(lens), tuple(tuple(w) for w in outs)): Fraction(c) for lens, outs, c in obj["terms"]}
        return cls(int(obj["m"]), int(obj["n"]), terms)


def delta_degree(k: Key) -> int:
    return sum(k[0]) - len(k[0])


def mu_degree(k: Key) -> int:
    return sum(k[0]) - len(k[1])


def add_into(acc: Dict[Key, Fraction], k: Key, c) -> None:
    x = acc.get(k, 0) + c
    if x:
        acc[k] = x
    else:
        acc.pop(k, None)


# elementary elements --------------------------------------------------------

def identity(n: int) -> LBAElem:
    return LBAElem(n, n, {((1,) * n, tuple((j,) for j in range(n))): Fraction(1)})


def permutation(p: Sequence[int]) -> LBAElem:
    """Input i goes to output p[i]."""
    n = len(p)
    outs = [None] * n
    for i, j in enumerate(p):
        outs[j] = (i,)
    return LBAElem(n, n, {((1,) * n, tuple(outs)): Fraction(1)})


def bracket() -> LBAElem:
    return LBAElem(2, 1, {((1, 1), ((0, 1),)): Fraction(1), ((1, 1), ((1, 0),)): Fraction(-1)})


def cobracket() -> LBAElem:
    return LBAElem(1, 2, {((2,), ((0,), (1,))): Fraction(1), ((2,), ((1,), (0,))): Fraction(-1)})


def generator(name: str) -> LBAElem:
    if name == "mu":
        return bracket()
    if name == "delta":
        return cobracket()
    raise PropError(f"not a Lie bialgebra generator: {name}")


# composition ------------------------------------------------------------------

def _split_word(word):
    """Word-level cobracket: yields (position, left word, right word)."""
    L = len(word)
    for i in range(L):
        others = [p for p in range(L) if p != i]
        for r in range(len(others) + 1):
            for S in itertools.combinations(others, r):
                left = sorted(S + (i,))
                right = sorted(set(others) - set(S) | {i})
                yield i, left, right


def _apply_cotree(states, word, letters):
    """Apply the left-normed transposed tree on ``letters`` to ``word``.

    A state is (coef, cowords, assignment, next_letter).  Every cobracket that
    hits a middle letter y splits it into y'y'' - y''y' inside its coword.
    """
    L = len(letters)
    out = []
    for coef, cows, assign, nxt in states:
        cur = [(coef, cows, assign, nxt, tuple(word))]
        for step in range(L - 1, 0, -1):
            new = []
            for c, cw, asg, nx, w in cur:
                for i, left, right in _split_word(w):
                    y = w[i]
                    a, b = nx, nx + 1
                    lw = tuple(a if p == i else w[p] for p in left)
                    rw = tuple(b if p == i else w[p] for p in right)
                    for sign, pair in ((1, (a, b)), (-1, (b, a))):
                        ncw = []
                        for cword in cw:
                            if y in cword:
                                j = cword.index(y)
                                cword = cword[:j] + pair + cword[j + 1:]
                            ncw.append(cword)
                        nasg = dict(asg)
                        nasg[letters[step]] = rw
                        new.append((c * sign, tuple(ncw), nasg, nx + 2, lw))
            cur = new
        for c, cw, asg, nx, w in cur:
            asg = dict(asg)
            asg[letters[0]] = w
            out.append((c, cw, asg, nx))
    return out


@lru_cache(maxsize=200000)
def _compose_terms(fk: Key, gk: Key, offset: int) -> Tuple[Tuple[Key, Fraction], ...]:
    flens, fouts = fk
    glens, gouts = gk
    k = len(flens)
    gcows = tuple(tuple(c) for c in _cowords(glens))
    nxt = sum(glens)
    fcows = _cowords(flens)
    states = [(Fraction(1), gcows, {}, nxt)]
    for j in range(k):
        word = gouts[offset + j]
        L = len(fcows[j])
        if L == 1:
            states = [(c, cw, {**a, fcows[j][0]: tuple(word)}, nx) for c, cw, a, nx in states]
            continue
        states = [(c / L, cw, a, nx) for c, cw, a, nx in states]
        states = _apply_cotree(states, word, fcows[j])
    acc: Dict[Key, Fraction] = {}
    for c, cw, asg, _ in states:
        mid = [sum((asg[x] for x in w), ()) for w in fouts]
        outs = list(gouts[:offset]) + mid + list(gouts[offset + k:])
        add_into(acc, _canon(cw, outs), c)
    return tuple(acc.items())


def compose_at(f: LBAElem, g: LBAElem, offset: int = 0, max_delta: int | None = None) -> LBAElem:
    """Apply f to the outputs offset .. offset+f.m-1 of g (terms above max_delta dropped)."""
    if offset < 0 or offset + f.m > g.n:
        raise ArityError(f"cannot apply a {f.m}-input map at output {offset} of a {g.n}-output map")
    acc: Dict[Key, Fraction] = {}
    fitems = [(fk, fc, delta_degree(fk)) for fk, fc in f.terms.items()]
    for gk, gc in g.terms.items():
        dg = delta_degree(gk)
        for fk, fc, df in fitems:
            if max_delta is not None and dg + df > max_delta:
                continue
            for k, c in _compose_terms(fk, gk, offset):
                add_into(acc, k, c * gc * fc)
    return LBAElem(g.m, g.n - f.m + f.n, acc)


def compose(f: LBAElem, g: LBAElem, max_delta: int | None = None) -> LBAElem:
    """f after g."""
    if g.n != f.m:
        raise ArityError(f"cannot compose: inner target arity {g.n} != outer source arity {f.m}")
    return compose_at(f, g, 0, max_delta)


def tensor(f: LBAElem, g: LBAElem) -> LBAElem:
    acc: Dict[Key, Fraction] = {}
    for (fl, fo), fc in f.terms.items():
        N = sum(fl)
        for (gl, go), gc in g.terms.items():
            k = (fl + gl, fo + tuple(tuple(x + N for x in w) for w in go))
            add_into(acc, k, fc * gc)
    return LBAElem(f.m + g.m, f.n + g.n, acc)


def permute_outputs(f: LBAElem, order: Sequence[int]) -> LBAElem:
    """New output j is old output order[j]."""
    return LBAElem(f.m, f.n, {(l, tuple(o[i] for i in order)): c for (l, o), c in f.terms.items()})


def permute_inputs(f: LBAElem, order: Sequence[int]) -> LBAElem:
    """New input j is old input order[j]."""
    acc: Dict[Key, Fraction] = {}
    for (l, o), c in f.terms.items():
        cows = _cowords(l)
        add_into(acc, _canon([cows[i] for i in order], o), c)
    return LBAElem(f.m, f.n, acc)


def transpose(f: LBAElem) -> LBAElem:
    """Swap the roles of cowords and words (exchanges bracket and cobracket)."""
    acc: Dict[Key, Fraction] = {}
    for (l, o), c in f.terms.items():
        add_into(acc, _canon(o, _cowords(l)), c)
    return LBAElem(f.n, f.m, acc)


# symmetric blocks ---------------------------------------------------------------

def _blocks(sizes):
    out, s = [], 0
    for b in sizes:
        out.append(range(s, s + b))
        s += b
    return out


def canonical_outputs(f: LBAElem, sizes: Sequence[int]) -> LBAElem:
    """Sort output words inside each block: the orbit representative under the
    product of symmetric groups acting on output blocks."""
    if sum(sizes) != f.n:
        raise ArityError("block sizes do not match the number of outputs")
    if all(b <= 1 for b in sizes):
        return f
    acc: Dict[Key, Fraction] = {}
    bl = _blocks(sizes)
    for (l, o), c in f.terms.items():
        no = []
        for r in bl:
            no.extend(sorted(o[i] for i in r))
        add_into(acc, (l, tuple(no)), c)
    return LBAElem(f.m, f.n, acc)


@lru_cache(maxsize=None)
def _block_perms(sizes: Tuple[int, ...]):
    per = []
    for r in _blocks(sizes):
        per.append(list(itertools.permutations(r)))
    out = []
    for choice in itertools.product(*per):
        out.append(tuple(itertools.chain.from_iterable(choice)))
    return out


def symmetrize_inputs(f: LBAElem, sizes: Sequence[int]) -> LBAElem:
    """Average over permutations of the inputs inside each block."""
    sizes = tuple(sizes)
    if all(b <= 1 for b in sizes):
        return f
    perms = _block_perms(sizes)
    w = Fraction(1, len(perms))
    acc: Dict[Key, Fraction] = {}
    for (l, o), c in f.terms.items():
        cows = _cowords(l)
        for p in perms:
            add_into(acc, _canon([cows[i] for i in p], o), c * w)
    return LBAElem(f.m, f.n, acc)


def symmetrize_head(f: LBAElem, start: int, size: int) -> LBAElem:
    """Symmetrize inputs start..start+size-1, given f is already symmetric in all but the first."""
    if size <= 1:
        return f
    w = Fraction(1, size)
    acc: Dict[Key, Fraction] = {}
    base = list(range(f.m))
    for i in range(size):
        p = base[:]
        p[start], p[start + i] = p[start + i], p[start]
        for (l, o), c in f.terms.items():
            cows = _cowords(l)
            add_into(acc, _canon([cows[j] for j in p], o), c * w)
    return LBAElem(f.m, f.n, acc)


def symmetrize_outputs(f: LBAElem, sizes: Sequence[int]) -> LBAElem:
    sizes = tuple(sizes)
    if all(b <= 1 for b in sizes):
        return f
    perms = _block_perms(sizes)
    w = Fraction(1, len(perms))
    acc: Dict[Key, Fraction] = {}
    for (l, o), c in f.terms.items():
        for p in perms:
            add_into(acc, (l, tuple(o[i] for i in p)), c * w)
    return LBAElem(f.m, f.n, acc)


# diagrams -> normal form -----------------------------------------------------------

def from_morphism(f) -> LBAElem:
    """Normal form of a morphism of the free PROP on mu and delta."""
    from .prop import topological_order

    out = LBAElem(f.m, f.n)
    for d, c in f.terms.items():
        out = out + from_diagram(d, topological_order).scale(c)
    return out


def from_diagram(d, topo=None) -> LBAElem:
    if topo is None:
        from .prop import topological_order as topo
    sm = d.src_map()
    state = identity(d.m)
    live = [(-1, j) for j in range(d.m)]
    for v in topo(d):
        name, a, b = d.nodes[v]
        ins = [sm[(v, k)] for k in range(a)]
        rest = [w for w in live if w not in ins]
        state = permute_outputs(state, [live.index(w) for w in ins + rest])
        state = compose_at(generator(name), state, 0)
        live = [(v, k) for k in range(b)] + rest
    outs = [sm[(-1, j)] for j in range(d.n)]
    return permute_outputs(state, [live.index(w) for w in outs])


def rank(elems: Iterable[LBAElem]) -> int:
    from .linalg import RowReducer
    rr = RowReducer()
    for e in elems:
        rr.add({k: v for k, v in e.terms.items()})
    return rr.rank
