"""Free Lie algebras in the Lyndon basis and group-like series.

Words are tuples of letter indices.  Associative polynomials are dicts
word -> Fraction.  A Lie element is stored by its coordinates on the standard
bracketings of Lyndon words; the bracketing of a Lyndon word w expands to w
plus lexicographically larger words, which gives a triangular projection.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .errors import PropError, TruncationMismatch

Word = Tuple[int, ...]
Poly = Dict[Word, Fraction]


# associative polynomials -------------------------------------------------------

def padd(a: Poly, b: Poly, s=1) -> Poly:
    out = dict(a)
    for w, c in b.items():
        x = out.get(w, 0) + s * c
        if x:
            out[w] = x
        else:
            out.pop(w, None)
    return out


def pscale(a: Poly, s) -> Poly:
    return {w: c * s for w, c in a.items()} if s else {}


def pmul(a: Poly, b: Poly, N: int) -> Poly:
    out: Poly = {}
    for u, c in a.items():
        for v, d in b.items():
            if len(u) + len(v) > N:
                continue
            w = u + v
            x = out.get(w, 0) + c * d
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return out


def pcomm(a: Poly, b: Poly, N: int) -> Poly:
    return padd(pmul(a, b, N), pmul(b, a, N), -1)


def pexp(a: Poly, N: int) -> Poly:
    """exp of a polynomial without constant term."""
    if () in a:
        raise PropError("exp needs a series without constant term")
    out: Poly = {(): Fraction(1)}
    term: Poly = {(): Fraction(1)}
    for k in range(1, N + 1):
        term = pscale(pmul(term, a, N), Fraction(1, k))
        if not term:
            break
        out = padd(out, term)
    return out


def plog(a: Poly, N: int) -> Poly:
    """log of a series with constant term 1."""
    if a.get((), 0) != 1:
        raise PropError("log needs constant term 1")
    x = dict(a)
    del x[()]
    out: Poly = {}
    term: Poly = {(): Fraction(1)}
    for k in range(1, N + 1):
        term = pmul(term, x, N)
        if not term:
            break
        out = padd(out, pscale(term, Fraction((-1) ** (k - 1), k)))
    return out


def pinv(a: Poly, N: int) -> Poly:
    """Inverse of a series with constant term 1."""
    if a.get((), 0) != 1:
        raise PropError("inverse needs constant term 1")
    x = dict(a)
    del x[()]
    out: Poly = {(): Fraction(1)}
    term: Poly = {(): Fraction(1)}
    for k in range(1, N + 1):
        term = pscale(pmul(term, x, N), -1)
        if not term:
            break
        out = padd(out, term)
    return out


def psubst(a: Poly, images: Sequence[Poly], N: int) -> Poly:
    """Substitute letter i by images[i] (images without constant term)."""
    out: Poly = {}
    cache: Dict[Word, Poly] = {(): {(): Fraction(1)}}

    def img(w):
        if w in cache:
            return cache[w]
        r = pmul(img(w[:-1]), images[w[-1]], N)
        cache[w] = r
        return r

    for w, c in sorted(a.items()):
        out = padd(out, img(w), c)
    return out


def degree_part(a: Poly, d: int) -> Poly:
    return {w: c for w, c in a.items() if len(w) == d}


# Lyndon words ------------------------------------------------------------------

@lru_cache(maxsize=None)
def lyndon_words(k: int, n: int) -> Tuple[Word, ...]:
    """Lyndon words of length exactly n over k letters, in lexicographic order (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return tuple(out)


def is_lyndon(w: Word) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else len(w) == 1


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> Tuple[Word, Word]:
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise PropError(f"{w} has no standard factorization")


@lru_cache(maxsize=None)
def _lyndon_poly(w: Word) -> Tuple[Tuple[Word, Fraction], ...]:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = standard_factorization(w)
    pu, pv = dict(_lyndon_poly(u)), dict(_lyndon_poly(v))
    return tuple(sorted(pcomm(pu, pv, len(w)).items()))


def lyndon_poly(w: Word) -> Poly:
    return dict(_lyndon_poly(w))


def witt_dimension(k: int, n: int) -> int:
    """Witt's necklace formula."""
    def mobius(d):
        r, p, x = 1, 2, d
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                r = -r
            p += 1
        return -r if x > 1 else r
    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def project_lie(a: Poly) -> Dict[Word, Fraction]:
    """Lyndon coordinates of a Lie polynomial; raises if a is not Lie."""
    rest = {w: c for w, c in a.items() if c}
    coords: Dict[Word, Fraction] = {}
    while rest:
        w = min(rest, key=lambda u: (len(u), u))
        if not is_lyndon(w):
            raise PropError(f"not a Lie element: word {w} cannot be a leading term")
        c = rest[w]
        coords[w] = c
        rest = padd(rest, lyndon_poly(w), -c)
    return coords


# series -------------------------------------------------------------------------

def _check_same(a, b):
    if a.alphabet != b.alphabet:
        raise PropError(f"alphabet mismatch {a.alphabet} vs {b.alphabet}")
    if a.N != b.N:
        raise TruncationMismatch(f"truncation mismatch {a.N} vs {b.N}")


@dataclass(frozen=True)
class LieSeries:
    alphabet: Tuple[str, ...]
    N: int
    coeffs: Dict[Word, Fraction] = field(default_factory=dict, hash=False, compare=True)

    @classmethod
    def letter(cls, alphabet, N, name, c=1):
        alphabet = tuple(alphabet)
        return cls(alphabet, N, {(alphabet.index(name),): Fraction(c)} if N >= 1 and c else {})

    @classmethod
    def zero(cls, alphabet, N):
        return cls(tuple(alphabet), N, {})

    @classmethod
    def from_poly(cls, alphabet, N, a: Poly):
        a = {w: c for w, c in a.items() if 0 < len(w) <= N}
        return cls(tuple(alphabet), N, project_lie(a))

    def to_poly(self) -> Poly:
        out: Poly = {}
        for w, c in self.coeffs.items():
            out = padd(out, lyndon_poly(w), c)
        return out

    def component(self, d: int) -> Dict[Word, Fraction]:
        return {w: c for w, c in self.coeffs.items() if len(w) == d}

    def __add__(self, other):
        _check_same(self, other)
        return LieSeries(self.alphabet, self.N, padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        _check_same(self, other)
        return LieSeries(self.alphabet, self.N, padd(self.coeffs, other.coeffs, -1))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return LieSeries(self.alphabet, self.N, pscale(self.coeffs, Fraction(s)))

    __rmul__ = scale

    def __bool__(self):
        return bool(self.coeffs)

    def word_name(self, w: Word) -> str:
        return ".".join(self.alphabet[i] for i in w)

    def to_json(self):
        comps: Dict[str, Dict[str, str]] = {}
        for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
            comps.setdefault(str(len(w)), {})[self.word_name(w)] = _fs(c)
        return {"alphabet": list(self.alphabet), "truncation": self.N, "components": comps}

    @classmethod
    def from_json(cls, obj):
        al = tuple(obj["alphabet"])
        coeffs = {}
        for d, comp in obj["components"].items():
            for name, c in comp.items():
                w = tuple(al.index(x) for x in name.split("."))
                if len(w) != int(d) or not is_lyndon(w):
                    raise PropError(f"{name} is not a Lyndon word of degree {d}")
                coeffs[w] = Fraction(c)
        return cls(al, int(obj["truncation"]), coeffs)


def _fs(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def bracket(a: LieSeries, b: LieSeries) -> LieSeries:
    _check_same(a, b)
    return LieSeries.from_poly(a.alphabet, a.N, pcomm(a.to_poly(), b.to_poly(), a.N))


def bch(a: LieSeries, b: LieSeries) -> LieSeries:
    """log(exp(a) exp(b)) truncated at the common degree."""
    _check_same(a, b)
    N = a.N
    prod = pmul(pexp(a.to_poly(), N), pexp(b.to_poly(), N), N)
    return LieSeries.from_poly(a.alphabet, N, plog(prod, N))


@dataclass(frozen=True)
class GroupSeries:
    """exp of a Lie series; stored by its logarithm."""

    log: LieSeries

    @property
    def alphabet(self):
        return self.log.alphabet

    @property
    def N(self):
        return self.log.N

    @classmethod
    def one(cls, alphabet, N):
        return cls(LieSeries.zero(alphabet, N))

    @classmethod
    def from_poly(cls, alphabet, N, a: Poly):
        return cls(LieSeries.from_poly(alphabet, N, plog(a, N)))

    def to_poly(self) -> Poly:
        return pexp(self.log.to_poly(), self.N)

    def __mul__(self, other):
        return GroupSeries(bch(self.log, other.log))

    def inverse(self):
        return GroupSeries(-self.log)

    def power(self, lam):
        return GroupSeries(self.log.scale(lam))

    def is_one(self):
        return not self.log

    def __eq__(self, other):
        return isinstance(other, GroupSeries) and self.log == other.log

    def to_json(self):
        return {"log": self.log.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LieSeries.from_json(obj["log"]))


def _log_of(arg) -> LieSeries:
    if isinstance(arg, GroupSeries):
        return arg.log
    if isinstance(arg, LieSeries):
        return arg
    raise PropError("substitution arguments must be LieSeries exponents or GroupSeries")


def substitute_lie(P: LieSeries, args: Sequence) -> LieSeries:
    logs = [_log_of(x) for x in args]
    if len(logs) != len(P.alphabet):
        raise PropError(f"expected {len(P.alphabet)} arguments, got {len(logs)}")
    amb = logs[0].alphabet
    for x in logs:
        if x.alphabet != amb:
            raise PropError("substitution arguments need a common alphabet")
        if x.N != P.N:
            raise TruncationMismatch(f"truncation mismatch {x.N} vs {P.N}")
    images = [x.to_poly() for x in logs]
    return LieSeries.from_poly(amb, P.N, psubst(P.to_poly(), images, P.N))


def substitute(f: GroupSeries, args: Sequence) -> GroupSeries:
    """f(A_1, ..., A_k) for group-like arguments A_i = exp(log A_i)."""
    return GroupSeries(substitute_lie(f.log, args))


def conjugate(g: GroupSeries, x: LieSeries) -> LieSeries:
    """log(g e^x g^-1) = g x g^-1."""
    _check_same(g.log, x)
    N = x.N
    p = pmul(pmul(g.to_poly(), x.to_poly(), N), g.inverse().to_poly(), N)
    return LieSeries.from_poly(x.alphabet, N, p)


# Grothendieck-Teichmueller elements -----------------------------------------------

GT_ALPHABET = ("X", "Y")


@dataclass(frozen=True)
class GTElement:
    lam: Fraction
    f: GroupSeries

    @classmethod
    def identity(cls, N):
        return cls(Fraction(1), GroupSeries.one(GT_ALPHABET, N))

    @property
    def N(self):
        return self.f.N

    def to_json(self):
        return {"lambda": _fs(Fraction(self.lam)), "f": self.f.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(Fraction(obj["lambda"]), GroupSeries.from_json(obj["f"]))


def compose_series(f1: GroupSeries, f2: GroupSeries, lam) -> GroupSeries:
    """f1(f2 X^lam f2^-1, Y^lam) f2."""
    _check_same(f1.log, f2.log)
    al, N = f1.alphabet, f1.N
    lam = Fraction(lam)
    x = LieSeries.letter(al, N, al[0], lam)
    y = LieSeries.letter(al, N, al[1], lam)
    return substitute(f1, [conjugate(f2, x), y]) * f2


def gt_compose(a1: GTElement, a2: GTElement) -> GTElement:
    return GTElement(Fraction(a1.lam) * Fraction(a2.lam), compose_series(a1.f, a2.f, a2.lam))


def gt_invert(a: GTElement) -> GTElement:
    """Two-sided inverse, solved degree by degree from b a = 1."""
    lam = Fraction(a.lam)
    if lam == 0:
        raise PropError("GT element with lambda = 0 is not invertible")
    al, N = a.f.alphabet, a.N
    inv_lam = 1 / lam
    g = LieSeries.zero(al, N)
    for d in range(1, N + 1):
        res = compose_series(GroupSeries(g), a.f, lam).log.component(d)
        # the degree-d part of g enters linearly with factor lam^d
        g = g - LieSeries(al, N, pscale(res, inv_lam ** d))
    b = GTElement(inv_lam, GroupSeries(g))
    if not gt_compose(b, a).f.is_one() or not gt_compose(a, b).f.is_one():
        raise PropError("inverse check failed")
    return b


def gt_equal(a: GTElement, b: GTElement) -> bool:
    return Fraction(a.lam) == Fraction(b.lam) and a.f == b.f
