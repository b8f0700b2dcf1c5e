"""Text syntax for morphisms.

    expr := term | expr '+' expr | rational '*' expr
    term := gen | 'id' int | 'sigma' '(' perm ')' | term ';' term | term '#' term

``a ; b`` is composition with ``a`` acting second, ``#`` is the tensor product
and binds tighter than ``;``.  Permutations list the one-based output position
of each input.  Parentheses group and ``-`` is accepted as a shorthand.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List

from .errors import ParseError
from .prop import (
    Diagram,
    GeneratorSignature,
    Morphism,
    compose,
    topological_order,
    generator,
    identity,
    permutation,
    tensor,
)

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text: str) -> List[str]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            break
        pos = mt.end()
        tok = mt.group(1) or mt.group(2) or mt.group(3)
        if tok and not tok.isspace():
            toks.append(tok)
    return toks


class _Parser:
    def __init__(self, text, sig):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise ParseError(f"expected {expect or 'token'} at position {self.i}, got {t!r}")
        self.i += 1
        return t

    def expr(self):
        acc = self.addend()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.addend()
            acc = _lin(acc, rhs, 1 if op == "+" else -1)
        return acc

    def addend(self):
        t = self.peek()
        if t == "-":
            self.take()
            return _scale(Fraction(-1), self.addend())
        if t is not None and t[0].isdigit():
            j = self.i
            self.take()
            if self.peek() == "*":
                self.take()
                return _scale(Fraction(t), self.addend())
            if t == "0" and self.peek() in (None, ")", "+", "-"):
                return 0
            self.i = j
        return self.comp()

    def comp(self):
        acc = self.tens()
        while self.peek() == ";":
            self.take()
            rhs = self.tens()
            acc = compose(acc, rhs)
        return acc

    def tens(self):
        acc = self.atom()
        while self.peek() == "#":
            self.take()
            acc = tensor(acc, self.atom())
        return acc

    def atom(self):
        t = self.take()
        if t == "(":
            e = self.expr()
            self.take(")")
            if isinstance(e, int):
                raise ParseError("bare zero cannot be composed")
            return e
        if t == "id" or re.fullmatch(r"id\d+", t):
            k = int(t[2:]) if len(t) > 2 else int(self.take())
            return identity(k)
        if t == "sigma":
            self.take("(")
            p = []
            while self.peek() != ")":
                p.append(int(self.take()) - 1)
            self.take(")")
            return permutation(p)
        if t[0].isalpha() or t[0] == "_":
            if self.sig is None:
                raise ParseError(f"generator {t!r} needs a signature")
            if t not in self.sig.generators:
                raise ParseError(f"unknown generator {t!r}")
            return generator(self.sig, t)
        raise ParseError(f"unexpected token {t!r}")


def _scale(c, e):
    return 0 if isinstance(e, int) else c * e


def _lin(a, b, s):
    if isinstance(a, int):
        return _scale(Fraction(s), b)
    if isinstance(b, int):
        return a
    return a + s * b


def parse_morphism(text: str, sig: GeneratorSignature | None = None, m=None, n=None) -> Morphism:
    p = _Parser(text, sig)
    e = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    if isinstance(e, int):
        if m is None or n is None:
            raise ParseError("zero needs explicit arities")
        return Morphism.zero(m, n)
    if (m is not None and e.m != m) or (n is not None and e.n != n):
        raise ParseError(f"expected arity {m}->{n}, parsed {e.m}->{e.n}")
    return e


# printing -------------------------------------------------------------------

def _perm_text(p):
    return "sigma(" + " ".join(str(x + 1) for x in p) + ")"


def format_diagram(d: Diagram) -> str:
    """Layered term for a diagram: one generator per layer."""
    live = [(-1, j) for j in range(d.m)]
    sm = d.src_map()
    steps = []
    for v in topological_order(d):
        name, a, b = d.nodes[v]
        ins = [sm[(v, k)] for k in range(a)]
        rest = [w for w in live if w not in ins]
        new = ins + rest
        p = [new.index(w) for w in live]
        layer = name if len(rest) == 0 else f"{name} # id {len(rest)}"
        if p != list(range(len(p))):
            layer = f"{layer} ; {_perm_text(p)}"
        steps.append(layer)
        live = [(v, k) for k in range(b)] + rest
    outs = [sm[(-1, j)] for j in range(d.n)]
    p = [outs.index(w) for w in live]
    if p != list(range(len(p))) or not steps:
        steps.append(_perm_text(p) if p != list(range(len(p))) else f"id {d.n}")
    return " ; ".join(f"({s})" if "#" in s and len(steps) > 1 else s for s in reversed(steps))


def format_morphism(f: Morphism) -> str:
    if not f.terms:
        return "0"
    parts = []
    for d, c in f.items():
        t = format_diagram(d)
        parts.append(t if c == 1 else f"{c}*({t})" if ";" in t or "#" in t else f"{c}*{t}")
    return " + ".join(parts)
