"""Tensor ideals generated by homogeneous relations, and quotient normal forms.

The degree (m, n, grade) part of the ideal generated by relations r_1..r_s is
spanned by diagrams with one "hole" node of the arity of some r_i, with the
hole filled by r_i.  The k-th power uses diagrams with k holes.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PropError, TruncationExceeded
from .linalg import RowReducer
from .prop import (
    Diagram,
    GeneratorSignature,
    Morphism,
    enumerate_diagrams,
    substitute,
)

HOLE = "_hole"


@dataclass
class RelationSet:
    sig: GeneratorSignature
    relations: List[Tuple[str, Morphism]] = field(default_factory=list)

    def add(self, name: str, rel: Morphism):
        parts = rel.homogeneous_parts(self.sig)
        if len(parts) > 1:
            raise PropError(f"relation {name} is not homogeneous")
        self.relations.append((name, rel))

    def grade_of(self, rel: Morphism) -> Tuple[int, ...]:
        (g,) = rel.homogeneous_parts(self.sig).keys()
        return g

    def fingerprint(self) -> str:
        from .grammar import format_morphism
        blob = json.dumps(
            {"sig": self.sig.to_json(), "rels": [[n, r.m, r.n, format_morphism(r)] for n, r in self.relations]},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()


def _hole_signature(rs: RelationSet) -> GeneratorSignature:
    sig = GeneratorSignature(rs.sig.channels + (HOLE,))
    for g in rs.sig.generators.values():
        sig.add(g.name, g.n_in, g.n_out, g.grade + (0,))
    for i, (_, rel) in enumerate(rs.relations):
        if rel:
            sig.add(f"{HOLE}{i}", rel.m, rel.n, rs.grade_of(rel) + (1,))
    return sig


def fill_holes(d: Diagram, rs: RelationSet) -> Morphism:
    work = Morphism.from_diagram(d)
    while True:
        out = Morphism.zero(d.m, d.n)
        done = True
        for dd, c in work.terms.items():
            idx = next((v for v, nd in enumerate(dd.nodes) if nd[0].startswith(HOLE)), None)
            if idx is None:
                out = out + Morphism.from_diagram(dd, c)
                continue
            done = False
            rel = rs.relations[int(dd.nodes[idx][0][len(HOLE):])][1]
            out = out + c * substitute(dd, idx, rel)
        work = out
        if done:
            return work


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


class TensorIdeal:
    """The power-th power of the ideal generated by a relation set.

    ``budget`` bounds the grade of cells that may be computed; asking for a
    larger cell raises TruncationExceeded.
    """

    def __init__(self, rels: RelationSet, power: int = 1, budget: Optional[Sequence[int]] = None,
                 cache_dir: Optional[str] = None):
        self.rels = rels
        self.sig = rels.sig
        self.power = power
        self.budget = tuple(budget) if budget is not None else None
        self._cells: Dict[tuple, RowReducer] = {}
        cache_dir = cache_dir if cache_dir is not None else os.environ.get("PROPQUANT_CACHE")
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._hsig = _hole_signature(rels)
        self._fp = rels.fingerprint()

    def _cell_key(self, m, n, grade):
        return (m, n, self.sig.grade_vector(grade))

    def _cache_path(self, key) -> Optional[Path]:
        if self.cache_dir is None:
            return None
        h = hashlib.sha256(json.dumps([self._fp, self.power, list(key[:2]), list(key[2])]).encode()).hexdigest()
        return self.cache_dir / f"ideal-{h[:32]}.json"

    def span(self, m: int, n: int, grade) -> RowReducer:
        key = self._cell_key(m, n, grade)
        if self.budget is not None and any(g > b for g, b in zip(key[2], self.budget)):
            raise TruncationExceeded(f"truncation exceeded: grade {key[2]} outside budget {self.budget}")
        rr = self._cells.get(key)
        if rr is not None:
            return rr
        path = self._cache_path(key)
        if path is not None and path.exists():
            rr = RowReducer()
            for row in json.loads(path.read_text())["rows"]:
                rr.rows[row[0]] = {k: Fraction(v) for k, v in row[1]}
            enumerate_diagrams(self.sig, m, n, key[2])  # interns the cell
        else:
            rr = RowReducer()
            hgrade = key[2] + (self.power,)
            if self.rels.relations:
                for d in enumerate_diagrams(self._hsig, m, n, hgrade):
                    rr.add(fill_holes(d, self.rels).to_vector())
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                rows = [[k, sorted([kk, _frac_str(v)] for kk, v in row.items())] for k, row in rr.basis()]
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps({"cell": [m, n, list(key[2])], "rows": rows}, sort_keys=True))
                tmp.replace(path)
        self._cells[key] = rr
        return rr

    def reduce(self, f: Morphism) -> Morphism:
        """Canonical representative of f modulo the ideal."""
        out = Morphism.zero(f.m, f.n)
        for g, part in sorted(f.homogeneous_parts(self.sig).items()):
            rr = self.span(f.m, f.n, g)
            vec = rr.reduce(part.to_vector())
            lookup = {d.key: d for d in part.terms}
            terms = {}
            for k, c in vec.items():
                d = lookup.get(k) or _lookup_key(k)
                terms[d] = c
            out = out + Morphism(f.m, f.n, terms)
        return out

    def contains(self, f: Morphism) -> bool:
        return not self.reduce(f)

    def span_dim(self, m, n, grade) -> int:
        return self.span(m, n, grade).rank

    def quotient_dim(self, m, n, grade) -> int:
        total = len(enumerate_diagrams(self.sig, m, n, grade))
        return total - self.span(m, n, grade).rank

    def quotient_basis(self, m, n, grade) -> List[Diagram]:
        rr = self.span(m, n, grade)
        return [d for d in enumerate_diagrams(self.sig, m, n, grade) if d.key not in rr.rows]


def _lookup_key(k: str) -> Diagram:
    from .prop import _INTERN
    d = _INTERN.get(k)
    if d is None:
        raise PropError(f"diagram {k} is not interned")
    return d


def ideal_span(rels: RelationSet, m, n, grade, power=1) -> RowReducer:
    return TensorIdeal(rels, power).span(m, n, grade)


def reduce(f: Morphism, ideal: TensorIdeal) -> Morphism:
    return ideal.reduce(f)


def quotient_dim(ideal: TensorIdeal, m, n, grade) -> int:
    return ideal.quotient_dim(m, n, grade)


def ideal_power(ideal: TensorIdeal, k: int) -> TensorIdeal:
    return TensorIdeal(ideal.rels, ideal.power * k, ideal.budget, str(ideal.cache_dir) if ideal.cache_dir else None)


def generated_by(sig: GeneratorSignature, gens: Sequence[str]) -> RelationSet:
    """Ideal generated by the given generators themselves, e.g. the ideal of delta."""
    from .prop import generator
    rs = RelationSet(sig)
    for g in gens:
        rs.add(g, generator(sig, g))
    return rs
