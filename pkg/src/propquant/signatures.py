"""Preset signatures and relations, stored as term-grammar text files."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Tuple

from .errors import PropError
from .grammar import format_morphism, parse_morphism
from .ideal import RelationSet, TensorIdeal
from .prop import GeneratorSignature, Morphism, enumerate_diagrams, generator

PRESET_NAMES = ("AA", "LA", "LBA", "QTLBA", "HA", "QTHA", "CYBA", "QYBA", "CPHA", "QTCPHA")


@dataclass
class Preset:
    name: str
    description: str
    sig: GeneratorSignature
    # (name, lhs, rhs) with lhs - rhs in the ideal
    equations: List[Tuple[str, Morphism, Morphism]] = field(default_factory=list)

    def relation(self, name) -> Morphism:
        for n, lhs, rhs in self.equations:
            if n == name:
                return lhs - rhs
        raise PropError(f"{self.name} has no relation {name!r}")

    def relation_set(self) -> RelationSet:
        rs = RelationSet(self.sig)
        for n, lhs, rhs in self.equations:
            rs.add(n, lhs - rhs)
        return rs

    @property
    def enumerable(self) -> bool:
        return all(any(g.grade) for g in self.sig.generators.values())

    def ideal(self, budget=None, cache_dir=None) -> TensorIdeal:
        if not self.enumerable:
            raise PropError(f"{self.name} has generators of grade zero; no finite diagram cells")
        return TensorIdeal(self.relation_set(), 1, budget, cache_dir)

    def to_text(self) -> str:
        lines = [f"# {self.description}", "channels " + " ".join(self.sig.channels)]
        for g in self.sig.generators.values():
            lines.append(f"gen {g.name} {g.n_in} {g.n_out} : " + " ".join(map(str, g.grade)))
        for n, lhs, rhs in self.equations:
            rt = format_morphism(rhs) if rhs else "0"
            lines.append(f"rel {n} : {format_morphism(lhs)} = {rt}")
        return "\n".join(lines) + "\n"


def parse_preset(name: str, text: str) -> Preset:
    desc, channels, gens, rels = "", None, [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            desc = desc or line[1:].strip()
            continue
        head, _, rest = line.partition(" ")
        if head == "channels":
            channels = rest.split()
        elif head == "gen":
            left, _, grade = rest.partition(":")
            gname, a, b = left.split()
            gens.append((gname, int(a), int(b), [int(x) for x in grade.split()]))
        elif head == "rel":
            rname, _, body = rest.partition(":")
            rels.append((rname.strip(), body.strip()))
        else:
            raise PropError(f"bad preset line: {raw!r}")
    if channels is None:
        raise PropError("preset is missing a channels line")
    sig = GeneratorSignature.build(channels, gens)
    p = Preset(name, desc, sig)
    for rname, body in rels:
        lt, _, rt = body.partition("=")
        lhs = parse_morphism(lt, sig)
        rhs = parse_morphism(rt, sig, lhs.m, lhs.n) if rt.strip() else Morphism.zero(lhs.m, lhs.n)
        if (lhs.m, lhs.n) != (rhs.m, rhs.n):
            raise PropError(f"relation {rname}: sides have arities {lhs.m}->{lhs.n} and {rhs.m}->{rhs.n}")
        p.equations.append((rname, lhs, rhs))
    return p


_CACHE: Dict[str, Preset] = {}


def load_preset(name: str) -> Preset:
    if name not in PRESET_NAMES:
        raise PropError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    if name not in _CACHE:
        text = resources.files("propquant.presets").joinpath(f"{name}.prop").read_text()
        _CACHE[name] = parse_preset(name, text)
    return _CACHE[name]


def list_presets() -> List[str]:
    return list(PRESET_NAMES)


def validate_preset(p: Preset, max_arity: int = 3) -> Dict[str, bool]:
    """Homogeneity of every relation, nondegeneracy and ideal sanity."""
    report = {}
    homog = True
    for n, lhs, rhs in p.equations:
        rel = lhs - rhs
        if len(rel.homogeneous_parts(p.sig)) > 1:
            homog = False
    report["homogeneous"] = homog
    report["nonzero_relations"] = all(lhs != rhs for _, lhs, rhs in p.equations)
    if p.enumerable and homog:
        ideal = p.ideal()
        nondeg = True
        for g in p.sig.generators.values():
            if g.n_in + g.n_out > max_arity + 1:
                continue
            if not ideal.reduce(generator(p.sig, g.name)):
                nondeg = False
        report["nondegenerate"] = nondeg
        sane = True
        for n, lhs, rhs in p.equations:
            rel = lhs - rhs
            if not ideal.contains(rel):
                sane = False
            (grade,) = rel.homogeneous_parts(p.sig).keys()
            if ideal.quotient_dim(rel.m, rel.n, grade) >= len(enumerate_diagrams(p.sig, rel.m, rel.n, grade)):
                sane = False
        report["ideal_sane"] = sane
    return report
