"""Random diagram builders shared by the property tests."""
from __future__ import annotations

import random
from typing import List

from propquant.prop import (
    Diagram,
    compose_diagrams,
    generator_diagram,
    identity_diagram,
    permutation_diagram,
    tensor_diagrams,
)

MAX_WIDTH = 4


def random_layer(rng: random.Random, width: int) -> Diagram:
    blocks: List[Diagram] = []
    left = width
    out = 0
    while left:
        choices = ["id", "delta"] if out < MAX_WIDTH else ["id"]
        if left >= 2:
            choices += ["mu", "swap"]
        kind = rng.choice(choices)
        if kind == "id":
            blocks.append(identity_diagram(1)); left -= 1; out += 1
        elif kind == "delta":
            blocks.append(generator_diagram("delta", 1, 2)); left -= 1; out += 2
        elif kind == "mu":
            blocks.append(generator_diagram("mu", 2, 1)); left -= 2; out += 1
        else:
            blocks.append(permutation_diagram((1, 0))); left -= 2; out += 2
    d = blocks[0]
    for b in blocks[1:]:
        d = tensor_diagrams(d, b)
    return d


def random_permutation(rng: random.Random, n: int) -> Diagram:
    p = list(range(n))
    rng.shuffle(p)
    return permutation_diagram(p)


def random_diagram(rng: random.Random, m: int, layers: int = 3) -> Diagram:
    """A diagram with m inputs built from layers of mu, delta, identities and swaps."""
    d = identity_diagram(m)
    for _ in range(layers):
        d = compose_diagrams(random_layer(rng, d.n), d)
        if rng.random() < 0.5:
            d = compose_diagrams(random_permutation(rng, d.n), d)
    return d


def relabelled(d: Diagram, rng: random.Random):
    """The same diagram with its internal nodes listed in a random order: (nodes, sources)."""
    order = list(range(len(d.nodes)))
    rng.shuffle(order)
    new = {old: i for i, old in enumerate(order)}
    nodes = [None] * len(order)
    for old, i in new.items():
        nodes[i] = d.nodes[old]

    def port(p):
        return p if p[0] < 0 else (new[p[0]], p[1])

    src = {port(k): port(v) for k, v in d.src_map().items()}
    return nodes, src
