import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_diagram, relabelled
from propquant.errors import ArityError, CycleError, PropError
from propquant.linalg import rank
from propquant.prop import (
    GeneratorSignature,
    Morphism,
    canonicalize,
    compose,
    compose_diagrams,
    diagram_from_json,
    diagram_to_json,
    enumerate_diagrams,
    generator,
    generator_diagram,
    identity,
    identity_diagram,
    make_diagram,
    permutation,
    permutation_diagram,
    tensor,
    tensor_diagrams,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
widths = st.integers(min_value=1, max_value=3)


def _chain(seed, m, k):
    rng = random.Random(seed)
    out = [random_diagram(rng, m)]
    for _ in range(k - 1):
        out.append(random_diagram(rng, out[-1].n))
    return out


@given(seeds, widths)
@settings(max_examples=200)
def test_composition_is_associative(seed, m):
    h, g, f = _chain(seed, m, 3)
    assert compose_diagrams(compose_diagrams(f, g), h) == compose_diagrams(f, compose_diagrams(g, h))


@given(seeds, widths, widths, widths)
@settings(max_examples=200)
def test_tensor_is_associative(seed, a, b, c):
    rng = random.Random(seed)
    f, g, h = (random_diagram(rng, w) for w in (a, b, c))
    assert tensor_diagrams(tensor_diagrams(f, g), h) == tensor_diagrams(f, tensor_diagrams(g, h))


@given(seeds, widths, widths)
@settings(max_examples=200)
def test_interchange_law(seed, a, b):
    g1, f1 = _chain(seed, a, 2)
    g2, f2 = _chain(seed + 1, b, 2)
    lhs = tensor_diagrams(compose_diagrams(f1, g1), compose_diagrams(f2, g2))
    rhs = compose_diagrams(tensor_diagrams(f1, f2), tensor_diagrams(g1, g2))
    assert lhs == rhs


@given(seeds, widths)
@settings(max_examples=200)
def test_canonical_form_ignores_node_labels(seed, m):
    rng = random.Random(seed)
    d = random_diagram(rng, m)
    assert canonicalize(d) is d
    nodes, src = relabelled(d, rng)
    assert make_diagram(d.m, d.n, nodes, src) == d


@given(seeds, widths)
@settings(max_examples=100)
def test_identities_are_units(seed, m):
    d = random_diagram(random.Random(seed), m)
    assert compose_diagrams(d, identity_diagram(d.m)) == d
    assert compose_diagrams(identity_diagram(d.n), d) == d
    assert tensor_diagrams(d, identity_diagram(0)) == d


@given(seeds, widths)
@settings(max_examples=100)
def test_diagram_json_round_trip(seed, m):
    d = random_diagram(random.Random(seed), m)
    assert diagram_from_json(diagram_to_json(d)) == d


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_group_algebra_embeds(n):
    perms = list(itertools.permutations(range(n)))
    diagrams = [permutation_diagram(p) for p in perms]
    assert len(set(diagrams)) == len(perms)
    assert rank([permutation(p).to_vector() for p in perms]) == len(perms)
    for p, q in itertools.product(perms, repeat=2):
        pq = tuple(p[q[i]] for i in range(n))
        assert compose(permutation(p), permutation(q)) == permutation(pq)


def test_symmetry_is_natural():
    mu = generator_diagram("mu", 2, 1)
    swap = permutation_diagram((1, 0))
    left = compose_diagrams(tensor_diagrams(mu, identity_diagram(1)), permutation_diagram((2, 0, 1)))
    right = compose_diagrams(swap, tensor_diagrams(identity_diagram(1), mu))
    assert left == right


def test_composition_arity_mismatch():
    with pytest.raises(ArityError):
        compose_diagrams(generator_diagram("mu", 2, 1), generator_diagram("mu", 2, 1))


def test_bad_wiring_rejected():
    with pytest.raises(PropError):
        make_diagram(1, 1, [], {(-1, 0): (-1, 1)})
    with pytest.raises(CycleError):
        make_diagram(0, 0, [("f", 1, 1)], {(0, 0): (0, 0)})


def test_not_a_permutation():
    with pytest.raises(PropError):
        permutation_diagram((0, 0))


def test_morphism_linearity():
    f = Morphism.from_diagram(generator_diagram("mu", 2, 1))
    g = Morphism.from_diagram(compose_diagrams(generator_diagram("mu", 2, 1), permutation_diagram((1, 0))))
    s = Fraction(1, 3) * f + g
    assert s - g == Fraction(1, 3) * f
    assert not (f - f)
    assert compose(identity(1), s) == s
    assert tensor(s, identity(0)) == s
    with pytest.raises(ArityError):
        f + identity(1)


def test_enumeration_counts():
    sig = GeneratorSignature.build(["mu"], [("mu", 2, 1, [1])])
    # binary trees with labelled leaves: 3 leaves give 12 diagrams, 2 give 2
    assert len(enumerate_diagrams(sig, 2, 1, (1,))) == 2
    assert len(enumerate_diagrams(sig, 3, 1, (2,))) == 12
    assert enumerate_diagrams(sig, 2, 1, (1,))[0] in {
        canonicalize(d) for d in enumerate_diagrams(sig, 2, 1, (1,))
    }
    assert generator(sig, "mu").m == 2
