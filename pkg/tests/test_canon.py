import random
from itertools import permutations

import pytest

from rigidscan.canon import (
    brute_force_form,
    canonical_form,
    canonical_labelling,
    pair_orbit,
    pair_orbit_reps,
    vertex_orbits,
)
from rigidscan.constructions import build_named
from rigidscan.graph import Graph

from oracle import random_adj


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def group_closure(n, gens):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_cycle_and_path():
    rng = random.Random(1)
    c5 = cycle(5)
    assert canonical_form(c5) == canonical_form(shuffled(c5, rng))
    assert canonical_form(c5) != canonical_form(path(5))


def test_relabelling_invariance_100_per_graph():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(1, 10)
        g = Graph(n, random_adj(n, rng.random(), rng))
        key = canonical_form(g)
        for _ in range(100):
            assert canonical_form(shuffled(g, rng)) == key


def test_agrees_with_exhaustive_form():
    rng = random.Random(3)
    graphs = [Graph(n, random_adj(n, rng.random(), rng)) for n in (5, 6, 7) for _ in range(150)]
    ours, brute = {}, {}
    for g in graphs:
        a, b = canonical_form(g), brute_force_form(g)
        assert ours.setdefault(a, b) == b
        assert brute.setdefault(b, a) == a


@pytest.mark.parametrize("g", [
    Graph(8), Graph.complete(7), cycle(8), path(6),
    build_named("complete_bipartite", 3, 4), Graph(6, [0b000110, 0b000101, 0b000011, 0, 0, 0]),
])
def test_automorphism_group_is_complete(g):
    gens = canonical_labelling(g).generators
    for p in gens:
        assert g.relabel(p) == g
    brute = sum(1 for p in permutations(range(g.n)) if g.relabel(p) == g)
    assert len(group_closure(g.n, gens)) == brute


def test_automorphism_group_random():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(2, 7)
        g = Graph(n, random_adj(n, rng.random(), rng))
        brute = sum(1 for p in permutations(range(n)) if g.relabel(p) == g)
        assert len(group_closure(n, canonical_labelling(g).generators)) == brute


def test_vertex_orbits_and_pair_orbits():
    k55 = build_named("complete_bipartite", 5, 5)
    orb = vertex_orbits(k55)
    assert len(set(orb)) == 1
    gens = canonical_labelling(k55).generators
    assert len(pair_orbit((0, 5), gens)) == 25
    pairs = [(u, v) for u in range(10) for v in range(u + 1, 10)]
    assert len(pair_orbit_reps(pairs, gens)) == 2


def test_colour_classes_are_respected():
    g = path(4)
    a = canonical_labelling(g, colours=[1, 0, 0, 0]).position
    b = canonical_labelling(g, colours=[0, 0, 0, 1]).position
    assert a[0] == b[3] == 3
