"""Named graphs: complete graphs, complete bipartite graphs, and two cyclic gluings.

glued_k5_cycle
    Vertices a_i, b_i, c_i (i in Z_6) numbered a_i = i, b_i = 6 + i,
    c_i = 12 + i. Block i is the K_5 on {a_i, a_i+1, b_i, b_i+1, c_i};
    consecutive blocks share the edge a_i+1 b_i+1. 18 vertices, 54 edges.
glued_k55_cycle
    Vertices a_j, b_j (j in Z_24, written 1..24) numbered a_j = j - 1,
    b_j = 23 + j. Block t is complete bipartite between
    {a_4t+1 .. a_4t+5} and {b_4t+1 .. b_4t+5}; consecutive blocks share
    a_4t+5, b_4t+5 and the edge between them. 48 vertices, 144 edges.

In both, the red edges are five of the six seam edges; removing them keeps
the graph an H_3-graph.
"""

from __future__ import annotations

from typing import Callable

from .graph import Graph

CONSTRUCTIONS = ("complete", "complete_bipartite", "glued_k5_cycle", "glued_k55_cycle")


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.complete(n)


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ValueError("complete bipartite graph needs m, n >= 1")
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def _k5_cycle_labels():
    a = lambda i: i % 6
    b = lambda i: 6 + i % 6
    c = lambda i: 12 + i % 6
    return a, b, c


def glued_k5_cycle_blocks() -> list[list[int]]:
    a, b, c = _k5_cycle_labels()
    return [[a(i), a(i + 1), b(i), b(i + 1), c(i)] for i in range(6)]


def glued_k5_cycle_red_edges() -> list[tuple[int, int]]:
    a, b, _ = _k5_cycle_labels()
    return [(a(i), b(i)) for i in range(1, 6)]


def glued_k5_cycle(remove_red_edges: bool = False) -> Graph:
    edges = set()
    for block in glued_k5_cycle_blocks():
        for x in block:
            for y in block:
                if x < y:
                    edges.add((x, y))
    g = Graph.from_edges(18, sorted(edges))
    if remove_red_edges:
        g = g.remove_edges(glued_k5_cycle_red_edges())
    return g


def _k55_labels():
    a = lambda j: (j - 1) % 24
    b = lambda j: 24 + (j - 1) % 24
    return a, b


def glued_k55_cycle_blocks() -> list[tuple[list[int], list[int]]]:
    a, b = _k55_labels()
    return [([a(4 * t + s) for s in range(1, 6)], [b(4 * t + s) for s in range(1, 6)]) for t in range(6)]


def glued_k55_cycle_red_edges() -> list[tuple[int, int]]:
    a, b = _k55_labels()
    return [(a(k), b(k)) for k in (5, 9, 13, 17, 21)]


def glued_k55_cycle(remove_red_edges: bool = False) -> Graph:
    edges = set()
    for left, right in glued_k55_cycle_blocks():
        edges.update((x, y) for x in left for y in right)
    g = Graph.from_edges(48, sorted(edges))
    if remove_red_edges:
        g = g.remove_edges(glued_k55_cycle_red_edges())
    return g


_BUILDERS: dict[str, tuple[int, Callable[..., Graph]]] = {
    "complete": (1, complete),
    "complete_bipartite": (2, complete_bipartite),
    "glued_k5_cycle": (0, glued_k5_cycle),
    "glued_k55_cycle": (0, glued_k55_cycle),
}


def build_named(name: str, *params: int, remove_red_edges: bool = False) -> Graph:
    """Build a named construction; ``remove_red_edges`` is a no-op for graphs without red edges."""
    try:
        arity, builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown construction {name!r}; known: {', '.join(CONSTRUCTIONS)}") from None
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    if arity:
        return builder(*params)
    return builder(remove_red_edges=remove_red_edges)
