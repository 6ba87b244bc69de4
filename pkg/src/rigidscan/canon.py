"""Canonical labelling and automorphism groups for small graphs.

Partition refinement to an equitable partition, then a depth-first
individualisation search. Leaves are compared by their relabelled adjacency
rows; automorphisms discovered at equivalent leaves prune sibling subtrees
and give a generating set of Aut(G).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .graph import Graph, bits

_NO_JUMP = 1 << 30


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    edges: bytes

    def graph(self) -> Graph:
        from .graph import from_graph6
        return from_graph6(self.edges.decode("ascii"))


def refine(adj: Sequence[int], cells: list[int], splitters: list[int]) -> list[int]:
    """Refine an ordered partition (list of cell bitmasks) until equitable.

    Fragments of a split cell are ordered by neighbour count in the
    splitter, so the result does not depend on vertex labels.
    """
    cells = list(cells)
    queue = list(splitters)
    qi = 0
    while qi < len(queue):
        w = queue[qi]
        qi += 1
        i = 0
        while i < len(cells):
            x = cells[i]
            if x & (x - 1) == 0:
                i += 1
                continue
            groups: dict[int, int] = {}
            for v in bits(x):
                c = (adj[v] & w).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                i += 1
                continue
            frags = [groups[c] for c in sorted(groups)]
            cells[i:i + 1] = frags
            queue.extend(frags)
            i += len(frags)
    return cells


def _certificate(adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        row = 0
        for u in bits(adj[v]):
            row |= 1 << pos[u]
        cert.append(row)
    return tuple(cert)


def orbits_of(n: int, gens: Sequence[Sequence[int]], fixing: Sequence[int] = ()) -> list[int]:
    """Orbit representative per vertex under the gens that fix ``fixing`` pointwise."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in fixing):
            continue
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.gens: list[tuple[int, ...]] = []
        self.first = None  # (cert, order, prefix)
        self.best = None

    def run(self, cells: list[int]) -> None:
        cells = refine(self.adj, cells, list(cells))
        self._node(cells, [])

    def _node(self, cells: list[int], prefix: list[int]) -> int:
        depth = len(prefix)
        if len(cells) == self.n:
            return self._leaf([c.bit_length() - 1 for c in cells], prefix)
        ti = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[ti]
        tried: list[int] = []
        for w in bits(target):
            if tried and self.gens:
                orb = orbits_of(self.n, self.gens, prefix)
                if any(orb[w] == orb[t] for t in tried):
                    continue
            tried.append(w)
            wbit = 1 << w
            child = cells[:ti] + [wbit, target ^ wbit] + cells[ti + 1:]
            child = refine(self.adj, child, [wbit])
            r = self._node(child, prefix + [w])
            if r < depth:
                return r
        return _NO_JUMP

    def _leaf(self, order: list[int], prefix: list[int]) -> int:
        cert = _certificate(self.adj, order)
        if self.first is None:
            self.first = self.best = (cert, order, prefix)
            return _NO_JUMP
        for ref in (self.first, self.best):
            if cert == ref[0]:
                gamma = [0] * self.n
                for a, b in zip(ref[1], order):
                    gamma[a] = b
                gamma = tuple(gamma)
                if any(gamma[i] != i for i in range(self.n)):
                    self.gens.append(gamma)
                common = 0
                for a, b in zip(ref[2], prefix):
                    if a != b:
                        break
                    common += 1
                return common
        if cert > self.best[0]:
            self.best = (cert, order, prefix)
        return _NO_JUMP


@dataclass
class Labelling:
    """Result of the canonical search."""

    order: list[int]          # order[i] = vertex placed at canonical position i
    certificate: tuple[int, ...]
    generators: list[tuple[int, ...]]

    @property
    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


def colour_cells(n: int, colours: Optional[Sequence[int]]) -> list[int]:
    if n == 0:
        return []
    if colours is None:
        return [(1 << n) - 1]
    cells: dict[int, int] = {}
    for v, c in enumerate(colours):
        cells[c] = cells.get(c, 0) | (1 << v)
    return [cells[c] for c in sorted(cells)]


def canonical_labelling(g: Graph, colours: Optional[Sequence[int]] = None) -> Labelling:
    if g.n == 0:
        return Labelling([], (), [])
    s = _Search(g)
    s.run(colour_cells(g.n, colours))
    cert, order, _ = s.best
    return Labelling(order, cert, s.gens)


def canonical_graph(g: Graph, colours: Optional[Sequence[int]] = None) -> Graph:
    return g.relabel(canonical_labelling(g, colours).position)


def canonical_form(g: Graph) -> CanonicalForm:
    """Relabelling-invariant key: equal keys iff the graphs are isomorphic.

    The labelling is searched on whichever of g and its complement has
    fewer edges (ties go to g); both share an automorphism group and the
    choice depends only on the edge count.
    """
    side = g.complement() if 2 * g.num_edges() > g.n * (g.n - 1) // 2 else g
    return form_from_labelling(g, canonical_labelling(side))


def form_from_labelling(g: Graph, lab: Labelling) -> CanonicalForm:
    return CanonicalForm(g.n, g.relabel(lab.position).to_graph6().encode("ascii"))


def automorphism_generators(g: Graph, colours: Optional[Sequence[int]] = None) -> list[tuple[int, ...]]:
    return canonical_labelling(g, colours).generators


def vertex_orbits(g: Graph) -> list[int]:
    return orbits_of(g.n, automorphism_generators(g))


def pair_orbit(pair: tuple[int, int], gens: Sequence[Sequence[int]]) -> set[tuple[int, int]]:
    """Orbit of an unordered vertex pair under the group generated by ``gens``."""
    start = (min(pair), max(pair))
    seen = {start}
    stack = [start]
    while stack:
        u, v = stack.pop()
        for g in gens:
            a, b = g[u], g[v]
            q = (a, b) if a < b else (b, a)
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def pair_orbit_reps(pairs: Sequence[tuple[int, int]], gens: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """One representative (the first in ``pairs`` order) per orbit."""
    if not gens:
        return list(pairs)
    reps = []
    covered: set[tuple[int, int]] = set()
    for p in pairs:
        if p in covered:
            continue
        reps.append(p)
        covered |= pair_orbit(p, gens)
    return reps


def brute_force_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least sorted edge list over all n! relabellings."""
    if g.n > 9:
        raise ValueError("exhaustive canonical form limited to n <= 9")
    edges = g.edges()
    best = None
    for perm in permutations(range(g.n)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
        if best is None or key < best:
            best = key
    return g.n, best
