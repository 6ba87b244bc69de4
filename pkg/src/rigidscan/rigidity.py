"""Generic rigidity, redundant rigidity and global rigidity of bar-joint frameworks.

All tests are randomized over GF(P): a placement with random coordinates
stands in for a generic one. Positive answers are certificates (the rank
reached at a concrete placement is a lower bound for the generic rank);
negative answers are repeated over independent trials.

A single trial eliminates the transposed rigidity matrix once, which gives

* the rank, hence rigidity;
* the coloops of the row matroid, i.e. edges whose deletion drops the rank
  (an edge is redundant iff some equilibrium stress is nonzero on it);
* a basis of the equilibrium stresses, from which a random stress and its
  stress matrix are formed for the global rigidity test.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Optional, Sequence

from . import ff
from .ff import P, FFMatrix
from .graph import Graph, bits, is_k_connected

DEFAULT_TRIALS = 3


def target_rank(n: int, d: int) -> int:
    """Generic rank of the rigidity matrix of K_n in dimension d."""
    if n < 1:
        raise ValueError("n must be positive")
    if n >= d + 1:
        return d * n - comb(d + 1, 2)
    return comb(n, 2)


def derive_seed(seed, key) -> int:
    """Per-graph seed from a global seed and a graph key (order independent)."""
    if isinstance(key, bytes):
        key = key.decode("ascii")
    h = hashlib.sha256(f"{seed}|{key}".encode()).digest()
    return int.from_bytes(h[:16], "big")


def random_placement(n: int, d: int, rng: random.Random) -> list[list[int]]:
    """n x d nonzero coordinates with pairwise distinct rows."""
    while True:
        coords = [[ff.random_scalar(rng) for _ in range(d)] for _ in range(n)]
        if len(set(map(tuple, coords))) == n:
            return coords


def rigidity_matrix(g: Graph, d: int, placement: Sequence[Sequence[int]]) -> FFMatrix:
    if len(placement) != g.n or any(len(row) != d for row in placement):
        raise ValueError("placement must be n x d")
    data = []
    for u, v in g.edges():
        row = [0] * (d * g.n)
        for c in range(d):
            diff = (placement[u][c] - placement[v][c]) % P
            row[d * u + c] = diff
            row[d * v + c] = (-diff) % P
        data.append(row)
    return FFMatrix(len(data), d * g.n, data)


def _transposed_rigidity_rows(edges, n: int, d: int, placement) -> list[list[int]]:
    m = len(edges)
    rows = [[0] * m for _ in range(d * n)]
    for j, (u, v) in enumerate(edges):
        pu, pv = placement[u], placement[v]
        for c in range(d):
            diff = (pu[c] - pv[c]) % P
            rows[d * u + c][j] = diff
            rows[d * v + c][j] = (-diff) % P
    return rows


def stress_matrix(g: Graph, omega: Sequence[int]) -> FFMatrix:
    """n x n stress matrix; ``omega`` is indexed by ``g.edges()`` order."""
    edges = g.edges()
    if len(omega) != len(edges):
        raise ValueError(f"stress has {len(omega)} entries, graph has {len(edges)} edges")
    n = g.n
    data = [[0] * n for _ in range(n)]
    for (u, v), w in zip(edges, omega):
        w %= P
        data[u][v] = (data[u][v] - w) % P
        data[v][u] = (data[v][u] - w) % P
        data[u][u] = (data[u][u] + w) % P
        data[v][v] = (data[v][v] + w) % P
    return FFMatrix(n, n, data)


@dataclass
class Trial:
    rank: int
    coloops: frozenset[int]       # edge indices that are coloops at this placement
    stress_rank: Optional[int]    # rank of a random stress matrix; None if no stress


def run_trial(g: Graph, d: int, rng: random.Random, with_stress: bool = True) -> Trial:
    edges = g.edges()
    m = len(edges)
    placement = random_placement(g.n, d, rng)
    rows = _transposed_rigidity_rows(edges, g.n, d, placement)
    pivots = ff._eliminate(rows, m, reduced=True)
    rows = rows[: len(pivots)]
    free = [j for j in range(m) if j not in set(pivots)]
    coloops = frozenset(pc for row, pc in zip(rows, pivots) if not any(row[f] for f in free))
    stress_rank = None
    if with_stress and free:
        basis = ff.kernel_from_rref(rows, pivots, m)
        omega = ff.random_combination(basis, rng)
        stress_rank = ff.rank(stress_matrix(g, omega))
    return Trial(len(pivots), coloops, stress_rank)


@dataclass
class RigidityProfile:
    n: int
    d: int
    edge_count: int
    connectivity_ok: Optional[bool] = None
    rigid: Optional[bool] = None
    redundantly_rigid: Optional[bool] = None
    globally_rigid: Optional[bool] = None
    is_H: bool = False
    trials_used: int = 0
    in_scope: bool = True  # n >= d + 2, the range where the H_d notion applies

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class _Evidence:
    rigid: bool = False
    globally_rigid: bool = False
    redundant_edges: set = field(default_factory=set)
    trials: int = 0


def _gather(g: Graph, d: int, trials: int, rng: random.Random,
            want_global: bool, want_redundant: bool) -> _Evidence:
    """Run trials until every requested property is certified or trials run out."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    ev = _Evidence()
    m = g.num_edges()
    t = target_rank(g.n, d)
    stress_target = g.n - d - 1
    for _ in range(trials):
        ev.trials += 1
        tr = run_trial(g, d, rng, with_stress=want_global)
        if tr.rank == t:
            ev.rigid = True
            ev.redundant_edges.update(j for j in range(m) if j not in tr.coloops)
            if tr.stress_rank == stress_target:
                ev.globally_rigid = True
        done = ev.rigid
        if want_global:
            done = done and ev.globally_rigid
        if want_redundant:
            done = done and len(ev.redundant_edges) == m
        if done:
            break
    return ev


def _rng(g: Graph, seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def is_rigid(g: Graph, d: int, trials: int = DEFAULT_TRIALS, seed=0) -> bool:
    if g.n == 0:
        raise ValueError("empty graph")
    if g.num_edges() < target_rank(g.n, d):
        return False
    if g.n == 1:
        return True
    return _gather(g, d, trials, _rng(g, seed), False, False).rigid


def is_redundantly_rigid(g: Graph, d: int, trials: int = DEFAULT_TRIALS, seed=0) -> bool:
    m = g.num_edges()
    if m < target_rank(g.n, d) + 1:
        return False
    ev = _gather(g, d, trials, _rng(g, seed), False, True)
    return ev.rigid and len(ev.redundant_edges) == m


def is_globally_rigid(g: Graph, d: int, trials: int = DEFAULT_TRIALS, seed=0) -> bool:
    if g.n <= d + 1:
        return g.is_complete()
    if g.num_edges() <= target_rank(g.n, d):
        return False
    ev = _gather(g, d, trials, _rng(g, seed), True, False)
    return ev.rigid and ev.globally_rigid


def classify(g: Graph, d: int, trials: int = DEFAULT_TRIALS, seed=0,
             lazy: bool = False) -> RigidityProfile:
    """Hendrickson classification of one graph in dimension d.

    Filters run cheapest first: edge count, minimum degree, connectivity,
    then one batch of randomized trials covering rigidity, global rigidity
    and redundancy. With ``lazy`` the first failing filter ends the
    evaluation and the unevaluated fields stay ``None``.
    """
    n, m = g.n, g.num_edges()
    prof = RigidityProfile(n=n, d=d, edge_count=m, in_scope=n >= d + 2)
    t = target_rank(n, d) if n else 0
    rng = _rng(g, seed)

    if n <= d + 1:
        # outside the theorem range: complete-graph rule only
        complete = g.is_complete()
        prof.connectivity_ok = False
        prof.rigid = complete
        prof.globally_rigid = complete
        prof.redundantly_rigid = is_redundantly_rigid(g, d, trials, rng) if complete else False
        return prof

    enough_edges = m >= t + 1
    degree_ok = g.min_degree() >= d + 1
    if lazy and not (enough_edges and degree_ok):
        prof.connectivity_ok = False if not degree_ok else None
        prof.redundantly_rigid = False if not enough_edges else None
        return prof

    prof.connectivity_ok = degree_ok and is_k_connected(g, d + 1)
    if lazy and not prof.connectivity_ok:
        return prof

    if m < t:
        prof.rigid = prof.redundantly_rigid = prof.globally_rigid = False
        return prof
    ev = _gather(g, d, trials, rng, want_global=m > t, want_redundant=enough_edges)
    prof.trials_used = ev.trials
    prof.rigid = ev.rigid
    prof.globally_rigid = ev.rigid and ev.globally_rigid
    prof.redundantly_rigid = enough_edges and ev.rigid and len(ev.redundant_edges) == m
    prof.is_H = bool(prof.connectivity_ok and prof.redundantly_rigid and not prof.globally_rigid)
    return prof


def sparsity_tight(g: Graph, d: int) -> bool:
    """|E| = dn - C(d+1,2) and no induced subgraph on >= d vertices exceeds its bound."""
    c = comb(d + 1, 2)
    n = g.n
    if g.num_edges() != d * n - c:
        return False
    if n <= 12:
        counts = [0] * (1 << n)
        for s in range(1, 1 << n):
            low = s & -s
            v = low.bit_length() - 1
            rest = s ^ low
            counts[s] = counts[rest] + (g.adj[v] & rest).bit_count()
            size = s.bit_count()
            if size >= d and counts[s] > d * size - c:
                return False
        return True
    return not _connected_violation(g, d, c)


def _connected_violation(g: Graph, d: int, c: int) -> bool:
    """Search connected vertex subsets (each generated once) for a count violation."""
    n = g.n
    adj = g.adj
    for root in range(n):
        allowed = ~((1 << root) - 1) & ((1 << n) - 1)  # root is the minimum vertex
        stack = [(1 << root, adj[root] & allowed, 0, 0)]
        while stack:
            sub, ext, edges, banned = stack.pop()
            size = sub.bit_count()
            if size >= d and edges > d * size - c:
                return True
            cand = ext & ~banned
            for v in bits(cand):
                vb = 1 << v
                stack.append((sub | vb, (ext | adj[v]) & allowed & ~sub & ~vb,
                              edges + (adj[v] & sub).bit_count(), banned))
                banned |= vb
    return False


def degree_lemma_slack(d: int, k: int, l: int) -> int:
    """k^2 - 2k - d - 2l.

    Counts for a graph on n = d + k vertices with dn - C(d+1,2) + l edges:
    if every degree is at most n - 2 then 2|E| <= n(n - 2), and the
    difference n(n - 2) - 2|E| equals this expression. A negative value
    forces a vertex of degree n - 1.
    """
    return k * k - 2 * k - d - 2 * l
