"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitsets."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

MAX_N = 64
GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class Graph:
    """Immutable simple graph; ``adj[i]`` is the neighbour bitset of vertex i."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Optional[Sequence[int]] = None):
        if not 0 <= n <= MAX_N:
            raise ValueError(f"vertex count {n} outside [0, {MAX_N}]")
        if adj is None:
            adj = (0,) * n
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        self.n = n
        self.adj = adj
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << i) for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()}, g6={self.to_graph6()!r})"

    # -- queries -----------------------------------------------------------

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v), u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            a = self.adj[u] >> (u + 1)
            v = u + 1
            while a:
                if a & 1:
                    out.append((u, v))
                a >>= 1
                v += 1
        return out

    def is_complete(self) -> bool:
        return self.num_edges() == self.n * (self.n - 1) // 2

    # -- constructions -----------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, adj)

    def remove_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if not adj[u] >> v & 1:
                raise ValueError(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def remove_vertex(self, v: int) -> "Graph":
        low = (1 << v) - 1
        adj = []
        for u, a in enumerate(self.adj):
            if u != v:
                adj.append((a & low) | (a >> (v + 1) << v))
        return Graph(self.n - 1, adj)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~a & ~(1 << i) for i, a in enumerate(self.adj)])

    def cone(self) -> "Graph":
        """Add one vertex adjacent to every existing vertex."""
        if self.n >= MAX_N:
            raise OverflowError(f"cone would exceed {MAX_N} vertices")
        n = self.n
        apex = 1 << n
        return Graph(n + 1, [a | apex for a in self.adj] + [apex - 1])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex i of self becomes vertex perm[i]."""
        adj = [0] * self.n
        for u, a in enumerate(self.adj):
            b = 0
            for v in bits(a):
                b |= 1 << perm[v]
            adj[perm[u]] = b
        return Graph(self.n, adj)

    def induced_edge_count(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in bits(mask)) // 2

    # -- graph6 ------------------------------------------------------------

    def to_graph6(self) -> str:
        return to_graph6(self)

    @classmethod
    def from_graph6(cls, text: str) -> "Graph":
        return from_graph6(text)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- graph6 codec ----------------------------------------------------------


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    out = []
    acc = 0
    k = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return head + "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    base = 0
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + i)
    if s[0] != "~":
        n = ord(s[0]) - 63
        pos = 1
    else:
        if len(s) < 4 or s[1] == "~":
            raise Graph6Error("malformed size header", base + 1)
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    if n > MAX_N:
        raise Graph6Error(f"{n} vertices exceeds limit of {MAX_N}", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for n={n}, got {len(body)}",
                          base + pos + min(len(body), nbytes))
    pad = nbytes * 6 - nbits
    if pad and (ord(body[-1]) - 63) & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + nbytes - 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (ord(body[k // 6]) - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, adj)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


# -- connectivity ----------------------------------------------------------


def component_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside the vertex set ``allowed``."""
    seen = 1 << start
    frontier = seen
    adj = g.adj
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    full = (1 << g.n) - 1
    return component_mask(g, 0, full) == full


def local_connectivity(g: Graph, s: int, t: int, cap: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths (s, t non-adjacent).

    Unit-capacity max-flow on the vertex-split network: vertex v becomes
    v_in = 2v and v_out = 2v + 1 joined by an arc of capacity 1.
    """
    if g.has_edge(s, t):
        raise ValueError("local connectivity needs non-adjacent endpoints")
    n = g.n
    big = n + 1
    cap_of: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap_of:
            out[a].append(b)
            out[b].append(a)
            cap_of[(b, a)] = cap_of.get((b, a), 0)
        cap_of[(a, b)] = cap_of.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    limit = cap if cap is not None else n
    while flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap_of[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap_of[(a, b)] -= 1
            cap_of[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph, cap: Optional[int] = None) -> int:
    """Size of a minimum vertex cut (n - 1 for complete graphs).

    With ``cap`` the search stops once connectivity is known to be >= cap
    and returns ``cap``. Uses the min-degree vertex scheme: a minimum cut
    either avoids v (and separates v from a non-neighbour) or contains v
    (and separates two non-adjacent neighbours of v).
    """
    n = g.n
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 vertices")
    degs = g.degrees()
    best = min(degs)
    if cap is not None:
        best = min(best, cap)
    if not is_connected(g):
        return 0
    v = degs.index(min(degs))
    full = (1 << n) - 1
    for w in bits(full & ~g.adj[v] & ~(1 << v)):
        if best == 0:
            break
        best = min(best, local_connectivity(g, v, w, best))
    nb = g.neighbors(v)
    for x, y in combinations(nb, 2):
        if best == 0:
            break
        if not g.has_edge(x, y):
            best = min(best, local_connectivity(g, x, y, best))
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """k-connected in the usual sense: more than k vertices, no cut of size < k."""
    if g.n <= k:
        return False
    if k <= 0:
        return True
    if g.min_degree() < k:
        return False
    if comb(g.n, k - 1) <= _SEPARATOR_SEARCH_LIMIT:
        return not _has_small_separator(g, k - 1)
    return vertex_connectivity(g, cap=k) >= k


_SEPARATOR_SEARCH_LIMIT = 400


def _has_small_separator(g: Graph, size: int) -> bool:
    """Is there a vertex set of exactly ``size`` whose removal disconnects g?

    Exactly-``size`` sets suffice when n >= size + 2: any smaller separator
    can be padded from one side without emptying it.
    """
    full = (1 << g.n) - 1
    for cut in combinations(range(g.n), size):
        rest = full
        for v in cut:
            rest &= ~(1 << v)
        low = rest & -rest
        if component_mask(g, low.bit_length() - 1, rest) != rest:
            return True
    return False
