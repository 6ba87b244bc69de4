"""Isomorph-free candidate generation and the staged Hendrickson scan.

A candidate on n = d + k vertices needs at least dn - C(d+1,2) + 1 edges
and minimum degree d + 1, so its complement has at most C(k,2) - 1 edges
and maximum degree k - 2. Both bounds survive edge deletion, so the
complements form a tree under "add one edge" rooted at the empty graph,
and every node of that tree is a candidate. The tree is walked with
canonical augmentation: a child H + e is kept only if e lies in the
Aut(H + e)-orbit of the canonical last edge of H + e, and from each parent
only one edge per Aut(H)-orbit of non-edges is tried.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from random import Random
from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, field
from math import comb
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .canon import (
    CanonicalForm,
    Labelling,
    canonical_form,
    canonical_labelling,
    form_from_labelling,
    pair_orbit,
    pair_orbit_reps,
)
from .graph import Graph, from_graph6, is_k_connected
from .rigidity import DEFAULT_TRIALS, _gather, derive_seed, target_rank

log = logging.getLogger(__name__)

MAX_SCAN_N = 14
DEFAULT_SPLIT_DEPTH = 5
DEFAULT_CHECKPOINT_EVERY = 100_000
WORKERS_ENV = "RIGIDSCAN_WORKERS"


class ScanIncomplete(RuntimeError):
    """Resource bound hit; ``report`` holds the partial counts."""

    def __init__(self, message: str, report: "ScanReport"):
        super().__init__(message)
        self.report = report


@dataclass
class ScanSpec:
    d: int
    n: int
    min_edges: Optional[int] = None
    require_connectivity: Optional[int] = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    worker_count: int = 1
    split_depth: int = DEFAULT_SPLIT_DEPTH
    max_candidates: Optional[int] = None
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY

    def __post_init__(self) -> None:
        if self.min_edges is None:
            self.min_edges = target_rank(self.n, self.d) + 1
        if self.require_connectivity is None:
            self.require_connectivity = self.d + 1
        if self.n < self.d + 2:
            raise ValueError(f"scan needs n >= d + 2 (got n={self.n}, d={self.d})")
        if self.n > MAX_SCAN_N:
            raise ValueError(f"n={self.n} beyond desk-scale bound {MAX_SCAN_N}")
        if self.min_edges > comb(self.n, 2):
            raise ValueError("min_edges exceeds C(n, 2)")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be at least 1")

    @property
    def max_complement_edges(self) -> int:
        return comb(self.n, 2) - self.min_edges

    @property
    def max_complement_degree(self) -> int:
        return self.n - 1 - self.require_connectivity

    def key(self) -> dict:
        """Fields that determine scan results (excludes parallelism knobs)."""
        return {k: getattr(self, k) for k in ("d", "n", "min_edges", "require_connectivity", "trials", "seed")}


@dataclass
class ScanReport:
    spec: ScanSpec
    candidates_generated: int = 0
    redundant_and_connected_count: int = 0
    globally_rigid_count: int = 0
    h_graphs: list[str] = field(default_factory=list)
    hendrickson_violations: int = 0
    wall_time: float = 0.0
    complete: bool = True

    def as_dict(self) -> dict:
        out = asdict(self)
        out["spec"] = asdict(self.spec)
        return out

    def same_counts(self, other: "ScanReport") -> bool:
        return (self.candidates_generated, self.redundant_and_connected_count,
                self.globally_rigid_count, self.h_graphs, self.hendrickson_violations) == \
               (other.candidates_generated, other.redundant_and_connected_count,
                other.globally_rigid_count, other.h_graphs, other.hendrickson_violations)


# -- canonical augmentation in complement space ---------------------------


def _edge_invariant(adj: Sequence[int], u: int, v: int) -> tuple[int, int, int]:
    du, dv = adj[u].bit_count(), adj[v].bit_count()
    return (max(du, dv), min(du, dv), (adj[u] & adj[v]).bit_count())


def _is_canonical_child(child: Graph, u: int, v: int) -> tuple[bool, Optional[Labelling]]:
    """Parent test: is (u, v) in the orbit of the canonical last edge of ``child``?

    Edges are first ranked by a cheap invariant; only ties fall through to
    the canonical labelling. Returns the labelling when it was computed.
    """
    adj = child.adj
    mine = _edge_invariant(adj, u, v)
    ties = []
    for a, b in child.edges():
        inv = _edge_invariant(adj, a, b)
        if inv > mine:
            return False, None
        if inv == mine:
            ties.append((a, b))
    if len(ties) == 1:
        return True, None
    lab = canonical_labelling(child)
    pos = lab.position

    def rank_key(e):
        x, y = pos[e[0]], pos[e[1]]
        return (max(x, y), min(x, y))

    best = max(ties, key=rank_key)
    if best == (min(u, v), max(u, v)):
        return True, lab
    return (min(u, v), max(u, v)) in pair_orbit(best, lab.generators), lab


def _children(h: Graph, lab: Labelling, spec: ScanSpec) -> Iterator[tuple[Graph, Labelling]]:
    if h.num_edges() >= spec.max_complement_edges:
        return
    maxdeg = spec.max_complement_degree
    open_v = [v for v in range(h.n) if h.adj[v].bit_count() < maxdeg]
    pairs = [(u, v) for i, u in enumerate(open_v) for v in open_v[i + 1:] if not h.adj[u] >> v & 1]
    for u, v in pair_orbit_reps(pairs, lab.generators):
        child = h.add_edge(u, v)
        ok, clab = _is_canonical_child(child, u, v)
        if ok:
            yield child, clab if clab is not None else canonical_labelling(child)


def _walk(h: Graph, lab: Labelling, spec: ScanSpec, max_depth: Optional[int] = None) -> Iterator[tuple[Graph, Labelling]]:
    """Pre-order walk of the augmentation subtree rooted at h (h included)."""
    stack = [(h, lab)]
    while stack:
        node, nlab = stack.pop()
        yield node, nlab
        if max_depth is not None and node.num_edges() >= max_depth:
            continue
        kids = list(_children(node, nlab, spec))
        stack.extend(reversed(kids))


def _root(spec: ScanSpec) -> tuple[Graph, Labelling]:
    h = Graph(spec.n)
    return h, canonical_labelling(h)


def complement_tree(spec: ScanSpec) -> Iterator[tuple[Graph, Labelling]]:
    h, lab = _root(spec)
    if spec.max_complement_degree < 0:
        return
    yield from _walk(h, lab, spec)


def generate_candidates(spec: ScanSpec) -> Iterator[Graph]:
    """One graph per isomorphism class with >= min_edges edges and min degree >= d+1."""
    for h, _ in complement_tree(spec):
        yield h.complement()


def split_tree(spec: ScanSpec) -> tuple[list[Graph], list[Graph]]:
    """(nodes above the split depth, roots of the independent subtrees)."""
    top, frontier = [], []
    if spec.max_complement_degree < 0:
        return top, frontier
    h, lab = _root(spec)
    for node, _ in _walk(h, lab, spec, max_depth=spec.split_depth):
        (frontier if node.num_edges() == spec.split_depth else top).append(node)
    return top, frontier


# -- classification and aggregation ----------------------------------------


def _candidate_key(g: Graph, h: Graph, lab: Labelling) -> CanonicalForm:
    if 2 * h.num_edges() < comb(g.n, 2):
        # same labelling canonical_form(g) would compute on the sparser side
        return form_from_labelling(g, lab)
    return canonical_form(g)


@dataclass
class _Counts:
    candidates: int = 0
    redundant_connected: int = 0
    globally_rigid: int = 0
    violations: int = 0
    h_graphs: list = field(default_factory=list)
    truncated: bool = False

    def merge(self, other: "_Counts") -> None:
        self.candidates += other.candidates
        self.redundant_connected += other.redundant_connected
        self.globally_rigid += other.globally_rigid
        self.violations += other.violations
        self.h_graphs.extend(other.h_graphs)
        self.truncated = self.truncated or other.truncated

    def record(self) -> dict:
        return {"candidates": self.candidates, "redundant_connected": self.redundant_connected,
                "globally_rigid": self.globally_rigid, "violations": self.violations}


def _classify_candidate(h: Graph, lab: Labelling, spec: ScanSpec, counts: _Counts) -> None:
    g = h.complement()
    counts.candidates += 1
    if not is_k_connected(g, spec.require_connectivity):
        return
    key = _candidate_key(g, h, lab)
    rng = Random(derive_seed(spec.seed, key.edges))
    m = g.num_edges()
    ev = _gather(g, spec.d, spec.trials, rng, want_global=True, want_redundant=True)
    redundant = ev.rigid and len(ev.redundant_edges) == m
    glob = ev.rigid and ev.globally_rigid
    if glob and not redundant:
        counts.violations += 1
        log.warning("globally rigid but not redundantly rigid: %s", g.to_graph6())
    if redundant:
        counts.redundant_connected += 1
        if glob:
            counts.globally_rigid += 1
        else:
            counts.h_graphs.append(key.edges.decode("ascii"))


def _scan_unit(args: tuple[dict, str, int]) -> tuple[_Counts, list[str]]:
    """Walk the subtree rooted at a graph6 node until ``chunk`` candidates are classified.

    Returns the counts and the roots of the unvisited remainder (the pending
    DFS stack, in visiting order). The split depends only on the root and
    ``chunk``, so the decomposition is the same for any worker count.
    """
    spec_dict, g6, chunk = args
    spec = ScanSpec(**spec_dict)
    h = from_graph6(g6)
    counts = _Counts()
    stack = [(h, canonical_labelling(h))]
    while stack:
        if counts.candidates >= chunk:
            break
        node, lab = stack.pop()
        _classify_candidate(node, lab, spec, counts)
        kids = list(_children(node, lab, spec))
        stack.extend(reversed(kids))
    return counts, [node.to_graph6() for node, _ in reversed(stack)]


def _read_log(path: Path, spec: ScanSpec) -> dict[str, dict]:
    done: dict[str, dict] = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "spec" in rec:
                if rec["spec"] != spec.key():
                    raise ValueError(f"results log {path} belongs to a different scan: {rec['spec']}")
                continue
            done[rec["subtree"]] = rec
    return done


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def hendrickson_scan(spec: ScanSpec, results_log: Optional[Path] = None) -> ScanReport:
    """Classify every candidate; counts are independent of worker count and order.

    The tree below ``split_depth`` is cut into units of at most
    ``checkpoint_every`` candidates (a unit that stops early hands its
    unvisited remainder on as new units). With ``results_log`` each finished
    unit is appended as one JSON line, remainder included, and units already
    present are skipped, so an interrupted scan resumes.
    """
    t0 = time.perf_counter()
    total = _Counts()
    budget = spec.max_candidates
    top, frontier = split_tree(spec)
    for h in top:
        if budget is not None and total.candidates >= budget:
            total.truncated = True
            break
        _classify_candidate(h, canonical_labelling(h), spec, total)

    done: dict[str, dict] = {}
    fh = None
    if results_log is not None:
        results_log = Path(results_log)
        done = _read_log(results_log, spec)
        fresh = not results_log.exists() or results_log.stat().st_size == 0
        fh = results_log.open("a")
        if fresh:
            fh.write(json.dumps({"spec": spec.key()}) + "\n")
            fh.flush()

    chunk = spec.checkpoint_every
    if budget is not None:
        chunk = max(1, min(chunk, budget))
    spec_dict = asdict(spec)
    todo: deque = deque()

    def schedule(units) -> None:
        # units already in the log contribute their counts and their recorded remainder
        queue = deque(units)
        while queue:
            uid, g6 = queue.popleft()
            rec = done.pop(uid, None)
            if rec is None:
                todo.append((uid, g6))
                continue
            c = rec["counts"]
            total.merge(_Counts(c["candidates"], c["redundant_connected"], c["globally_rigid"],
                                c["violations"], list(rec["h_graphs"])))
            queue.extend((f"{uid}/{j}", r) for j, r in enumerate(rec.get("pending", [])))

    schedule((f"{spec.split_depth}:{i}", h.to_graph6()) for i, h in enumerate(frontier))

    def finish(uid: str, counts: _Counts, pending: list[str]) -> None:
        if budget is not None and total.candidates + counts.candidates > budget:
            total.truncated = True
            return
        total.merge(counts)
        if fh is not None:
            rec = {"subtree": uid, "counts": counts.record(), "h_graphs": sorted(counts.h_graphs)}
            if pending:
                rec["pending"] = pending
            fh.write(json.dumps(rec) + "\n")
            fh.flush()
        schedule((f"{uid}/{j}", r) for j, r in enumerate(pending))

    try:
        if spec.worker_count > 1 and not total.truncated:
            with ProcessPoolExecutor(spec.worker_count) as pool:
                running = {}
                while todo or running:
                    while todo and len(running) < 2 * spec.worker_count and not total.truncated:
                        uid, g6 = todo.popleft()
                        running[pool.submit(_scan_unit, (spec_dict, g6, chunk))] = uid
                    if not running:
                        break
                    finished, _ = wait(running, return_when=FIRST_COMPLETED)
                    for fut in finished:
                        uid = running.pop(fut)
                        if not total.truncated:
                            finish(uid, *fut.result())
                    if total.truncated:
                        for fut in running:
                            fut.cancel()
                        break
        else:
            while todo and not total.truncated:
                uid, g6 = todo.popleft()
                finish(uid, *_scan_unit((spec_dict, g6, chunk)))
    finally:
        if fh is not None:
            fh.close()
    if todo and budget is not None:
        total.truncated = True

    report = ScanReport(
        spec=spec,
        candidates_generated=total.candidates,
        redundant_and_connected_count=total.redundant_connected,
        globally_rigid_count=total.globally_rigid,
        h_graphs=sorted(set(total.h_graphs)),
        hendrickson_violations=total.violations,
        wall_time=time.perf_counter() - t0,
        complete=not total.truncated,
    )
    if total.truncated:
        raise ScanIncomplete(f"candidate budget {spec.max_candidates} exhausted", report)
    return report


# -- tables ------------------------------------------------------------------

TABLE_COLUMNS = ["d", "n", "k", "candidates", "redundant_connected", "globally_rigid", "h_count", "seconds"]


@dataclass
class TableCell:
    d: int
    n: int
    k: int
    candidates: Optional[int] = None
    redundant_connected: Optional[int] = None
    globally_rigid: Optional[int] = None
    h_count: Optional[int] = None
    seconds: float = 0.0
    error: Optional[str] = None
    method: str = "randomized"


def table_report(d_list: Sequence[int], k_max: int, k_min: int = 2, **spec_defaults) -> list[TableCell]:
    """Both count tables (redundant & connected; globally rigid) per (d, d+k) cell."""
    cells = []
    for d in d_list:
        for k in range(k_min, k_max + 1):
            cell = TableCell(d=d, n=d + k, k=k)
            try:
                rep = hendrickson_scan(ScanSpec(d=d, n=d + k, **spec_defaults))
            except (ScanIncomplete, ValueError) as exc:
                cell.error = str(exc)
                if isinstance(exc, ScanIncomplete):
                    cell.seconds = exc.report.wall_time
            else:
                cell.candidates = rep.candidates_generated
                cell.redundant_connected = rep.redundant_and_connected_count
                cell.globally_rigid = rep.globally_rigid_count
                cell.h_count = len(rep.h_graphs)
                cell.seconds = rep.wall_time
            log.info("d=%d n=%d: %s", d, d + k, cell)
            cells.append(cell)
    return cells


def table_csv(cells: Sequence[TableCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for c in cells:
        w.writerow([c.d, c.n, c.k, c.candidates, c.redundant_connected, c.globally_rigid,
                    c.h_count, f"{c.seconds:.3f}"])
    return buf.getvalue()


def table_json(cells: Sequence[TableCell]) -> str:
    return json.dumps([asdict(c) for c in cells], indent=2)
