import json
import random
from collections import Counter
from itertools import combinations
from math import comb

import networkx as nx
import pytest

from rigidscan.canon import canonical_form
from rigidscan.graph import Graph, is_k_connected
from rigidscan.pipeline import (
    ScanIncomplete,
    ScanSpec,
    generate_candidates,
    hendrickson_scan,
    split_tree,
    table_csv,
    table_json,
    table_report,
)
from rigidscan.rigidity import classify, target_rank

from oracle import random_adj


def labelled_classes(n, min_edges, min_degree):
    """Canonical forms of all labelled graphs passing the filters (via complements)."""
    pairs = list(combinations(range(n), 2))
    budget = comb(n, 2) - min_edges
    out = set()
    for size in range(budget + 1):
        for missing in combinations(pairs, size):
            g = Graph.complete(n).remove_edges(missing)
            if g.min_degree() >= min_degree:
                out.add(canonical_form(g))
    return out


def atlas_count(n, min_edges, min_degree):
    return sum(1 for h in nx.graph_atlas_g()
               if h.number_of_nodes() == n and h.number_of_edges() >= min_edges
               and (n == 0 or min(dict(h.degree()).values()) >= min_degree))


@pytest.mark.parametrize("d, n", [(1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6),
                                  (3, 5), (3, 6), (3, 7), (4, 7)])
def test_generation_is_isomorph_free_and_complete(d, n):
    spec = ScanSpec(d=d, n=n)
    forms = [canonical_form(g) for g in generate_candidates(spec)]
    assert len(forms) == len(set(forms))
    assert set(forms) == labelled_classes(n, spec.min_edges, d + 1)
    assert len(forms) == atlas_count(n, spec.min_edges, d + 1)


@pytest.mark.parametrize("d, n, min_edges", [(1, 7, 7), (2, 7, 12), (2, 7, 10), (3, 7, 14)])
def test_generation_counts_match_atlas(d, n, min_edges):
    spec = ScanSpec(d=d, n=n, min_edges=min_edges)
    forms = [canonical_form(g) for g in generate_candidates(spec)]
    assert len(forms) == len(set(forms)) == atlas_count(n, min_edges, d + 1)


def test_generation_examples():
    (k5,) = generate_candidates(ScanSpec(d=3, n=5))
    assert k5 == Graph.complete(5)
    # the degree gate (>= 3) leaves only K_4 among graphs with >= 5 edges
    (g,) = generate_candidates(ScanSpec(d=2, n=4, min_edges=5))
    assert g == Graph.complete(4)
    k4_minus = sorted(canonical_form(g) for g in
                      generate_candidates(ScanSpec(d=2, n=4, min_edges=5, require_connectivity=2)))
    assert k4_minus == sorted([canonical_form(Graph.complete(4)),
                               canonical_form(Graph.complete(4).remove_edge(0, 1))])
    assert len(list(generate_candidates(ScanSpec(d=3, n=6)))) >= 3


def test_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec(d=3, n=4)
    with pytest.raises(ValueError):
        ScanSpec(d=3, n=15)
    with pytest.raises(ValueError):
        ScanSpec(d=2, n=5, min_edges=11)
    spec = ScanSpec(d=3, n=10)
    assert spec.min_edges == 25 and spec.require_connectivity == 4
    assert spec.max_complement_edges == 20 and spec.max_complement_degree == 5


def test_split_covers_the_tree():
    spec = ScanSpec(d=3, n=8, split_depth=3)
    top, frontier = split_tree(spec)
    assert all(h.num_edges() < 3 for h in top)
    assert all(h.num_edges() == 3 for h in frontier)
    assert len(top) + sum(1 for _ in frontier) <= len(list(generate_candidates(spec)))


@pytest.fixture(scope="module")
def d3n8():
    return hendrickson_scan(ScanSpec(d=3, n=8, split_depth=3))


def test_scan_d3_n8(d3n8):
    assert d3n8.candidates_generated == 330
    assert d3n8.redundant_and_connected_count == 304
    assert d3n8.globally_rigid_count == 304
    assert d3n8.h_graphs == [] and d3n8.hendrickson_violations == 0
    assert d3n8.globally_rigid_count + len(d3n8.h_graphs) == d3n8.redundant_and_connected_count


def test_worker_count_does_not_change_counts(d3n8):
    rep = hendrickson_scan(ScanSpec(d=3, n=8, split_depth=3, worker_count=3))
    assert rep.same_counts(d3n8)
    rep = hendrickson_scan(ScanSpec(d=3, n=8, split_depth=2))
    assert rep.same_counts(d3n8)


def test_results_log_resume(tmp_path, d3n8):
    path = tmp_path / "scan.jsonl"
    spec = ScanSpec(d=3, n=8, split_depth=3)
    first = hendrickson_scan(spec, results_log=path)
    assert first.same_counts(d3n8)
    lines = path.read_text().splitlines()
    assert json.loads(lines[0]) == {"spec": spec.key()}
    assert all(set(json.loads(x)) == {"subtree", "counts", "h_graphs"} for x in lines[1:])
    # drop half the finished subtrees, as if interrupted
    keep = lines[: 1 + (len(lines) - 1) // 2]
    path.write_text("\n".join(keep) + "\n")
    again = hendrickson_scan(spec, results_log=path)
    assert again.same_counts(d3n8)
    assert len(path.read_text().splitlines()) == len(lines)
    with pytest.raises(ValueError):
        hendrickson_scan(ScanSpec(d=3, n=8, split_depth=3, seed=9), results_log=path)


def test_small_checkpoint_units_resume(tmp_path, d3n8):
    path = tmp_path / "scan.jsonl"
    spec = ScanSpec(d=3, n=8, split_depth=2, checkpoint_every=7)
    assert hendrickson_scan(spec, results_log=path).same_counts(d3n8)
    recs = [json.loads(x) for x in path.read_text().splitlines()[1:]]
    assert all(r["counts"]["candidates"] <= 7 for r in recs)
    assert any("/" in r["subtree"] for r in recs)
    # keep the header and every third record; the rest is recomputed
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:1] + lines[1::3]) + "\n")
    assert hendrickson_scan(spec, results_log=path).same_counts(d3n8)
    ids = [json.loads(x)["subtree"] for x in path.read_text().splitlines()[1:]]
    assert len(ids) == len(set(ids)) == len(recs)
    parallel = ScanSpec(d=3, n=8, split_depth=2, checkpoint_every=7, worker_count=2)
    assert hendrickson_scan(parallel).same_counts(d3n8)


def test_candidate_budget_raises_with_partial_counts():
    with pytest.raises(ScanIncomplete) as info:
        hendrickson_scan(ScanSpec(d=3, n=8, split_depth=3, max_candidates=50))
    rep = info.value.report
    assert not rep.complete
    assert rep.candidates_generated <= 50
    exact = hendrickson_scan(ScanSpec(d=3, n=6, max_candidates=3))
    assert exact.complete and exact.candidates_generated == 3


def test_table_report_formats():
    cells = table_report([3, 5], k_max=3)
    assert [(c.d, c.k, c.redundant_connected, c.globally_rigid) for c in cells] == \
        [(3, 2, 1, 1), (3, 3, 3, 3), (5, 2, 1, 1), (5, 3, 3, 3)]
    text = table_csv(cells).splitlines()
    assert text[0] == "d,n,k,candidates,redundant_connected,globally_rigid,h_count,seconds"
    assert text[1].startswith("3,5,2,1,1,1,0,")
    data = json.loads(table_json(cells))
    assert data[0]["method"] == "randomized" and data[3]["n"] == 8


def test_table_cell_errors_are_isolated():
    cells = table_report([3], k_max=3, max_candidates=2)
    assert cells[0].error is None and cells[0].redundant_connected == 1
    assert cells[1].error and cells[1].redundant_connected is None


def test_pruned_graphs_are_never_survivors():
    rng = random.Random(40)
    for i in range(300):
        d = rng.randint(1, 3)
        n = rng.randint(d + 2, 8)
        g = Graph(n, random_adj(n, rng.random(), rng))
        if g.num_edges() > target_rank(n, d) and g.min_degree() > d:
            continue
        prof = classify(g, d, seed=i)
        assert not (prof.connectivity_ok and prof.redundantly_rigid)
        assert not (is_k_connected(g, d + 1) and prof.redundantly_rigid)


def test_d1_survivors_are_two_connected_graphs():
    # d=1: redundantly rigid and 2-connected is exactly 2-connected (n >= 3)
    rep = hendrickson_scan(ScanSpec(d=1, n=6))
    two_connected = Counter(h.number_of_nodes() for h in nx.graph_atlas_g()
                            if h.number_of_nodes() == 6 and nx.is_biconnected(h))[6]
    assert rep.redundant_and_connected_count == rep.globally_rigid_count == two_connected
