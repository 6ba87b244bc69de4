"""Combinatorial rigidity engine and exhaustive scans for Hendrickson counterexamples."""

from .canon import CanonicalForm, canonical_form
from .constructions import build_named
from .graph import Graph, from_graph6, to_graph6, vertex_connectivity
from .pipeline import ScanReport, ScanSpec, generate_candidates, hendrickson_scan, table_report
from .rigidity import (
    RigidityProfile,
    classify,
    is_globally_rigid,
    is_redundantly_rigid,
    is_rigid,
    target_rank,
)

__all__ = [
    "CanonicalForm", "Graph", "RigidityProfile", "ScanReport", "ScanSpec", "build_named",
    "canonical_form", "classify", "from_graph6", "generate_candidates", "hendrickson_scan",
    "is_globally_rigid", "is_redundantly_rigid", "is_rigid", "table_report", "target_rank",
    "to_graph6", "vertex_connectivity",
]
