"""Command line interface.

    rigidscan check --dim 3 graphs.g6        classify graph6 lines
    rigidscan scan --dim 3 -n 9              exhaustive scan of one cell
    rigidscan table --dims 3,4,5 --k-max 6   count tables
    rigidscan construct glued_k5_cycle       emit a named graph
    rigidscan cone --times 2 < in.g6         cone every input graph

Exit status: 0 success, 1 some input line or scan failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO

from .canon import canonical_form
from .constructions import CONSTRUCTIONS, build_named
from .graph import Graph6Error, from_graph6
from .pipeline import (
    ScanIncomplete,
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_SPLIT_DEPTH,
    ScanSpec,
    default_workers,
    hendrickson_scan,
    table_csv,
    table_json,
    table_report,
)
from .rigidity import DEFAULT_TRIALS, classify, derive_seed

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2
CHECK_FIELDS = ["graph6", "n", "edges", "connectivity_ok", "rigid", "redundant", "globally_rigid", "is_H"]
_CHUNK = 256


class ConfigError(Exception):
    pass


# -- check -------------------------------------------------------------------


def check_line(args: tuple[int, str, int, int, int]) -> dict:
    """Classify one graph6 line; parse failures become error records."""
    lineno, text, d, trials, seed = args
    text = text.strip()
    try:
        g = from_graph6(text)
    except Graph6Error as exc:
        return {"line": lineno, "input": text, "error": str(exc)}
    key = canonical_form(g)
    prof = classify(g, d, trials=trials, seed=derive_seed(seed, key.edges))
    return {
        "line": lineno,
        "graph6": text,
        "n": prof.n,
        "edges": prof.edge_count,
        "connectivity_ok": prof.connectivity_ok,
        "rigid": prof.rigid,
        "redundant": prof.redundantly_rigid,
        "globally_rigid": prof.globally_rigid,
        "is_H": prof.is_H,
    }


def _check_records(lines: Iterable[str], d: int, trials: int, seed: int, workers: int) -> Iterator[dict]:
    # every line yields a record (blank lines are parse errors); a bare header line is skipped
    numbered = ((i, line, d, trials, seed) for i, line in enumerate(lines, 1)
                if line.strip() != ">>graph6<<")
    if workers <= 1:
        yield from map(check_line, numbered)
        return
    with ProcessPoolExecutor(workers) as pool:
        while True:
            chunk = list(islice(numbered, _CHUNK * workers))
            if not chunk:
                break
            yield from pool.map(check_line, chunk)


def _fmt_bool(v) -> str:
    return "-" if v is None else str(v).lower()


def _cell(v) -> str:
    return _fmt_bool(v) if v is None or isinstance(v, bool) else str(v)


def _write_check(records: Iterable[dict], fmt: str, out: TextIO) -> int:
    failures = 0
    if fmt == "csv":
        out.write(",".join(CHECK_FIELDS) + "\n")
    elif fmt == "text":
        out.write(f"{'graph6':<24} {'n':>3} {'|E|':>5} {'conn':>5} {'rigid':>5} {'redund':>6} {'global':>6} {'H':>5}\n")
    for rec in records:
        if "error" in rec:
            failures += 1
            if fmt == "json":
                out.write(json.dumps(rec) + "\n")
            else:
                print(f"line {rec['line']}: {rec['error']}", file=sys.stderr)
                if fmt == "csv":
                    out.write(f"{rec['input']},error,,,,,,\n")
                elif fmt == "text":
                    out.write(f"{rec['input']:<24} error: {rec['error']}\n")
            continue
        if fmt == "json":
            out.write(json.dumps({k: rec[k] for k in CHECK_FIELDS}) + "\n")
        elif fmt == "csv":
            out.write(",".join(_cell(rec[k]) for k in CHECK_FIELDS) + "\n")
        elif fmt == "graph6":
            if rec["is_H"]:
                out.write(rec["graph6"] + "\n")
        else:
            out.write(f"{rec['graph6']:<24} {rec['n']:>3} {rec['edges']:>5} {_fmt_bool(rec['connectivity_ok']):>5} "
                      f"{_fmt_bool(rec['rigid']):>5} {_fmt_bool(rec['redundant']):>6} "
                      f"{_fmt_bool(rec['globally_rigid']):>6} {_fmt_bool(rec['is_H']):>5}\n")
        out.flush()
    return failures


# -- io helpers ----------------------------------------------------------------


@contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        try:
            fh = open(path)
        except OSError as exc:
            raise ConfigError(str(exc)) from exc
        with fh:
            yield fh


@contextmanager
def _open_out(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _workers(args) -> int:
    return args.workers if args.workers is not None else default_workers()


# -- commands ------------------------------------------------------------------


def cmd_check(args) -> int:
    with _open_in(args.input) as fin, _open_out(args.output) as out:
        failures = _write_check(_check_records(fin, args.dim, args.trials, args.seed, _workers(args)),
                                args.format, out)
    return EXIT_FAILED if failures else EXIT_OK


def _report_text(rep) -> str:
    s = rep.spec
    lines = [
        f"d={s.d} n={s.n} min_edges={s.min_edges} trials={s.trials} seed={s.seed}",
        f"candidates            {rep.candidates_generated}",
        f"redundant & connected {rep.redundant_and_connected_count}",
        f"globally rigid        {rep.globally_rigid_count}",
        f"H_d-graphs            {len(rep.h_graphs)}",
        f"seconds               {rep.wall_time:.2f}",
        f"complete              {str(rep.complete).lower()}",
    ]
    lines += [f"  {g}" for g in rep.h_graphs]
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    try:
        spec = ScanSpec(d=args.dim, n=args.n, min_edges=args.min_edges, trials=args.trials,
                        seed=args.seed, worker_count=_workers(args), split_depth=args.split_depth,
                        max_candidates=args.max_candidates, checkpoint_every=args.checkpoint_every)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    status = EXIT_OK
    try:
        rep = hendrickson_scan(spec, results_log=args.results_log)
    except ScanIncomplete as exc:
        rep = exc.report
        status = EXIT_FAILED
        print(f"scan incomplete: {exc}", file=sys.stderr)
    with _open_out(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(rep.as_dict(), indent=2) + "\n")
        elif args.format == "graph6":
            out.write("".join(g + "\n" for g in rep.h_graphs))
        else:
            out.write(_report_text(rep))
    h_path = args.h_output
    if h_path is None and args.output not in (None, "-") and args.format != "graph6":
        h_path = args.output + ".h.g6"
    if h_path is not None:
        Path(h_path).write_text("".join(g + "\n" for g in rep.h_graphs))
    return status


def cmd_table(args) -> int:
    try:
        dims = [int(x) for x in args.dims.split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"bad --dims: {args.dims}") from exc
    if any(d < 1 for d in dims):
        raise ConfigError("dimensions must be positive")
    cells = table_report(dims, args.k_max, k_min=args.k_min, trials=args.trials, seed=args.seed,
                         worker_count=_workers(args), min_edges=args.min_edges)
    with _open_out(args.output) as out:
        out.write(table_json(cells) + "\n" if args.format == "json" else table_csv(cells))
    return EXIT_FAILED if any(c.error for c in cells) else EXIT_OK


def cmd_construct(args) -> int:
    try:
        g = build_named(args.name, *args.params, remove_red_edges=args.remove_red_edges)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    with _open_out(args.output) as out:
        out.write(g.to_graph6() + "\n")
    return EXIT_OK


def cmd_cone(args) -> int:
    failures = 0
    with _open_in(args.input) as fin, _open_out(args.output) as out:
        for lineno, line in enumerate(fin, 1):
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            try:
                g = from_graph6(line)
                for _ in range(args.times):
                    g = g.cone()
            except (Graph6Error, OverflowError) as exc:
                failures += 1
                print(f"line {lineno}: {exc}", file=sys.stderr)
                continue
            out.write(g.to_graph6() + "\n")
    return EXIT_FAILED if failures else EXIT_OK


# -- parser --------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=_positive, default=None,
                        help="worker processes (default: $RIGIDSCAN_WORKERS or CPU count)")
    common.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="rigidscan", description="Rigidity classification and Hendrickson scans.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="classify graph6 lines")
    c.add_argument("input", nargs="?", default="-")
    c.add_argument("--dim", "-d", type=_positive, required=True)
    c.add_argument("--format", choices=["text", "csv", "json", "graph6"], default="text")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", parents=[common], help="scan all graphs on n vertices")
    s.add_argument("--dim", "-d", type=_positive, required=True)
    s.add_argument("-n", type=_positive, required=True, help="vertex count")
    s.add_argument("--min-edges", type=int, default=None)
    s.add_argument("--format", choices=["text", "json", "graph6"], default="text")
    s.add_argument("--results-log", default=None, help="append-only JSONL log for resume")
    s.add_argument("--h-output", default=None, help="graph6 file for the H_d-graphs found")
    s.add_argument("--split-depth", type=int, default=DEFAULT_SPLIT_DEPTH)
    s.add_argument("--max-candidates", type=int, default=None)
    s.add_argument("--checkpoint-every", type=_positive, default=DEFAULT_CHECKPOINT_EVERY,
                   help="largest number of candidates between results-log records")
    s.set_defaults(func=cmd_scan)

    t = sub.add_parser("table", parents=[common], help="reproduce the count tables")
    t.add_argument("--dims", default="3,4,5")
    t.add_argument("--k-max", type=int, default=5)
    t.add_argument("--k-min", type=int, default=2)
    t.add_argument("--min-edges", type=int, default=None)
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.set_defaults(func=cmd_table)

    k = sub.add_parser("construct", parents=[common], help="emit a named graph as graph6")
    k.add_argument("name", choices=CONSTRUCTIONS)
    k.add_argument("params", nargs="*", type=int)
    k.add_argument("--remove-red-edges", action="store_true")
    k.set_defaults(func=cmd_construct)

    o = sub.add_parser("cone", parents=[common], help="cone every input graph")
    o.add_argument("input", nargs="?", default="-")
    o.add_argument("--times", type=_positive, default=1)
    o.set_defaults(func=cmd_cone)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"rigidscan: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
