"""Command-line entry point.

Subcommands: ``eigen``, ``construct``, ``hoffman``, ``search-eta3`` and
``verify-paper``.  JSON goes to stdout unless ``--out-dir`` is given, in
which case every artifact is written there together with a
``manifest.json`` listing sha256 digests.

Exit codes: 0 success, 2 input error, 3 construction or validity error,
4 capacity error (including an exhausted search budget), 5 a failed
reproduction criterion.

``--config FILE`` reads a JSON object whose keys are the long flag names
of the chosen subcommand with dashes turned into underscores (for example
``{"max_vertices": 14, "phase": "both"}``); flags given on the command
line win.  ``HOFFMAN_LIMITS_WORKERS`` sets the default search worker count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from datetime import datetime, timezone
from importlib import metadata
from typing import Sequence

from .constructions import (
    build_gk,
    build_gk_wn,
    build_triangle_free,
    limit_sequence,
    remark_partitions,
    semiregular_bipartite,
)
from .errors import HoffmanLimitsError, InputError, SearchBudgetExceeded
from .graph_io import graph6_encode, read_graph
from .hoffman import (
    CATALOG_NAMES,
    catalog,
    clique_extension,
    hlambda_min,
    hoffman_from_json,
    hoffman_to_json,
    slim_graph,
)
from .search import Checkpoint, SearchConfig, default_workers, export_tree, search_eta3
from .spectra import spectral_report
from .verify import verify_all

log = logging.getLogger("hoffman_limits")

EXIT_ACCEPTANCE = 5
FORMAT_VERSION = 1


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Outputs:
    """Collects artifacts; writes them plus a manifest, or prints the main one."""

    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.out_dir = getattr(args, "out_dir", None)
        self.argv = list(argv)
        self.params = {k: v for k, v in vars(args).items() if k not in ("func", "out_dir")}
        self.files: dict[str, bytes] = {}
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()
        self.stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def add_input(self, name: str, data: bytes) -> None:
        self.inputs[name] = _sha256(data)

    def add(self, name: str, content: str | dict | list) -> None:
        text = content if isinstance(content, str) else json.dumps(content, indent=2, sort_keys=True) + "\n"
        self.files[name] = text.encode()

    def write_to(self, path: str, name: str) -> None:
        with open(path, "wb") as fh:
            fh.write(self.files[name])

    def finish(self, primary: str) -> None:
        if self.out_dir is None:
            sys.stdout.write(self.files[primary].decode())
            return
        os.makedirs(self.out_dir, exist_ok=True)
        for name, data in self.files.items():
            with open(os.path.join(self.out_dir, name), "wb") as fh:
                fh.write(data)
        manifest = {
            "format_version": FORMAT_VERSION,
            "tool_version": _version(),
            "command_line": self.argv,
            "parameters": self.params,
            "inputs": self.inputs,
            "outputs": {name: _sha256(data) for name, data in sorted(self.files.items())},
            "started": self.stamp,
            "wall_time_seconds": round(time.perf_counter() - self.started, 3),
        }
        with open(os.path.join(self.out_dir, "manifest.json"), "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(os.path.join(self.out_dir, "manifest.json"))


def _read_source(source: str) -> tuple[str, bytes]:
    """A file path, ``-`` for stdin, or literal graph6/JSON text."""
    if source == "-":
        data = sys.stdin.buffer.read()
    elif os.path.isfile(source):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.encode()
    return data.decode().strip(), data


def cmd_eigen(args, out: Outputs) -> int:
    text, raw = _read_source(args.graph)
    out.add_input("graph", raw)
    G = read_graph(text)
    report = spectral_report(G, tol=args.tol, full=args.full, exact=args.exact)
    doc = {"n": G.n, "m": G.m, **report.to_json()}
    if report.char_poly is not None:
        doc["char_poly_text"] = str(report.char_poly)
    out.add("eigen.json", doc)
    out.finish("eigen.json")
    return 0


def cmd_construct(args, out: Outputs) -> int:
    fam = args.family
    if fam == "limitseq":
        seq = limit_sequence(args.name, args.n_max, args.tol)
        out.add("limitseq.json", {"name": args.name.upper(),
                                  "sequence": [{"n": n, "lambda_min": lam, "min_degree": d} for n, lam, d in seq]})
        out.finish("limitseq.json")
        return 0
    if fam == "gk":
        report = build_gk(semiregular_bipartite(args.k, args.a), args.tol)
    elif fam == "trianglefree":
        report = build_triangle_free(args.n, args.tol)
    else:
        parts = remark_partitions() if args.remark else None
        report = build_gk_wn(args.k, args.a, parts, repair=not args.no_repair, tol=args.tol)
    doc = report.to_json(include_graph=True)
    out.add("report.json", doc)
    if "graph6" in doc:
        out.add("graph.g6", doc["graph6"] + "\n")
    out.add("hoffman.json", hoffman_to_json(report.hoffman))
    out.finish("report.json")
    return 0


def cmd_hoffman(args, out: Outputs) -> int:
    if args.action == "catalog":
        names = [args.name.upper()] if args.name else list(CATALOG_NAMES)
        doc = {}
        for name in names:
            H = catalog(name)
            doc[name] = {**hoffman_to_json(H), "slim_graph6": graph6_encode(slim_graph(H)),
                         "lambda_min": hlambda_min(H, args.tol)}
        out.add("catalog.json", doc)
        out.finish("catalog.json")
        return 0
    H = _load_hoffman(args, out)
    if args.action == "lambda":
        out.add("hoffman_lambda.json", {"lambda_min": hlambda_min(H, args.tol), "tolerance": args.tol,
                                        "slim": len(H.slim), "fat": len(H.fats)})
        out.finish("hoffman_lambda.json")
    else:
        G = clique_extension(H, args.n)
        out.add("extension.json", {"n": args.n, "graph6": graph6_encode(G), "vertices": G.n,
                                   "lambda_min": spectral_report(G, tol=args.tol).lambda_min})
        out.finish("extension.json")
    return 0


def _load_hoffman(args, out: Outputs):
    if args.name:
        return catalog(args.name)
    if not args.input:
        raise InputError("give --name for a catalog entry or --input for a JSON Hoffman graph")
    text, raw = _read_source(args.input)
    out.add_input("hoffman", raw)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return hoffman_from_json(doc)


def cmd_search(args, out: Outputs) -> int:
    workers = args.workers if args.workers is not None else default_workers()
    config = SearchConfig(
        max_vertices=args.max_vertices,
        tol=args.tol,
        phase=args.phase,
        emit_tree=bool(args.tree or args.tree_json),
        workers=workers,
        node_budget=args.node_budget,
    )
    resume = Checkpoint.load(args.resume, workers=workers, node_budget=args.node_budget) if args.resume else None
    try:
        result = search_eta3(config, resume=resume)
    except SearchBudgetExceeded as exc:
        path = args.checkpoint or "search-checkpoint.json"
        exc.checkpoint.dump(path)
        log.error("%s; checkpoint written to %s", exc, path)
        raise
    out.add("search.json", result.to_json())
    out.add("extremal.g6", "".join(g + "\n" for g in result.canonical_forms))
    if config.emit_tree:
        dot, tree_doc = export_tree(result)
        out.add("tree.dot", dot)
        out.add("tree.json", tree_doc)
        if args.tree:
            out.write_to(args.tree, "tree.dot")
        if args.tree_json:
            out.write_to(args.tree_json, "tree.json")
    if args.json:
        out.write_to(args.json, "search.json")
    out.finish("search.json")
    return 0


def cmd_verify(args, out: Outputs) -> int:
    only = None
    if args.criteria:
        try:
            only = [int(x) for x in args.criteria.split(",")]
        except ValueError:
            raise InputError(f"--criteria takes comma-separated numbers, got {args.criteria!r}") from None

    def show(r):
        if not args.json:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.number:>2}  {r.title}  ({r.seconds:.1f}s)\n       {r.detail}",
                  flush=True)

    results = verify_all(only, progress=show)
    failed = [r.number for r in results if not r.passed]
    if args.json:
        out.add("verify.json", {"criteria": [r.to_json() for r in results], "failed": failed})
        out.finish("verify.json")
    else:
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_ACCEPTANCE if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hoffman-limits", description=__doc__.split("\n\n")[0])
    p.add_argument("--config", help="JSON file with default flag values")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_dir=True):
        sp.add_argument("--tol", type=float, default=1e-9)
        if out_dir:
            sp.add_argument("--out-dir", help="write artifacts and a manifest here instead of stdout")

    e = sub.add_parser("eigen", help="smallest eigenvalue of a graph")
    e.add_argument("graph", help="graph6 or JSON text, a file holding it, or - for stdin")
    e.add_argument("--full", action="store_true", help="include the whole spectrum")
    e.add_argument("--exact", action="store_true", help="include the exact characteristic polynomial")
    common(e)
    e.set_defaults(func=cmd_eigen)

    c = sub.add_parser("construct", help="build a graph family member")
    c.add_argument("--family", required=True, choices=["gk", "trianglefree", "gkwn", "limitseq"])
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--a", type=int, default=1)
    c.add_argument("--n", type=int, default=2, help="cycle parameter for trianglefree")
    c.add_argument("--remark", action="store_true", help="gkwn with the fixed 12-element partitions (k=4)")
    c.add_argument("--no-repair", action="store_true", help="gkwn: fail instead of repairing connectivity")
    c.add_argument("--name", default="H9", help="limitseq catalog entry (H9 or HWN)")
    c.add_argument("--n-max", type=int, default=10)
    common(c)
    c.set_defaults(func=cmd_construct)

    h = sub.add_parser("hoffman", help="catalog entries, lambda_min and clique extensions")
    h.add_argument("action", choices=["catalog", "lambda", "extend"])
    h.add_argument("--name", help="catalog entry name")
    h.add_argument("--input", help="JSON Hoffman graph {n, edges, fat}")
    h.add_argument("--n", type=int, default=1, help="clique size for extend")
    common(h)
    h.set_defaults(func=cmd_hoffman)

    s = sub.add_parser("search-eta3", help="cubic graphs with lambda_min in [beta, -2)")
    s.add_argument("--max-vertices", type=int, default=14)
    s.add_argument("--phase", default="both", choices=["1", "2", "both"])
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--node-budget", type=int, default=None)
    s.add_argument("--checkpoint", help="where to write the checkpoint if the budget runs out")
    s.add_argument("--resume", help="checkpoint file to continue from")
    s.add_argument("--tree", help="write the search tree as DOT")
    s.add_argument("--tree-json", help="write the search tree as JSON")
    s.add_argument("--json", help="also write the result JSON here")
    common(s)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-paper", help="run the reproduction criteria")
    v.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,10")
    v.add_argument("--json", action="store_true", help="machine-readable result list")
    v.add_argument("--out-dir")
    v.set_defaults(func=cmd_verify)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config) as fh:
            conf = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {args.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config {args.config}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(conf, dict):
        raise InputError("config file must hold a JSON object")
    known = set(vars(args))
    unknown = sorted(set(conf) - known)
    if unknown:
        raise InputError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
    defaults = parser.parse_args([args.command] + _required_positionals(args))
    for key, value in conf.items():
        # command-line values win over the file
        if getattr(args, key) == getattr(defaults, key):
            setattr(args, key, value)
    return args


def _required_positionals(args: argparse.Namespace) -> list[str]:
    if args.command == "eigen":
        return [args.graph]
    if args.command == "hoffman":
        return [args.action]
    if args.command == "construct":
        return ["--family", args.family]
    return []


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args, Outputs(args, argv))
    except HoffmanLimitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
