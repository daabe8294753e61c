"""Exhaustive search for connected cubic graphs with smallest eigenvalue in ``[beta, -2)``.

Every connected cubic graph that is not a line graph contains an induced
claw or an induced diamond, so the search grows graphs outward from one of
those two seeds.  Growth is *induced*: a child adds one fresh vertex ``w``
joined to the lowest-indexed deficient vertex ``v`` and to a set of at most
two further deficient vertices, and edges among existing vertices are never
touched afterwards.  Each node is therefore an induced subgraph of each of
its completions, so by interlacing any node with ``lambda_min < beta - tol``
can be dropped together with everything below it.

Nodes are stored in canonical form and deduplicated level by level (all
nodes of a level have the same order).  The set of completions of a node
depends only on its isomorphism class, so this loses nothing.
"""

from __future__ import annotations

import enum
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable

from .canon import canonical_graph
from .errors import InputError, PreconditionError, SearchBudgetExceeded
from .graph import PatternKind, SimpleGraph, find_induced, is_connected, is_regular, standard_graph
from .graph_io import graph6_decode, graph6_encode
from .linalg import DEFAULT_TOL, lambda_min, sturm_count, tridiagonalize
from .poly import IntPolynomial, char_poly, count_roots_below, poly_divides
from .spectra import BETA_POLY, constant

log = logging.getLogger(__name__)

__all__ = [
    "Phase",
    "Verdict",
    "SearchConfig",
    "SearchNode",
    "Certificate",
    "SearchResult",
    "Checkpoint",
    "prune_test",
    "certify_beta",
    "search_eta3",
    "export_tree",
    "seed_graph",
    "cubic_graphs",
]

CHECKPOINT_VERSION = 1


class Phase(enum.Enum):
    DIAMOND_SEED = "1"
    CLAW_SEED_DIAMOND_FREE = "2"
    BOTH = "both"

    @classmethod
    def coerce(cls, value: "Phase | str | int") -> "Phase":
        if isinstance(value, Phase):
            return value
        text = str(value).strip().lower()
        for p in cls:
            if text in (p.value, p.name.lower()):
                return p
        raise InputError(f"unknown phase {value!r}; expected 1, 2 or both")


class Verdict(enum.Enum):
    EQUALS_BETA = "EQUALS_BETA"
    IN_INTERVAL = "IN_INTERVAL"
    OUT = "OUT"


@dataclass(frozen=True)
class SearchConfig:
    max_vertices: int = 14
    tol: float = DEFAULT_TOL
    phase: Phase = Phase.BOTH
    emit_tree: bool = False
    workers: int = 1
    node_budget: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "phase", Phase.coerce(self.phase))
        if self.max_vertices < 4:
            raise InputError("max_vertices must be at least 4")
        if not self.tol > 0:
            raise InputError("tol must be positive")
        if self.workers < 1:
            raise InputError("workers must be at least 1")
        if self.node_budget is not None and self.node_budget < 1:
            raise InputError("node_budget must be positive")

    def phases(self) -> list[Phase]:
        if self.phase is Phase.BOTH:
            return [Phase.DIAMOND_SEED, Phase.CLAW_SEED_DIAMOND_FREE]
        return [self.phase]


@dataclass(frozen=True)
class SearchNode:
    graph: SimpleGraph
    deficient: tuple[int, ...]
    depth: int
    parent: str | None = None

    @property
    def key(self) -> str:
        return graph6_encode(self.graph)


@dataclass(frozen=True)
class Certificate:
    graph6: str
    char_poly: IntPolynomial
    divisible: bool
    lambda_min: float
    verdict: Verdict

    def to_json(self) -> dict[str, Any]:
        return {
            "graph6": self.graph6,
            "char_poly": list(self.char_poly.coeffs),
            "divisible_by_sextic": self.divisible,
            "lambda_min": self.lambda_min,
            "verdict": self.verdict.value,
        }


@dataclass
class SearchResult:
    extremal_graphs: list[SimpleGraph]
    certified: list[Certificate]
    tree_stats: dict[str, int]
    complete_up_to: int
    phases: list[str]
    tree: list[dict[str, Any]] | None = None

    @property
    def canonical_forms(self) -> list[str]:
        return [graph6_encode(G) for G in self.extremal_graphs]

    def to_json(self) -> dict[str, Any]:
        return {
            "extremal_graphs": self.canonical_forms,
            "certified": [c.to_json() for c in self.certified],
            "tree_stats": self.tree_stats,
            "complete_up_to": self.complete_up_to,
            "phases": self.phases,
        }


@dataclass
class Checkpoint:
    """Resumable search state: the open frontier plus everything found so far.

    File format (JSON): ``{"version", "config", "phase_index", "num_vertices",
    "frontier": [[graph6, depth], ...], "found": [graph6, ...], "stats", "tree"}``.
    """

    config: SearchConfig
    phase_index: int
    num_vertices: int
    frontier: list[tuple[str, int]]
    found: list[str]
    stats: dict[str, int]
    tree: list[dict[str, Any]] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "version": CHECKPOINT_VERSION,
            "config": {
                "max_vertices": self.config.max_vertices,
                "tol": self.config.tol,
                "phase": self.config.phase.value,
                "emit_tree": self.config.emit_tree,
            },
            "phase_index": self.phase_index,
            "num_vertices": self.num_vertices,
            "frontier": [list(x) for x in self.frontier],
            "found": self.found,
            "stats": self.stats,
            "tree": self.tree,
        }

    def dump(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def from_json(cls, doc: dict[str, Any], **overrides) -> "Checkpoint":
        if doc.get("version") != CHECKPOINT_VERSION:
            raise InputError(f"unsupported checkpoint version {doc.get('version')!r}")
        cfg = dict(doc["config"])
        cfg.update(overrides)
        return cls(
            SearchConfig(**cfg),
            int(doc["phase_index"]),
            int(doc["num_vertices"]),
            [(g, int(d)) for g, d in doc["frontier"]],
            list(doc["found"]),
            dict(doc["stats"]),
            doc.get("tree"),
        )

    @classmethod
    def load(cls, path: str, **overrides) -> "Checkpoint":
        with open(path) as fh:
            return cls.from_json(json.load(fh), **overrides)


def seed_graph(phase: Phase) -> SimpleGraph:
    if phase is Phase.DIAMOND_SEED:
        return standard_graph("diamond")
    if phase is Phase.CLAW_SEED_DIAMOND_FREE:
        return standard_graph("claw")
    raise InputError("seed_graph needs a single phase")


def _beta() -> float:
    return constant("BETA").value


def prune_test(G: SimpleGraph, tol: float = DEFAULT_TOL) -> bool:
    """True (prune) iff ``lambda_min(G) < beta - tol``.

    Decided by one Sturm count on the tridiagonal form; values inside the
    band ``[beta - tol, beta)`` are kept.
    """
    if G.n == 0:
        return False
    d, e = tridiagonalize(G.adjacency_matrix())
    return sturm_count(d.tolist(), e.tolist(), _beta() - tol) > 0


def certify_beta(G: SimpleGraph, tol: float = DEFAULT_TOL) -> Certificate:
    """Exact classification of a connected cubic graph against ``beta``.

    ``EQUALS_BETA`` when the sextic divides the characteristic polynomial and
    the numeric smallest eigenvalue matches ``beta``; ``IN_INTERVAL`` when the
    smallest eigenvalue lies in ``[beta - tol, -2)``, with ``< -2`` decided
    exactly by Sturm counting; ``OUT`` otherwise.
    """
    if is_regular(G) != 3 or not is_connected(G):
        raise PreconditionError("certify_beta needs a connected cubic graph")
    cp = char_poly(G.adjacency_matrix().tolist())
    divisible = poly_divides(BETA_POLY, cp)
    lam = lambda_min(G.adjacency_matrix(), tol)
    beta = _beta()
    below_minus2 = count_roots_below(cp, -2) > 0
    if divisible and abs(lam - beta) <= tol:
        verdict = Verdict.EQUALS_BETA
    elif below_minus2 and lam >= beta - tol:
        verdict = Verdict.IN_INTERVAL
    else:
        verdict = Verdict.OUT
    return Certificate(graph6_encode(G), cp, divisible, lam, verdict)


def _deficient(G: SimpleGraph) -> tuple[int, ...]:
    return tuple(v for v in range(G.n) if G.degree(v) < 3)


def _min_final_order(G: SimpleGraph) -> int:
    # every new vertex absorbs at most three missing degrees; cubic graphs have even order
    need = sum(3 - G.degree(v) for v in range(G.n))
    lo = G.n + math.ceil(need / 3)
    return lo + (lo % 2)


def _grow(G: SimpleGraph) -> Iterable[SimpleGraph]:
    # fresh vertex on the lowest deficient vertex plus up to two other deficient vertices
    defs = _deficient(G)
    v, others = defs[0], defs[1:]
    for size in range(3):
        for S in combinations(others, size):
            adj = [set(G.nbrs[u]) for u in range(G.n)] + [set()]
            for u in (v, *S):
                adj[u].add(G.n)
                adj[G.n].add(u)
            yield canonical_graph(SimpleGraph._from_sets(G.n + 1, adj))


def _expand(args: tuple[str, int, float, str]) -> dict[str, Any]:
    """Children of one node; pure, so it can run in any worker."""
    g6, max_vertices, tol, phase_value = args
    G = graph6_decode(g6)
    phase = Phase(phase_value)
    seen: dict[str, str] = {}
    merged = 0
    for child in _grow(G):
        key = graph6_encode(child)
        if key in seen:
            merged += 1
            continue
        seen[key] = _classify(child, max_vertices, tol, phase)
    return {"parent": g6, "children": sorted(seen.items()), "sibling_merges": merged}


def cubic_graphs(max_vertices: int) -> dict[int, list[SimpleGraph]]:
    """All connected cubic graphs on at most ``max_vertices`` vertices, by order.

    Same induced growth as the search, from a single vertex and with no
    eigenvalue pruning.
    """
    out: dict[int, list[SimpleGraph]] = {}
    level = {graph6_encode(SimpleGraph._from_sets(1, [set()]))}
    while level:
        nxt = set()
        for key in level:
            for child in _grow(graph6_decode(key)):
                if not _deficient(child):
                    out.setdefault(child.n, []).append(child)
                elif _min_final_order(child) <= max_vertices:
                    nxt.add(graph6_encode(child))
        level = nxt
    return {n: sorted(set(gs), key=graph6_encode) for n, gs in sorted(out.items())}


def _classify(G: SimpleGraph, max_vertices: int, tol: float, phase: Phase) -> str:
    if prune_test(G, tol):
        return "pruned"
    if phase is Phase.CLAW_SEED_DIAMOND_FREE and find_induced(G, PatternKind.DIAMOND) is not None:
        return "pruned_diamond"
    if not _deficient(G):
        return "completed"
    if _min_final_order(G) > max_vertices:
        return "bound"
    return "open"


def _map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2 * workers:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (8 * workers))))


def _new_stats() -> dict[str, int]:
    return {"expanded": 0, "pruned": 0, "pruned_diamond": 0, "completed": 0, "bound": 0,
            "sibling_merges": 0, "level_merges": 0, "generated": 0}


def search_eta3(config: SearchConfig | None = None, *, resume: Checkpoint | None = None) -> SearchResult:
    """Enumerate connected cubic graphs on at most ``max_vertices`` vertices with
    ``lambda_min in [beta - tol, -2)``.

    Raises :class:`SearchBudgetExceeded` carrying a resumable
    :class:`Checkpoint` when more than ``node_budget`` nodes would be
    expanded in this call.
    """
    config = config or SearchConfig()
    phases = config.phases()
    tree: list[dict[str, Any]] | None = [] if config.emit_tree else None
    stats = _new_stats()
    found: set[str] = set()
    start_phase, start_n, frontier = 0, None, None
    if resume is not None:
        if resume.config.phase is not config.phase or resume.config.max_vertices != config.max_vertices:
            raise InputError("checkpoint was written for a different phase or vertex bound")
        start_phase = resume.phase_index
        start_n = resume.num_vertices
        frontier = [g for g, _ in resume.frontier]
        found = set(resume.found)
        stats.update(resume.stats)
        if config.emit_tree:
            if resume.tree is None:
                raise InputError("checkpoint carries no tree; start again with emit_tree to record one")
            tree = list(resume.tree)
    expanded_here = 0

    for pi in range(start_phase, len(phases)):
        phase = phases[pi]
        if frontier is None:
            seed = canonical_graph(seed_graph(phase))
            key = graph6_encode(seed)
            status = _classify(seed, config.max_vertices, config.tol, phase)
            if tree is not None:
                tree.append(_tree_node(seed, key, None, phase, status, config.tol))
            frontier = [key] if status == "open" else []
            n = seed.n
        else:
            n = start_n
        while frontier:
            if config.node_budget is not None and expanded_here + len(frontier) > config.node_budget:
                ckpt = Checkpoint(config, pi, n, [(g, n - 4) for g in frontier], sorted(found), dict(stats), tree)
                partial = _result(found, stats, n - 1, phases, tree, config.tol)
                raise SearchBudgetExceeded(partial, ckpt)
            outs = _map(_expand, [(g, config.max_vertices, config.tol, phase.value) for g in frontier], config.workers)
            expanded_here += len(frontier)
            stats["expanded"] += len(frontier)
            level: dict[str, str] = {}
            for out in outs:
                stats["sibling_merges"] += out["sibling_merges"]
                for key, status in out["children"]:
                    stats["generated"] += 1
                    if key in level:
                        stats["level_merges"] += 1
                        continue
                    level[key] = status
                    if tree is not None:
                        tree.append(_tree_node(graph6_decode(key), key, out["parent"], phase, status, config.tol))
            nxt = []
            for key in sorted(level):
                status = level[key]
                if status == "open":
                    nxt.append(key)
                else:
                    stats[status] += 1
                if status == "completed":
                    G = graph6_decode(key)
                    if count_roots_below(char_poly(G.adjacency_matrix().tolist()), -2) > 0:
                        found.add(key)
            frontier = nxt
            n += 1
            log.info("phase %s: %d open nodes on %d vertices", phase.value, len(frontier), n)
        frontier = None
    return _result(found, stats, config.max_vertices, phases, tree, config.tol)


def _tree_node(G: SimpleGraph, key: str, parent: str | None, phase: Phase, status: str, tol: float) -> dict[str, Any]:
    return {
        "id": f"p{phase.value}:{key}",
        "graph6": key,
        "n": G.n,
        "parent": f"p{phase.value}:{parent}" if parent is not None else None,
        "lambda_min": lambda_min(G.adjacency_matrix(), tol),
        "status": "expanded" if status == "open" else status,
    }


def _result(found: Iterable[str], stats, complete_up_to: int, phases, tree, tol) -> SearchResult:
    graphs = [graph6_decode(k) for k in sorted(found)]
    certs = [certify_beta(G, tol) for G in graphs]
    return SearchResult(graphs, certs, dict(stats), complete_up_to, [p.value for p in phases], tree)


def export_tree(result: SearchResult) -> tuple[str, dict[str, Any]]:
    """DOT text and JSON document for a search run with ``emit_tree`` on."""
    if result.tree is None:
        raise InputError("the search was run without emit_tree")
    colours = {"expanded": "black", "completed": "blue", "pruned": "red",
               "pruned_diamond": "orange", "bound": "gray"}
    lines = ["digraph search {", "  node [shape=box, fontsize=9];"]
    ids = {}
    for i, node in enumerate(result.tree):
        ids[node["id"]] = f"n{i}"
        label = f'{node["graph6"]}\\n{node["lambda_min"]:.6f}'
        style = ", style=dashed" if node["status"].startswith("pruned") else ""
        lines.append(f'  n{i} [label="{label}", color={colours[node["status"]]}{style}];')
    for node in result.tree:
        if node["parent"] is not None:
            lines.append(f'  {ids[node["parent"]]} -> {ids[node["id"]]};')
    lines.append("}")
    doc = {"nodes": result.tree, "stats": result.tree_stats}
    return "\n".join(lines) + "\n", doc


def default_workers() -> int:
    """Worker count from ``HOFFMAN_LIMITS_WORKERS``, else 1."""
    raw = os.environ.get("HOFFMAN_LIMITS_WORKERS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"HOFFMAN_LIMITS_WORKERS must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("HOFFMAN_LIMITS_WORKERS must be positive")
    return value
