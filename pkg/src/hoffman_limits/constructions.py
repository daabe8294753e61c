"""Regular graphs with smallest eigenvalue pinned between the limit points.

Three families, each the slim graph of a sum of copies of one catalog
Hoffman graph:

* :func:`build_gk`: ``k``-regular, one ``H8`` per edge of a connected
  ``(k, k-1)``-semiregular bipartite graph; smallest eigenvalue in
  ``[-1-sqrt(2), -2)``.
* :func:`build_triangle_free`: cubic and triangle-free, two ``H9`` per odd
  position of the cycle ``C_{2n}``; same interval.
* :func:`build_gk_wn`: ``k``-regular, one ``HWN`` per ground element of
  three partitions; smallest eigenvalue at least ``alpha_1`` and, once
  ``k >= N*``, below ``-1-sqrt(2)``.

Every builder recomputes its claims and raises
:class:`~hoffman_limits.errors.ConstructionError` naming the first one
that fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

from .errors import ConstructionError, InputError
from .graph import (
    PatternKind,
    SimpleGraph,
    connected_components,
    find_induced,
    induced_subgraph,
    is_cocktail_party,
    is_connected,
    is_regular,
    is_triangle_free,
    make_graph,
    min_degree,
)
from .graph_io import graph6_encode, graph_to_json
from .hoffman import (
    HoffmanGraph,
    SumSpec,
    catalog,
    clique_extension,
    hlambda_min,
    hoffman_to_json,
    hsum,
    slim_graph,
    verify_decomposition,
)
from .linalg import DEFAULT_TOL
from .linegraph import DEFAULT_LIMIT as LINE_LIMIT
from .linegraph import is_line_graph
from .spectra import constant, graph_lambda_min

log = logging.getLogger(__name__)

# margin for strict "< -2" / "< -1-sqrt(2)" claims
GUARD = 1e-7
GRAPH6_LIMIT = 20000

__all__ = [
    "SemiregularBipartite",
    "TriplePartition",
    "ConstructionReport",
    "semiregular_bipartite",
    "build_gk",
    "build_triangle_free",
    "default_partitions",
    "strided_partitions",
    "remark_partitions",
    "build_gk_wn",
    "compute_threshold_N",
    "limit_sequence",
    "GUARD",
]


@dataclass(frozen=True)
class SemiregularBipartite:
    graph: SimpleGraph
    side_R: tuple[int, ...]
    side_Y: tuple[int, ...]
    k: int
    a: int


@dataclass
class ConstructionReport:
    family: str
    params: dict[str, Any]
    graph: SimpleGraph
    hoffman: HoffmanGraph
    parts: list[list[int]]
    lambda_min: float
    checks: dict[str, Any] = field(default_factory=dict)
    required: list[str] = field(default_factory=list)
    repairs: list[str] = field(default_factory=list)

    def require(self, name: str, value: bool, detail: str = "") -> None:
        self.checks[name] = bool(value)
        self.required.append(name)
        if not value:
            raise ConstructionError(name, detail or f"{self.family} {self.params}")

    def to_json(self, include_graph: bool = True) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "family": self.family,
            "params": self.params,
            "n": self.graph.n,
            "m": self.graph.m,
            "lambda_min": self.lambda_min,
            "checks": self.checks,
            "required": self.required,
            "repairs": self.repairs,
        }
        if include_graph:
            if self.graph.n <= GRAPH6_LIMIT:
                doc["graph6"] = graph6_encode(self.graph)
            else:
                doc["graph"] = graph_to_json(self.graph)
        return doc


def semiregular_bipartite(k: int, a: int = 1) -> SemiregularBipartite:
    """Deterministic connected bipartite graph, degree ``k`` on R and ``k-1`` on Y.

    ``R = 0..a(k-1)-1`` and ``Y`` follows.  R-vertex ``i`` takes the ``k``
    consecutive Y-slots ``ik .. ik+k-1`` of the cyclic slot list
    ``y_0, y_1, ..., y_{ak-1}, y_0, ...``, which never repeats a Y-vertex;
    components are then merged by degree-preserving 2-edge swaps.
    """
    if k < 3 or a < 1:
        raise InputError(f"need k >= 3 and a >= 1, got k={k}, a={a}")
    nR, nY = a * (k - 1), a * k
    R = tuple(range(nR))
    Y = tuple(range(nR, nR + nY))
    edges = {(i, nR + (p % nY)) for i in range(nR) for p in range(i * k, i * k + k)}

    for _ in range(nR + nY):
        G = make_graph(nR + nY, edges)
        comps = connected_components(G)
        if len(comps) == 1:
            break
        first, second = set(comps[0]), set(comps[1])
        e1 = min(e for e in edges if e[0] in first)
        e2 = min(e for e in edges if e[0] in second)
        edges -= {e1, e2}
        edges |= {(e1[0], e2[1]), (e2[0], e1[1])}
    else:
        raise ConstructionError("connected", f"could not connect B_({k},{k - 1}) for a={a}")

    G = make_graph(nR + nY, edges)
    ok = (
        all(G.degree(r) == k for r in R)
        and all(G.degree(y) == k - 1 for y in Y)
        and all(e[0] < nR <= e[1] for e in G.edges())
        and is_connected(G)
    )
    if not ok:
        raise ConstructionError("semiregular", f"k={k}, a={a}")
    return SemiregularBipartite(G, R, Y, k, a)


def _finish(report: ConstructionReport, lower: float, lower_name: str, tol: float) -> None:
    lam = report.lambda_min
    report.checks["lambda_min"] = lam
    report.require(f"lambda_min_ge_{lower_name}", lam >= lower - tol, f"lambda_min={lam!r}")


def _line_and_cocktail(report: ConstructionReport, claw) -> None:
    G = report.graph
    report.checks["three_claw"] = list(claw) if claw else None
    # an induced claw already rules out line graphs; run Krausz as a second opinion when cheap
    not_line = claw is not None
    if G.n <= LINE_LIMIT:
        not_line = not is_line_graph(G)
    report.require("not_line_graph", not_line)
    report.require("not_cocktail_party", is_cocktail_party(G) is None)


def build_gk(B: SemiregularBipartite, tol: float = DEFAULT_TOL) -> ConstructionReport:
    k = B.k
    h8 = catalog("H8")
    # H8: slim x1=0, x2=1, x3=2; fats on x1=3, x2=4, x3=5
    edges = sorted(B.graph.edges())
    at_R: dict[int, list[int]] = {}
    at_Y: dict[int, list[int]] = {}
    for s, (i, j) in enumerate(edges):
        at_R.setdefault(i, []).append(s)
        at_Y.setdefault(j, []).append(s)
    sharing = []
    for i in B.side_R:
        sharing.append([(s, 3) for s in at_R[i]])  # F_i
        sharing.append([(s, 5) for s in at_R[i]])  # E_i
    for j in B.side_Y:
        sharing.append([(s, 4) for s in at_Y[j]])  # D_j
    H = hsum(SumSpec([h8] * len(edges), sharing))
    G = slim_graph(H)
    parts = [[3 * s + t for t in range(3)] for s in range(len(edges))]
    report = ConstructionReport("gk", {"k": k, "a": B.a}, G, H, parts, graph_lambda_min(G, tol))

    a0 = constant("ALPHA0").value
    report.require("regular", is_regular(G) == k, f"degrees {set(G.degree(v) for v in range(G.n))}")
    report.require("connected", is_connected(G))
    report.require("vertex_count", G.n == 3 * k * len(B.side_R) == 3 * (k - 1) * len(B.side_Y))
    report.require("decomposition", verify_decomposition(H, parts))
    hl = hlambda_min(H, tol)
    report.checks["hoffman_lambda_min"] = hl
    report.require("hoffman_lambda_min_is_alpha0", abs(hl - a0) <= tol)
    _finish(report, a0, "alpha0", tol)
    report.require("lambda_min_lt_minus2", report.lambda_min < -2 - GUARD)

    # claw at a Y-vertex: x1, x2, x3 of one summand plus x2 of a sibling at the same j
    j = B.side_Y[0]
    s1, s2 = at_Y[j][:2]
    witness = (3 * s1 + 1, 3 * s1, 3 * s1 + 2, 3 * s2 + 1)
    report.require("claim_claw_witness", _is_induced_claw(G, witness))
    _line_and_cocktail(report, find_induced(G, PatternKind.THREE_CLAW))
    return report


def _is_induced_claw(G: SimpleGraph, quad: Sequence[int]) -> bool:
    c, *leaves = quad
    return all(G.has_edge(c, x) for x in leaves) and not any(
        G.has_edge(x, y) for x, y in combinations(leaves, 2)
    )


def build_triangle_free(n: int, tol: float = DEFAULT_TOL) -> ConstructionReport:
    """Cubic triangle-free graph on ``8n`` vertices from the cycle ``C_{2n}``.

    Summand ``2(i-1)`` sits at cycle positions ``(2i-1, 2i)`` and summand
    ``2(i-1)+1`` at ``(2i-1, 2i-2)``; slim vertex ``x_t`` of summand ``s`` is
    ``4s + t - 1``.
    """
    if n < 2:
        raise InputError("the cycle C_2n needs n >= 2")
    h9 = catalog("H9")
    # H9: slim x1..x4 = 0..3; F on x1 = 4, E on x3 = 5, D on {x2, x4} = 6

    def up(i: int) -> int:  # summand at (2i-1, 2i)
        return 2 * ((i - 1) % n)

    def down(i: int) -> int:  # summand at (2i-1, 2i-2)
        return 2 * ((i - 1) % n) + 1

    sharing = []
    for i in range(1, n + 1):
        sharing.append([(up(i), 4), (down(i), 4)])  # F_{2i-1}
        sharing.append([(up(i), 5), (down(i), 5)])  # E_{2i-1}
        sharing.append([(up(i), 6), (down(i + 1), 6)])  # D_{2i}: (2i-1,2i) and (2i+1,2i)
    H = hsum(SumSpec([h9] * (2 * n), sharing))
    G = slim_graph(H)
    parts = [[4 * s + t for t in range(4)] for s in range(2 * n)]
    report = ConstructionReport("trianglefree", {"n": n}, G, H, parts, graph_lambda_min(G, tol))

    a0 = constant("ALPHA0").value
    report.require("regular", is_regular(G) == 3)
    report.require("vertex_count", G.n == 8 * n)
    report.require("triangle_free", is_triangle_free(G))
    report.require("decomposition", verify_decomposition(H, parts))
    hl = hlambda_min(H, tol)
    report.checks["hoffman_lambda_min"] = hl
    report.require("hoffman_lambda_min_is_alpha0", abs(hl - a0) <= tol)
    _finish(report, a0, "alpha0", tol)
    report.require("lambda_min_lt_minus2", report.lambda_min < -2 - GUARD)

    def x(t: int, s: int) -> int:
        return 4 * s + t - 1

    # x1^(1,2) ~ {x2^(1,2), x3^(1,2), x1^(1,2n)} and x2^(1,2) ~ {x1^(1,2), x2^(3,2), x4^(3,2)}
    expect_x1 = {x(2, up(1)), x(3, up(1)), x(1, down(1))}
    expect_x2 = {x(1, up(1)), x(2, down(2)), x(4, down(2))}
    report.require(
        "claim_neighbours",
        set(G.nbrs[x(1, up(1))]) == expect_x1 and set(G.nbrs[x(2, up(1))]) == expect_x2,
    )
    report.checks["connected"] = is_connected(G)
    _line_and_cocktail(report, find_induced(G, PatternKind.THREE_CLAW))
    return report


@dataclass(frozen=True)
class TriplePartition:
    """Three partitions of ``{1..ground}`` into blocks of sizes ``k-2``, ``k`` and ``k-1``."""

    ground: int
    P: tuple[tuple[int, ...], ...]
    Q: tuple[tuple[int, ...], ...]
    R: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.Q[0])

    def validate(self, k: int) -> None:
        full = list(range(1, self.ground + 1))
        for name, blocks, size in (("P", self.P, k - 2), ("Q", self.Q, k), ("R", self.R, k - 1)):
            if sorted(x for b in blocks for x in b) != full:
                raise InputError(f"{name} is not a partition of 1..{self.ground}")
            if any(len(b) != size for b in blocks):
                raise InputError(f"blocks of {name} must have size {size}")

    def to_json(self) -> dict[str, Any]:
        return {"ground": self.ground, "P": [list(b) for b in self.P],
                "Q": [list(b) for b in self.Q], "R": [list(b) for b in self.R]}


def strided_partitions(k: int, ground: int) -> TriplePartition:
    """``P`` and ``Q`` as residue classes, ``R`` as consecutive runs."""
    if k < 4:
        raise InputError("need k >= 4")
    for size in (k - 2, k, k - 1):
        if ground % size:
            raise InputError(f"block size {size} does not divide {ground}")
    sp_, sq = ground // (k - 2), ground // k
    P = tuple(tuple(i + s * sp_ for s in range(k - 2)) for i in range(1, sp_ + 1))
    Q = tuple(tuple(j + s * sq for s in range(k)) for j in range(1, sq + 1))
    R = tuple(tuple(range((l - 1) * (k - 1) + 1, l * (k - 1) + 1)) for l in range(1, ground // (k - 1) + 1))
    T = TriplePartition(ground, P, Q, R)
    T.validate(k)
    return T


def default_partitions(k: int, a: int = 1) -> TriplePartition:
    if a < 1:
        raise InputError("a must be positive")
    return strided_partitions(k, a * k * (k - 1) * (k - 2))


def remark_partitions() -> TriplePartition:
    """The three partitions of ``{1..12}`` for ``k = 4``."""
    P = tuple((i, i + 6) for i in range(1, 7))
    Q = tuple((j, j + 3, j + 6, j + 9) for j in range(1, 4))
    R = tuple((3 * l - 2, 3 * l - 1, 3 * l) for l in range(1, 5))
    T = TriplePartition(12, P, Q, R)
    T.validate(4)
    return T


def _summand_components(T: TriplePartition) -> list[list[int]]:
    parent = list(range(T.ground + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blocks in (T.P, T.Q, T.R):
        for b in blocks:
            r = find(b[0])
            for x in b[1:]:
                parent[find(x)] = r
    comps: dict[int, list[int]] = {}
    for m in range(1, T.ground + 1):
        comps.setdefault(find(m), []).append(m)
    return sorted(comps.values())


def _repair_connectivity(T: TriplePartition, repairs: list[str]) -> TriplePartition:
    for _ in range(T.ground):
        comps = _summand_components(T)
        if len(comps) == 1:
            return T
        m1, m2 = comps[0][0], comps[1][0]
        R = [list(b) for b in T.R]
        l1 = next(i for i, b in enumerate(R) if m1 in b)
        l2 = next(i for i, b in enumerate(R) if m2 in b)
        R[l1][R[l1].index(m1)] = m2
        R[l2][R[l2].index(m2)] = m1
        T = TriplePartition(T.ground, T.P, T.Q, tuple(tuple(sorted(b)) for b in R))
        repairs.append(f"swapped {m1} and {m2} between R-blocks {l1 + 1} and {l2 + 1}")
    raise ConstructionError("connected", "repair did not converge")


def build_gk_wn(
    k: int,
    a: int = 1,
    partitions: TriplePartition | None = None,
    *,
    repair: bool = True,
    tol: float = DEFAULT_TOL,
) -> ConstructionReport:
    """``k``-regular slim graph of a sum of ``HWN`` copies.

    ``partitions`` defaults to :func:`default_partitions`; when given, its
    ground size fixes the order and ``a`` is ignored.  Slim vertex ``x_t``
    of ground element ``m`` is ``4(m-1) + t - 1``.
    """
    if k < 4:
        raise InputError("need k >= 4")
    T = partitions if partitions is not None else default_partitions(k, a)
    T.validate(k)
    repairs: list[str] = []
    if len(_summand_components(T)) > 1:
        if not repair:
            raise ConstructionError("connected", "partitions give a disconnected graph and repair is off")
        T = _repair_connectivity(T, repairs)

    M = T.ground
    hwn = catalog("HWN")
    # HWN: slim x1 (centre) = 0, x2 = 1, x3 = 2, x4 (pendant) = 3; fats on x1..x4 = 4, 5, 6, 7
    sharing = (
        [[(m - 1, 4) for m in b] for b in T.P]  # F_i on x1
        + [[(m - 1, 7) for m in b] for b in T.Q]  # E_j on x4
        + [[(m - 1, 5) for m in b] for b in T.R]  # D_l on x2
        + [[(m - 1, 6) for m in b] for b in T.R]  # C_l on x3
    )
    H = hsum(SumSpec([hwn] * M, sharing))
    G = slim_graph(H)
    parts = [[4 * s + t for t in range(4)] for s in range(M)]
    lam = graph_lambda_min(G, tol)
    a_eff = Fraction(M, k * (k - 1) * (k - 2))
    params = {"k": k, "a": a if partitions is None else str(a_eff), "ground": M}
    report = ConstructionReport("gkwn", params, G, H, parts, lam, repairs=repairs)

    a0 = constant("ALPHA0").value
    a1 = constant("ALPHA1").value
    nf = len(H.fat)
    report.checks["slim_count"] = G.n
    report.checks["fat_count"] = nf
    report.require("slim_count_formula", G.n == 4 * a_eff * k * (k - 1) * (k - 2))
    report.require("fat_count_formula", nf == 2 * a_eff * (2 * k * k - 4 * k + 1))
    fat_sizes = sorted({len(H.graph.nbrs[f]) for f in H.fats})
    report.require("fat_neighbour_counts", fat_sizes == sorted({k - 2, k, k - 1}))
    report.require("regular", is_regular(G) == k)
    report.require("connected", is_connected(G))
    report.require("decomposition", verify_decomposition(H, parts))
    hl = hlambda_min(H, tol)
    report.checks["hoffman_lambda_min"] = hl
    report.require("hoffman_lambda_min_is_alpha1", abs(hl - a1) <= tol)
    _finish(report, a1, "alpha1", tol)

    # radius-2 ball around one summand: interlacing gives an upper bound for lambda_min(G)
    ball = set(parts[0])
    for _ in range(2):
        ball = ball.union(*(G.nbrs[v] for v in ball))
    local = sorted(ball)
    bound = graph_lambda_min(induced_subgraph(G, local), tol)
    report.checks["local_upper_bound"] = bound
    report.require("local_bound_consistent", lam <= bound + tol)
    N = compute_threshold_N(tol)
    report.checks["threshold_N"] = N
    if k >= N:
        report.require("lambda_min_lt_alpha0", lam < a0 - GUARD, f"lambda_min={lam!r}")
        report.require("local_bound_lt_alpha0", bound < a0 - GUARD)
    return report


@lru_cache(maxsize=None)
def compute_threshold_N(tol: float = DEFAULT_TOL) -> int:
    """Smallest ``N >= 4`` with ``lambda_min(HWN^(N-3)) < -1-sqrt(2) - tol``.

    The sequence is non-increasing in the clique size, so the first hit is
    the threshold.
    """
    if tol <= 0:
        raise InputError("tolerance must be positive")
    hwn = catalog("HWN")
    a0 = constant("ALPHA0").value
    N = 4
    while graph_lambda_min(clique_extension(hwn, N - 3), tol) >= a0 - tol:
        N += 1
    return N


def limit_sequence(name: str, n_max: int, tol: float = DEFAULT_TOL) -> list[tuple[int, float, int]]:
    """``(n, lambda_min(H^(n)), min degree of H^(n))`` for ``n = 1..n_max``."""
    if n_max < 2:
        raise InputError("n_max must be at least 2")
    if name.upper() not in ("H9", "HWN"):
        raise InputError("limit sequences are defined for H9 and HWN")
    H = catalog(name)
    out = []
    for n in range(1, n_max + 1):
        G = clique_extension(H, n)
        out.append((n, graph_lambda_min(G, tol), min_degree(G)))
    return out


def report_hoffman_json(report: ConstructionReport) -> dict[str, Any]:
    return hoffman_to_json(report.hoffman)
