"""Finite simple undirected graphs on the vertex set ``0..n-1``.

Graphs are immutable.  Adjacency is stored as sorted neighbour tuples so
that the very large regular graphs built in :mod:`constructions` (up to
~10^5 vertices) stay cheap; bitmask rows for small graphs are derived on
demand.

Vertex numbering of :func:`standard_graph` families:

* ``cycle n``: ``i ~ i+1 (mod n)``.
* ``path n``: ``i ~ i+1``.
* ``complete n``: all pairs.
* ``complete_bipartite a b``: parts ``0..a-1`` and ``a..a+b-1``.
* ``cocktail m``: ``K_{m x 2}``; vertices ``2i`` and ``2i+1`` are the
  non-adjacent pairs.
* ``claw``: ``K_{1,3}``, centre ``0``.
* ``diamond``: ``K_{2,1,1}``; ``0 ~ 1`` are the degree-3 vertices and
  ``2, 3`` the non-adjacent pair.
* ``paw``: triangle ``0,1,2`` plus pendant ``3`` on ``0``.
* ``petersen``: outer cycle ``0..4``, spokes ``i ~ i+5``, inner
  pentagram ``5+i ~ 5+(i+2 mod 5)``.
* ``empty n``: no edges.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import InputError

__all__ = [
    "SimpleGraph",
    "PatternKind",
    "make_graph",
    "standard_graph",
    "cartesian_product",
    "disjoint_union",
    "induced_subgraph",
    "relabel",
    "degrees",
    "is_regular",
    "is_connected",
    "connected_components",
    "is_triangle_free",
    "find_induced",
    "is_cocktail_party",
    "min_degree",
]


@dataclass(frozen=True)
class SimpleGraph:
    """Simple graph with dense vertex ids; ``nbrs[v]`` is sorted."""

    n: int
    nbrs: tuple[tuple[int, ...], ...]

    @classmethod
    def _from_sets(cls, n: int, adj: Sequence[Iterable[int]]) -> "SimpleGraph":
        # trusted constructor: adj must already be symmetric and loop-free
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.nbrs) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.nbrs[v]

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.nbrs)

    @cached_property
    def bits(self) -> tuple[int, ...]:
        """Row ``v`` as an integer bitmask of its neighbours."""
        rows = []
        for a in self.nbrs:
            r = 0
            for u in a:
                r |= 1 << u
            rows.append(r)
        return tuple(rows)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, a in enumerate(self.nbrs):
            for v in a:
                if u < v:
                    yield (u, v)

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=dtype)
        for u, a in enumerate(self.nbrs):
            if a:
                A[u, list(a)] = 1
        return A

    def sparse_adjacency(self) -> sp.csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum([len(a) for a in self.nbrs], out=indptr[1:])
        indices = np.fromiter(
            (v for a in self.nbrs for v in a), dtype=np.int64, count=int(indptr[-1])
        )
        data = np.ones(len(indices), dtype=np.float64)
        return sp.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


class PatternKind(enum.Enum):
    THREE_CLAW = "claw"
    DIAMOND = "diamond"
    TRIANGLE = "triangle"

    @property
    def template(self) -> SimpleGraph:
        if self is PatternKind.TRIANGLE:
            return standard_graph("complete", 3)
        return standard_graph(self.value)


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    """Build a graph on ``n`` vertices; repeated pairs collapse to one edge."""
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return SimpleGraph._from_sets(n, adj)


def _need(params, count, kind):
    if len(params) != count:
        raise InputError(f"{kind} takes {count} parameter(s), got {len(params)}")


def standard_graph(kind: str, *params: int) -> SimpleGraph:
    kind = kind.lower()
    if kind == "cycle":
        _need(params, 1, kind)
        (n,) = params
        if n < 3:
            raise InputError("a cycle needs at least 3 vertices")
        return make_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        _need(params, 1, kind)
        (n,) = params
        if n < 1:
            raise InputError("a path needs at least 1 vertex")
        return make_graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        _need(params, 1, kind)
        (n,) = params
        if n < 1:
            raise InputError("a complete graph needs at least 1 vertex")
        return make_graph(n, combinations(range(n), 2))
    if kind == "empty":
        _need(params, 1, kind)
        if params[0] < 0:
            raise InputError("negative vertex count")
        return make_graph(params[0], [])
    if kind == "complete_bipartite":
        _need(params, 2, kind)
        a, b = params
        if a < 1 or b < 1:
            raise InputError("both sides of K_{a,b} must be non-empty")
        return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "cocktail":
        _need(params, 1, kind)
        (m,) = params
        if m < 1:
            raise InputError("cocktail party graph needs m >= 1")
        return make_graph(2 * m, [(u, v) for u, v in combinations(range(2 * m), 2) if u // 2 != v // 2])
    if kind == "claw":
        _need(params, 0, kind)
        return make_graph(4, [(0, 1), (0, 2), (0, 3)])
    if kind == "diamond":
        _need(params, 0, kind)
        return make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    if kind == "paw":
        _need(params, 0, kind)
        return make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    if kind == "petersen":
        _need(params, 0, kind)
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return make_graph(10, outer + spokes + inner)
    raise InputError(f"unknown graph family {kind!r}")


def cartesian_product(G: SimpleGraph, H: SimpleGraph) -> SimpleGraph:
    """Cartesian product; vertex ``(u, v)`` is numbered ``u * H.n + v``."""
    if G.n == 0 or H.n == 0:
        raise InputError("cartesian product needs non-empty factors")
    h = H.n
    adj = []
    for u in range(G.n):
        for v in range(h):
            adj.append([u * h + w for w in H.nbrs[v]] + [x * h + v for x in G.nbrs[u]])
    return SimpleGraph._from_sets(G.n * h, adj)


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    adj = []
    off = 0
    for g in graphs:
        adj.extend([[off + u for u in a] for a in g.nbrs])
        off += g.n
    return SimpleGraph._from_sets(off, adj)


def induced_subgraph(G: SimpleGraph, S: Sequence[int]) -> SimpleGraph:
    """Subgraph induced on ``S``; vertex ``S[i]`` becomes ``i``."""
    index: dict[int, int] = {}
    for i, v in enumerate(S):
        if not 0 <= v < G.n:
            raise InputError(f"vertex {v} outside 0..{G.n - 1}")
        if v in index:
            raise InputError(f"vertex {v} listed twice")
        index[v] = i
    adj = [[index[u] for u in G.nbrs[v] if u in index] for v in S]
    return SimpleGraph._from_sets(len(S), adj)


def relabel(G: SimpleGraph, perm: Sequence[int]) -> SimpleGraph:
    """Graph in which old vertex ``v`` is renamed ``perm[v]``."""
    if sorted(perm) != list(range(G.n)):
        raise InputError("relabeling must be a permutation of the vertex set")
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for v, a in enumerate(G.nbrs):
        adj[perm[v]] = [perm[u] for u in a]
    return SimpleGraph._from_sets(G.n, adj)


def degrees(G: SimpleGraph) -> list[int]:
    return [len(a) for a in G.nbrs]


def min_degree(G: SimpleGraph) -> int:
    return min(degrees(G), default=0)


def is_regular(G: SimpleGraph) -> int | None:
    """Common degree, or ``None``.  The empty graph counts as 0-regular."""
    if G.n == 0:
        return 0
    ds = {len(a) for a in G.nbrs}
    return ds.pop() if len(ds) == 1 else None


def connected_components(G: SimpleGraph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in G.nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(G: SimpleGraph) -> bool:
    """True for the empty graph by convention."""
    return G.n == 0 or len(connected_components(G)) == 1


def is_triangle_free(G: SimpleGraph) -> bool:
    return find_induced(G, PatternKind.TRIANGLE) is None


def find_induced(G: SimpleGraph, kind: PatternKind) -> tuple[int, ...] | None:
    """First induced copy of ``kind`` in lexicographic order of its anchor.

    Claws are reported centre first, diamonds as ``(u, v, a, b)`` with
    ``u ~ v`` the degree-3 pair and ``a, b`` non-adjacent, triangles as a
    sorted triple.
    """
    S = G.neighbor_sets
    if kind is PatternKind.THREE_CLAW:
        for c in range(G.n):
            for a, b, d in combinations(G.nbrs[c], 3):
                if b not in S[a] and d not in S[a] and d not in S[b]:
                    return (c, a, b, d)
        return None
    if kind is PatternKind.DIAMOND:
        for u, v in G.edges():
            common = sorted(S[u] & S[v])
            for a, b in combinations(common, 2):
                if b not in S[a]:
                    return (u, v, a, b)
        return None
    if kind is PatternKind.TRIANGLE:
        for u, v in G.edges():
            for w in G.nbrs[v]:
                if w > v and w in S[u]:
                    return (u, v, w)
        return None
    raise InputError(f"unknown pattern {kind!r}")


def is_cocktail_party(G: SimpleGraph) -> int | None:
    """``m`` when ``G`` is ``K_{m x 2}``, else ``None``."""
    n = G.n
    if n == 0 or n % 2:
        return None
    missing = []
    for v, a in enumerate(G.nbrs):
        if len(a) != n - 2:
            return None
        non = set(range(n)) - set(a) - {v}
        missing.append(non.pop())
    # complement must be a perfect matching
    if all(missing[missing[v]] == v for v in range(n)):
        return n // 2
    return None
