"""Line-graph recognition.

A graph is a line graph iff its edges split into cliques such that no two
cliques share more than one vertex and no vertex lies in more than two
cliques (Krausz).  :func:`krausz_partition` searches for such a split by
backtracking; on cubic graphs :func:`cubic_line_check` gives the same
answer from local neighbourhoods alone.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CapacityError, PreconditionError
from .graph import PatternKind, SimpleGraph, find_induced, is_regular

DEFAULT_LIMIT = 64

__all__ = ["krausz_partition", "is_line_graph", "cubic_line_check", "DEFAULT_LIMIT"]


def krausz_partition(G: SimpleGraph, limit: int = DEFAULT_LIMIT) -> list[tuple[int, ...]] | None:
    """A Krausz clique partition of ``E(G)``, or ``None`` if none exists."""
    if G.n > limit:
        raise CapacityError(f"line-graph recognition is limited to {limit} vertices, got {G.n}")
    if find_induced(G, PatternKind.THREE_CLAW) is not None:
        return None

    unc = [set(a) for a in G.nbrs]
    count = [0] * G.n
    deg = [len(a) for a in G.nbrs]
    order = sorted(G.edges(), key=lambda e: (-max(deg[e[0]], deg[e[1]]), -min(deg[e[0]], deg[e[1]]), e))
    cliques: list[tuple[int, ...]] = []

    def is_free_clique(K) -> bool:
        return all(b in unc[a] for a, b in combinations(K, 2))

    def candidates(u: int, v: int):
        if count[u] == 2 or count[v] == 2:
            return
        for x in (u, v):
            if count[x] == 1:
                K = unc[x] | {x}
                if all(count[w] < 2 for w in K) and is_free_clique(K):
                    yield tuple(sorted(K))
                return
        common = sorted(w for w in unc[u] & unc[v] if count[w] < 2)

        def grow(i: int, chosen: list[int]):
            K = {u, v, *chosen}
            # the rest of u's and v's edges must fit in one more clique each
            if is_free_clique(unc[u] - K) and is_free_clique(unc[v] - K):
                yield tuple(sorted(K))
            for j in range(i, len(common)):
                w = common[j]
                if all(w in unc[c] for c in chosen):
                    yield from grow(j + 1, chosen + [w])

        yield from grow(0, [])

    def apply(K, sign: int):
        for a, b in combinations(K, 2):
            if sign > 0:
                unc[a].discard(b)
                unc[b].discard(a)
            else:
                unc[a].add(b)
                unc[b].add(a)
        for w in K:
            count[w] += sign

    def solve() -> bool:
        edge = next(((u, v) for u, v in order if v in unc[u]), None)
        if edge is None:
            return True
        for K in list(candidates(*edge)):
            apply(K, +1)
            if all(count[w] < 2 or not unc[w] for w in K):
                cliques.append(K)
                if solve():
                    return True
                cliques.pop()
            apply(K, -1)
        return False

    return sorted(cliques) if solve() else None


def is_line_graph(G: SimpleGraph, limit: int = DEFAULT_LIMIT) -> bool:
    return krausz_partition(G, limit) is not None


def cubic_line_check(G: SimpleGraph) -> bool:
    """Neighbourhood test for 3-regular graphs.

    True iff every open neighbourhood induces a single edge plus an
    isolated vertex, except inside ``K4`` components where it is a
    triangle.
    """
    if is_regular(G) != 3:
        raise PreconditionError("cubic_line_check needs a 3-regular graph")
    S = G.neighbor_sets
    for x in range(G.n):
        a, b, c = G.nbrs[x]
        inner = (b in S[a]) + (c in S[a]) + (c in S[b])
        if inner not in (1, 3):
            return False
    return True
