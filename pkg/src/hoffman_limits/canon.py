"""Exact canonical labeling by individualization-refinement.

Colour classes start from degrees and are refined until equitable; if the
partition is not discrete a vertex of the first non-singleton cell is
individualized and the search recurses.  The canonical form is the
largest adjacency certificate over all leaves.  Automorphisms found when
two leaves produce the same certificate prune sibling branches that lie
in one orbit of the stabilizer of the current prefix, which keeps
highly symmetric inputs such as ``K_n`` polynomial.
"""

from __future__ import annotations

from .errors import CapacityError
from .graph import SimpleGraph, relabel
from .graph_io import graph6_encode

DEFAULT_LIMIT = 24

__all__ = ["canonical_labeling", "canonical_form", "canonical_graph", "is_isomorphic", "DEFAULT_LIMIT"]


def _refine(nbrs, colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colours stay canonically ordered."""
    n = len(colors)
    num = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == num:
            return new
        colors, num = new, len(ranking)


def _individualize(colors: list[int], v: int) -> list[int]:
    # v moves ahead of the rest of its cell
    c = colors[v]
    return [2 * x + (0 if (x == c and u == v) else 1 if x == c else 0) for u, x in enumerate(colors)]


def _certificate(G: SimpleGraph, colors: list[int]) -> int:
    # graph6 bit order of the relabelled upper triangle, read as an integer
    cert = 0
    n = G.n
    for u in range(n):
        cu = colors[u]
        for w in G.nbrs[u]:
            cw = colors[w]
            if cu < cw:
                pos = cw * (cw - 1) // 2 + cu
                cert |= 1 << (n * (n - 1) // 2 - 1 - pos)
    return cert


def canonical_labeling(G: SimpleGraph, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Permutation ``perm`` with ``relabel(G, perm)`` canonical."""
    if G.n > limit:
        raise CapacityError(f"canonical labeling is limited to {limit} vertices, got {G.n}")
    n = G.n
    if n <= 1:
        return list(range(n))
    nbrs = G.nbrs
    start = _refine(nbrs, [len(a) for a in nbrs])

    best_cert = -1
    best_colors: list[int] | None = None
    first_colors: list[int] | None = None
    first_cert = -1
    generators: list[list[int]] = []

    def record_automorphism(c1: list[int], c2: list[int]):
        # c1[v] == c2[g(v)]
        inv = [0] * n
        for v, c in enumerate(c2):
            inv[c] = v
        g = [inv[c1[v]] for v in range(n)]
        if any(g[v] != v for v in range(n)):
            generators.append(g)

    def search(colors: list[int], prefix: list[int]):
        nonlocal best_cert, best_colors, first_colors, first_cert
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            cert = _certificate(G, colors)
            if first_colors is None:
                first_colors, first_cert = colors, cert
            elif cert == first_cert:
                record_automorphism(first_colors, colors)
            if cert > best_cert:
                best_cert, best_colors = cert, colors
            elif cert == best_cert and colors is not best_colors:
                record_automorphism(best_colors, colors)
            return
        target = next(cell for c, cell in sorted(cells.items()) if len(cell) > 1)
        done: list[int] = []
        for v in target:
            # skip v if an automorphism fixing the prefix maps an explored child onto it
            if _same_orbit(v, done, prefix, generators):
                continue
            search(_refine(nbrs, _individualize(colors, v)), prefix + [v])
            done.append(v)

    search(start, [])
    assert best_colors is not None
    return best_colors


def _same_orbit(v: int, done: list[int], prefix: list[int], generators) -> bool:
    if not done:
        return False
    gens = [g for g in generators if all(g[p] == p for p in prefix)]
    if not gens:
        return False
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                if y in done:
                    return True
                seen.add(y)
                stack.append(y)
    return False


def canonical_graph(G: SimpleGraph, limit: int = DEFAULT_LIMIT) -> SimpleGraph:
    return relabel(G, canonical_labeling(G, limit))


def canonical_form(G: SimpleGraph, limit: int = DEFAULT_LIMIT) -> str:
    """graph6 text of the canonically relabelled graph.

    Equal strings exactly characterise isomorphic graphs.
    """
    return graph6_encode(canonical_graph(G, limit))


def is_isomorphic(G: SimpleGraph, H: SimpleGraph, limit: int = DEFAULT_LIMIT) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(len(a) for a in G.nbrs) != sorted(len(a) for a in H.nbrs):
        return False
    return canonical_form(G, limit) == canonical_form(H, limit)
