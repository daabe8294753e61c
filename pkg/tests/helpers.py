"""Independent oracles shared by the test modules (networkx and sympy only)."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

import networkx as nx
import sympy

from hoffman_limits.graph import SimpleGraph, make_graph


def to_nx(G: SimpleGraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def from_nx(H: nx.Graph) -> SimpleGraph:
    idx = {v: i for i, v in enumerate(H.nodes())}
    return make_graph(len(idx), [(idx[u], idx[v]) for u, v in H.edges()])


def random_graph(rng: random.Random, n: int, p: float) -> SimpleGraph:
    return make_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float) -> SimpleGraph:
    while True:
        G = random_graph(rng, n, p)
        if nx.is_connected(to_nx(G)):
            return G


def sympy_charpoly(M) -> list[int]:
    """Coefficients of det(xI - M), constant term first."""
    x = sympy.symbols("x")
    p = sympy.Matrix(M).charpoly(x)
    return [int(c) for c in reversed(p.all_coeffs())]


def sympy_min_root(coeffs_high_first: list[int]) -> float:
    x = sympy.symbols("x")
    p = sympy.Poly(coeffs_high_first, x)
    return float(min(sympy.real_roots(p)).evalf(30))


@lru_cache(maxsize=None)
def brute_force_cubic(max_n: int) -> dict[int, list[nx.Graph]]:
    """Connected cubic graphs up to isomorphism, grown vertex by vertex.

    Every connected graph has a vertex whose removal keeps it connected, so
    growing connected subcubic graphs one vertex at a time reaches them all.
    Duplicates are removed with networkx isomorphism tests inside
    Weisfeiler-Lehman hash buckets.
    """
    level = [nx.empty_graph(1)]
    out: dict[int, list[nx.Graph]] = {}
    for n in range(1, max_n):
        remaining = max_n - n - 1
        buckets: dict[str, list[nx.Graph]] = {}
        for G in level:
            free = [v for v in G if G.degree(v) < 3]
            for s in (1, 2, 3):
                for S in combinations(free, s):
                    H = G.copy()
                    H.add_edges_from((n, u) for u in S)
                    if sum(3 - d for _, d in H.degree()) > 3 * remaining:
                        continue
                    key = nx.weisfeiler_lehman_graph_hash(H, iterations=3)
                    bucket = buckets.setdefault(key, [])
                    if not any(nx.is_isomorphic(H, K) for K in bucket):
                        bucket.append(H)
        level = [H for bucket in buckets.values() for H in bucket]
        cubic = [H for H in level if all(d == 3 for _, d in H.degree())]
        if cubic:
            out[n + 1] = cubic
    return out
