import random
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from helpers import random_graph, to_nx
from hoffman_limits.errors import InputError
from hoffman_limits.graph import (
    PatternKind,
    cartesian_product,
    connected_components,
    disjoint_union,
    find_induced,
    induced_subgraph,
    is_cocktail_party,
    is_connected,
    is_regular,
    is_triangle_free,
    make_graph,
    min_degree,
    relabel,
    standard_graph,
)


def test_make_graph_collapses_duplicates_and_sorts_neighbours():
    G = make_graph(3, [(0, 1), (1, 0), (2, 1)])
    assert G.m == 2
    assert G.nbrs == ((1,), (0, 2), (1,))


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_make_graph_rejects_bad_edges(edges):
    with pytest.raises(InputError):
        make_graph(3, edges)


def test_adjacency_matrix_is_symmetric_zero_one():
    G = standard_graph("petersen")
    A = G.adjacency_matrix()
    assert (A == A.T).all() and set(np.unique(A)) == {0, 1}
    assert (A.sum(axis=1) == 3).all()
    assert (G.sparse_adjacency().toarray() == A).all()


@pytest.mark.parametrize(
    "kind,params,n,m",
    [
        ("cycle", (5,), 5, 5),
        ("path", (4,), 4, 3),
        ("complete", (5,), 5, 10),
        ("empty", (3,), 3, 0),
        ("complete_bipartite", (2, 3), 5, 6),
        ("cocktail", (3,), 6, 12),
        ("claw", (), 4, 3),
        ("diamond", (), 4, 5),
        ("paw", (), 4, 4),
        ("petersen", (), 10, 15),
    ],
)
def test_standard_graph_sizes(kind, params, n, m):
    G = standard_graph(kind, *params)
    assert (G.n, G.m) == (n, m)


def test_standard_graph_unknown_kind():
    with pytest.raises(InputError):
        standard_graph("dodecahedron")


def test_empty_graph_conventions():
    E = make_graph(0, [])
    assert is_regular(E) == 0
    assert is_connected(E)
    assert connected_components(E) == []


def test_regularity_and_connectivity():
    assert is_regular(standard_graph("petersen")) == 3
    assert is_regular(standard_graph("path", 3)) is None
    two = disjoint_union(standard_graph("cycle", 3), standard_graph("cycle", 4))
    assert not is_connected(two)
    assert [len(c) for c in connected_components(two)] == [3, 4]
    assert min_degree(standard_graph("claw")) == 1


def test_induced_subgraph_matches_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 8)
        G = random_graph(rng, n, rng.random())
        S = rng.sample(range(n), rng.randint(0, n))
        H = induced_subgraph(G, S)
        for i, j in combinations(range(len(S)), 2):
            assert H.has_edge(i, j) == G.has_edge(S[i], S[j])


def test_induced_subgraph_rejects_repeats():
    with pytest.raises(InputError):
        induced_subgraph(standard_graph("cycle", 4), [0, 0])


def test_relabel_is_isomorphic():
    rng = random.Random(3)
    G = random_graph(rng, 8, 0.4)
    perm = list(range(8))
    rng.shuffle(perm)
    H = relabel(G, perm)
    assert all(H.has_edge(perm[u], perm[v]) for u, v in G.edges())
    assert H.m == G.m


def test_cartesian_product_matches_networkx():
    G = cartesian_product(standard_graph("cycle", 5), standard_graph("complete", 3))
    expect = nx.cartesian_product(nx.cycle_graph(5), nx.complete_graph(3))
    assert nx.is_isomorphic(to_nx(G), expect)


def test_find_induced_patterns():
    claw = find_induced(standard_graph("claw"), PatternKind.THREE_CLAW)
    assert claw is not None and claw[0] == 0
    assert find_induced(standard_graph("complete", 4), PatternKind.THREE_CLAW) is None
    assert find_induced(standard_graph("complete", 4), PatternKind.DIAMOND) is None
    assert find_induced(standard_graph("diamond"), PatternKind.DIAMOND) is not None
    assert find_induced(standard_graph("cycle", 4), PatternKind.TRIANGLE) is None
    assert find_induced(standard_graph("complete", 3), PatternKind.TRIANGLE) == (0, 1, 2)


def test_find_induced_witness_is_really_induced():
    rng = random.Random(11)
    for _ in range(150):
        G = random_graph(rng, rng.randint(4, 9), rng.uniform(0.2, 0.7))
        for kind in PatternKind:
            w = find_induced(G, kind)
            brute = any(
                nx.is_isomorphic(to_nx(induced_subgraph(G, S)), to_nx(kind.template))
                for S in combinations(range(G.n), kind.template.n)
            )
            assert (w is not None) == brute
            if w is not None:
                assert nx.is_isomorphic(to_nx(induced_subgraph(G, list(w))), to_nx(kind.template))


def test_triangle_free():
    assert is_triangle_free(standard_graph("petersen"))
    assert not is_triangle_free(standard_graph("paw"))


def test_cocktail_party_recognition():
    assert is_cocktail_party(standard_graph("cocktail", 4)) == 4
    assert is_cocktail_party(standard_graph("cycle", 4)) == 2
    assert is_cocktail_party(standard_graph("complete", 4)) is None
    assert is_cocktail_party(standard_graph("petersen")) is None
