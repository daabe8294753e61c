import math
import random

import networkx as nx
import numpy as np
import pytest

from helpers import random_graph, sympy_charpoly, to_nx
from hoffman_limits.errors import InputError, ValidityError
from hoffman_limits.graph import make_graph, standard_graph
from hoffman_limits.hoffman import (
    CATALOG_NAMES,
    CATALOG_POLYS,
    Label,
    SumSpec,
    b_matrix,
    b_matrix_sparse,
    catalog,
    certify_entry,
    clique_extension,
    hlambda_min,
    hoffman_from_fat,
    hoffman_from_json,
    hoffman_to_json,
    hsum,
    induced_hoffman,
    make_hoffman,
    slim_graph,
    verify_decomposition,
)
from hoffman_limits.linalg import lambda_min
from hoffman_limits.poly import min_root
from hoffman_limits.spectra import ALPHA0_POLY, ALPHA1_POLY, constant

S, F = Label.SLIM, Label.FAT


def test_make_hoffman_validity():
    H = make_hoffman(standard_graph("path", 3), [F, S, F])
    assert H.slim == (1,) and H.fats == (0, 2)
    with pytest.raises(ValidityError):
        make_hoffman(standard_graph("path", 2), [F, F])
    with pytest.raises(ValidityError):
        make_hoffman(make_graph(2, []), [S, F])
    C5 = make_hoffman(standard_graph("cycle", 5), [S] * 5)
    assert (b_matrix(C5) == standard_graph("cycle", 5).adjacency_matrix()).all()


def test_b_matrix_examples():
    assert b_matrix(catalog("H2")).tolist() == [[-2]]
    P3 = standard_graph("path", 3).adjacency_matrix()
    assert (b_matrix(catalog("H8")) == P3 - np.eye(3, dtype=int)).all()
    assert (b_matrix_sparse(catalog("HWN")).toarray() == b_matrix(catalog("HWN"))).all()


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_certificates(name):
    H = catalog(name)
    assert certify_entry(H, CATALOG_POLYS[name])
    assert abs(hlambda_min(H) - min_root(CATALOG_POLYS[name])) < 1e-9


def test_catalog_char_polys_against_sympy():
    from hoffman_limits.poly import IntPolynomial, poly_divides

    for name, poly in (("H8", ALPHA0_POLY), ("H9", ALPHA0_POLY), ("HWN", ALPHA1_POLY)):
        cp = IntPolynomial(sympy_charpoly(b_matrix(catalog(name)).tolist()))
        assert poly_divides(poly, cp)
    hwn = IntPolynomial(sympy_charpoly(b_matrix(catalog("HWN")).tolist()))
    assert hwn == IntPolynomial.parse("x+2") * ALPHA1_POLY


def test_catalog_slim_graphs():
    assert nx.is_isomorphic(to_nx(slim_graph(catalog("H8"))), nx.path_graph(3))
    paw = to_nx(standard_graph("paw"))
    assert nx.is_isomorphic(to_nx(slim_graph(catalog("HWN"))), paw)
    assert len(catalog("H9").slim) == 4 and len(catalog("H9").fats) == 3
    with pytest.raises(InputError):
        catalog("H5")


def test_sum_of_two_h2_sharing_a_fat():
    h2 = catalog("H2")
    H = hsum(SumSpec([h2, h2], [[(0, 1), (1, 1)]]))
    assert nx.is_isomorphic(to_nx(slim_graph(H)), nx.complete_graph(2))
    assert len(H.fats) == 3
    assert verify_decomposition(H, [[0], [1]])


def test_sum_without_sharing_is_disjoint_union():
    H = hsum(SumSpec([catalog("H8"), catalog("HWN")]))
    G = slim_graph(H)
    assert G.n == 7 and G.m == 2 + 4
    assert abs(hlambda_min(H) - constant("ALPHA1").value) < 1e-9


def test_double_sharing_is_rejected():
    h3 = catalog("H3")
    # the two slim vertices of each copy share fat 2; sharing fats 3 and 4 crosswise gives a double share
    with pytest.raises(ValidityError):
        hsum(SumSpec([h3, h3], [[(0, 3), (1, 3)], [(0, 4), (1, 4)], [(0, 2), (1, 2)]]))
    with pytest.raises(ValidityError):
        hsum(SumSpec([h3], [[(0, 3), (0, 4)]]))


def test_verify_decomposition_examples():
    K3 = make_hoffman(standard_graph("complete", 3), [S] * 3)
    assert not verify_decomposition(K3, [[0], [1], [2]])
    assert verify_decomposition(K3, [[0, 1, 2]])


def _random_sum(rng):
    names = [rng.choice(CATALOG_NAMES) for _ in range(rng.randint(2, 4))]
    summands = [catalog(n) for n in names]
    fats = [(i, f) for i, H in enumerate(summands) for f in H.fats]
    rng.shuffle(fats)
    classes, used = [], set()
    for _ in range(rng.randint(1, 4)):
        cls, owners = [], set()
        for x in fats:
            if x not in used and x[0] not in owners:
                cls.append(x)
                owners.add(x[0])
            if len(cls) == rng.randint(2, 3):
                break
        if len(cls) >= 2:
            classes.append(cls)
            used.update(cls)
    return names, summands, classes


def test_sum_theorem_on_random_sums():
    rng = random.Random(21)
    done = 0
    while done < 60:
        names, summands, classes = _random_sum(rng)
        try:
            H, slim_maps, _ = hsum(SumSpec(summands, classes), return_maps=True)
        except ValidityError:
            continue
        done += 1
        parts = [sorted(m.values()) for m in slim_maps]
        assert verify_decomposition(H, parts)
        expect = min(min_root(CATALOG_POLYS[n]) for n in names)
        assert abs(hlambda_min(H) - expect) < 1e-9
        # the slim graph sits above its Hoffman graph
        assert lambda_min(slim_graph(H).adjacency_matrix()) >= hlambda_min(H) - 1e-9


def _random_hoffman(rng):
    while True:
        n = rng.randint(3, 11)
        G = random_graph(rng, n, rng.uniform(0.3, 0.6))
        fat = [v for v in range(n) if rng.random() < 0.35]
        fat = [v for v in fat if not any(G.has_edge(v, u) for u in fat if u < v)]
        slim = [v for v in range(n) if v not in fat]
        if not slim or len(slim) > 8 or any(not any(G.has_edge(f, s) for s in slim) for f in fat):
            continue
        return hoffman_from_fat(G, fat)


def test_hoffman_interlacing_on_induced_subgraphs():
    rng = random.Random(33)
    for _ in range(200):
        H = _random_hoffman(rng)
        keep_slim = rng.sample(list(H.slim), rng.randint(1, len(H.slim)))
        fats = [f for f in H.fats if rng.random() < 0.7 and any(H.graph.has_edge(f, s) for s in keep_slim)]
        sub = induced_hoffman(H, keep_slim + fats)
        assert hlambda_min(sub) >= hlambda_min(H) - 1e-9


def _canonical_hoffman(H):
    G = to_nx(H.graph)
    nx.set_node_attributes(G, {v: v in H.fat for v in G}, "fat")
    return G


def test_sum_is_associative():
    h8, h9, hwn = catalog("H8"), catalog("H9"), catalog("HWN")
    # all three summands share one fat: x1-fat of each
    flat = hsum(SumSpec([h8, h9, hwn], [[(0, 3), (1, 4), (2, 4)]]))
    left, _, fmap = hsum(SumSpec([h8, h9], [[(0, 3), (1, 4)]]), return_maps=True)
    shared = fmap[0][3]
    grouped = hsum(SumSpec([left, hwn], [[(0, shared), (1, 4)]]))
    right, _, rmap = hsum(SumSpec([h9, hwn], [[(0, 4), (1, 4)]]), return_maps=True)
    grouped2 = hsum(SumSpec([h8, right], [[(0, 3), (1, rmap[0][4])]]))
    match = nx.algorithms.isomorphism.categorical_node_match("fat", False)
    assert nx.is_isomorphic(_canonical_hoffman(flat), _canonical_hoffman(grouped), node_match=match)
    assert nx.is_isomorphic(_canonical_hoffman(flat), _canonical_hoffman(grouped2), node_match=match)


def test_clique_extension_small_cases():
    assert nx.is_isomorphic(to_nx(clique_extension(catalog("H2"), 1)), nx.path_graph(3))
    E = clique_extension(catalog("H8"), 3)
    assert E.n == 3 + 3 * 3
    with pytest.raises(InputError):
        clique_extension(catalog("H2"), 0)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_clique_extension_decreases_towards_the_hoffman_value(name):
    H = catalog(name)
    limit = hlambda_min(H)
    lams = [lambda_min(clique_extension(H, n).adjacency_matrix()) for n in range(1, 42)]
    assert all(b <= a + 1e-9 for a, b in zip(lams, lams[1:]))
    assert all(lam >= limit - 1e-9 for lam in lams)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_clique_extension_gap_at_forty_is_below_two_hundredths(name):
    H = catalog(name)
    gap = lambda_min(clique_extension(H, 40).adjacency_matrix()) - hlambda_min(H)
    assert gap < 0.02, f"{name}: gap {gap:.4f} at n=40"


def test_json_round_trip():
    for name in CATALOG_NAMES:
        H = catalog(name)
        assert hoffman_from_json(hoffman_to_json(H)) == H
    with pytest.raises(ValidityError):
        hoffman_from_json({"n": 2, "edges": [[0, 1]], "fat": [0, 1]})


def test_h2_value_is_minus_two():
    assert math.isclose(hlambda_min(catalog("H2")), -2, abs_tol=1e-12)
