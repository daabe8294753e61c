import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_graph, sympy_charpoly, sympy_min_root
from hoffman_limits.errors import DomainError, InputError
from hoffman_limits.graph import standard_graph
from hoffman_limits.poly import (
    IntPolynomial,
    char_poly,
    count_roots,
    count_roots_below,
    isolate_min_root,
    min_root,
    poly_divides,
)


def P(text):
    return IntPolynomial.parse(text)


def test_parse_and_print_round_trip():
    for text in ["x^6-3x^5-7x^4+21x^3+13x^2-35x-4", "x^3+2x^2-2x-2", "x^2+2x-1", "-x", "7", "x"]:
        assert str(P(text)) == text
    assert P("x**2 + 2*x - 1") == P("x^2+2x-1")
    assert str(IntPolynomial(())) == "0"


@pytest.mark.parametrize("bad", ["", "x^", "2y", "x^2++1"])
def test_parse_errors(bad):
    with pytest.raises(InputError):
        P(bad)


def test_arithmetic():
    a, b = P("x+1"), P("x-1")
    assert a * b == P("x^2-1")
    assert a + b == P("2x")
    assert a - a == IntPolynomial(())
    assert P("x^3+x").derivative() == P("3x^2+1")
    assert P("x^2").shift(1) == P("x^2+2x+1")
    assert P("x^2+2x-1")(3) == 14


def test_char_poly_small_graphs():
    assert char_poly(standard_graph("complete", 2).adjacency_matrix().tolist()) == P("x^2-1")
    assert char_poly(standard_graph("complete", 3).adjacency_matrix().tolist()) == P("x^3-3x-2")
    paw = char_poly(standard_graph("paw").adjacency_matrix().tolist())
    assert paw == P("x+1") * P("x^3-x^2-3x+1")
    assert paw.coeffs == tuple(sympy_charpoly(standard_graph("paw").adjacency_matrix().tolist()))


def test_char_poly_matches_sympy_on_random_symmetric_matrices():
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(1, 8)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = rng.randint(-3, 3)
        assert char_poly(M).coeffs == tuple(sympy_charpoly(M))


def test_char_poly_of_graphs_matches_sympy():
    rng = random.Random(13)
    for _ in range(20):
        A = random_graph(rng, rng.randint(2, 10), 0.4).adjacency_matrix().tolist()
        assert char_poly(A).coeffs == tuple(sympy_charpoly(A))


def test_char_poly_rejects_non_integer_or_non_square():
    with pytest.raises(InputError):
        char_poly([[0.5]])
    with pytest.raises(InputError):
        char_poly([[0, 1]])


def test_poly_divides():
    assert poly_divides(P("x+1"), P("x^2-1"))
    assert poly_divides(P("x^2+2x-1"), P("x^3+3x^2+x-1"))
    assert not poly_divides(P("x^3+2x^2-2x-2"), P("x^3+2x^2-2x-1"))
    with pytest.raises(InputError):
        poly_divides(IntPolynomial(()), P("x"))


def test_min_root_examples():
    assert abs(min_root(P("x^2+2x-1")) - (-1 - 2 ** 0.5)) < 1e-12
    assert abs(min_root(P("x^3+2x^2-2x-2")) - sympy_min_root([1, 2, -2, -2])) < 1e-12
    beta = min_root(P("x^6-3x^5-7x^4+21x^3+13x^2-35x-4"))
    assert abs(beta - sympy_min_root([1, -3, -7, 21, 13, -35, -4])) < 1e-12
    assert round(beta, 4) == -2.0391
    assert min_root(P("x+2")) == -2.0


def test_min_root_domain_error():
    with pytest.raises(DomainError):
        min_root(P("x^2+1"))
    with pytest.raises(DomainError):
        min_root(P("5"))


def test_isolating_interval_contains_the_root():
    p = P("x^3+2x^2-2x-2")
    lo, hi = isolate_min_root(p, Fraction(1, 10**20))
    assert hi - lo <= Fraction(1, 10**20)
    assert p(lo) * p(hi) <= 0
    assert count_roots(p, lo, hi) == 1


def test_root_counting():
    p = P("x^3-x")  # roots -1, 0, 1
    assert count_roots(p, -2, 2) == 3
    assert count_roots(p, -1, 1) == 2  # half-open (a, b]
    assert count_roots_below(p, 0) == 1
    assert count_roots_below(p, Fraction(1, 2)) == 2
    # repeated roots are counted once
    assert count_roots_below(P("x^2+2x+1"), 0) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_min_root_of_products_of_linear_factors(roots):
    p = IntPolynomial((1,))
    for r in roots:
        p = p * IntPolynomial((-r, 1))
    assert abs(min_root(p) - min(roots)) < 1e-12
