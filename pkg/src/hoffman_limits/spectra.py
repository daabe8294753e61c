"""Spectral reports and the three algebraic constants used throughout.

``ALPHA0 = -1-sqrt(2)``, ``ALPHA1`` the smallest root of ``x^3+2x^2-2x-2``
and ``BETA`` the smallest root of ``x^6-3x^5-7x^4+21x^3+13x^2-35x-4``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import InputError
from .graph import SimpleGraph
from .linalg import DEFAULT_TOL, lambda_min, spectrum
from .poly import IntPolynomial, char_poly, min_root

__all__ = [
    "ConstantName",
    "AlgebraicConstant",
    "SpectralReport",
    "constant",
    "ALPHA0_POLY",
    "ALPHA1_POLY",
    "BETA_POLY",
    "graph_lambda_min",
    "spectral_report",
]

ALPHA0_POLY = IntPolynomial.parse("x^2+2x-1")
ALPHA1_POLY = IntPolynomial.parse("x^3+2x^2-2x-2")
BETA_POLY = IntPolynomial.parse("x^6-3x^5-7x^4+21x^3+13x^2-35x-4")


class ConstantName(enum.Enum):
    ALPHA0 = "ALPHA0"
    ALPHA1 = "ALPHA1"
    BETA = "BETA"


_POLYS = {
    ConstantName.ALPHA0: ALPHA0_POLY,
    ConstantName.ALPHA1: ALPHA1_POLY,
    ConstantName.BETA: BETA_POLY,
}


@dataclass(frozen=True)
class AlgebraicConstant:
    name: ConstantName
    minimal_poly: IntPolynomial
    value: float


@lru_cache(maxsize=None)
def constant(name: str | ConstantName, precision: float = 1e-12) -> AlgebraicConstant:
    try:
        key = ConstantName(name.upper() if isinstance(name, str) else name)
    except ValueError:
        raise InputError(f"unknown constant {name!r}; expected ALPHA0, ALPHA1 or BETA") from None
    poly = _POLYS[key]
    return AlgebraicConstant(key, poly, min_root(poly, precision))


@dataclass(frozen=True)
class SpectralReport:
    lambda_min: float
    tolerance: float
    spectrum: tuple[float, ...] | None = None
    char_poly: IntPolynomial | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda_min": self.lambda_min,
            "tolerance": self.tolerance,
            "char_poly": list(self.char_poly.coeffs) if self.char_poly is not None else None,
            "spectrum": list(self.spectrum) if self.spectrum is not None else None,
        }


def graph_lambda_min(G: SimpleGraph, tol: float = DEFAULT_TOL) -> float:
    if G.n > 2500:
        return lambda_min(G.sparse_adjacency(), tol)
    return lambda_min(G.adjacency_matrix(), tol)


def spectral_report(M, *, tol: float = DEFAULT_TOL, full: bool = False, exact: bool = False) -> SpectralReport:
    """Report for a graph or a symmetric integer matrix."""
    if isinstance(M, SimpleGraph):
        lam = graph_lambda_min(M, tol)
        A = M.adjacency_matrix() if (full or exact) else None
    else:
        A = np.asarray(M)
        lam = lambda_min(A, tol)
    spec = tuple(spectrum(A, tol)) if full else None
    cp = char_poly(A.tolist()) if exact else None
    return SpectralReport(lam, tol, spec, cp)
