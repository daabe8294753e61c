"""Eigenvalues of real symmetric matrices.

Dense path: Householder reduction to tridiagonal form, then bisection on
Sturm sign counts.  The count ``#{eigenvalues < x}`` is available on its
own (:func:`count_below`), which is what the search uses to prune.

Matrices larger than ``DENSE_LIMIT`` are handed to ARPACK's Lanczos
(``scipy.sparse.linalg.eigsh``); only the largest constructions need it.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import InputError

DEFAULT_TOL = 1e-9
DENSE_LIMIT = 2500

__all__ = [
    "DEFAULT_TOL",
    "DENSE_LIMIT",
    "tridiagonalize",
    "sturm_count",
    "count_below",
    "lambda_min",
    "spectrum",
]


def _as_symmetric(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise InputError("matrix is not symmetric")
    return A


def tridiagonalize(M) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonally similar tridiagonal form ``(diagonal, off_diagonal)``."""
    A = _as_symmetric(M).copy()
    n = A.shape[0]
    for k in range(n - 2):
        x = A[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x.copy()
        v[0] -= alpha
        vnorm2 = v @ v
        if vnorm2 == 0.0:
            continue
        # A <- H A H with H = I - 2 v v^T / (v^T v), applied to the trailing block
        S = A[k + 1 :, k + 1 :]
        p = S @ v * (2.0 / vnorm2)
        K = (v @ p) / vnorm2
        q = p - K * v
        S -= np.outer(v, q) + np.outer(q, v)
        A[k + 1 :, k] = 0.0
        A[k, k + 1 :] = 0.0
        A[k + 1, k] = A[k, k + 1] = alpha
    d = np.diag(A).copy()
    e = np.diag(A, 1).copy()
    return d, e


def sturm_count(d, e, x: float) -> int:
    """Number of eigenvalues of the tridiagonal matrix strictly below ``x``."""
    count = 0
    q = 1.0
    tiny = 1e-300
    for i in range(len(d)):
        b2 = e[i - 1] * e[i - 1] if i else 0.0
        q = d[i] - x - (b2 / q if i else 0.0)
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def _sturm_counts(d: np.ndarray, e2: np.ndarray, xs: np.ndarray) -> np.ndarray:
    # vectorised over shifts
    counts = np.zeros(xs.shape, dtype=np.int64)
    q = d[0] - xs
    q[q == 0.0] = -1e-300
    counts += q < 0
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        q[q == 0.0] = -1e-300
        counts += q < 0
    return counts


def _gershgorin(d, e) -> tuple[float, float]:
    r = np.abs(np.concatenate([[0.0], e])) + np.abs(np.concatenate([e, [0.0]]))
    return float(np.min(d - r)) - 1.0, float(np.max(d + r)) + 1.0


def count_below(M, x: float) -> int:
    d, e = tridiagonalize(M)
    return sturm_count(d.tolist(), e.tolist(), x)


def _bisect_min(d, e, tol: float) -> float:
    lo, hi = _gershgorin(d, e)
    dl, el = d.tolist(), e.tolist()
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sturm_count(dl, el, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def lambda_min(M, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue within absolute error ``tol``.

    ``M`` may be a dense array or a scipy sparse matrix.
    """
    if tol <= 0:
        raise InputError("tolerance must be positive")
    if sp.issparse(M):
        if M.shape[0] > DENSE_LIMIT:
            return _lanczos_min(M, tol)
        M = M.toarray()
    A = _as_symmetric(M)
    n = A.shape[0]
    if n == 0:
        raise InputError("empty matrix has no eigenvalues")
    if n > DENSE_LIMIT:
        return _lanczos_min(sp.csr_matrix(A), tol)
    d, e = tridiagonalize(A)
    return _bisect_min(d, e, min(tol, 1e-12))


def _lanczos_min(M, tol: float) -> float:
    if (abs(M - M.T) > 0).nnz:
        raise InputError("matrix is not symmetric")
    vals = spla.eigsh(M.astype(np.float64), k=1, which="SA", tol=min(tol, 1e-12) * 1e-2,
                      return_eigenvectors=False)
    return float(vals[0])


def spectrum(M, tol: float = DEFAULT_TOL) -> list[float]:
    """All eigenvalues in ascending order, with multiplicity."""
    if tol <= 0:
        raise InputError("tolerance must be positive")
    if sp.issparse(M):
        M = M.toarray()
    A = _as_symmetric(M)
    n = A.shape[0]
    if n == 0:
        return []
    d, e = tridiagonalize(A)
    e2 = e * e
    lo_b, hi_b = _gershgorin(d, e)
    # the i-th eigenvalue is the smallest x with count(x) > i
    lo = np.full(n, lo_b)
    hi = np.full(n, hi_b)
    idx = np.arange(n)
    steps = int(math.ceil(math.log2((hi_b - lo_b) / min(tol, 1e-12)))) + 1
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        above = _sturm_counts(d, e2, mid) > idx
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return (0.5 * (lo + hi)).tolist()
