"""Small dense linear-algebra kernels.

Pivoted Cholesky drives greedy snapshot selection, the SPD solver handles
the normal equations of the surrogate least-squares fit, and the banded
solver handles spline collocation systems.  Matrices here are tiny
(n = O(10..100)) or narrowly banded, so the implementations favour clear
contracts over peak throughput.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BandedStructureError,
    NegativeDiagonalError,
    NonSymmetricError,
    SingularSystemError,
)

__all__ = [
    "PivotedCholeskyResult",
    "BandedMatrix",
    "check_symmetric",
    "pivoted_cholesky",
    "solve_spd",
    "solve_banded",
]

# Relative tolerances fixed once for the whole package.
SYMMETRY_RTOL = 1e-12
PSD_DIAG_RTOL = 1e-12
NEGATIVE_DIAG_RTOL = 1e-8
SPD_PIVOT_RTOL = 1e-14


@dataclass(frozen=True)
class PivotedCholeskyResult:
    """Outcome of a (possibly early-stopped) pivoted Cholesky factorization.

    Attributes
    ----------
    pivots : ndarray of int, shape (m,)
        Selected row/column indices in selection order.
    factor : ndarray, shape (n, m)
        Partial Cholesky factor with rows in the *original* index order;
        ``factor[pivots][:m]`` is lower triangular and reproduces the
        permuted matrix on the retained pivots, and ``factor @ factor.T``
        is the rank-m approximation of the input.
    residual_diag : ndarray, shape (m,)
        Value of the residual diagonal at each selected pivot, i.e. the
        squared greedy residual norm at every step.  Non-increasing.
    """

    pivots: np.ndarray
    factor: np.ndarray
    residual_diag: np.ndarray


def check_symmetric(G, rtol=SYMMETRY_RTOL):
    """Raise NonSymmetricError unless G is square and symmetric to rtol."""
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise NonSymmetricError(f"expected a square matrix, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise NonSymmetricError("matrix contains non-finite entries")
    scale = np.max(np.abs(G)) if G.size else 0.0
    if np.max(np.abs(G - G.T), initial=0.0) > rtol * max(scale, 1e-300):
        raise NonSymmetricError("matrix is not symmetric within tolerance")
    return G


def pivoted_cholesky(G, n_max=None, tol=0.0):
    """Greedy pivoted Cholesky of a symmetric PSD matrix.

    Pivots on the largest remaining diagonal entry (ties broken by lowest
    index) and stops after ``n_max`` pivots or once the largest residual
    diagonal drops to ``tol`` times the initial maximum diagonal.

    Parameters
    ----------
    G : (n, n) array_like
        Symmetric positive semidefinite matrix.
    n_max : int, optional
        Maximum number of pivots; defaults to n.
    tol : float
        Relative stopping tolerance on the residual diagonal.

    Returns
    -------
    PivotedCholeskyResult

    Raises
    ------
    NonSymmetricError
        If the symmetry check fails.
    NegativeDiagonalError
        If a residual diagonal goes below ``-1e-8`` times the initial
        maximum diagonal, signalling indefiniteness.
    """
    G = check_symmetric(G)
    n = G.shape[0]
    if n_max is None:
        n_max = n
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if tol < 0:
        raise ValueError("tol must be nonnegative")

    d = np.diagonal(G).astype(float).copy()
    d0_max = np.max(d, initial=0.0)
    if np.min(d, initial=0.0) < -PSD_DIAG_RTOL * max(d0_max, 1e-300):
        raise NegativeDiagonalError("input diagonal has significant negative entries")

    L = np.zeros((n, min(n_max, n)))
    pivots = []
    residual_diag = []
    remaining = np.ones(n, dtype=bool)

    for m in range(min(n_max, n)):
        d_rem = np.where(remaining, d, -np.inf)
        if np.min(d[remaining]) < -NEGATIVE_DIAG_RTOL * max(d0_max, 1e-300):
            raise NegativeDiagonalError(
                "residual diagonal became negative: matrix is not PSD"
            )
        j = int(np.argmax(d_rem))  # argmax returns the lowest index on ties
        piv_val = d[j]
        if piv_val <= tol * d0_max:
            break
        pivots.append(j)
        residual_diag.append(piv_val)
        remaining[j] = False

        ell = (G[:, j] - L @ L[j, :]) / np.sqrt(piv_val)
        ell[~remaining & (np.arange(n) != j)] = 0.0  # rows already eliminated
        ell[j] = np.sqrt(piv_val)
        L[:, m] = ell
        d = d - ell**2
        d[j] = 0.0

    m = len(pivots)
    return PivotedCholeskyResult(
        pivots=np.array(pivots, dtype=int),
        factor=L[:, :m],
        residual_diag=np.array(residual_diag),
    )


def solve_spd(G, f):
    """Solve ``G x = f`` for symmetric positive definite G via Cholesky.

    Raises SingularSystemError when a Cholesky pivot falls at or below
    ``1e-14`` times the maximum diagonal entry, which signals that the
    smallest singular value is numerically zero.
    """
    G = check_symmetric(G)
    f = np.asarray(f, dtype=float)
    n = G.shape[0]
    if f.shape[0] != n:
        raise ValueError(f"shape mismatch: G is {G.shape}, f has leading dim {f.shape[0]}")
    if n == 0:
        return np.zeros_like(f)

    max_diag = float(np.max(np.diagonal(G)))
    L = np.zeros((n, n))
    for j in range(n):
        pivot = G[j, j] - L[j, :j] @ L[j, :j]
        if pivot <= SPD_PIVOT_RTOL * max(max_diag, 0.0):
            raise SingularSystemError(
                f"Cholesky pivot {pivot:.3e} at column {j} (matrix singular or indefinite)"
            )
        L[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            L[j + 1 :, j] = (G[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]

    y = scipy.linalg.solve_triangular(L, f, lower=True)
    return scipy.linalg.solve_triangular(L.T, y, lower=False)


class BandedMatrix:
    """Square banded matrix stored in LAPACK band layout.

    ``bands[ku + i - j, j]`` holds entry ``(i, j)`` for
    ``-kl <= i - j <= ku``; everything outside the band is structurally
    zero.  Construction from a dense matrix rejects inputs whose nonzeros
    violate the declared bandwidth.
    """

    def __init__(self, bands, kl, ku):
        bands = np.asarray(bands, dtype=float)
        if bands.ndim != 2 or bands.shape[0] != kl + ku + 1:
            raise BandedStructureError(
                f"band storage must have kl+ku+1 = {kl + ku + 1} rows, got {bands.shape}"
            )
        self.bands = bands
        self.kl = int(kl)
        self.ku = int(ku)
        self.n = bands.shape[1]

    @classmethod
    def from_dense(cls, A, bandwidth):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise BandedStructureError(f"expected a square matrix, got shape {A.shape}")
        n = A.shape[0]
        i, j = np.nonzero(A)
        if i.size and np.max(np.abs(i - j)) > bandwidth:
            raise BandedStructureError(
                f"entries outside declared bandwidth {bandwidth}"
            )
        bands = np.zeros((2 * bandwidth + 1, n))
        for off in range(-bandwidth, bandwidth + 1):
            diag = np.diagonal(A, offset=off)
            cols = np.arange(max(off, 0), max(off, 0) + diag.size)
            bands[bandwidth - off, cols] = diag
        return cls(bands, bandwidth, bandwidth)

    def to_dense(self):
        A = np.zeros((self.n, self.n))
        for off in range(-self.kl, self.ku + 1):
            cols = np.arange(max(off, 0), min(self.n, self.n + off))
            A[cols - off, cols] = self.bands[self.ku - off, cols]
        return A


def solve_banded(A: BandedMatrix, f):
    """Solve ``A x = f`` by banded LU with partial pivoting within the band."""
    f = np.asarray(f, dtype=float)
    if f.shape[0] != A.n:
        raise ValueError(f"shape mismatch: matrix is {A.n}x{A.n}, rhs has leading dim {f.shape[0]}")
    try:
        return scipy.linalg.solve_banded((A.kl, A.ku), A.bands, f)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
