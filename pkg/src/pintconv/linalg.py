"""Dense complex matrix kernel: norms, linear solves, eigendecompositions.

All analysis engines reduce to these few operations on modest dense
complex matrices (up to ~2000 square at desk scale). They are thin,
contract-checked wrappers over LAPACK via numpy/scipy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import NumericalFailure, SingularMatrixError

# Full SVD stays cheap and deterministic up to this size; beyond it the
# Gram power iteration takes over.
_SVD_SIZE_LIMIT = 2048
_POWER_TOL = 1e-10
_POWER_MAXIT = 5000

_PIVOT_RTOL = 1e-13
_EIG_RESIDUAL_TOL = 1e-8


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"expected a nonempty matrix, got shape {a.shape}")
    return a


def norm_one(m) -> float:
    """Maximum absolute column sum."""
    a = _as_matrix(m)
    return float(np.abs(a).sum(axis=0).max())


def norm_inf(m) -> float:
    """Maximum absolute row sum."""
    a = _as_matrix(m)
    return float(np.abs(a).sum(axis=1).max())


def norm_two(m) -> float:
    """Largest singular value.

    Uses a full singular value decomposition up to 2048x2048; larger
    matrices fall back to power iteration on the Gram operator with
    relative tolerance 1e-10 (NumericalFailure after 5000 iterations).
    """
    a = _as_matrix(m)
    if max(a.shape) <= _SVD_SIZE_LIMIT:
        return float(np.linalg.svd(a, compute_uv=False)[0])
    return _power_norm(a)


def _power_norm(a: np.ndarray) -> float:
    rng = np.random.default_rng(0x5EED)
    x = rng.standard_normal(a.shape[1]) + 1j * rng.standard_normal(a.shape[1])
    x /= np.linalg.norm(x)
    ah = a.conj().T
    sigma2 = 0.0
    for _ in range(_POWER_MAXIT):
        y = ah @ (a @ x)
        new_sigma2 = float(np.linalg.norm(y))
        if new_sigma2 == 0.0:
            return 0.0
        x = y / new_sigma2
        if abs(new_sigma2 - sigma2) <= _POWER_TOL * new_sigma2:
            return float(np.sqrt(new_sigma2))
        sigma2 = new_sigma2
    raise NumericalFailure(
        f"2-norm power iteration did not reach {_POWER_TOL} in {_POWER_MAXIT} iterations"
    )


def solve(m, b) -> np.ndarray:
    """Solve M X = B for square nonsingular M by LU with partial pivoting.

    Raises SingularMatrixError (carrying the offending pivot magnitude)
    when the smallest pivot falls below 1e-13 * norm_inf(M).
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"solve needs a square matrix, got shape {a.shape}")
    rhs = np.asarray(b, dtype=complex)
    with warnings.catch_warnings():
        # Exact-zero pivots are detected below and raised as
        # SingularMatrixError; the LAPACK warning is redundant noise.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivot_min = float(np.abs(np.diag(lu)).min())
    if pivot_min <= _PIVOT_RTOL * norm_inf(a):
        raise SingularMatrixError(
            f"matrix singular within tolerance (pivot {pivot_min:.3e})", pivot=pivot_min
        )
    return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


def inverse(m) -> np.ndarray:
    """Matrix inverse via :func:`solve` against the identity."""
    a = _as_matrix(m)
    return solve(a, np.eye(a.shape[0], dtype=complex))


@dataclass
class EigenDecomposition:
    """Eigenvalues/vectors of a square matrix plus a diagonalizability check.

    ``residual`` is ||V diag(values) V^-1 - M||_2 / ||M||_2 (infinite when V
    is numerically singular); ``diagonalizable`` is False once it exceeds
    1e-8, which flags defective and near-defective inputs.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual: float
    diagonalizable: bool


def eig(m) -> EigenDecomposition:
    """Eigendecomposition with unit-norm eigenvector columns."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"eig needs a square matrix, got shape {a.shape}")
    values, vectors = np.linalg.eig(a)
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    scale = norm_two(a)
    if scale == 0.0:
        return EigenDecomposition(values, vectors, 0.0, True)
    try:
        reconstructed = solve(vectors.conj().T, (vectors * values).conj().T).conj().T
    except SingularMatrixError:
        return EigenDecomposition(values, vectors, np.inf, False)
    residual = norm_two(reconstructed - a) / scale
    return EigenDecomposition(values, vectors, residual, residual <= _EIG_RESIDUAL_TOL)


def cond_two(m) -> float:
    """2-norm condition number sigma_max / sigma_min of a square matrix."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"cond_two needs a square matrix, got shape {a.shape}")
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= _PIVOT_RTOL * s[0] or s[-1] == 0.0:
        raise SingularMatrixError(
            f"condition number of a singular matrix (sigma_min {s[-1]:.3e})",
            pivot=float(s[-1]),
        )
    return float(s[0] / s[-1])


def matrix_power_series(m, k_max: int):
    """Yield M, M^2, ..., M^k_max by repeated multiplication.

    Iteration matrices here are non-normal, so powers are formed
    directly rather than through an eigendecomposition.
    """
    a = _as_matrix(m)
    power = a
    yield power
    for _ in range(k_max - 1):
        power = power @ a
        yield power
