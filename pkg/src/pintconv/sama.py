"""Semi-algebraic mode analysis over the finite time grid.

A Fourier ansatz in space block-diagonalizes the space-time iteration
matrix into one block per spatial frequency; each block couples all
nt+1 (or nt/m+1 for the coarse-grid scope) time points exactly, so the
finiteness of the interval and the exactness property are captured.
Worst-case error reduction per iteration is the max over sampled
frequencies of a norm of the block's k-th power: either the exact
2-norm or the computable bound sqrt(norm_1 * norm_inf).

Two-level blocks are block-Toeplitz along the time diagonals, which a
fast path exploits: powers become block convolutions and the bound
norms come from cumulative block column/row sums, avoiding any dense
power. The dense path remains the reference and covers three-level
cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigError,
    Hierarchy,
    MethodSpec,
    NumericalFailure,
    PredictionSeries,
    SpatialSymbols,
    theta_grid,
)
from . import linalg

NORM_KINDS = ("exact2", "bound")
SCOPES = ("full", "cpoints")

# Exact 2-norms of full-scope blocks beyond this size are gated behind
# an explicit override; the bound variant stays cheap at any size.
_EXACT2_GATE = 2048


@dataclass(frozen=True)
class SamaVariant:
    """Block scope (full time grid vs C-points) and norm kind."""

    scope: str = "full"
    norm: str = "exact2"

    def __post_init__(self):
        if self.scope not in SCOPES:
            raise ConfigError(f"scope: must be one of {SCOPES}, got {self.scope!r}")
        if self.norm not in NORM_KINDS:
            raise ConfigError(f"norm: must be one of {NORM_KINDS}, got {self.norm!r}")


def _as_block(x) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    return a


def _lower_bidiagonal(x: np.ndarray, intervals: int) -> np.ndarray:
    """(intervals+1) block rows: identity diagonal, -x on the subdiagonal."""
    q = x.shape[0]
    n = intervals + 1
    out = np.eye(n * q, dtype=complex)
    for i in range(1, n):
        out[i * q : (i + 1) * q, (i - 1) * q : i * q] = -x
    return out


def _injection_dense(coarse_intervals: int, m: int, q: int) -> np.ndarray:
    rows, cols = coarse_intervals + 1, coarse_intervals * m + 1
    out = np.zeros((rows * q, cols * q), dtype=complex)
    for j in range(rows):
        out[j * q : (j + 1) * q, j * m * q : j * m * q + q] = np.eye(q)
    return out


def _interpolation_dense(phi: np.ndarray, coarse_intervals: int, m: int) -> np.ndarray:
    q = phi.shape[0]
    rows, cols = coarse_intervals * m + 1, coarse_intervals + 1
    out = np.zeros((rows * q, cols * q), dtype=complex)
    powers = _phi_powers(phi, m)
    for j in range(coarse_intervals):
        for r in range(m):
            out[(j * m + r) * q : (j * m + r + 1) * q, j * q : (j + 1) * q] = powers[r]
    out[coarse_intervals * m * q :, coarse_intervals * q :] = np.eye(q)
    return out


def _phi_powers(phi: np.ndarray, m: int) -> np.ndarray:
    q = phi.shape[0]
    powers = np.empty((m, q, q), dtype=complex)
    powers[0] = np.eye(q)
    for r in range(1, m):
        powers[r] = phi @ powers[r - 1]
    return powers


def _coarse_middle(
    phi: np.ndarray,
    phic: np.ndarray,
    phicc: np.ndarray | None,
    hierarchy: Hierarchy,
    method: MethodSpec,
) -> np.ndarray:
    """Error propagation restricted to the first coarse grid.

    Two-level: (I - A_c^{-1} A_S), times (I - A_S) for FCF. Three-level
    cycles replace A_c^{-1} by (I - E23^s) A_c^{-1} with E23 the
    two-level block of the (first-coarse, coarsest) pair and s = 1 (V)
    or 2 (F).
    """
    nt_c = hierarchy.nt_coarse
    phi_m = np.linalg.matrix_power(phi, hierarchy.m)
    a_c = _lower_bidiagonal(phic, nt_c)
    a_s = _lower_bidiagonal(phi_m, nt_c)
    g = linalg.solve(a_c, a_s)
    if method.levels == 3:
        if phicc is None:
            raise ValueError("three-level blocks need the coarsest symbol phicc")
        inner_hier = Hierarchy(nt=nt_c, m=hierarchy.m2, dt=hierarchy.m * hierarchy.dt)
        inner_method = MethodSpec(method.relax, "two-level")
        inner = time_grid_blocks(phic, phicc, inner_hier, inner_method, scope="full")
        if method.cycle == "three-level-f":
            inner = inner @ inner
        g = (np.eye(g.shape[0], dtype=complex) - inner) @ g
    middle = np.eye(g.shape[0], dtype=complex) - g
    if method.relax == "FCF":
        middle = middle @ (np.eye(a_s.shape[0], dtype=complex) - a_s)
    return middle


def time_grid_blocks(
    phi,
    phic,
    hierarchy: Hierarchy,
    method: MethodSpec,
    scope: str = "full",
    phicc=None,
) -> np.ndarray:
    """Dense per-frequency iteration block over the finite time grid.

    Full scope returns the (nt+1)q square block; the cpoints scope
    returns its restriction to the coarse time grid, of size
    (nt/m+1)q. Columns of the full block vanish at F-point indices.
    """
    if scope not in SCOPES:
        raise ConfigError(f"scope: must be one of {SCOPES}, got {scope!r}")
    phi, phic = _as_block(phi), _as_block(phic)
    phicc = _as_block(phicc) if phicc is not None else None
    method.check_hierarchy(hierarchy)
    middle = _coarse_middle(phi, phic, phicc, hierarchy, method)
    if scope == "cpoints":
        return middle
    p = _interpolation_dense(phi, hierarchy.nt_coarse, hierarchy.m)
    r = _injection_dense(hierarchy.nt_coarse, hierarchy.m, phi.shape[0])
    return p @ middle @ r


def _norm_of(matrix: np.ndarray, norm: str) -> float:
    if norm == "exact2":
        return linalg.norm_two(matrix)
    return float(np.sqrt(linalg.norm_one(matrix) * linalg.norm_inf(matrix)))


def power_norm_series(block, k_max: int, norm: str = "exact2") -> np.ndarray:
    """Norms of successive powers of one block, by incremental products."""
    if norm not in NORM_KINDS:
        raise ConfigError(f"norm: must be one of {NORM_KINDS}, got {norm!r}")
    block = _as_block(block)
    if block.shape[0] != block.shape[1]:
        raise ValueError(f"power series needs a square block, got {block.shape}")
    values = np.empty(k_max)
    for i, power in enumerate(linalg.matrix_power_series(block, k_max)):
        values[i] = _norm_of(power, norm)
    return values


# ---------------------------------------------------------------------------
# Block-Toeplitz fast path (two-level blocks only)
# ---------------------------------------------------------------------------


def _cpoint_toeplitz(phi: np.ndarray, phic: np.ndarray, nt_c: int, m: int, relax: str) -> np.ndarray:
    """Diagonal generator T of the two-level C-point block.

    The block equals sum_d S^d kron T[d] with S the down-shift on the
    coarse time grid: T[d] = phic^{d-1} (phi^m - phic) for F-relaxation
    and phic^{d-2} (phi^m - phic) phi^m (d >= 2) for FCF.
    """
    q = phi.shape[0]
    phi_m = np.linalg.matrix_power(phi, m)
    defect = phi_m - phic
    t = np.zeros((nt_c + 1, q, q), dtype=complex)
    if relax == "F":
        t[1] = defect
        for d in range(2, nt_c + 1):
            t[d] = phic @ t[d - 1]
    else:
        if nt_c >= 2:
            t[2] = defect @ phi_m
            for d in range(3, nt_c + 1):
                t[d] = phic @ t[d - 1]
    return t


def _toeplitz_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Convolution of strictly lower block-Toeplitz generators (a[0] = b[0] = 0)."""
    n = a.shape[0]
    c = np.zeros_like(a)
    for d in range(2, n):
        c[d] = np.einsum("eij,ejk->ik", a[1:d], b[d - 1 : 0 : -1], optimize=True)
    return c


def _toeplitz_to_dense(t: np.ndarray) -> np.ndarray:
    n, q, _ = t.shape
    out4 = np.zeros((n, q, n, q), dtype=complex)
    ii, jj = np.tril_indices(n, -1)
    out4[ii, :, jj, :] = t[ii - jj]
    return out4.reshape(n * q, n * q)


def _cpoint_bound_norms(t: np.ndarray) -> tuple[float, float]:
    absums = np.abs(t[1:])
    one = float(absums.sum(axis=(0, 1)).max()) if t.shape[0] > 1 else 0.0
    inf = float(absums.sum(axis=(0, 2)).max()) if t.shape[0] > 1 else 0.0
    return one, inf


def _full_bound_norms(t: np.ndarray, phi_powers: np.ndarray) -> tuple[float, float]:
    """1- and inf-norms of the full-scope block from its C-point generator.

    Full block = P (C-point block) R; its extreme column lives in the
    first coarse column and its extreme row in the last coarse interval
    or the final time point, so cumulative block sums suffice.
    """
    n, q, _ = t.shape
    if n <= 1:
        return 0.0, 0.0
    m = phi_powers.shape[0]
    # |phi^r T_d| for d = 1..NT, r = 0..m-1
    prod = np.abs(np.einsum("rij,djk->rdik", phi_powers, t[1:], optimize=True))
    a_col = prod.sum(axis=(0, 2))  # (NT, q) column sums over all r
    b_col = np.abs(t[1:]).sum(axis=1)  # (NT, q)
    one = float((a_col[: n - 2].sum(axis=0) + b_col[n - 2]).max()) if n >= 2 else 0.0
    row_r = prod.sum(axis=3)  # (m, NT, q) row sums per r
    inf_interior = float(row_r[:, : n - 2].sum(axis=1).max()) if n > 2 else 0.0
    inf_last = float(np.abs(t[1:]).sum(axis=(0, 2)).max())
    return one, max(inf_interior, inf_last)


def _toeplitz_series(
    phi: np.ndarray,
    phic: np.ndarray,
    hierarchy: Hierarchy,
    relax: str,
    variant: SamaVariant,
    k_max: int,
) -> np.ndarray:
    nt_c, m = hierarchy.nt_coarse, hierarchy.m
    t = _cpoint_toeplitz(phi, phic, nt_c, m, relax)
    phi_powers = _phi_powers(phi, m) if variant.scope == "full" else None
    interp = (
        _interpolation_dense(phi, nt_c, m)
        if variant.scope == "full" and variant.norm == "exact2"
        else None
    )
    values = np.empty(k_max)
    tk = t
    for i in range(k_max):
        if i > 0:
            tk = _toeplitz_multiply(tk, t)
        if variant.norm == "bound":
            if variant.scope == "cpoints":
                one, inf = _cpoint_bound_norms(tk)
            else:
                one, inf = _full_bound_norms(tk, phi_powers)
            values[i] = np.sqrt(one * inf)
        else:
            dense = _toeplitz_to_dense(tk)
            if variant.scope == "full":
                # Zero F-point columns do not change singular values, so
                # the rectangular product P @ C^k suffices.
                dense = interp @ dense
            values[i] = float(np.linalg.svd(dense, compute_uv=False)[0])
    return values


def _dense_series(
    phi: np.ndarray,
    phic: np.ndarray,
    phicc: np.ndarray | None,
    hierarchy: Hierarchy,
    method: MethodSpec,
    variant: SamaVariant,
    k_max: int,
) -> np.ndarray:
    block = time_grid_blocks(phi, phic, hierarchy, method, variant.scope, phicc)
    return power_norm_series(block, k_max, variant.norm)


def reduction_factors(
    symbols: SpatialSymbols,
    hierarchy: Hierarchy,
    method: MethodSpec,
    variant: SamaVariant = SamaVariant(),
    k_max: int = 10,
    h_theta: float | None = None,
    thetas=None,
    engine: str = "auto",
    allow_large_exact2: bool = False,
    collect_map: bool = False,
) -> PredictionSeries:
    """Worst-case error-reduction factors max_theta ||block(theta)^k||.

    h_theta defaults to pi/32 for one spatial dimension and pi/16 for
    two (where each sweep point carries a 16x16-block computation).
    Ties keep the first frequency in row-major grid order. With
    collect_map=True the per-frequency series are attached to the
    result's ``per_mode`` annotation for frequency heatmaps.
    """
    method.check_hierarchy(hierarchy)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if engine not in ("auto", "dense", "toeplitz"):
        raise ConfigError(f"engine: expected auto|dense|toeplitz, got {engine!r}")
    if h_theta is None:
        h_theta = np.pi / 32 if symbols.dim == 1 else np.pi / 16
    if thetas is None:
        thetas = theta_grid(h_theta, symbols.dim)
    if (
        variant.scope == "full"
        and variant.norm == "exact2"
        and (hierarchy.nt + 1) * symbols.q > _EXACT2_GATE
        and not allow_large_exact2
    ):
        raise ConfigError(
            "norm: exact 2-norms of full-scope blocks of size "
            f"{(hierarchy.nt + 1) * symbols.q} are gated; use the bound variant "
            "or pass allow_large_exact2=True"
        )
    if engine == "toeplitz" and method.levels != 2:
        raise ConfigError("engine: the Toeplitz fast path covers two-level cycles only")
    use_toeplitz = engine == "toeplitz" or (engine == "auto" and method.levels == 2)

    best = np.zeros(k_max)
    arg: list[tuple[float, ...]] = [tuple(thetas[0])] * k_max
    per_mode = [] if collect_map else None
    for theta in thetas:
        phi = symbols.phi(theta, 1)
        phic = symbols.phi(theta, hierarchy.m)
        if use_toeplitz:
            values = _toeplitz_series(phi, phic, hierarchy, method.relax, variant, k_max)
        else:
            phicc = (
                symbols.phi(theta, hierarchy.m * hierarchy.m2) if method.levels == 3 else None
            )
            values = _dense_series(phi, phic, phicc, hierarchy, method, variant, k_max)
        if not np.all(np.isfinite(values)):
            raise NumericalFailure(f"non-finite block norms at theta = {tuple(theta)}")
        if per_mode is not None:
            per_mode.append((tuple(theta), values))
        mask = values > best
        best[mask] = values[mask]
        for i in np.nonzero(mask)[0]:
            arg[i] = tuple(theta)
    series = PredictionSeries(
        np.arange(1, k_max + 1),
        best,
        arg,
        annotations={"scope": variant.scope, "norm": variant.norm, "h_theta": h_theta},
    )
    if per_mode is not None:
        series.annotations["per_mode"] = per_mode
    return series
