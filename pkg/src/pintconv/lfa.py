"""Space-time local Fourier analysis of two- and three-level iterations.

On doubly infinite space-time grids the iteration operators
block-diagonalize over spatial frequencies theta and temporal base
frequencies omega0. Each (theta, omega0) couples the m (or m*m2)
temporal harmonics into one small symbol; maximizing the 2-norm of its
powers over a frequency mesh predicts the worst-case error reduction
per iteration. The initial condition and interval length never enter.
"""

from __future__ import annotations

import cmath

import numpy as np

from .core import (
    Hierarchy,
    MethodSpec,
    PredictionSeries,
    SingularCoarseSymbolError,
    SingularMatrixError,
    SpatialSymbols,
    omega_grid,
    theta_grid,
)
from . import linalg

_KERNEL_TOL = 1e-10


def _as_block(x) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    return a


def _cyclic_bidiagonal(x: np.ndarray, nb: int) -> np.ndarray:
    """I - C_nb kron x with C_nb the cyclic down-shift (nb = 1 gives I - x)."""
    q = x.shape[0]
    out = np.eye(nb * q, dtype=complex)
    for r in range(nb):
        rr, cc = r * q, ((r - 1) % nb) * q
        out[rr : rr + q, cc : cc + q] -= x
    return out


def _phase_stack(phi: np.ndarray, m: int, omega0: float) -> np.ndarray:
    """Columns of ideal interpolation: stacked phi^r e^{-i r omega0}."""
    q = phi.shape[0]
    z = np.zeros((m * q, q), dtype=complex)
    block = np.eye(q, dtype=complex)
    for r in range(m):
        z[r * q : (r + 1) * q] = block
        if r + 1 < m:
            block = (phi * cmath.exp(-1j * omega0)) @ block
    return z


def _interpolation(phi: np.ndarray, m: int, nb: int, omega0: float) -> np.ndarray:
    q = phi.shape[0]
    z = _phase_stack(phi, m, omega0)
    p = np.zeros((nb * m * q, nb * q), dtype=complex)
    for j in range(nb):
        p[j * m * q : (j + 1) * m * q, j * q : (j + 1) * q] = z
    return p


def _injection(m: int, nb: int, q: int) -> np.ndarray:
    r = np.zeros((nb * q, nb * m * q), dtype=complex)
    for j in range(nb):
        r[j * q : (j + 1) * q, j * m * q : j * m * q + q] = np.eye(q)
    return r


def _coarse_correction(a_c: np.ndarray, a_s: np.ndarray, inner: np.ndarray | None) -> np.ndarray:
    """I - (I - inner) A_c^{-1} A_S on the first coarse grid."""
    try:
        g = linalg.solve(a_c, a_s)
    except SingularMatrixError as exc:
        raise SingularCoarseSymbolError(
            f"coarse-grid symbol singular ({exc})",
        ) from exc
    if inner is not None:
        g = (np.eye(g.shape[0], dtype=complex) - inner) @ g
    return np.eye(g.shape[0], dtype=complex) - g


def two_grid_symbol(phi, phic, m: int, omega0: float, relax: str = "F") -> np.ndarray:
    """Space-time symbol of the two-level iteration at (theta, omega0).

    phi and phic are the q x q spatial symbols of the fine and coarse
    integrators; the result is mq x mq with only its first q columns
    nonzero. Raises SingularCoarseSymbolError if the coarse symbol
    I - phic e^{-i m omega0} is not invertible.
    """
    phi, phic = _as_block(phi), _as_block(phic)
    q = phi.shape[0]
    coarse_phase = cmath.exp(-1j * m * omega0)
    phi_m = np.linalg.matrix_power(phi, m)
    a_s = np.eye(q, dtype=complex) - phi_m * coarse_phase
    a_c = np.eye(q, dtype=complex) - phic * coarse_phase
    middle = _coarse_correction(a_c, a_s, None)
    if relax == "FCF":
        middle = middle @ (phi_m * coarse_phase)
    p = _interpolation(phi, m, 1, omega0)
    r = _injection(m, 1, q)
    return p @ middle @ r


def three_grid_symbol(
    phi, phic, phicc, m: int, m2: int, omega0: float, relax: str = "F", cycle: str = "three-level-v"
) -> np.ndarray:
    """Space-time symbol of the three-level V- or F-cycle iteration.

    The direct coarse solve of the two-level method is replaced by one
    (V) or two (F) passes of the two-grid method for the first coarse
    grid, whose symbol is the two-level symbol built from
    (phic, phicc, m2) at base frequency m * omega0.
    """
    if m2 < 2:
        raise ValueError(f"three-level analysis requires m2 >= 2, got {m2}")
    phi, phic, phicc = _as_block(phi), _as_block(phic), _as_block(phicc)
    q = phi.shape[0]
    inner = two_grid_symbol(phic, phicc, m2, m * omega0, relax)
    if cycle == "three-level-f":
        inner = inner @ inner
    elif cycle != "three-level-v":
        raise ValueError(f"cycle: expected a three-level cycle kind, got {cycle!r}")
    coarse_phase = cmath.exp(-1j * m * omega0)
    phi_m = np.linalg.matrix_power(phi, m)
    a_s = _cyclic_bidiagonal(phi_m * coarse_phase, m2)
    a_c = _cyclic_bidiagonal(phic * coarse_phase, m2)
    middle = _coarse_correction(a_c, a_s, inner)
    if relax == "FCF":
        middle = middle @ (np.eye(m2 * q, dtype=complex) - a_s)
    p = _interpolation(phi, m, m2, omega0)
    r = _injection(m, m2, q)
    return p @ middle @ r


def iteration_symbol(
    symbols: SpatialSymbols, hierarchy: Hierarchy, method: MethodSpec, theta, omega0: float
) -> np.ndarray:
    """Iteration-matrix symbol for a problem at one frequency tuple."""
    phi = symbols.phi(theta, 1)
    phic = symbols.phi(theta, hierarchy.m)
    if method.levels == 2:
        return two_grid_symbol(phi, phic, hierarchy.m, omega0, method.relax)
    phicc = symbols.phi(theta, hierarchy.m * hierarchy.m2)
    return three_grid_symbol(
        phi, phic, phicc, hierarchy.m, hierarchy.m2, omega0, method.relax, method.cycle
    )


def _is_exact_kernel_mode(
    symbols: SpatialSymbols, hierarchy: Hierarchy, theta, omega0: float
) -> bool:
    """True when the fine-grid Schur symbol is itself singular.

    At such frequencies (the space-time constant mode) the coarse
    correction is exact in the limit and the error symbol tends to
    zero, so sweeps treat them as contributing nothing.
    """
    total = hierarchy.m * hierarchy.m2
    phi_tot = np.linalg.matrix_power(symbols.phi(theta, 1), total)
    a_s = np.eye(phi_tot.shape[0], dtype=complex) - phi_tot * cmath.exp(-1j * total * omega0)
    smin = np.linalg.svd(a_s, compute_uv=False)[-1]
    return smin <= _KERNEL_TOL * (1.0 + linalg.norm_two(a_s))


def reduction_factors(
    symbols: SpatialSymbols,
    hierarchy: Hierarchy,
    method: MethodSpec,
    k_max: int,
    h_theta: float = np.pi / 32,
    h_omega: float = np.pi / 32,
    thetas=None,
    omegas=None,
) -> PredictionSeries:
    """Worst-case error-reduction factors sup ||E_symbol^k||_2, k = 1..k_max.

    The supremum runs over the sampled (theta, omega0) mesh; ties keep
    the first frequency in row-major grid order (theta outer, omega0
    inner). Frequencies where only the exact-kernel mode makes the
    coarse symbol singular contribute zero; any other singular coarse
    symbol is an error carrying the offending frequency.
    """
    method.check_hierarchy(hierarchy)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if thetas is None:
        thetas = theta_grid(h_theta, symbols.dim)
    if omegas is None:
        omegas = omega_grid(h_omega, hierarchy.m * hierarchy.m2)

    best = np.zeros(k_max)
    arg: list[tuple[float, ...]] = [tuple(thetas[0]) + (float(omegas[0]),)] * k_max
    for theta in thetas:
        for omega0 in omegas:
            freq = tuple(theta) + (float(omega0),)
            try:
                symbol = iteration_symbol(symbols, hierarchy, method, theta, omega0)
            except SingularCoarseSymbolError as exc:
                if _is_exact_kernel_mode(symbols, hierarchy, theta, float(omega0)):
                    continue
                raise SingularCoarseSymbolError(
                    f"coarse symbol singular at frequency {freq}", frequency=freq
                ) from exc
            if not np.all(np.isfinite(symbol)):
                raise SingularCoarseSymbolError(
                    f"non-finite iteration symbol at frequency {freq}", frequency=freq
                )
            for i, power in enumerate(linalg.matrix_power_series(symbol, k_max)):
                value = linalg.norm_two(power)
                if value > best[i]:
                    best[i] = value
                    arg[i] = freq
    return PredictionSeries(np.arange(1, k_max + 1), best, arg)
