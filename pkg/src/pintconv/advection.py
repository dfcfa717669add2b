"""Implicit first-order upwind discretization of u_t + c u_x = 0.

Periodic boundary conditions on a uniform mesh. The per-step update is
(1 + lam) u[j,i] - lam u[j-1,i] = u[j,i-1] with lam = c dt / dx, so the
propagator is the inverse of a circulant bidiagonal matrix and its
spatial Fourier symbol is scalar-valued.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import ConfigError


@dataclass(frozen=True)
class AdvectionParams:
    """Flow speed and mesh parameters; cfl() is the effective CFL number."""

    c: float
    dx: float
    dt: float
    nx: int

    def __post_init__(self):
        if self.c <= 0:
            raise ConfigError(f"c: flow speed must be positive, got {self.c}")
        if self.dx <= 0:
            raise ConfigError(f"dx: mesh width must be positive, got {self.dx}")
        if self.dt <= 0:
            raise ConfigError(f"dt: time step must be positive, got {self.dt}")
        if self.nx < 2:
            raise ConfigError(f"nx: need at least 2 spatial intervals, got {self.nx}")

    def cfl(self, step_scale: int = 1) -> float:
        return self.c * (step_scale * self.dt) / self.dx


def upwind_symbol(theta: float, params: AdvectionParams, step_scale: int = 1) -> complex:
    """Spatial Fourier symbol of one implicit upwind step.

    Returns 1 / (1 + lam (1 - e^{-i theta})) with lam built from
    step_scale * dt; coarse-level integrators use step_scale = m (and
    m * m2), i.e. rediscretization with the enlarged step.
    """
    lam = params.cfl(step_scale)
    return 1.0 / (1.0 + lam * (1.0 - cmath.exp(-1j * theta)))


def upwind_propagator(params: AdvectionParams, step_scale: int = 1) -> np.ndarray:
    """Dense nx x nx time-step matrix Phi with u_i = Phi u_{i-1}.

    Inverse of the circulant bidiagonal system matrix (diagonal 1 + lam,
    subdiagonal and wrap-around entry -lam). Dense storage keeps the
    reference solver simple at nx <= 512.
    """
    b = upwind_system_matrix(params, step_scale)
    return np.linalg.inv(b)


def upwind_system_matrix(params: AdvectionParams, step_scale: int = 1) -> np.ndarray:
    """The circulant bidiagonal matrix B with B u_i = u_{i-1}."""
    lam = params.cfl(step_scale)
    n = params.nx
    b = np.zeros((n, n))
    np.fill_diagonal(b, 1.0 + lam)
    for j in range(n):
        b[j, (j - 1) % n] = -lam
    return b


class AdvectionSymbols:
    """Symbol family adapter: presents the scalar symbol as 1x1 blocks."""

    q = 1
    dim = 1

    def __init__(self, params: AdvectionParams):
        self.params = params

    def phi(self, theta: tuple[float, ...], step_scale: int = 1) -> np.ndarray:
        return np.array([[upwind_symbol(theta[0], self.params, step_scale)]], dtype=complex)

    def is_degenerate(self, theta: tuple[float, ...]) -> bool:
        return False
