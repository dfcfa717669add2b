"""Spatial Fourier symbols for incompressible linear elasticity.

Q2-Q1 Taylor-Hood discretization on a uniform quadrilateral mesh,
implicit Euler in time, pressure eliminated through its Schur
complement. Velocity and displacement are 2D vector fields of Q2
unknowns, each with four node types (corner N, x-edge XE, y-edge YE,
cell center C), so the one-step propagator symbol is a 16x16 complex
matrix per frequency pair: ordering
(vx: N,XE,YE,C; vy: ...; ux: ...; uy: ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConfigError, DegenerateFrequencyError

# Below this (relative to dx) the gradient symbol is treated as zero and
# the pressure projection degenerates; only theta = (0, 0) on the
# sampled grids.
_DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class ElasticityParams:
    """Material density/stiffness and mesh parameters.

    nu() = (dt / dx^2) (mu / rho) is the ratio that governs two-level
    convergence; runs sharing it behave identically.
    """

    rho: float
    mu: float
    dx: float
    dt: float

    def __post_init__(self):
        for name in ("rho", "mu", "dx", "dt"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name}: must be positive, got {getattr(self, name)}")

    def nu(self) -> float:
        return (self.dt / self.dx**2) * (self.mu / self.rho)


def mass_symbol_1d(theta: float, dx: float) -> np.ndarray:
    """Symbol of the 1D Q2 mass matrix: 2x2 over (node, midpoint)."""
    c, ch = math.cos(theta), math.cos(theta / 2.0)
    return (dx / 30.0) * np.array(
        [[8.0 - 2.0 * c, 4.0 * ch], [4.0 * ch, 16.0]], dtype=complex
    )


def stiffness_symbol_1d(theta: float, dx: float) -> np.ndarray:
    """Symbol of the 1D Q2 stiffness matrix: 2x2 over (node, midpoint)."""
    c, ch = math.cos(theta), math.cos(theta / 2.0)
    return (1.0 / (3.0 * dx)) * np.array(
        [[14.0 + 2.0 * c, -16.0 * ch], [-16.0 * ch, 16.0]], dtype=complex
    )


def mass_symbol_2d(theta1: float, theta2: float, dx: float) -> np.ndarray:
    """4x4 scalar Q2 mass symbol over node types (N, XE, YE, C)."""
    return np.kron(mass_symbol_1d(theta2, dx), mass_symbol_1d(theta1, dx))


def stiffness_symbol_2d(theta1: float, theta2: float, dx: float) -> np.ndarray:
    """4x4 scalar Q2 stiffness symbol over node types (N, XE, YE, C)."""
    return np.kron(mass_symbol_1d(theta2, dx), stiffness_symbol_1d(theta1, dx)) + np.kron(
        stiffness_symbol_1d(theta2, dx), mass_symbol_1d(theta1, dx)
    )


def gradient_symbols(theta1: float, theta2: float, dx: float) -> tuple[np.ndarray, np.ndarray]:
    """4x1 symbols (Bx, By) of the discrete pressure gradient components."""
    s1, s2 = math.sin(theta1), math.sin(theta2)
    sh1, sh2 = math.sin(theta1 / 2.0), math.sin(theta2 / 2.0)
    ch1, ch2 = math.cos(theta1 / 2.0), math.cos(theta2 / 2.0)
    f = -1j * dx / 9.0
    bx = f * np.array([[s1], [4.0 * sh1], [2.0 * s1 * ch2], [8.0 * sh1 * ch2]], dtype=complex)
    by = f * np.array([[s2], [2.0 * s2 * ch1], [4.0 * sh2], [8.0 * sh2 * ch1]], dtype=complex)
    return bx, by


@dataclass
class ElasticitySymbolSet:
    """All per-frequency symbols entering the propagator.

    mass/stiffness are 8x8 block-diagonal (two vector components),
    gradient is 8x1, schur is 1x1, projection is 8x8 idempotent, and
    propagator is the 16x16 one-step matrix acting on (velocity,
    displacement) coefficients.
    """

    mass: np.ndarray
    stiffness: np.ndarray
    gradient: np.ndarray
    schur: np.ndarray
    projection: np.ndarray
    propagator: np.ndarray


def elasticity_symbol_set(
    theta: tuple[float, float],
    params: ElasticityParams,
    step_scale: int = 1,
    degenerate: str = "raise",
) -> ElasticitySymbolSet:
    """Assemble the 16x16 propagator symbol at a frequency pair.

    Coarse-level integrators rediscretize by scaling dt (step_scale m,
    m*m2). The Schur complement uses the conjugate transpose of the
    gradient symbol, which keeps it real positive for Hermitian positive
    definite mass/stiffness combinations.

    At frequencies where the gradient symbol vanishes (theta = (0, 0) on
    the sampled grids) the Schur complement is singular; ``degenerate``
    selects between raising DegenerateFrequencyError ("raise") and the
    continuity fallback that takes the projection to be the identity
    ("identity"), which keeps frequency sweeps total.
    """
    if degenerate not in ("raise", "identity"):
        raise ConfigError(f"degenerate: expected 'raise' or 'identity', got {degenerate!r}")
    theta1, theta2 = theta
    dt = step_scale * params.dt
    m4 = mass_symbol_2d(theta1, theta2, params.dx)
    k4 = stiffness_symbol_2d(theta1, theta2, params.dx)
    eye4 = np.eye(4, dtype=complex)
    mass = np.kron(np.eye(2), m4)
    stiffness = np.kron(np.eye(2), k4)
    bx, by = gradient_symbols(theta1, theta2, params.dx)
    gradient = np.vstack([bx, by])

    h = params.rho * mass + dt**2 * params.mu * stiffness
    hinv_b = np.linalg.solve(h, gradient)
    schur = gradient.conj().T @ hinv_b

    if np.linalg.norm(gradient) < _DEGENERATE_RTOL * params.dx:
        if degenerate == "raise":
            raise DegenerateFrequencyError(
                f"gradient symbol vanishes at theta = {theta}; Schur complement undefined"
            )
        projection = np.eye(8, dtype=complex)
    else:
        projection = np.eye(8, dtype=complex) - hinv_b @ np.linalg.solve(schur, gradient.conj().T)

    hinv_m = np.linalg.solve(h, mass)
    hinv_k = np.linalg.solve(h, stiffness)
    p_hinv_m = projection @ hinv_m
    p_hinv_k = projection @ hinv_k
    rho, mu = params.rho, params.mu
    propagator = np.block(
        [
            [rho * p_hinv_m, -dt * mu * p_hinv_k],
            [rho * dt * p_hinv_m, -dt**2 * mu * p_hinv_k + np.eye(8, dtype=complex)],
        ]
    )
    return ElasticitySymbolSet(mass, stiffness, gradient, schur, projection, propagator)


class ElasticitySymbols:
    """Symbol family adapter over frequency pairs (16x16 blocks).

    Sweeps use the identity-projection fallback at the degenerate
    frequency so that full-grid scans remain total.
    """

    q = 16
    dim = 2

    def __init__(self, params: ElasticityParams):
        self.params = params

    def phi(self, theta: tuple[float, ...], step_scale: int = 1) -> np.ndarray:
        sym = elasticity_symbol_set(
            (theta[0], theta[1]), self.params, step_scale, degenerate="identity"
        )
        return sym.propagator

    def is_degenerate(self, theta: tuple[float, ...]) -> bool:
        """True where the gradient symbol vanishes and the propagator is
        defined only by the continuity fallback (theta = (0, 0))."""
        bx, by = gradient_symbols(theta[0], theta[1], self.params.dx)
        return bool(
            np.linalg.norm(np.vstack([bx, by])) < _DEGENERATE_RTOL * self.params.dx
        )
