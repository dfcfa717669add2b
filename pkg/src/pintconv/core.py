"""Shared value types, frequency grids, and error classes.

Everything here is plain data: frozen dataclasses validated on construction,
and helpers for building the discrete frequency meshes that every analysis
sweep iterates over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

TWO_PI = 2.0 * math.pi

RELAXATIONS = ("F", "FCF")
CYCLES = ("two-level", "three-level-v", "three-level-f")


class NumericalFailure(RuntimeError):
    """A numerical procedure could not deliver the accuracy it promises."""


class SingularMatrixError(NumericalFailure):
    """Matrix is singular within the pivot tolerance.

    Carries the offending pivot magnitude in ``pivot``.
    """

    def __init__(self, message: str, pivot: float | None = None):
        super().__init__(message)
        self.pivot = pivot


class SingularCoarseSymbolError(NumericalFailure):
    """Coarse-grid symbol is not invertible at some frequency.

    ``frequency`` holds the offending (theta..., omega0) tuple when known.
    """

    def __init__(self, message: str, frequency: tuple | None = None):
        super().__init__(message)
        self.frequency = frequency


class DegenerateFrequencyError(ValueError):
    """The discrete-gradient symbol vanishes, so the pressure Schur
    complement is undefined at this frequency."""


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the offending key."""


@dataclass(frozen=True)
class Hierarchy:
    """Temporal grid hierarchy: nt fine intervals, coarsening m (and m2)."""

    nt: int
    m: int
    dt: float
    m2: int = 1

    def __post_init__(self):
        if self.m < 2:
            raise ConfigError(f"m: coarsening factor must be >= 2, got {self.m}")
        if self.m2 < 1:
            raise ConfigError(f"m2: second coarsening factor must be >= 1, got {self.m2}")
        if self.dt <= 0:
            raise ConfigError(f"dt: time step must be positive, got {self.dt}")
        if self.nt < 1 or self.nt % (self.m * self.m2) != 0:
            raise ConfigError(
                f"nt: {self.nt} not divisible by m*m2 = {self.m * self.m2}"
            )

    @property
    def nt_coarse(self) -> int:
        """Intervals on the first coarse grid."""
        return self.nt // self.m

    @property
    def nt_coarsest(self) -> int:
        """Intervals on the coarsest grid of the hierarchy."""
        return self.nt // (self.m * self.m2)


@dataclass(frozen=True)
class MethodSpec:
    """Algorithm variant: relaxation kind and cycling strategy."""

    relax: str = "F"
    cycle: str = "two-level"

    def __post_init__(self):
        if self.relax not in RELAXATIONS:
            raise ConfigError(f"relax: must be one of {RELAXATIONS}, got {self.relax!r}")
        if self.cycle not in CYCLES:
            raise ConfigError(f"cycle: must be one of {CYCLES}, got {self.cycle!r}")

    @property
    def levels(self) -> int:
        return 2 if self.cycle == "two-level" else 3

    def check_hierarchy(self, hierarchy: Hierarchy) -> None:
        if self.levels == 3 and hierarchy.m2 < 2:
            raise ConfigError(f"m2: three-level cycling requires m2 >= 2, got {hierarchy.m2}")
        if self.levels == 2 and hierarchy.m2 != 1:
            raise ConfigError(f"m2: two-level cycling requires m2 == 1, got {hierarchy.m2}")


@dataclass
class PredictionSeries:
    """Per-iteration worst-case error-reduction values with their argmax.

    ``argmax[i]`` is the frequency tuple at which iteration ``k[i]``
    attains its maximum: (theta,) or (theta_x, theta_y), with the temporal
    base frequency appended for space-time LFA.
    """

    k: np.ndarray
    values: np.ndarray
    argmax: list[tuple[float, ...]]
    annotations: dict = field(default_factory=dict)

    def __post_init__(self):
        self.k = np.asarray(self.k, dtype=int)
        self.values = np.asarray(self.values, dtype=float)
        if self.k.shape != self.values.shape:
            raise ValueError("k and values must have matching shapes")
        if len(self.argmax) != len(self.k):
            raise ValueError("argmax must align with k")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("series values must be finite and nonnegative")


class SpatialSymbols(Protocol):
    """Per-frequency spatial symbol family of a one-step time integrator.

    ``phi(theta, step_scale)`` returns the q x q complex symbol of the
    integrator rediscretized with time step ``step_scale * dt``.
    """

    q: int
    dim: int

    def phi(self, theta: tuple[float, ...], step_scale: int = 1) -> np.ndarray: ...

    def is_degenerate(self, theta: tuple[float, ...]) -> bool:
        """True where the symbol exists only by a continuity convention."""
        ...


def frequency_grid(spacing: float, halfwidth: float = math.pi) -> np.ndarray:
    """Uniform mesh on the half-open interval (-halfwidth, halfwidth].

    Points are -halfwidth + j*spacing for j = 1..(2*halfwidth/spacing);
    the spacing must tile the interval exactly.
    """
    if spacing <= 0:
        raise ConfigError(f"spacing: must be positive, got {spacing}")
    count = 2.0 * halfwidth / spacing
    n = round(count)
    if n < 1 or abs(count - n) > 1e-9 * max(1.0, n):
        raise ConfigError(
            f"spacing: {spacing} does not evenly tile an interval of width {2 * halfwidth}"
        )
    return -halfwidth + spacing * np.arange(1, n + 1)


def theta_grid(spacing: float, dim: int) -> list[tuple[float, ...]]:
    """Tensor-product spatial frequency mesh over (-pi, pi]^dim, row-major."""
    axis = frequency_grid(spacing)
    if dim == 1:
        return [(float(t),) for t in axis]
    if dim == 2:
        return [(float(tx), float(ty)) for tx in axis for ty in axis]
    raise ConfigError(f"dim: only 1- and 2-dimensional frequency grids supported, got {dim}")


def omega_grid(spacing: float, total_coarsening: int) -> np.ndarray:
    """Temporal base-frequency mesh over (-pi/M, pi/M] for coarsening M."""
    return frequency_grid(spacing, halfwidth=math.pi / total_coarsening)
