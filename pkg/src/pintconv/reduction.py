"""Two-level reduction analysis: closed-form norm bounds from eigenvalues.

When fine and coarse integrators share eigenvectors, the C-point error
propagator decouples into scalar Toeplitz matrices indexed by eigenvalue
pairs (lam, mu), whose 1- and inf-norms (equal there) have closed
binomial-sum forms for every power k. sqrt(norm_1 * norm_inf) then
bounds the 2-norm. For systems the simultaneous eigenvector matrix is
generally not unitary and its condition number multiplies the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ConfigError,
    Hierarchy,
    MethodSpec,
    PredictionSeries,
    SpatialSymbols,
    theta_grid,
)
from . import linalg

_SIMULTANEITY_TOL = 1e-8


@dataclass(frozen=True)
class EigenPair:
    """Fine/coarse eigenvalue pair with the eigenvector condition number."""

    lam: complex
    mu: complex
    kappa: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.kappa) and self.kappa >= 1.0):
            raise ValueError(f"kappa must be finite and >= 1, got {self.kappa}")
        if not (np.isfinite(self.lam) and np.isfinite(self.mu)):
            raise ValueError("eigenvalues must be finite")


def _binomial_geometric_sum(absmu: float, j_max: int, k: int) -> float:
    """sum_{j=0}^{j_max} C(j+k-1, j) |mu|^j, zero for an empty range.

    Terms are built by a running-product recurrence and accumulated in
    ascending j; exact at |mu| = 1 where the geometric closed form
    degenerates.
    """
    if j_max < 0:
        return 0.0
    term = 1.0
    total = 1.0
    for j in range(1, j_max + 1):
        term *= absmu * (j + k - 1) / j
        total += term
    return total


def cpoint_power_bound(pair: EigenPair, m: int, nt_coarse: int, relax: str, k: int = 1) -> float:
    """Closed-form norm of the k-th power of the C-point error propagator.

    1- and inf-norms coincide there, so this is also the
    sqrt(norm_1 * norm_inf) bound on the 2-norm. F-relaxation:
    |lam^m - mu|^k sum_{j<=NT-k} C(j+k-1, j)|mu|^j; FCF additionally
    carries |lam^m|^k and truncates the sum at NT-2k. Empty ranges give
    zero, reproducing exactness on the coarse grid.
    """
    if k < 1 or nt_coarse < 1 or m < 1:
        raise ValueError(f"need k >= 1, nt_coarse >= 1, m >= 1; got {k}, {nt_coarse}, {m}")
    defect = abs(pair.lam**m - pair.mu) ** k
    absmu = abs(pair.mu)
    if relax == "F":
        return defect * _binomial_geometric_sum(absmu, nt_coarse - k, k)
    if relax == "FCF":
        return defect * abs(pair.lam**m) ** k * _binomial_geometric_sum(absmu, nt_coarse - 2 * k, k)
    raise ConfigError(f"relax: must be F or FCF, got {relax!r}")


def full_power_bound(pair: EigenPair, m: int, nt_coarse: int, relax: str, k: int = 1) -> float:
    """sqrt(norm_1 * norm_inf) of the k-th power of the full-grid propagator.

    The full-grid power factors as (ideal interpolation) (C-point
    power) (injection), so relative to the C-point norms the 1-norm
    gains the column mass of the m fine offsets, sum_r |lam|^r for
    every k, plus a binomial corner term from the final time row. The
    inf-norm equals the C-point value whenever |lam| <= 1; above that
    the largest fine offset row takes over.
    """
    if k < 1 or nt_coarse < 1 or m < 1:
        raise ValueError(f"need k >= 1, nt_coarse >= 1, m >= 1; got {k}, {nt_coarse}, {m}")
    abslam, absmu = abs(pair.lam), abs(pair.mu)
    defect = abs(pair.lam**m - pair.mu) ** k
    if relax == "F":
        shift = k
        corner_n = nt_coarse - 1
        scale = defect
    elif relax == "FCF":
        shift = 2 * k
        corner_n = nt_coarse - k - 1
        scale = defect * abslam ** (m * k)
    else:
        raise ConfigError(f"relax: must be F or FCF, got {relax!r}")
    tail = _binomial_geometric_sum(absmu, nt_coarse - shift, k)
    body = _binomial_geometric_sum(absmu, nt_coarse - shift - 1, k)
    corner_exp = nt_coarse - shift
    corner = math.comb(corner_n, corner_exp) * absmu**corner_exp if corner_exp >= 0 else 0.0
    offsets = sum(abslam**r for r in range(m))
    one_norm = scale * (offsets * body + corner)
    inf_norm = scale * max(max(1.0, abslam ** (m - 1)) * body, tail)
    return float(np.sqrt(one_norm * inf_norm))


@dataclass
class SimultaneousEigs:
    """Result of diagonalizing the fine symbol and applying its basis
    to the coarse symbol: eigenvalue pairs, the shared condition number,
    and the simultaneity residual (max off-diagonal magnitude of the
    transformed coarse symbol relative to its norm)."""

    pairs: list[EigenPair]
    kappa: float
    residual: float
    simultaneous: bool
    diagonalizable: bool


def simultaneous_eigs(phi, phic) -> SimultaneousEigs:
    """Diagonalize phi; reuse its eigenvectors for phic.

    The pairs are always returned (mu from the diagonal of the
    transformed coarse symbol); ``simultaneous`` is False when the
    off-diagonal residual exceeds 1e-8, and ``diagonalizable`` is False
    when phi itself is defective or near-defective.
    """
    phi = np.asarray(phi, dtype=complex)
    decomp = linalg.eig(phi)
    u = decomp.vectors
    try:
        kappa = linalg.cond_two(u)
        transformed = linalg.solve(u, phic @ u)
    except linalg.SingularMatrixError:
        # Defective basis: no usable coarse diagonal; callers exclude it.
        return SimultaneousEigs([], np.inf, np.inf, False, False)
    mu = np.diag(transformed).copy()
    off = transformed - np.diag(mu)
    scale = max(linalg.norm_two(transformed), np.finfo(float).tiny)
    residual = float(np.abs(off).max() / scale)
    pairs = [EigenPair(complex(l), complex(v), float(kappa)) for l, v in zip(decomp.values, mu)]
    return SimultaneousEigs(
        pairs, float(kappa), residual, residual <= _SIMULTANEITY_TOL, decomp.diagonalizable
    )


@dataclass
class SystemBound:
    """Lemma-style bound max_n kappa_n max_l (scalar bound), with a
    degraded-coverage marker when defective frequencies were excluded."""

    value: float
    kappa_max: float
    excluded: list = field(default_factory=list)

    @property
    def degraded(self) -> bool:
        return bool(self.excluded)


def system_bound(
    pairs_per_frequency,
    m: int,
    nt_coarse: int,
    relax: str,
    k: int = 1,
    frequencies=None,
) -> SystemBound:
    """C-point bound for block symbols from per-frequency eigenvalue pairs.

    ``pairs_per_frequency`` holds one EigenPair sequence per frequency,
    all pairs of a frequency sharing one kappa. Frequencies flagged
    non-diagonalizable must be filtered by the caller through
    ``frequencies``/``excluded`` bookkeeping; entries given here all
    contribute.
    """
    best = 0.0
    kappa_max = 1.0
    for idx, pairs in enumerate(pairs_per_frequency):
        if not pairs:
            raise ValueError(f"frequency {idx}: empty eigenvalue pair sequence")
        kappa = pairs[0].kappa
        kappa_max = max(kappa_max, kappa)
        local = max(cpoint_power_bound(p, m, nt_coarse, relax, k) for p in pairs)
        best = max(best, kappa * local)
    return SystemBound(best, kappa_max, list(frequencies or []))


def reduction_factors(
    symbols: SpatialSymbols,
    hierarchy: Hierarchy,
    method: MethodSpec,
    scope: str = "cpoints",
    k_max: int = 10,
    h_theta: float | None = None,
    thetas=None,
) -> PredictionSeries:
    """Worst-case reduction bounds over a spatial frequency sweep.

    Scalar symbols feed the closed forms directly (kappa = 1); block
    symbols are simultaneously diagonalized per frequency and weighted
    by the eigenvector condition number. Defective frequencies are
    excluded and reported in the annotations as degraded coverage.
    Two-level only: reduction analysis has no three-level form.
    """
    if method.levels != 2:
        raise ConfigError("cycle: reduction analysis applies to two-level methods only")
    method.check_hierarchy(hierarchy)
    if scope not in ("cpoints", "full"):
        raise ConfigError(f"scope: must be cpoints or full, got {scope!r}")
    if h_theta is None:
        h_theta = np.pi / 32 if symbols.dim == 1 else np.pi / 16
    if thetas is None:
        thetas = theta_grid(h_theta, symbols.dim)
    bound = cpoint_power_bound if scope == "cpoints" else full_power_bound

    nt_c, m = hierarchy.nt_coarse, hierarchy.m
    best = np.zeros(k_max)
    arg: list[tuple[float, ...]] = [tuple(thetas[0])] * k_max
    kappa_max = 1.0
    residual_max = 0.0
    excluded: list[tuple[float, ...]] = []
    for theta in thetas:
        if symbols.is_degenerate(theta):
            # The propagator symbol exists there only by a continuity
            # fallback; its eigenbasis is near-defective and the
            # condition-number weighting would be meaningless.
            excluded.append(tuple(theta))
            continue
        phi = symbols.phi(theta, 1)
        phic = symbols.phi(theta, m)
        if symbols.q == 1:
            pairs = [EigenPair(complex(phi[0, 0]), complex(phic[0, 0]))]
            kappa = 1.0
        else:
            simul = simultaneous_eigs(phi, phic)
            if not simul.diagonalizable:
                excluded.append(tuple(theta))
                continue
            pairs = simul.pairs
            kappa = simul.kappa
            residual_max = max(residual_max, simul.residual)
        kappa_max = max(kappa_max, kappa)
        for i, k in enumerate(range(1, k_max + 1)):
            value = kappa * max(bound(p, m, nt_c, method.relax, k) for p in pairs)
            if value > best[i]:
                best[i] = value
                arg[i] = tuple(theta)
    annotations = {
        "scope": scope,
        "kappa_max": kappa_max,
        "simultaneity_residual": residual_max,
        "h_theta": h_theta,
    }
    if excluded:
        annotations["excluded_frequencies"] = len(excluded)
        annotations["coverage"] = "degraded"
    return PredictionSeries(np.arange(1, k_max + 1), best, arg, annotations=annotations)
