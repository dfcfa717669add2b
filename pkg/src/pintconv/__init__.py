"""Convergence analysis toolkit for Parareal/MGRIT parallel-in-time methods.

Predicts per-iteration worst-case error reduction of two- and
three-level time-multigrid iterations for two hyperbolic model problems
(1D linear advection, 2D incompressible linear elasticity) through
three complementary engines, and validates the predictions against a
sequential reference solver:

- :mod:`pintconv.lfa` -- space-time local Fourier analysis,
- :mod:`pintconv.sama` -- semi-algebraic mode analysis on the finite
  time grid (exact 2-norms or computable 1/inf-norm bounds),
- :mod:`pintconv.reduction` -- closed-form two-level reduction bounds,
- :mod:`pintconv.mgrit` -- the reference solver and measured factors,
- :mod:`pintconv.harness` / CLI ``pintconv`` -- experiment configs to CSV.
"""

from .advection import AdvectionParams, AdvectionSymbols, upwind_propagator, upwind_symbol
from .core import (
    ConfigError,
    DegenerateFrequencyError,
    Hierarchy,
    MethodSpec,
    NumericalFailure,
    PredictionSeries,
    SingularCoarseSymbolError,
    SingularMatrixError,
    frequency_grid,
    omega_grid,
    theta_grid,
)
from .elasticity import (
    ElasticityParams,
    ElasticitySymbols,
    ElasticitySymbolSet,
    elasticity_symbol_set,
)
from .harness import Experiment, ResultRow, average_reduction, load_config, run_experiments
from .mgrit import ExperimentSpec, MgritSolver, exact_solve, measured_factors
from .reduction import EigenPair, cpoint_power_bound, full_power_bound, simultaneous_eigs
from .sama import SamaVariant, power_norm_series, time_grid_blocks

__all__ = [
    "AdvectionParams",
    "AdvectionSymbols",
    "ConfigError",
    "DegenerateFrequencyError",
    "EigenPair",
    "ElasticityParams",
    "ElasticitySymbolSet",
    "ElasticitySymbols",
    "Experiment",
    "ExperimentSpec",
    "Hierarchy",
    "MethodSpec",
    "MgritSolver",
    "NumericalFailure",
    "PredictionSeries",
    "ResultRow",
    "SamaVariant",
    "SingularCoarseSymbolError",
    "SingularMatrixError",
    "average_reduction",
    "cpoint_power_bound",
    "elasticity_symbol_set",
    "exact_solve",
    "frequency_grid",
    "full_power_bound",
    "load_config",
    "measured_factors",
    "omega_grid",
    "power_norm_series",
    "run_experiments",
    "simultaneous_eigs",
    "theta_grid",
    "time_grid_blocks",
    "upwind_propagator",
    "upwind_symbol",
]

__version__ = "0.1.0"
