import math

import numpy as np
import pytest

from pintconv.advection import AdvectionParams, AdvectionSymbols, upwind_symbol
from pintconv.core import ConfigError, Hierarchy, MethodSpec
from pintconv.mgrit import (
    ExperimentSpec,
    MgritSolver,
    cosine_initial_condition,
    exact_solve,
    measured_factors,
)

P = AdvectionParams(c=1.0, dx=0.5, dt=0.1, nx=16)


def test_cosine_ic_periodicity_check():
    u0 = cosine_initial_condition([(2.0, math.pi / 8)], 16)
    assert u0[0] == pytest.approx(2.0)
    with pytest.raises(ConfigError):
        cosine_initial_condition([(1.0, 0.1)], 16)


def test_exact_solve_zero_and_constant():
    assert np.all(exact_solve(P, 8, np.zeros(16)) == 0.0)
    states = exact_solve(P, 8, np.ones(16))
    assert np.allclose(states, 1.0, atol=1e-13)


def test_exact_solve_symbol_evolution():
    # A sampled complex exponential evolves by powers of the symbol.
    nx = 8
    p = AdvectionParams(c=1.0, dx=0.5, dt=0.1, nx=nx)
    theta = 2 * math.pi * 3 / nx
    mode = np.exp(1j * theta * np.arange(nx))
    sym = upwind_symbol(theta, p)
    real = exact_solve(p, 6, mode.real)
    imag = exact_solve(p, 6, mode.imag)
    for i in range(7):
        assert np.allclose(real[i] + 1j * imag[i], sym**i * mode, atol=1e-12)


def test_f_relax_exact_first_interval_and_idempotent():
    hier = Hierarchy(8, 2, P.dt)
    solver = MgritSolver(P, hier, MethodSpec("F"))
    u0 = cosine_initial_condition([(2.0, math.pi / 8)], P.nx)
    exact = exact_solve(P, hier.nt, u0)
    g = np.zeros_like(exact)
    g[0] = u0
    rng = np.random.default_rng(0)
    u = rng.uniform(-1, 1, exact.shape)
    u[0] = u0
    solver.f_relax(u, g, 0)
    assert np.allclose(u[1], exact[1], atol=1e-12)  # first coarse interval exact
    again = u.copy()
    solver.f_relax(again, g, 0)
    assert np.abs(again - u).max() <= 1e-14


def test_cf_relax_prefix_exactness():
    # With exact data at t0, F then C then F is exact through t_{2m-1}.
    hier = Hierarchy(8, 2, P.dt)
    solver = MgritSolver(P, hier, MethodSpec("FCF"))
    u0 = cosine_initial_condition([(2.0, math.pi / 8)], P.nx)
    exact = exact_solve(P, hier.nt, u0)
    g = np.zeros_like(exact)
    g[0] = u0
    rng = np.random.default_rng(1)
    u = rng.uniform(-1, 1, exact.shape)
    u[0] = u0
    solver.f_relax(u, g, 0)
    solver.c_relax(u, g, 0)
    solver.f_relax(u, g, 0)
    assert np.allclose(u[1:4], exact[1:4], atol=1e-12)


def test_cycle_fixed_point():
    u0 = cosine_initial_condition([(2.0, math.pi / 8), (1.0, 5 * math.pi / 8)], P.nx)
    for method, hier in (
        (MethodSpec("F"), Hierarchy(8, 2, P.dt)),
        (MethodSpec("FCF"), Hierarchy(8, 2, P.dt)),
        (MethodSpec("F", "three-level-v"), Hierarchy(8, 2, P.dt, 2)),
        (MethodSpec("FCF", "three-level-f"), Hierarchy(8, 2, P.dt, 2)),
    ):
        solver = MgritSolver(P, hier, method)
        exact = exact_solve(P, hier.nt, u0)
        g = np.zeros_like(exact)
        g[0] = u0
        u = exact.copy()
        solver.cycle(u, g)
        assert np.abs(u - exact).max() <= 1e-12 * np.abs(exact).max()


def test_two_level_exactness_property():
    for nt, m, relax in ((8, 2, "F"), (8, 2, "FCF"), (16, 4, "F"), (16, 4, "FCF")):
        hier = Hierarchy(nt, m, P.dt)
        iters = nt // m if relax == "F" else nt // (2 * m)
        run = measured_factors(
            P, hier, MethodSpec(relax),
            ExperimentSpec(initial_condition=((2.0, math.pi / 8),), iters=iters + 2),
        )
        rel = run.error_norms / run.error_norms[0]
        assert rel[iters] <= 1e-10
        assert rel[iters - 1] > 1e-10


def test_linearity_error_equation():
    # Iterating on the error equation (zero rhs, zero initial condition)
    # reproduces the same factors as the full problem.
    hier = Hierarchy(16, 2, P.dt)
    method = MethodSpec("FCF")
    solver = MgritSolver(P, hier, method)
    u0 = cosine_initial_condition([(2.0, math.pi / 8)], P.nx)
    exact = exact_solve(P, hier.nt, u0)
    g = np.zeros_like(exact)
    g[0] = u0
    rng = np.random.default_rng(2)
    guess = rng.uniform(-1, 1, exact.shape)
    guess[0] = u0

    u = guess.copy()
    err = guess - exact
    err[0] = 0.0
    gzero = np.zeros_like(g)
    for _ in range(4):
        solver.cycle(u, g)
        solver.cycle(err, gzero)
        assert np.abs((u - exact) - err).max() <= 1e-12


def test_measured_series_and_degenerate_case():
    hier = Hierarchy(8, 2, P.dt)
    run = measured_factors(
        P, hier, MethodSpec("F"),
        ExperimentSpec(initial_condition=((2.0, math.pi / 8),), iters=6),
    )
    assert len(run.factors) <= 6
    assert np.all(run.factors >= 0)
    degenerate = measured_factors(
        P, hier, MethodSpec("F"),
        ExperimentSpec(initial_condition=((0.0, 0.0),), guess="zero", iters=3),
    )
    assert degenerate.converged_at == 0
    assert len(degenerate.factors) == 0


def test_three_level_converges():
    hier = Hierarchy(16, 2, P.dt, 2)
    for cycle in ("three-level-v", "three-level-f"):
        run = measured_factors(
            P, hier, MethodSpec("FCF", cycle),
            ExperimentSpec(initial_condition=((2.0, math.pi / 8),), iters=10),
        )
        assert run.error_norms[-1] < run.error_norms[0]


def test_low_frequency_zero_guess_converges_faster():
    p = AdvectionParams(c=1.0, dx=0.5, dt=0.1, nx=64)
    hier = Hierarchy(64, 2, p.dt)
    low = measured_factors(
        p, hier, MethodSpec("F"),
        ExperimentSpec(initial_condition=((2.0, math.pi / 16),), guess="zero", iters=5),
    )
    rand = measured_factors(
        p, hier, MethodSpec("F"),
        ExperimentSpec(initial_condition=((2.0, math.pi / 16),), guess="random", iters=5),
    )
    n = min(len(low.factors), len(rand.factors))
    assert np.prod(low.factors[:n]) < np.prod(rand.factors[:n])


def test_seed_reproducibility():
    hier = Hierarchy(8, 2, P.dt)
    ic = ((2.0, math.pi / 8),)
    a = measured_factors(P, hier, MethodSpec("F"), ExperimentSpec(ic, iters=4, seed=7))
    b = measured_factors(P, hier, MethodSpec("F"), ExperimentSpec(ic, iters=4, seed=7))
    assert np.array_equal(a.factors, b.factors)
    c = measured_factors(P, hier, MethodSpec("F"), ExperimentSpec(ic, iters=4, seed=8))
    assert not np.array_equal(a.factors, c.factors)


def test_cf_marks():
    solver = MgritSolver(P, Hierarchy(8, 2, P.dt, 2), MethodSpec("F", "three-level-v"))
    marks = solver.cf_marks
    assert marks[0].tolist() == [True, False] * 4 + [True]
    assert marks[1].tolist() == [True, False, True, False, True]
