"""Predict two-level convergence for 1D advection three different ways.

Space-time LFA, SAMA, and reduction analysis all bound the worst-case
error reduction per iteration; this script prints them side by side on
the 64x64 mesh with factor-2 temporal coarsening.
"""

import numpy as np

from pintconv import AdvectionParams, AdvectionSymbols, Hierarchy, MethodSpec
from pintconv import lfa, reduction, sama
from pintconv.sama import SamaVariant

params = AdvectionParams(c=1.0, dx=0.5, dt=0.1, nx=64)
symbols = AdvectionSymbols(params)
hierarchy = Hierarchy(nt=64, m=2, dt=params.dt)

for relax in ("F", "FCF"):
    method = MethodSpec(relax)
    lfa_series = lfa.reduction_factors(symbols, hierarchy, method, k_max=10)
    sama_series = sama.reduction_factors(
        symbols, hierarchy, method, SamaVariant("full", "exact2"), k_max=10
    )
    ra_series = reduction.reduction_factors(symbols, hierarchy, method, "cpoints", k_max=10)

    print(f"\n{relax}-relaxation, m = {hierarchy.m}, effective CFL {params.cfl():.2f}")
    print(f"{'k':>3} {'LFA':>12} {'SAMA':>12} {'RA (C-pts)':>12}")
    for i, k in enumerate(lfa_series.k):
        print(
            f"{k:>3} {lfa_series.values[i]:>12.3e} "
            f"{sama_series.values[i]:>12.3e} {ra_series.values[i]:>12.3e}"
        )
    theta, omega = lfa_series.argmax[0][0], lfa_series.argmax[0][-1]
    print(f"worst first-iteration mode: theta = {theta:+.4f}, omega0 = {omega:+.4f}")
    print("note: LFA ignores the finite interval, so it misses the")
    print("superlinear decay that SAMA and RA capture at later k.")
