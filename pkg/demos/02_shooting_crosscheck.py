"""
Closed form against direct integration
======================================

The shooting oracle integrates the radial equation numerically and never
touches the closed-form results.  Here both are run on a deep Morse well in
the pseudospin limit, where binding needs C < -2m.
"""

import time

from nudirac import BoundProblem, OracleConfig, QuantumState, SolverConfig, SymmetryLimit, find_levels, solve
from nudirac.suite import morse_well

well = morse_well(depth=2.0, alpha=0.5, r_e=8.0)  # minimum -2 at r = 8
prob = BoundProblem(well, SymmetryLimit.pseudospin(-5.0), 1.0, QuantumState(0, 1))
window = SolverConfig(-6.0, 6.0)

t0 = time.perf_counter()
oracle = {lv.n: lv.E for lv in find_levels(prob, OracleConfig(), 3, solver_cfg=window)}
print(f"oracle: {len(oracle)} levels in {time.perf_counter() - t0:.2f} s")

for n in sorted(oracle):
    (level,) = solve(prob.with_n(n), window)
    rel = abs(level.E - oracle[n]) / abs(oracle[n])
    print(f"n={n}  closed form {level.E:.12f}  shooting {oracle[n]:.12f}  rel diff {rel:.1e}")

# The same well with C = 0 has no pseudospin level at all.
print("C = 0:", solve(BoundProblem(well, SymmetryLimit.pseudospin(0.0), 1.0, QuantumState(0, 1)), window))
