"""
How good is the exponential centrifugal approximation?
=====================================================

For kappa != 0 the hypergeometric solution replaces kappa(kappa-1)/r^2 by an
exponential form that is accurate for small alpha r.  The oracle can run
with either term, so the induced energy error is measured directly.
"""

from nudirac import OracleConfig, find_levels
from nudirac.cli import approx_study_problems

approx, exact = OracleConfig(centrifugal_mode="approx"), OracleConfig(centrifugal_mode="exact")

prev = None
for prob in approx_study_problems():
    Ea = find_levels(prob, approx, 0)[0].E
    Ee = find_levels(prob, exact, 0)[0].E
    gap = abs(Ea - Ee)
    ratio = "" if prev is None else f"  (x{prev / gap:.2f} smaller)"
    print(f"alpha={prob.potential.alpha:<4}  E_approx={Ea:.10f}  E_exact={Ee:.10f}  gap={gap:.3e}{ratio}")
    prev = gap

# The gap shrinks roughly as alpha^2, as the series of the replacement suggests.
