"""
Hard-wall confinement and the effective radius
==============================================

With an impenetrable wall at r0 the levels come from zeros of the
confluent hypergeometric function.  The cosine closed form is a
large-level approximation: watch its relative gap fall as n grows.
The defect enters only through the combination r0^2 + beta^2, so a
dislocated wall behaves like a flat one at the effective radius.
"""

import math

from spiralosc.geometry import DislocationParams
from spiralosc.hard_wall import HardWallConfig, approx_energy, exact_energy

cfg = HardWallConfig(r0=2.5, params=DislocationParams(beta=0.5), l=1)
print("wall at r0 = 2.5, beta = 0.5, l = 1 (m = w = 1)")
print("%4s %14s %14s %10s" % ("n", "E_exact", "E_cosine", "rel gap"))
for n in range(0, 13, 2):
    e = exact_energy(cfg, n)
    a = approx_energy(cfg, n)
    print("%4d %14.8f %14.8f %10.2e" % (n, e, a, abs(e - a) / e))

# effective radius: (r0, beta) looks like (sqrt(r0^2 + beta^2), 0)
r0, beta = 2.0, 0.6
rho0 = math.sqrt(r0 * r0 + beta * beta)
shift = -0.5 * beta * beta
walled = HardWallConfig(r0, DislocationParams(beta=beta), l=0)
mapped = HardWallConfig(rho0, DislocationParams(beta=0.0), l=0)
print("\ndefect wall vs flat wall at the effective radius %.6f:" % rho0)
for n in range(3):
    e_def = exact_energy(walled, n) - shift
    e_map = exact_energy(mapped, n)
    print("  n=%d  %.12f  vs  %.12f  (diff %.1e)"
          % (n, e_def, e_map, abs(e_def - e_map)))
