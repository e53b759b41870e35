"""Self-dual ansatz solutions: the classical flat solution, the
phase-space flat solution under each field convention for both the
literal and the Weyl-transported equations, and the curved background."""

import numpy as np

from moyalkw import sample_points
from moyalkw.gauge import deformed_sw_residuals, residual_stats
from moyalkw.solutions import dh_curved, dh_flat, dh_flat_deformed

n = 40
pts = sample_points({c: (0.5, 2.0) for c in ("x0", "x1", "x2", "x3")}, n, seed=0)
pts = {**pts, "hbar": np.full(n, 0.5), "beta": np.full(n, 0.5)}


def worst(res):
    return residual_stats("", res, pts, n).max_abs_residual


print("classical flat:", {name: worst(r) for name, r in dh_flat().checks["classical"]})

case = dh_flat_deformed()
print(f"{'convention':18s} {'literal':>10s} {'weyl':>10s}")
for label, pair in case.extras["pairs"].items():
    lit = max(worst(r) for r in deformed_sw_residuals(pair))
    weyl = max(worst(r) for r in deformed_sw_residuals(pair, variant="weyl"))
    print(f"{label:18s} {lit:10.3e} {weyl:10.3e}")

curved = dh_curved()
for conv, checks in curved.checks.items():
    print(f"curved/{conv}:", {name: round(worst(r), 12) for name, r in checks})
