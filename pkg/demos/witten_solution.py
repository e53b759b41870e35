"""Witten's reduced solution and its phase-space image, checked through
the pairwise operator conditions and the scalar field equation."""

from moyalkw import sample_points
from moyalkw.gauge import residual_stats
from moyalkw.solutions import witten_classical, witten_deformed

box = {c: (0.5, 2.0) for c in ("x1", "x2", "x3")}
pts = sample_points(box, 50, seed=0)

for r in (0, 1, 2):
    case = witten_classical(r)
    worst = max(residual_stats(n, res, pts, 50).max_abs_residual for n, res in case.checks["display"])
    print(f"classical r={r}: max residual {worst:.2e}")

at = {**pts, "hbar": pts["x1"] * 0 + 0.5, "beta": pts["x1"] * 0 + 0.25}
case = witten_deformed(1)
for name, res in case.checks["display"]:
    print(f"deformed  {name:16s} {residual_stats(name, res, at, 50).max_abs_residual:.2e}")
