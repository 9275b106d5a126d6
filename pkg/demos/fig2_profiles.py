"""Two outcomes of the pinned, spatially coupled double-well system.

With a small tilt favoring the boundary state (h = +0.01) the interior is
pulled all the way up: the final profile is uniform at the optimal point.
Flip the tilt (h = -0.01) so the boundary state is only metastable and the
interior gets stuck part-way: a symmetric pot-shaped profile with a flat
bottom near the other stable point and sharp boundary layers.

Run:  python3 demos/fig2_profiles.py
"""
import numpy as np

from coupled_dynamics import DoubleWell, Grid, find_stationary_points, solve_stationary

D = 0.01
GRID = Grid(x_max=1.0, n_points=201)


def ascii_profile(values, width=61, height=15):
    """Tiny terminal plot: y against x."""
    lo, hi = float(values.min()), float(values.max())
    span = max(hi - lo, 1e-12)
    cols = np.linspace(0, len(values) - 1, width).astype(int)
    rows = ((values[cols] - lo) / span * (height - 1)).round().astype(int)
    canvas = [[" "] * width for _ in range(height)]
    for c, r in enumerate(rows):
        canvas[height - 1 - r][c] = "*"
    return "\n".join("".join(line) for line in canvas)


for h in (0.01, -0.01):
    spec = DoubleWell(h)
    pts = find_stationary_points(spec)
    print(f"\n=== h = {h:+.2f}  (stable points {pts.y_minus:+.4f}, {pts.y_plus:+.4f}) ===")
    sol = solve_stationary(spec, D, grid=GRID)
    v = sol.profile.values
    print(f"classification: {sol.classification}")
    print(f"center value y(0) = {v[100]:+.4f}, boundary y(+-1) = {v[0]:+.4f}")
    print(f"residual {sol.residual:.2e}, relaxation time {sol.t_exit:.0f}")
    if v.max() - v.min() < 1e-3:
        print(f"(flat profile at y = {v[0]:+.4f}; nothing to plot)")
    else:
        print(ascii_profile(v))
