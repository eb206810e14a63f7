"""Bicycle correspondents of the circle are pressurized elasticae.

A correspondent shares a back track with a lift of the original curve
and its front track is the flip 2b - f.  With the back wheel at the
circle's center the correspondent is the circle itself; off-center
lifts produce curves whose curvature satisfies
kappa'' + kappa^3/2 + A*kappa = C with C != 0.

Run:  python3 demos/circle_correspondents.py
"""

import math
import os

import numpy as np

from bikegeo import FrontTrackSpec, correspondent, horizontal_lift, pressurized_fit
from bikegeo.cli import _scene_pressurized
from bikegeo.io import write_svg

OUT = os.environ.get("BIKEGEO_OUTPUT_DIR", "out")
os.makedirs(OUT, exist_ok=True)

circle = FrontTrackSpec.circle(1.0, 0.0, 4 * math.pi)

center_lift = horizontal_lift(circle, 0.0, ell=1.0)
print(f"theta0 = 0: back wheel pinned at the center "
      f"(max |b| = {np.max(np.abs(center_lift.back)):.2e}); "
      "the correspondent is the circle itself")

for theta0 in (0.4, 0.7, 1.9):
    corr = correspondent(circle, theta0, ell=1.0)
    A, C, residual = pressurized_fit(corr)
    print(f"theta0 = {theta0}: kappa in [{corr.kappa.min():.3f}, "
          f"{corr.kappa.max():.3f}], fit A = {A:+.4f}, C = {C:+.4f}, "
          f"defect {residual:.2e}")

target = os.path.join(OUT, "circle_correspondents.svg")
write_svg(_scene_pressurized(1e-3), target)
print(f"figure written to {target}")
