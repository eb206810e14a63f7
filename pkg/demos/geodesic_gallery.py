"""Gallery of geodesic front tracks.

Integrates unit-speed geodesics for several momentum parameters,
classifies each front track, measures widths and the period/advance
pair, and renders the wide/narrow comparison figure.

Run:  python3 demos/geodesic_gallery.py
"""

import os

from bikegeo import (canonical_orient, canonical_vertex_state, classify,
                     back_width, front_width, integrate_geodesic,
                     period_and_advance)
from bikegeo.cli import _scene_geod
from bikegeo.io import write_svg

OUT = os.environ.get("BIKEGEO_OUTPUT_DIR", "out")
os.makedirs(OUT, exist_ok=True)

print("momentum  class      kappa range        width (front/back)   T, L")
for a in (0.3, 0.5, 0.8, 1.5, 2.0, 4.0):
    path = integrate_geodesic(canonical_vertex_state(a), 25.0)
    tag = classify(a, 1.0 + a).tag
    oriented, _motion = canonical_orient(path)
    fw = front_width(oriented)
    bw = back_width(oriented)
    T, L = period_and_advance(oriented)
    k = path.kappa
    print(f"a={a:<4}    {tag:<9}  [{k.min():.4f}, {k.max():.4f}]   "
          f"{fw:.6f} / {bw:.6f}   T={T:.4f}, L={L:.4f}")

# the same shape appears wide (a) and narrow (1/a); draw both
target = os.path.join(OUT, "geodesic_gallery.svg")
write_svg(_scene_geod(1e-3), target)
print(f"\nwide vs narrow figure written to {target}")
