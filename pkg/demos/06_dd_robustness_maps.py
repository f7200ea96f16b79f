"""Robustness maps for dynamical decoupling sequences.

Cells are the toggled-axis centroid magnitude of the pulse train after an
oscillating z-field of frequency omega is absorbed into the pulse phases,
swept against the flip-angle scale beta'/beta.  Small values mean the
first-order pulse error cancels; UDD never cancels it, XY4/KDD cancel it
over a wide flip-angle plateau, and the anti-DD variant (dual inner
sequence) swaps the plateau from the nominal angle to small angles.
"""

import os

import numpy as np

from togglekit import anti_dd, centroid_map, named, named_dd
from togglekit.ddsim import map_to_csv

os.makedirs("demo_output", exist_ok=True)

sequences = {
    "udd10": named_dd("udd(10)"),
    "xy4": named_dd("xy4"),
    "kdd20": named_dd("kdd20"),
    "anti_kdd": anti_dd(named_dd("xy4"), named("u5")),
}

probe_scales = np.array([0.1, 0.5, 0.9, 1.0, 1.1])
for name, dd in sequences.items():
    cm = centroid_map(dd)   # default grids: omega in [0.1, 100]/T, scale in [0, 2]
    path = os.path.join("demo_output", f"ddmap_{name}.csv")
    with open(path, "w", newline="\n") as fh:
        fh.write(map_to_csv(cm))
    probe = centroid_map(dd, omega_grid=[0.1 / dd.total_time],
                         beta_scale_grid=probe_scales)
    cells = "  ".join(f"{s:.1f}:{v:.3f}" for s, v in zip(probe_scales, probe.values[0]))
    print(f"{name:9s} low-omega row  {cells}   -> {path}")

print("\nread the rows: UDD pins |C| near 1 at the nominal angle; XY4/KDD dip"
      " around scale 1; anti-KDD dips near scale 0 and walls up next to 1")
