"""Virtual magic-angle spinning with error-compensated axis cycling.

Three equal delays separated by 2pi/3 rotations about the (1,1,1) diagonal
average away the mu = 0 components of a rank-2 field (kappa_{2,0,mu'} = 0),
like magic-angle spinning does mechanically.  Miscalibrate the flip angle
and the bare cycle loses the suppression at first order; replacing each
rotation with the compensated four-pulse block pushes the error to second
order.
"""

import os

import numpy as np

from togglekit import mas_kappa_sweep, suppression_order_slopes
from togglekit.virtualmas import sweep_csv

grid = np.linspace(0.8, 1.2, 21)
rows_u = mas_kappa_sweep(False, grid)
rows_c = mas_kappa_sweep(True, grid)

print("beta'/beta   bare max|kappa_20|   compensated")
for ru, rc_ in zip(rows_u[::4], rows_c[::4]):
    print(f"  {ru.beta_scale:.2f} {ru.max_abs:18.6f} {rc_.max_abs:14.6f}")

slope_u, slope_c = suppression_order_slopes()
print(f"\nleading-order slopes at the nominal angle: bare {slope_u:.3f},"
      f" compensated {slope_c:.2e}")
print("bare error is first order in the miscalibration; compensated is"
      " second order or higher")

os.makedirs("demo_output", exist_ok=True)
path = os.path.join("demo_output", "virtual_mas_sweep.csv")
with open(path, "w", newline="\n") as fh:
    fh.write(sweep_csv(grid))
print("wrote", path)
