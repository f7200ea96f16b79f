"""The headline fact: toggling-frame transformations are cyclic.

Take any sequence of rotations through 2*pi/m about arbitrary 3D axes.
Transforming to the toggling frame replaces each axis by the inverse of
the accumulated propagator acting on it.  Do that m times and the original
axes come back, despite the non-commutativity of everything involved.
"""

import numpy as np

from togglekit import (closed_form_toggling, cyclicity_order, sequence_from_axes,
                       toggling_map_iter)

rng = np.random.default_rng(2024)

# a random 5-element sequence of 2pi/3 rotations (m = 3)
axes = rng.normal(size=(5, 3))
axes /= np.linalg.norm(axes, axis=1, keepdims=True)
seq = sequence_from_axes("demo", 2 * np.pi / 3, axes)

print("original axes:")
print(np.round(seq.axes, 4))
for k in (1, 2, 3):
    mapped = toggling_map_iter(seq, k)
    dev = np.max(np.abs(mapped.axes - seq.axes))
    print(f"\nafter {k} toggling transformation(s), max deviation from original = {dev:.2e}")
    if k < 3:
        print(np.round(mapped.axes, 4))

print("\ndetected cycle length:", cyclicity_order(seq, 8))

# the closed form gives depth-m axes in one shot: a single inverse prefix
# product with every angle multiplied by m
direct = closed_form_toggling(seq, 2)
iterated = toggling_map_iter(seq, 2)
print("closed form vs iterated, max deviation:",
      f"{np.max(np.abs(direct.axes - iterated.axes)):.2e}")

# mixed angles still cycle, with the period set by the lcm of the orders
betas = np.array([2 * np.pi / 3, np.pi / 2, np.pi / 2, 2 * np.pi / 3, np.pi / 2])
mixed = sequence_from_axes("mixed", betas, axes)
print("\nmixed 2pi/3 and pi/2 angles: cycle length =", cyclicity_order(mixed, 20),
      "(= lcm(3, 4))")
