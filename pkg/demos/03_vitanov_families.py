"""The antisymmetrized Vitanov families and their dualities.

nprime(n) is narrowband, bprime(n) broadband; they are duals of each other,
which shows up as an alternating-sign relation between adjacent phase
differences.  Scaling all phases by an integer k (not dividing n) keeps
the pairing.  Nesting the families produces band-pass sequences, and the
nesting commutes with the toggling map, so nested duals are again duals.
"""

import numpy as np

from togglekit import (centroid, finite_difference_duality_check, named,
                       symmetry_class, toggling_map)

for n in (5, 9):
    np_seq = named(f"nprime({n})")
    bp_seq = named(f"bprime({n})")
    print(f"n = {n}")
    print("  nprime phases/(2pi/n):", np.round(np_seq.phases / (2 * np.pi / n), 3),
          f" [{symmetry_class(np_seq)}]")
    print("  bprime phases/(2pi/n):", np.round(bp_seq.phases / (2 * np.pi / n), 3),
          f" [{symmetry_class(bp_seq)}]")
    print("  |centroid| plain:  nprime", f"{np.linalg.norm(centroid(np_seq.axes)):.2e}",
          " bprime", f"{np.linalg.norm(centroid(bp_seq.axes)):.2e}")
    print("  |centroid| toggled: nprime",
          f"{np.linalg.norm(centroid(toggling_map(np_seq).axes)):.2e}",
          " bprime", f"{np.linalg.norm(centroid(toggling_map(bp_seq).axes)):.2e}")
    print("  duality of differences:",
          finite_difference_duality_check(np_seq, bp_seq))

# integer phase scaling preserves the pairing as long as k does not divide n
for k in (2, 4):
    ok = finite_difference_duality_check(named(f"nprime(7,{k})"), named(f"bprime(7,{k})"))
    print(f"k = {k}: scaled pair still dual: {ok}")

# band-pass nesting: balanced in both frames, and nested duals are duals
bn = named("nest_bn(3,5)")
nb = named("nest_nb(3,5)")
print("\nnest_bn(3,5):", len(bn), "pulses;",
      "|C0| =", f"{np.linalg.norm(centroid(bn.axes)):.2e},",
      "|C1| =", f"{np.linalg.norm(centroid(toggling_map(bn).axes)):.2e}")
print("nested duals are duals:", finite_difference_duality_check(nb, bn))
