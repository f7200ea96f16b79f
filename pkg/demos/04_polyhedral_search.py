"""Exhaustive synthesis of compensated sequences on polyhedral axis sets.

Recipe: pick toggled axes from the vertex set so they balance (killing the
first-order flip-angle error), reverse-transform them to a playable
sequence, and keep the candidates whose net propagator hits the target.
This rediscovers the compensated m=3 and m=4 gates the catalog ships.
"""

import numpy as np

from togglekit import (SearchSpec, dedupe, enumerate_balanced, from_axis_angle,
                       named, rotation_error, sequences_equal)
from togglekit.search import diagonal_quad, octahedron, tetrahedron

CYCLING = from_axis_angle(np.ones(3) / np.sqrt(3), 2 * np.pi / 3)
PI_X = from_axis_angle(np.array([1.0, 0, 0]), np.pi)
BETA3 = 2 * np.pi / 3

# m=3, n=4 on the tetrahedron: compensated axis-cycling gates
res = enumerate_balanced(SearchSpec(tetrahedron(), 4, 3, CYCLING))
print(f"tetrahedron, m=3, n=4, axis-cycling target: {len(res)} solutions")
p34 = named("p34")
print("  contains the catalog p34:", any(sequences_equal(s, p34) for s in res))
print("  p34 error at 1.15x nominal:",
      f"{rotation_error(p34, 1.15 * BETA3, CYCLING):.2f} deg",
      " (bare pulse:", f"{np.degrees(0.15 * BETA3):.2f} deg)")

# m=3, n=4 on a diagonal plane of the cube: a compensated (pi)_0
res = enumerate_balanced(SearchSpec(diagonal_quad(), 4, 3, PI_X))
print(f"\ndiagonal quad, m=3, n=4, (pi)_0 target: {len(res)} solutions")
print("  contains the catalog i34:",
      any(sequences_equal(s, named("i34")) for s in res))

# m=4, n=6 on the octahedron: the equatorial compensated pi rotation
res = enumerate_balanced(SearchSpec(octahedron(), 6, 4, "equatorial_pi"))
classes = dedupe(res, "global_z")
rf = [s for s in res if s.is_equatorial(1e-9)]
print(f"\noctahedron, m=4, n=6, equatorial-pi target: {len(res)} solutions,"
      f" {len(classes)} classes up to a global z rotation,"
      f" {len(rf)} with rf-playable (equatorial) axes")
print("  contains Derome's (pi)_y:",
      any(sequences_equal(s, named("derome")) for s in res))

# allowing non-equatorial axes: compensated axis-cycling from pi/2 pulses
res = enumerate_balanced(SearchSpec(octahedron(), 6, 4, "axis_cycling"))
print(f"\noctahedron, m=4, n=6, axis-cycling target: {len(res)} solutions")
for name in ("p46", "p46_prime"):
    print(f"  contains {name}:", any(sequences_equal(s, named(name)) for s in res))
