"""
Three routes to the Gauss linking integral
==========================================

For two open polygonal curves the linking integral is not an integer, but
it still equals the average signed crossing count over all projection
directions. The closed-form edge kernel, adaptive quadrature and a
Monte-Carlo crossing average should all agree.
"""

import numpy as np

from mgli import Polyline, arclength_partition, polyline_gli, projection_crossing_estimate, quadrature_gli

rng = np.random.default_rng(7)
a = Polyline(np.cumsum(rng.normal(size=(8, 3)), axis=0))
b = Polyline(np.cumsum(rng.normal(size=(8, 3)), axis=0) + [0.5, 0, 0])

exact = polyline_gli(a, b)
print(f"closed form          : {exact:+.6f}")

for n in (1_000, 10_000, 100_000):
    est, se = projection_crossing_estimate(a, b, n, seed=1, return_stderr=True)
    print(f"crossings, n={n:>7d}: {est:+.6f} +- {se:.6f}  ({(est - exact) / se:+.1f} se)")


# Quadrature treats each whole curve as one segment; its cells are aligned
# with the polygon vertices so the kinks do not slow convergence.
whole_a, whole_b = arclength_partition(a, 1)[0], arclength_partition(b, 1)[0]
print(f"quadrature           : {quadrature_gli(whole_a, whole_b, tol=1e-8):+.6f}")
