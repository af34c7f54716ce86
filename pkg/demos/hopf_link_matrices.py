"""
Segmentation matrices of a Hopf link
====================================

Two unit circles that pass through each other's centre form a Hopf link.
Cutting each circle into equal-arc pieces and integrating the Gauss
integrand piece against piece gives a segmentation matrix whose entries
add up to the linking number.
"""

import numpy as np

from mgli import Structure, grand_sum, partition_structure, quadrature_gli
from mgli import sample_parametric, segmentation_matrix
from mgli.curves import hopf_link

c1, c2 = hopf_link()

# Adaptive quadrature on the smooth curves: rows are quarters of the first
# circle, columns are quarters (then sixths) of the second.
for m in (4, 6):
    g = np.array([[quadrature_gli(c1, c2, (i / 4, (i + 1) / 4), (j / m, (j + 1) / m))
                   for j in range(m)] for i in range(4)])
    print(f"4 x {m} matrix from quadrature:")
    print(np.array2string(g, precision=4, suppress_small=True))
    print("grand sum:", round(g.sum(), 6))

# The same matrix from sampled polygons and the closed-form edge kernel.
# Refining the pieces redistributes the total but never changes it.
s = Structure({"l1": sample_parametric(c1, 2000), "l2": sample_parametric(c2, 2000)})
for n in (4, 8, 16):
    rows = partition_structure(s, 4, ["l1"])
    cols = partition_structure(s, n, ["l2"])
    m = segmentation_matrix(rows, cols)
    print(f"polygon 4 x {n}: grand sum = {grand_sum(m):+.9f}")
