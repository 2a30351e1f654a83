r"""
Dilating a point of the disc
----------------------------
Any point ``z`` with ``|z| <= 1`` sits in the top-left corner of a unitary
matrix ``U`` whose powers keep reproducing powers of ``z`` there, up to the
size of the matrix.  This script builds that matrix and looks at it.
"""
import numpy as np

from maxmod import build_dilation, compression_moment, moment_residual, unitarity_residual

np.set_printoptions(precision=4, suppress=True)

z = 0.3 + 0.4j
d = build_dilation(z, 4)
print(d.matrix)

#%%
# The matrix is unitary up to roundoff.
print("unitarity residual:", unitarity_residual(d.matrix))

#%%
# Top-left entries of U^k against z^k.  They agree for k = 1..4 and part ways
# from k = 5 on, once the chain of ones has wrapped around.
for k in range(7):
    print(k, compression_moment(d, k), z**k)
print("worst disagreement for k <= n:", moment_residual(d))

#%%
# On the circle the defect s vanishes and the corner decouples.
print(build_dilation(1j, 3).matrix)
