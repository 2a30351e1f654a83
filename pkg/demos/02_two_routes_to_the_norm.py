r"""
Two routes to ||p(U)||
----------------------
``p(U)`` is a polynomial in a unitary matrix.  Its operator norm can be
found directly by power iteration, or read off the eigenvalues ``w_i`` of
``U`` as ``max |p(w_i)|``.  The two computations share no code, so their
agreement is a real check.
"""
import numpy as np

from maxmod import Poly, build_dilation, eval_matrix, operator_norm, unitary_spectrum

p = Poly([0.5, -1j, 0.0, 0.75, 0.2 + 0.1j])
d = build_dilation(-0.2 + 0.6j, p.degree())

direct = operator_norm(eval_matrix(p, d.matrix))
spectrum = unitary_spectrum(d.matrix)
via_eigs = max(abs(p(w)) for w in spectrum.eigenvalues)
print("power iteration:", direct)
print("eigenvalues    :", via_eigs)

#%%
# Every eigenvalue lies on the unit circle, and the frame undoes the
# diagonalization to machine precision.
print(np.abs(spectrum.eigenvalues))
print("reconstruction residual:", spectrum.reconstruction_residual)

#%%
# Near-ties between the two largest singular values are where plain power
# iteration crawls; here two peaks of |p| on the circle are almost level.
q = Poly([0, 0, 1, 0, 0, 0, 0.999999])
u = build_dilation(0.1, q.degree()).matrix
print(operator_norm(eval_matrix(q, u)), np.linalg.norm(eval_matrix(q, u), 2))
