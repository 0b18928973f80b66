"""Spherical harmonics as tensor contractions, and their derivatives to any
order as closed-form tensor expansions.
"""

import numpy as np

from irtensor import bipolar, tensor_sh, ylm, ylm_derivatives

d = np.array([1.0, 1.0, 1.0]) / np.sqrt(3)

print("Y_lm by Legendre functions vs by tensor contraction:")
for l, m in ((2, 0), (5, 3), (8, -4)):
    a = ylm(l, m, d, "analytic")
    b = ylm(l, m, d, "tensorial")
    print(f"  l={l}, m={m:+d}: {a:.10f}  (routes differ by {abs(a - b):.1e})")

print("\nbipolar harmonic of two directions, coupling sum vs closed tensor form:")
d2 = np.array([0.2, -0.9, 0.4])
for l1, l2, j in ((2, 2, 1), (3, 2, 3), (4, 4, 2)):
    a = bipolar(l1, l2, j, 1, d, d2, "cg_sum")
    b = bipolar(l1, l2, j, 1, d, d2, "tensorial")
    print(f"  ({l1},{l2})->{j}: {a:.10f}  (difference {abs(a - b):.1e})")

print("\nsecond derivatives of Y_lm as one tensor identity:")
l, m = 4, 2
hess = ylm_derivatives(2, l, m, d)
print(f"  |r|^2 d_i d_j Y_{l}{m} at the diagonal direction:")
print(np.round(hess.real, 6))
print(f"  trace + l(l+1) Y = {abs(np.trace(hess) + l * (l + 1) * ylm(l, m, d)):.2e}"
      "  (the angular Laplacian eigenvalue)")

print("\nvector spherical harmonic via helicity recoupling vs coupling sum:")
v1 = tensor_sh(3, 1, 3, 2, d, "recoupled")
v2 = tensor_sh(3, 1, 3, 2, d, "cg_sum")
print(f"  max difference: {np.max(np.abs(v1 - v2)):.2e}")
