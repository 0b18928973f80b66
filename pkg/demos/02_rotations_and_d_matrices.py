"""Wigner D-matrices straight from 3x3 rotation matrices.

Rotating a rank-l standard tensor slot by slot and projecting back onto the
basis produces the D-matrix: no Euler-angle polynomials required.  The same
matrix also falls out of sums of products of rank-1 D-matrix entries.
"""

import numpy as np

from irtensor import epsilon, rotation, tensor_rotate, wigner_d

rng = np.random.default_rng(2)

r = rotation(axis=(0.3, -0.2, 0.9), angle=1.1)
print("rotation matrix:")
print(np.round(r.matrix, 4))

l = 3
d = wigner_d(l, r)
print(f"\nD^{l} is unitary: max |D D^H - I| = "
      f"{np.max(np.abs(d @ d.conj().T - np.eye(2 * l + 1))):.2e}")

dp = wigner_d(l, r, "product_expansion")
print(f"product-expansion route agrees: {np.max(np.abs(d - dp)):.2e}")

print("\nrotating a basis tensor reproduces a D-matrix column:")
m = 1
rotated = tensor_rotate(r, epsilon(l, m))
rebuilt = sum(
    d[a, l - m] * np.asarray(epsilon(l, mp))
    for a, mp in enumerate(range(l, -l - 1, -1))
)
print(f"  max difference: {np.max(np.abs(rotated - rebuilt)):.2e}")

r1 = rotation(euler=(0.4, 1.0, -0.3))
r2 = rotation(axis=(1, 1, 0), angle=0.8)
lhs = wigner_d(2, r1 @ r2)
rhs = wigner_d(2, r1) @ wigner_d(2, r2)
print(f"\ngroup homomorphism at l=2: {np.max(np.abs(lhs - rhs)):.2e}")
