"""Walk through the standard spin-tensor basis.

The rank-n standard tensors are simultaneously an orthonormal basis of the
space of totally symmetric traceless tensors and a basis of spin-n wave
functions.  This script builds them three independent ways, confirms they
coincide, and uses them as a projector.
"""

import numpy as np

from irtensor import epsilon, irreducible_part, spin_squared

rng = np.random.default_rng(1)

print("rank-1 basis (the familiar polarization vectors):")
for m in (1, 0, -1):
    print(f"  m={m:+d}:", np.round(epsilon(1, m), 6))

print("\nthree construction routes, rank 4:")
for method in ("recursive", "explicit", "harmonic"):
    e = epsilon(4, 2, method)
    print(f"  {method:9s} entry [0,0,1,2] = {e[0, 0, 1, 2]:.12f}")

print("\northonormality at rank 3 (Gram matrix deviation from identity):")
gram = np.array(
    [
        [
            np.tensordot(np.conj(epsilon(3, mp)), epsilon(3, m), axes=3)
            for m in range(-3, 4)
        ]
        for mp in range(-3, 4)
    ]
)
print(f"  max deviation: {np.max(np.abs(gram - np.eye(7))):.2e}")

print("\nthe basis doubles as spin eigenfunctions: S^2 eps = n(n+1) eps")
e = epsilon(3, 1)
residual = spin_squared(3).apply(e) - 12 * e
print(f"  eigenvalue residual at n=3: {np.max(np.abs(residual)):.2e}")

print("\nsumming |eps><eps| over m projects any tensor onto its irreducible part:")
a = rng.normal(size=(3, 3, 3)) + 1j * rng.normal(size=(3, 3, 3))
p = irreducible_part(a)
print(f"  projector is idempotent: {np.max(np.abs(irreducible_part(p) - p)):.2e}")
print(f"  output is symmetric:     {np.max(np.abs(p - p.transpose(1, 0, 2))):.2e}")
print(f"  output is traceless:     {np.max(np.abs(np.trace(p, axis1=0, axis2=1))):.2e}")
