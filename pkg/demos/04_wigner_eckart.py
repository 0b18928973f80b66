"""The Wigner-Eckart factorization for cartesian tensor operators.

A (2l'+1)(2l+1) block of rank-n tensors collapses to a single reduced number
once the coupling coefficients and basis tensors are factored out.  The
quadrature-built operator blocks here are constructed with no knowledge of
the closed forms they confirm.
"""

import numpy as np

from irtensor import (
    irreducible_part,
    reduced_me_ylm,
    sito_from_cito,
    stevens_factor,
    we_matrix_element,
)
from irtensor.tensor_core import outer_power
from irtensor.wigner_eckart import orbital_block

lp, l, n = 4, 2, 2
spec = orbital_block(lambda p: irreducible_part(outer_power(p, n)), lp, l, n)
print(f"operator: irreducible direction square between l'={lp} and l={l}")
print(f"block array shape: {spec.blocks.shape}  "
      f"({spec.blocks.size} complex numbers)")

rme = reduced_me_ylm(lp, n, l, cartesian=True).value
print(f"\nthe whole block is one number: <{lp}||.||{l}> = {rme:.12f}")

worst = 0.0
for a, mp in enumerate(range(lp, -lp - 1, -1)):
    for b, m in enumerate(range(l, -l - 1, -1)):
        pred = we_matrix_element(rme, lp, mp, l, m, n=n, klass="cito")
        worst = max(worst, float(np.max(np.abs(pred - spec.blocks[a, b]))))
print(f"reassembled from coupling coefficients: max deviation {worst:.2e}")

comps = sito_from_cito(spec)
print(f"\nspherical components carry the same content: {sorted(comps)} -> "
      f"{comps[2].shape} matrices each")

print("\noperator equivalents: direction tensors vs spin tensors inside one multiplet")
for j in (1, 2, 3, 4):
    print(f"  j={j}: factor {stevens_factor(j, 2):+.10f}")
