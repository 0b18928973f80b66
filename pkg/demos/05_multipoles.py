"""Electric and magnetic multipoles of discrete sources.

Spherical moments and cartesian tensors are computed independently from the
same source, converted into each other exactly, and both expansions are
compared against direct integration of the potential.
"""

import math

import numpy as np

from irtensor import (
    ChargeDistribution,
    CurrentDistribution,
    electric_moments,
    electric_potential,
    magnetic_moments,
    vector_potential,
)
from irtensor.multipoles import (
    electric_spherical_from_cartesian,
    magnetic_cartesian_from_spherical,
)

rng = np.random.default_rng(5)

# --- electric: a random charge cloud -------------------------------------
cloud = ChargeDistribution.from_arrays(
    rng.normal(size=(8, 3)) * 0.5, rng.uniform(0.5, 1.5, 8)
)
moments = electric_moments(cloud, 8)
print(f"charge cloud: total charge {cloud.total_charge():.4f}, "
      f"radius {cloud.radius():.3f}")
print("dipole tensor:", np.round(moments.cartesian[1].real, 5))

sph = electric_spherical_from_cartesian(2, moments.cartesian[2])
err = max(abs(sph[k] - moments.spherical[k]) for k in sph)
print(f"quadrupole: spherical from cartesian matches direct sum to {err:.1e}")

r = 3.0 * cloud.radius() * np.array([0.2, -0.8, 0.55]) / np.linalg.norm([0.2, -0.8, 0.55])
direct = electric_potential(cloud, r, "direct")
print("\npotential at 3x the source radius:")
for nmax in (0, 2, 4, 8):
    approx = electric_potential(cloud, r, "spherical", nmax)
    print(f"  n_max={nmax}: rel. error {abs(approx - direct) / abs(direct):.2e}")

# --- magnetic: a tilted circular loop -------------------------------------
tilt = 0.7
rot = np.array(
    [[1, 0, 0], [0, math.cos(tilt), -math.sin(tilt)], [0, math.sin(tilt), math.cos(tilt)]]
)
verts = [
    (rot @ np.array([math.cos(2 * math.pi * k / 96), math.sin(2 * math.pi * k / 96), 0])).tolist()
    for k in range(96)
]
verts.append(verts[0])
loop = CurrentDistribution.from_loops([(1.5, verts)])

mm = magnetic_moments(loop, 4)
print(f"\ntilted circular loop, current 1.5: dipole tensor "
      f"{np.round(mm.cartesian[1].real, 4)}")
cart = magnetic_cartesian_from_spherical(1, mm.spherical)
print(f"spherical -> cartesian round trip error: "
      f"{np.max(np.abs(cart - mm.cartesian[1])):.1e}")
print(f"electric-derivative channel (vanishes for static loops): "
      f"{max(abs(v) for v in mm.residual.values()):.1e}")

r = np.array([2.3, -1.1, 3.0])
a_direct = vector_potential(loop, r, "direct")
a_exp = vector_potential(loop, r, "spherical", 4)
print(f"\nvector potential at |r|={np.linalg.norm(r):.2f}:")
print(f"  direct    {np.round(a_direct, 6)}")
print(f"  expansion {np.round(a_exp, 6)}")
print(f"  transverse: r . A = {abs(np.dot(r, a_exp)):.1e}")
