"""Quadrature on the unit sphere.

Gauss-Legendre nodes in cos(theta) crossed with a uniform periodic trapezoid
rule in phi.  The grid built for a band limit ``lmax`` integrates products of
spherical harmonics up to degree lmax exactly (to roundoff), which is what
the orthonormality checks and the operator-block oracles need.
"""

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def sphere_grid(lmax):
    """Quadrature nodes and weights for polynomials of degree <= 2*lmax.

    Returns ``(points, weights)`` with points of shape (N, 3) on the unit
    sphere and weights summing to 4*pi.
    """
    n_theta = (2 * lmax + 3 + 1) // 2
    n_phi_total = 2 * (2 * lmax + 1) + 1  # trapezoid points incl. repeated endpoint
    n_phi = n_phi_total - 1               # distinct nodes
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phis = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    sin_theta = np.sqrt(1.0 - x**2)
    pts = np.empty((n_theta * n_phi, 3))
    wts = np.empty(n_theta * n_phi)
    k = 0
    for i in range(n_theta):
        for phi in phis:
            pts[k] = (
                sin_theta[i] * math.cos(phi),
                sin_theta[i] * math.sin(phi),
                x[i],
            )
            wts[k] = w[i] * (2 * math.pi / n_phi)
            k += 1
    pts.setflags(write=False)
    wts.setflags(write=False)
    return pts, wts


def integrate(f, lmax):
    """Integrate a callable f(direction) over the sphere."""
    pts, wts = sphere_grid(lmax)
    return sum(w * f(p) for p, w in zip(pts, wts))
