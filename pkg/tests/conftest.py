import itertools

import numpy as np
import pytest

from irtensor import harmonics as hm

SEED = 0xC1EB5C


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_unit(rng, avoid_pole=0.0):
    """Random direction; optionally resampled away from the z-axis."""
    while True:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        if abs(v[2]) <= 1.0 - avoid_pole:
            return v


def fd_ylm_derivatives(order, l, m, direction, step):
    """Richardson-extrapolated central differences of Y_lm(r/|r|) at |r| = 1.

    Independent oracle for the closed-form derivative tensors; the step is
    chosen per order to balance truncation against roundoff.
    """
    d = hm.unit(direction)

    def f(pt):
        return hm.ylm(l, m, pt, "analytic")

    def deriv(pt, axes, h):
        if not axes:
            return f(pt)
        e = np.zeros(3)
        e[axes[0]] = h
        return (deriv(pt + e, axes[1:], h) - deriv(pt - e, axes[1:], h)) / (2 * h)

    out = np.zeros((3,) * order, dtype=complex)
    for idx in itertools.product(range(3), repeat=order):
        d1 = deriv(d, idx, step)
        d2 = deriv(d, idx, step / 2)
        out[idx] = (4 * d2 - d1) / 3
    return out


FD_STEPS = {1: 1e-5, 2: 1e-4, 3: 8e-4}
