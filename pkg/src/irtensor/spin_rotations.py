"""Spin matrices on rank-n tensor space, 3D rotations, and Wigner D-matrices.

The generator of rotations on rank-n tensors acts slot by slot, so the dense
spin matrices are Kronecker sums of the rank-1 generator ``(S_k)_{ij} =
i eps_{ikj}``.  Wigner D-matrices are obtained by taking spherical components
of the n-fold Kronecker power of an ordinary 3x3 rotation matrix; no Euler
little-d polynomials are involved.

Matrix representations are dense up to ``dense_cap()`` (default rank 6) and
applied lazily, slot by slot, beyond.
"""

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tensor_core as tc
from .standard_basis import _epsilon_recursive, epsilon

DEFAULT_DENSE_CAP = 6


def dense_cap():
    env = os.environ.get("IRTENSOR_RANK_CAP")
    return int(env) if env else DEFAULT_DENSE_CAP


_S1 = None


def _s1_matrices():
    global _S1
    if _S1 is None:
        eps3 = tc.levi_civita().real
        _S1 = tuple(1j * eps3[:, k, :] for k in range(3))
    return _S1


@dataclass(frozen=True)
class SpinOperator:
    """A spin-matrix component (or the squared spin) on rank-n tensor space."""

    n: int
    component: object  # 'x' | 'y' | 'z' | 0 | 1 | 2 | 'squared'
    matrix: object     # dense (3^n, 3^n) ndarray, or None when lazy

    def dense(self):
        """The dense matrix; raises past the dense-storage cap."""
        if self.matrix is None:
            raise ValueError(
                f"rank {self.n} exceeds the dense cap {dense_cap()}; "
                "use apply() instead"
            )
        return self.matrix

    def apply(self, a):
        """Apply the operator to a rank-n tensor."""
        a = tc.as_tensor(a)
        if a.ndim != self.n:
            raise ValueError(f"operator acts on rank {self.n}, got rank {a.ndim}")
        if self.matrix is not None:
            return (self.matrix @ a.reshape(-1)).reshape(a.shape)
        if self.component == "squared":
            out = np.zeros(a.shape, dtype=complex)
            for k in range(3):
                out += _apply_component(_apply_component(a, k), k)
            return out
        return _apply_component(a, _axis_index(self.component))

    def __matmul__(self, a):
        return self.apply(a)


def _axis_index(component):
    try:
        return {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}[component]
    except KeyError:
        raise ValueError(f"unknown spin component {component!r}") from None


def _apply_component(a, k):
    s1 = _s1_matrices()[k]
    out = np.zeros(a.shape, dtype=complex)
    for t in range(a.ndim):
        out += np.moveaxis(np.tensordot(s1, a, axes=([1], [t])), 0, t)
    return out


@lru_cache(maxsize=None)
def _spin_matrix_dense(n, axis):
    s1 = _s1_matrices()[axis]
    out = np.zeros((3**n, 3**n), dtype=complex)
    for t in range(n):
        term = np.ones((1, 1), dtype=complex)
        for p in range(n):
            term = np.kron(term, s1 if p == t else np.eye(3))
        out += term
    out.setflags(write=False)
    return out


def spin_matrix(n, component):
    """Spin-matrix component on rank-n tensor space.

    Dense for n up to the cap, lazy (apply-only) beyond; request
    ``.matrix`` only in the dense regime.
    """
    if n < 1:
        raise ValueError("spin matrices need n >= 1")
    axis = _axis_index(component)
    matrix = _spin_matrix_dense(n, axis) if n <= dense_cap() else None
    return SpinOperator(n=n, component=component, matrix=matrix)


@lru_cache(maxsize=None)
def _spin_squared_dense(n):
    # direct assembly of the squared-spin matrix: 2n on the diagonal plus
    # exchange-minus-double-trace terms over slot pairs
    dim = 3**n
    out = 2 * n * np.eye(dim, dtype=complex)
    for offs_i, I in enumerate(itertools.product((0, 1, 2), repeat=n)):
        for p in range(n):
            for t in range(n):
                if p == t:
                    continue
                # exchange term: delta_{i_p h_t} delta_{i_t h_p}
                H = list(I)
                H[p], H[t] = I[t], I[p]
                out[offs_i, tc.encode_index(H)] += 1.0
                # trace term: -delta_{i_p i_t} delta_{h_p h_t}
                if I[p] == I[t]:
                    for c in range(3):
                        H = list(I)
                        H[p] = H[t] = c
                        out[offs_i, tc.encode_index(H)] -= 1.0
    out.setflags(write=False)
    return out


def spin_squared(n):
    """The squared-spin operator on rank-n tensor space."""
    if n < 1:
        raise ValueError("spin matrices need n >= 1")
    matrix = _spin_squared_dense(n) if n <= dense_cap() else None
    return SpinOperator(n=n, component="squared", matrix=matrix)


# -- rotations ----------------------------------------------------------------

@dataclass(frozen=True)
class Rotation:
    """A proper rotation of 3-space with its provenance parameters."""

    matrix: object
    provenance: tuple

    def __matmul__(self, other):
        if isinstance(other, Rotation):
            return Rotation(
                matrix=self.matrix @ other.matrix,
                provenance=("compose", self.provenance, other.provenance),
            )
        return self.matrix @ other

    @property
    def T(self):
        return Rotation(matrix=self.matrix.T.copy(), provenance=("inverse", self.provenance))


def rotation_axis_angle(axis, angle):
    """Rotation about ``axis`` by ``angle`` (radians), via the Rodrigues formula."""
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0:
        if angle == 0:
            return Rotation(matrix=np.eye(3), provenance=("axis-angle", (0, 0, 1), 0.0))
        raise ValueError("rotation axis must be nonzero")
    n = axis / norm
    k = np.array(
        [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]]
    )
    r = np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)
    return Rotation(matrix=r, provenance=("axis-angle", tuple(n), float(angle)))


def rotation_euler(alpha, beta, gamma):
    """Rotation with z-y-z Euler angles, composed as Rz(alpha) Ry(beta) Rz(gamma)."""
    r = (
        rotation_axis_angle((0, 0, 1), alpha).matrix
        @ rotation_axis_angle((0, 1, 0), beta).matrix
        @ rotation_axis_angle((0, 0, 1), gamma).matrix
    )
    return Rotation(matrix=r, provenance=("euler", float(alpha), float(beta), float(gamma)))


def rotation(*, axis=None, angle=None, euler=None):
    """Build a Rotation from axis-angle or Euler z-y-z parameters."""
    if euler is not None:
        if axis is not None or angle is not None:
            raise ValueError("give either axis/angle or euler, not both")
        return rotation_euler(*euler)
    if axis is None or angle is None:
        raise ValueError("axis-angle form needs both axis and angle")
    return rotation_axis_angle(axis, angle)


def random_rotation(rng):
    """Haar-ish random rotation from a random axis and angle."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return rotation_axis_angle(v, rng.uniform(0.0, 2 * math.pi))


def _rotation_matrix(r):
    return r.matrix if isinstance(r, Rotation) else np.asarray(r, dtype=float)


def tensor_rotate(r, a):
    """Rotate a rank-n tensor: contract every slot with the rotation matrix."""
    m = _rotation_matrix(r)
    a = tc.as_tensor(a)
    out = a
    for t in range(a.ndim):
        out = np.moveaxis(np.tensordot(m, out, axes=([1], [t])), 0, t)
    return out


def rotation_generator_exponential(theta_vec, n=1):
    """exp(-i theta . S_(n)) as a dense matrix; the oracle counterpart of
    the Kronecker-power route."""
    from scipy.linalg import expm

    theta_vec = np.asarray(theta_vec, dtype=float)
    gen = np.zeros((3**n, 3**n), dtype=complex)
    for k in range(3):
        gen += theta_vec[k] * spin_matrix(n, k).matrix
    return expm(-1j * gen)


# -- Wigner D ------------------------------------------------------------------

def wigner_d(l, r, method="contraction"):
    """Wigner D-matrix for integer l, indexed m', m descending from +l.

    ``method='contraction'`` takes spherical components of the l-fold
    Kronecker power of the 3x3 rotation matrix; ``'product_expansion'``
    assembles the same matrix from sums of products of D^1 entries.
    """
    if l < 0:
        raise ValueError("l must be a non-negative integer")
    m3 = _rotation_matrix(r)
    if method == "contraction":
        return _wigner_d_contraction(l, m3)
    if method == "product_expansion":
        return _wigner_d_product(l, m3)
    raise ValueError(f"unknown method {method!r}")


def _wigner_d_contraction(l, m3):
    if l == 0:
        return np.ones((1, 1), dtype=complex)
    ms = list(range(l, -l - 1, -1))
    rotated = {m: tensor_rotate(m3, _epsilon_recursive(l, m)) for m in ms}
    out = np.empty((2 * l + 1, 2 * l + 1), dtype=complex)
    for a, mp in enumerate(ms):
        bra = np.conj(_epsilon_recursive(l, mp))
        for b, m in enumerate(ms):
            out[a, b] = tc.contract_all(bra, rotated[m])
    return out


def _wigner_d_product(l, m3):
    if l == 0:
        return np.ones((1, 1), dtype=complex)
    d1 = _wigner_d_contraction(1, m3)

    def d1_entry(sp, s):
        return d1[1 - sp, 1 - s]

    strings = {}
    for s in itertools.product((-1, 0, 1), repeat=l):
        strings.setdefault(sum(s), []).append(s)
    ms = list(range(l, -l - 1, -1))
    out = np.zeros((2 * l + 1, 2 * l + 1), dtype=complex)
    for a, mp in enumerate(ms):
        for b, m in enumerate(ms):
            pref = (
                2.0**l
                / math.factorial(2 * l)
                * math.sqrt(math.factorial(l + mp) * math.factorial(l - mp))
                * math.sqrt(math.factorial(l + m) * math.factorial(l - m))
            )
            total = 0.0 + 0.0j
            for sp in strings.get(mp, ()):
                wp = sum(abs(x) for x in sp)
                for s in strings.get(m, ()):
                    w = sum(abs(x) for x in s)
                    term = 1.0 / math.sqrt(2.0) ** (wp + w)
                    for h in range(l):
                        term *= d1_entry(sp[h], s[h])
                    total += term
            out[a, b] = pref * total
    return out


def d_matrix_indices(l):
    """Row/column quantum numbers of ``wigner_d``, descending from +l."""
    return list(range(l, -l - 1, -1))


def rotate_in_epsilon_basis(l, r):
    """Check matrix: columns of D reproduce the rotated basis tensors."""
    d = wigner_d(l, r)
    ms = d_matrix_indices(l)
    out = {}
    for b, m in enumerate(ms):
        acc = tc.zeros(l)
        for a, mp in enumerate(ms):
            acc += d[a, b] * epsilon(l, mp)
        out[m] = acc
    return out
