"""Wigner-Eckart machinery: duality between spherical and cartesian tensor
operators, reduced matrix elements, and matrix-element assembly for four
operator classes (irreducible, generic rank-2, totally symmetric, partially
irreducible).

Operator blocks are stored as arrays of shape ``(2j'+1, 2j+1) + (3,)*rank``
with magnetic quantum numbers descending from +j along rows and columns.
The sphere-quadrature builders at the bottom construct orbital operator
blocks directly from harmonic integrals; they are deliberately independent
of every closed form in this module and back all of its tests.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tensor_core as tc
from .angular_momentum import HalfInt, cg, double_factorial, j_matrix
from .harmonics import n_coefficient, theta, ylm
from .quadrature import sphere_grid
from .spin_rotations import spin_matrix
from .standard_basis import (
    _epsilon_recursive,
    _partial_basis_cg,
    _sym_basis_direct,
    lambda_sym,
)


@dataclass(frozen=True)
class ReducedME:
    """A reduced matrix element <bra_j || O_n || ket_j>."""

    bra_j: HalfInt
    ket_j: HalfInt
    rank: int
    value: complex
    kind: str = "generic"
    q: int | None = None


@dataclass(frozen=True)
class OperatorSpec:
    """A rank-n cartesian tensor operator given as its (bra_j, ket_j) block.

    ``blocks[a, b]`` is the rank-n tensor of matrix elements
    ``<bra_j, m'_a | O_{i1...in} | ket_j, m_b>`` with m', m descending from
    +j along the axes.
    """

    bra_j: HalfInt
    ket_j: HalfInt
    rank: int
    blocks: np.ndarray
    symmetry: str = "irreducible"

    def __post_init__(self):
        object.__setattr__(self, "blocks", np.asarray(self.blocks, dtype=complex))
        object.__setattr__(self, "bra_j", HalfInt(self.bra_j))
        object.__setattr__(self, "ket_j", HalfInt(self.ket_j))
        expected = (
            self.bra_j.twice + 1,
            self.ket_j.twice + 1,
        ) + (3,) * self.rank
        if tuple(self.blocks.shape) != expected:
            raise ValueError(
                f"blocks shape {self.blocks.shape} does not match {expected}"
            )

    def commutator_defect(self):
        """Largest violation of the tensor-operator commutation relation.

        For a genuine cartesian tensor operator the commutator of each
        total-angular-momentum component with the operator equals minus the
        action of the corresponding spin matrix on the tensor indices.
        """
        worst = 0.0
        jp_mats = {k: j_matrix(self.bra_j, k) for k in "xyz"}
        j_mats = {k: j_matrix(self.ket_j, k) for k in "xyz"}
        for k in "xyz":
            comm = np.tensordot(jp_mats[k], self.blocks, axes=([1], [0]))
            comm -= np.moveaxis(
                np.tensordot(self.blocks, j_mats[k], axes=([1], [0])), -1, 1
            )
            if self.rank:
                op = spin_matrix(self.rank, k)
                acted = np.empty_like(self.blocks)
                for a in range(self.blocks.shape[0]):
                    for b in range(self.blocks.shape[1]):
                        acted[a, b] = op.apply(self.blocks[a, b])
            else:
                acted = np.zeros_like(self.blocks)
            worst = max(worst, float(np.max(np.abs(comm + acted))))
        return worst


def sito_from_cito(op, check_tol=1e-8, atol=1e-12):
    """Spherical components {m: block matrix} of a cartesian tensor operator.

    Validates the commutation relation first and rejects inputs that are not
    tensor operators at tolerance ``check_tol`` (relative to the block norm,
    with an absolute floor so that parity-forbidden all-zero blocks pass).
    """
    scale = max(float(np.max(np.abs(op.blocks))), 1e-300)
    defect = op.commutator_defect()
    if defect > check_tol * scale + atol:
        raise ValueError(
            f"input fails the tensor-operator commutation check: defect "
            f"{defect:.3e} (relative {defect / scale:.3e})"
        )
    out = {}
    n = op.rank
    for m in range(-n, n + 1):
        e = _epsilon_recursive(n, m)
        out[m] = np.tensordot(op.blocks, e, axes=(tuple(range(2, n + 2)), tuple(range(n))))
    return out


def cito_from_sito(components, bra_j, ket_j):
    """Cartesian (irreducible) tensor operator rebuilt from spherical components."""
    n = max(abs(m) for m in components)
    first = next(iter(components.values()))
    blocks = np.zeros(first.shape + (3,) * n, dtype=complex)
    for m, mat in components.items():
        e = np.conj(_epsilon_recursive(n, m))
        blocks += np.multiply.outer(mat, e)
    return OperatorSpec(
        bra_j=HalfInt(bra_j), ket_j=HalfInt(ket_j), rank=n, blocks=blocks,
        symmetry="irreducible",
    )


def sito_defect(components, bra_j, ket_j):
    """Largest violation of the spherical tensor-operator commutation rule."""
    n = max(abs(m) for m in components)
    worst = 0.0
    jp = {k: j_matrix(bra_j, k) for k in "xyz"}
    jk = {k: j_matrix(ket_j, k) for k in "xyz"}
    for k in "xyz":
        for m in range(-n, n + 1):
            comm = jp[k] @ components[m] - components[m] @ jk[k]
            acc = np.zeros_like(comm)
            for mp in range(-n, n + 1):
                c = complex(_spin_me(n, mp, m, k))
                if c:
                    acc += c * components[mp]
            worst = max(worst, float(np.max(np.abs(comm - acc))))
    return worst


def _spin_me(n, mp, m, k):
    from .angular_momentum import j_matrix_element

    return j_matrix_element(n, mp, m, k)


# -- reduced matrix elements ------------------------------------------------------

def reduced_me_ylm(lp, n, l, cartesian=False):
    """Reduced matrix element of Y_n (or of the dual direction-power operator).

    With ``cartesian=True`` the value refers to the contraction of the
    standard rank-n tensor with n powers of the position versor, which
    rescales the harmonic by the tensorial normalization constant.
    """
    if (l + n + lp) % 2 or not (abs(l - n) <= lp <= l + n):
        value = 0.0
    else:
        value = math.sqrt(
            (2 * l + 1) * (2 * n + 1) / (4 * math.pi * (2 * lp + 1))
        ) * cg(l, 0, n, 0, lp, 0)
    if cartesian:
        value /= n_coefficient(n)
    return ReducedME(bra_j=HalfInt(lp), ket_j=HalfInt(l), rank=n, value=value, kind="ylm")


def reduced_me_jpow(j, n):
    """Closed form for the reduced ME of the spin-contracted power J^n."""
    tj = HalfInt(j)
    if n > 2 * float(tj):
        value = 0.0
    else:
        twoj = tj.twice
        # (2j+n+1)! / (2j-n)! as an exact integer ratio of factorials
        num = 1
        for k in range(twoj - n + 1, twoj + n + 2):
            num *= k
        value = (
            2.0**-n
            * math.sqrt(math.factorial(n) / float(double_factorial(2 * n - 1)))
            * math.sqrt(num / (twoj + 1))
        )
    return ReducedME(bra_j=tj, ket_j=tj, rank=n, value=value, kind="j_power")


def reduced_me_gradient_op(lp, n, q, l):
    """Reduced ME of the rank-(n-q+1) radial/derivative operator chain."""
    r = n - q + 1
    if r < 1:
        raise ValueError("need q <= n")
    c = cg(l, 0, r, 0, lp, 0)
    if not c:
        value = 0.0
    elif lp - n + 1 < 0 and (lp - n + 1) % 2 == 0:
        value = 0.0
    else:
        value = (
            (-1) ** ((lp - l + r) // 2)
            * math.sqrt(math.factorial(r) / float(double_factorial(2 * r - 1)))
            * math.sqrt((2 * l + 1) / (2 * lp + 1))
            * float(double_factorial(l - q + 2))
            / float(double_factorial(lp - n + 1))
            * float(double_factorial(lp + n - 2))
            / float(double_factorial(l + q - 3))
            * c
        )
    return ReducedME(
        bra_j=HalfInt(lp), ket_j=HalfInt(l), rank=r, value=value,
        kind="gradient_op", q=q,
    )


def _value(rme):
    return rme.value if isinstance(rme, ReducedME) else complex(rme)


def we_matrix_element(reduced, jp, mp, j, m, n=None, klass="cito"):
    """Matrix-element tensor <j' m'| O |j m> assembled from reduced MEs.

    ``klass`` selects the operator class:

    * ``'cito'``       -- irreducible rank-n; ``reduced`` is one value.
    * ``'rank2'``      -- generic rank-2; ``reduced`` maps {2, 1, 0} to the
      reduced MEs of the symmetric-traceless, antisymmetric-vector, and
      scalar-trace parts.
    * ``'totally_symmetric'`` -- rank-n symmetric; ``reduced`` maps each
      parity-allowed spin channel s to its reduced ME.
    * ``'partially_irreducible'`` -- rank n+1, symmetric-traceless in the
      first n slots; ``reduced`` maps {n-1, n, n+1} to reduced MEs.
    """
    jp = HalfInt(jp)
    j = HalfInt(j)
    mp = HalfInt(mp)
    m = HalfInt(m)
    if klass == "cito":
        if n is None:
            n = reduced.rank if isinstance(reduced, ReducedME) else None
        if n is None:
            raise ValueError("rank n required")
        k = mp - m
        if abs(k.twice) > 2 * n or k.twice % 2:
            return tc.zeros(n)
        k = int(k.twice // 2)
        return (
            _value(reduced)
            * cg(j, m, n, k, jp, mp)
            * np.conj(_epsilon_recursive(n, k))
        )
    if klass == "rank2":
        out = tc.zeros(2)
        k = mp - m
        if k.twice % 2:
            return out
        k = k.twice // 2
        if abs(k) <= 2 and 2 in reduced:
            out += (
                _value(reduced[2]) * cg(j, m, 2, k, jp, mp)
                * np.conj(_epsilon_recursive(2, k))
            )
        if abs(k) <= 1 and 1 in reduced:
            vec = np.conj(_epsilon_recursive(1, k))
            out += (
                _value(reduced[1]) * cg(j, m, 1, k, jp, mp)
                * np.tensordot(tc.levi_civita(), vec, axes=([2], [0]))
            )
        if 0 in reduced and jp == j and mp == m:
            out += _value(reduced[0]) * tc.delta()
        return out
    if klass == "totally_symmetric":
        if n is None:
            raise ValueError("rank n required")
        out = tc.zeros(n)
        for s in range(n % 2, n + 1, 2):
            if s not in reduced:
                raise ValueError(f"missing reduced ME for spin channel s={s}")
            val = _value(reduced[s])
            if not val:
                continue
            lam = lambda_sym(n, s)
            for sm in range(-s, s + 1):
                c = cg(j, m, s, sm, jp, mp)
                if c:
                    out += val * lam * c * np.conj(_sym_basis_direct(n, s, sm))
        return out
    if klass == "partially_irreducible":
        if n is None:
            raise ValueError("first-block rank n required")
        out = tc.zeros(n + 1)
        for s in (n - 1, n, n + 1):
            if s not in reduced:
                raise ValueError(f"missing reduced ME for channel j={s}")
            val = _value(reduced[s])
            if not val:
                continue
            for sz in range(-s, s + 1):
                c = cg(j, m, s, sz, jp, mp)
                if c:
                    out += val * c * np.conj(_partial_basis_cg(n, s, sz))
        return out
    raise ValueError(f"unknown operator class {klass!r}")


# -- polarization operators and operator equivalents ------------------------------

@lru_cache(maxsize=None)
def _j_products(s, l):
    """All length-l products of the three generator matrices for spin s."""
    mats = [j_matrix(s, k) for k in "xyz"]
    dim = mats[0].shape[0]
    prods = {(): np.eye(dim, dtype=complex)}
    for _ in range(l):
        prods = {
            key + (k,): mat @ mats[k]
            for key, mat in prods.items()
            for k in range(3)
        }
    return prods


def polarization_operator(s, l, m):
    """Spin-space polarization operator of rank l on the spin-s multiplet.

    Hermitian in the sense T(l, m)^dagger = (-1)^m T(l, -m) and orthonormal
    under the trace inner product.
    """
    s = HalfInt(s)
    two_s = s.twice
    if not 0 <= l <= two_s:
        raise ValueError("need 0 <= l <= 2s")
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    kappa = 2.0**l * math.sqrt(
        math.factorial(two_s - l)
        * float(double_factorial(2 * l + 1))
        / (math.factorial(l) * math.factorial(two_s + l + 1))
    )
    dim = two_s + 1
    out = np.zeros((dim, dim), dtype=complex)
    if l == 0:
        return kappa * np.eye(dim, dtype=complex)
    eps = _epsilon_recursive(l, m)
    for key, prod in _j_products(s, l).items():
        c = eps[key]
        if c:
            out += c * prod
    return kappa * out


def stevens_factor(j, n):
    """Operator-equivalent factor mapping direction powers onto spin powers."""
    num = reduced_me_ylm(j, n, j, cartesian=True).value
    den = reduced_me_jpow(j, n).value
    if den == 0.0:
        raise ValueError("spin-power reduced matrix element vanishes")
    return num / den


def stevens_c2(j):
    """Closed rank-2 form of the operator-equivalent factor."""
    jj = float(HalfInt(j))
    return (
        -4.0
        * math.sqrt(jj * (jj + 1))
        * math.sqrt((2 * jj + 1) / ((2 * jj - 1) * (2 * jj + 3)))
        * math.sqrt(
            math.factorial(round(2 * jj - 2)) / math.factorial(round(2 * jj + 3))
        )
    )


def momentum_sandwich(lp, mp, n, l, m):
    """Sphere integral of Y_l'm'^* times the order-n derivatives of Y_lm.

    Returns the rank-n tensor coefficient; the physical integrand carries an
    additional |r|^(-n) scale left to the caller.
    """
    if l < n:
        raise ValueError(f"formula requires l >= order, got l={l}, order={n}")
    out = tc.zeros(n)
    dm = m - mp
    for s in range(n % 2, n + 1, 2):
        if abs(dm) > s:
            continue
        c1 = cg(l, 0, s, 0, lp, 0)
        if not c1:
            continue
        th = theta(n, s, l, lp)
        if th == 0.0:
            continue
        c2 = cg(lp, mp, s, dm, l, m)
        if not c2:
            continue
        out += (
            th
            * math.factorial(n)
            / lambda_sym(n, s)
            * c1
            * c2
            * _sym_basis_direct(n, s, dm)
        )
    return out


# -- quadrature oracle: orbital operator blocks ------------------------------------

def orbital_block(f, lp, l, rank, degree=None):
    """Matrix elements <l' m'| f(rhat) |l m> of a tensor-valued angular factor.

    ``f`` maps a unit vector to a rank-``rank`` tensor (or scalar for rank 0).
    Quadrature is exact for polynomial angular dependence of degree up to
    ``degree`` (default rank), which covers every operator used in the tests.
    """
    deg = rank if degree is None else degree
    grid_l = -(-(lp + l + deg) // 2)  # ceil
    pts, wts = sphere_grid(grid_l)
    y_bra = np.array([[np.conj(ylm(lp, mpv, p)) for p in pts] for mpv in range(lp, -lp - 1, -1)])
    y_ket = np.array([[ylm(l, mv, p) for p in pts] for mv in range(l, -l - 1, -1)])
    fv = np.array([np.asarray(f(p), dtype=complex) for p in pts])
    out = np.einsum("ak,bk,k,k...->ab...", y_bra, y_ket, wts, fv)
    return OperatorSpec(
        bra_j=HalfInt(lp), ket_j=HalfInt(l), rank=rank, blocks=out,
        symmetry="irreducible" if rank <= 1 else "totally_symmetric",
    )


def direction_power_block(lp, l, n):
    """Quadrature blocks of the n-fold outer power of the position versor."""
    return orbital_block(lambda p: tc.outer_power(p, n), lp, l, n)


def orbital_momentum_block(spec, component):
    """Right-multiply an operator block by an orbital generator component."""
    lmat = j_matrix(spec.ket_j, component)
    blocks = np.moveaxis(
        np.tensordot(spec.blocks, lmat, axes=([1], [0])), -1, 1
    )
    return blocks
