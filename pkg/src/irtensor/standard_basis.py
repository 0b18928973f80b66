"""Standard bases of cartesian tensor space.

Three families are provided:

* ``epsilon(n, m)`` -- the orthonormal basis of totally symmetric traceless
  (irreducible) rank-n tensors, which doubles as a standard basis of spin-n
  wave functions.  Three independent construction routes are implemented and
  must agree: a Clebsch-Gordan recursion on the rank, an explicit sum over
  signed index strings, and repeated exact differentiation of harmonic
  polynomials.
* ``sym_basis(n, s, m)`` -- the orthonormal basis of totally symmetric
  (generally traceful) rank-n tensors with definite spin content s.
* ``partial_basis(n, j, m)`` -- the orthonormal basis of rank-(n+1) tensors
  symmetric and traceless in their first n indices.

Returned basis tensors are cached, shared, and marked read-only.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _polynomial as poly
from . import tensor_core as tc
from .angular_momentum import cg, double_factorial

_SQRT2 = math.sqrt(2.0)


def epsilon_1(m):
    """Spin-1 basis vectors: the usual polarization unit vectors."""
    if m == 1:
        v = np.array([-1.0, -1.0j, 0.0]) / _SQRT2
    elif m == -1:
        v = np.array([1.0, -1.0j, 0.0]) / _SQRT2
    elif m == 0:
        v = np.array([0.0, 0.0, 1.0], dtype=complex)
    else:
        raise ValueError("spin-1 basis needs m in {-1, 0, +1}")
    return v


def epsilon(n, m, method="recursive"):
    """Rank-n standard basis tensor with z-projection m.

    ``method`` selects the construction route: ``'recursive'`` (default,
    cached), ``'explicit'`` or ``'harmonic'``.  All three agree entrywise to
    about 1e-13; the agreement is exercised by the test suite.
    """
    m = int(m)
    if n < 0 or abs(m) > n:
        raise ValueError(f"need 0 <= |m| <= n, got n={n}, m={m}")
    if method == "recursive":
        return _epsilon_recursive(n, m)
    if method == "explicit":
        return _epsilon_explicit(n, m)
    if method == "harmonic":
        return _epsilon_harmonic(n, m)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _epsilon_recursive(n, m):
    if n == 0:
        out = np.ones((), dtype=complex)
    elif n == 1:
        out = epsilon_1(m)
    else:
        out = tc.zeros(n)
        for m2 in (-1, 0, 1):
            m1 = m - m2
            if abs(m1) > n - 1:
                continue
            c = cg(n - 1, m1, 1, m2, n, m)
            if c:
                out += c * np.multiply.outer(
                    _epsilon_recursive(n - 1, m1), epsilon_1(m2)
                )
    out.setflags(write=False)
    return out


def _epsilon_explicit(n, m):
    if n == 0:
        return np.ones((), dtype=complex)
    pref = math.sqrt(
        math.factorial(n + m) * math.factorial(n - m) / math.factorial(2 * n)
    )
    out = tc.zeros(n)
    # place n1 entries +1 and n1-m entries -1 among the n slots, rest 0
    for n1 in range(max(m, 0), (n + m) // 2 + 1):
        nm1 = n1 - m
        n0 = n - n1 - nm1
        weight = _SQRT2 ** n0
        base = [1] * n1 + [-1] * nm1 + [0] * n0
        for signs in _distinct_permutations(base):
            term = np.ones((), dtype=complex)
            for s in signs:
                term = np.multiply.outer(term, epsilon_1(s))
            out += weight * term
    return pref * out


def _distinct_permutations(items):
    seen = set()
    for p in itertools.permutations(items):
        if p not in seen:
            seen.add(p)
            yield p


def _epsilon_harmonic(n, m):
    if n == 0:
        return np.ones((), dtype=complex)
    pref = math.sqrt(
        4.0 * math.pi / (math.factorial(n) * float(double_factorial(2 * n + 1)))
    )
    return pref * poly.poly_gradient_tensor(poly.solid_harmonic(n, m), n)


def irreducible_part(a):
    """Totally symmetric traceless component of a rank-n tensor.

    Acts as the orthogonal projector onto the irreducible subspace: it is
    idempotent and leaves irreducible tensors unchanged.
    """
    a = tc.as_tensor(a)
    n = a.ndim
    if n == 0:
        return a.copy()
    out = tc.zeros(n)
    for m in range(-n, n + 1):
        e = _epsilon_recursive(n, m)
        out += np.conj(e) * tc.contract_all(e, a)
    return out


def projector_matrix(n):
    """Dense 3^n x 3^n matrix of the projector onto irreducible tensors."""
    dim = 3**n
    out = np.zeros((dim, dim), dtype=complex)
    for m in range(-n, n + 1):
        e = _epsilon_recursive(n, m).reshape(-1)
        out += np.outer(e, np.conj(e))
    return out


# -- totally symmetric basis -------------------------------------------------

def lambda_sym(n, s):
    """Normalization of the totally symmetric spin-s basis tensors."""
    _check_sym_labels(n, s)
    nd = (n - s) // 2
    val = Fraction(math.factorial(n), math.factorial(s)) * Fraction(
        int(double_factorial(2 * s + 1)), int(double_factorial(n + s + 1))
    )
    val /= Fraction(2**nd * math.factorial(nd))
    return math.sqrt(float(val))


def lambda_sym_prime(n, s):
    """Normalization of the harmonic-derivative route to the same basis."""
    _check_sym_labels(n, s)
    nd = (n - s) // 2
    val = Fraction(1, 2**nd * math.factorial(nd))
    val /= Fraction(math.factorial(n) * int(double_factorial(n + s + 1)))
    return math.sqrt(4.0 * math.pi * float(val))


def _check_sym_labels(n, s):
    if not (0 <= s <= n) or (n - s) % 2:
        raise ValueError(f"need 0 <= s <= n with n-s even, got n={n}, s={s}")


@lru_cache(maxsize=None)
def _sym_basis_direct(n, s, m):
    if s == n:
        return _epsilon_recursive(n, m)
    nd = (n - s) // 2
    core = _epsilon_recursive(s, m)
    for _ in range(nd):
        core = np.multiply.outer(core, tc.delta())
    out = lambda_sym(n, s) / math.factorial(n) * tc.symmetrize(core)
    out.setflags(write=False)
    return out


def sym_basis(n, s, m, method="direct"):
    """Totally symmetric rank-n basis tensor of spin s and projection m.

    ``method='harmonic'`` builds the same tensor by exact differentiation of
    the polynomial |r|^n Y_sm; both routes agree to roundoff.
    """
    _check_sym_labels(n, s)
    if abs(int(m)) > s:
        raise ValueError("|m| must not exceed s")
    if method == "direct":
        return _sym_basis_direct(n, s, int(m))
    if method == "harmonic":
        p = poly.solid_harmonic(s, int(m))
        for _ in range((n - s) // 2):
            p = poly.poly_mul(p, poly.r_squared())
        return lambda_sym_prime(n, s) * poly.poly_gradient_tensor(p, n)
    raise ValueError(f"unknown method {method!r}")


def trace_down(a, s):
    """Contract the trailing (rank - s)/2 index pairs of a symmetric tensor."""
    a = tc.as_tensor(a)
    nd = (a.ndim - s) // 2
    out = a
    for _ in range(nd):
        out = np.trace(out, axis1=out.ndim - 2, axis2=out.ndim - 1)
    return out


def sym_expand(a, tol=1e-9):
    """Expand a totally symmetric tensor over the ``sym_basis`` family.

    Returns a dict ``{(s, m): coefficient}``; the inverse map is
    ``sum(c * sym_basis(n, s, m).conj())``.  Raises if the input is not
    symmetric within ``tol`` relative to its norm.
    """
    a = tc.as_tensor(a)
    n = a.ndim
    asym = tc.max_asymmetry(a)
    scale = max(tc.frobenius_norm(a), 1e-300)
    if asym > tol * scale:
        raise ValueError(
            f"input is not totally symmetric: max asymmetry {asym:.3e} "
            f"(relative {asym / scale:.3e})"
        )
    out = {}
    for s in range(n % 2, n + 1, 2):
        lam = lambda_sym(n, s)
        tr = trace_down(a, s)
        for m in range(-s, s + 1):
            out[(s, m)] = lam * tc.contract_all(tr, _epsilon_recursive(s, m))
    return out


def sym_reconstruct(n, coefficients):
    """Inverse of :func:`sym_expand`."""
    out = tc.zeros(n)
    for (s, m), c in coefficients.items():
        out += c * np.conj(_sym_basis_direct(n, s, m))
    return out


# -- partially irreducible basis ---------------------------------------------

def partial_basis(n, j, m, method="cg"):
    """Basis tensor of rank n+1, symmetric and traceless in the first n indices.

    ``j`` must be one of n-1, n, n+1.  ``method='closed'`` uses the
    epsilon-delta closed forms instead of the Clebsch-Gordan sum; the two
    routes agree to roundoff.
    """
    if n < 1 or j not in (n - 1, n, n + 1):
        raise ValueError(f"need j in {{n-1, n, n+1}}, got n={n}, j={j}")
    if abs(int(m)) > j:
        raise ValueError("|m| must not exceed j")
    if method == "cg":
        return _partial_basis_cg(n, j, int(m))
    if method == "closed":
        return _partial_basis_closed(n, j, int(m))
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _partial_basis_cg(n, j, m):
    out = tc.zeros(n + 1)
    for nu in (-1, 0, 1):
        mu = m - nu
        if abs(mu) > n:
            continue
        c = cg(n, mu, 1, nu, j, m)
        if c:
            out += c * np.multiply.outer(_epsilon_recursive(n, mu), epsilon_1(nu))
    out.setflags(write=False)
    return out


def _partial_basis_closed(n, j, m):
    if j == n + 1:
        return _epsilon_recursive(n + 1, m).copy()
    if j == n:
        eps3 = tc.levi_civita()
        core = _epsilon_recursive(n, m)
        out = tc.zeros(n + 1)
        # sum over the slot k paired with the last index through levi-civita
        for k in range(n):
            # eps_{i_k i_{n+1} h} core_{h, others}: contract core axis 0 with
            # levi-civita axis 2, then move the produced (i_k, i_{n+1}) axes home.
            piece = np.tensordot(eps3, core, axes=([2], [0]))
            out += _place_axes(piece, k, n)
        return 1j / math.sqrt(n * (n + 1)) * out
    # j == n - 1
    core = _epsilon_recursive(n - 1, m)
    out = tc.zeros(n + 1)
    for k in range(n):
        for h in range(k + 1, n):
            out += 2.0 * _insert_delta_pair(core, n + 1, k, h)
    second = tc.zeros(n + 1)
    for k in range(n):
        second += _insert_delta_pair(core, n + 1, k, n)
    out -= (2 * n - 1) * second
    return out / (n * math.sqrt((2 * n - 1) * (2 * n + 1)))


def _place_axes(piece, k, n):
    # piece has axes (a, b, c_1..c_{n-1}) meaning a -> slot k, b -> slot n,
    # c's -> the remaining slots in order.
    perm = [None] * (n + 1)
    perm[k] = 0
    perm[n] = 1
    nxt = 2
    for slot in range(n):
        if slot != k:
            perm[slot] = nxt
            nxt += 1
    return piece.transpose(perm)


def _insert_delta_pair(core, rank, k, h):
    """Outer product of core with a delta placed at slots (k, h) of the output."""
    raw = np.multiply.outer(core, tc.delta())  # axes: core..., k-slot, h-slot
    nc = core.ndim
    perm = [None] * rank
    perm[k] = nc
    perm[h] = nc + 1
    nxt = 0
    for slot in range(rank):
        if perm[slot] is None:
            perm[slot] = nxt
            nxt += 1
    return raw.transpose(perm)


def partial_decompose(t, n, tol=1e-9):
    """Spherical components {(j, m): T^j(m)} of a partially irreducible tensor.

    ``t`` must have rank n+1 and be symmetric and traceless in its first n
    indices within ``tol`` relative to its norm.  The inverse map is
    ``sum(T[j, m] * partial_basis(n, j, m).conj())``.
    """
    t = tc.as_tensor(t)
    if t.ndim != n + 1:
        raise ValueError(f"expected rank {n + 1}, got {t.ndim}")
    scale = max(tc.frobenius_norm(t), 1e-300)
    if n >= 2:
        sym_err = _first_block_asymmetry(t, n)
        if sym_err > tol * scale:
            raise ValueError(
                f"first {n} indices are not symmetric: deviation {sym_err:.3e}"
            )
    if n >= 2:
        tr = np.trace(t, axis1=0, axis2=1)
        if float(np.max(np.abs(tr))) > tol * scale:
            raise ValueError("first-block trace does not vanish")
    out = {}
    for j in (n - 1, n, n + 1):
        for m in range(-j, j + 1):
            out[(j, m)] = tc.contract_all(_partial_basis_cg(n, j, m), t)
    return out


def _first_block_asymmetry(t, n):
    worst = 0.0
    for a in range(n - 1):
        swapped = np.swapaxes(t, a, a + 1)
        worst = max(worst, float(np.max(np.abs(t - swapped))))
    return worst


def partial_reconstruct(n, components):
    out = tc.zeros(n + 1)
    for (j, m), c in components.items():
        out += c * np.conj(_partial_basis_cg(n, j, m))
    return out
