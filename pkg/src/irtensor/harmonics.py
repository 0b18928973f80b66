"""Ordinary, bipolar, and tensor spherical harmonics, with Legendre machinery
and closed-form derivatives of Y_lm to every order.

Each harmonic family has at least two independent evaluation routes: a
conventional analytic route (associated Legendre functions, Clebsch-Gordan
sums) and a tensorial route contracting a standard basis tensor with powers
of the direction vector.  The derivative machinery returns
``|r|^n d^n Y_lm`` as a rank-n tensor assembled from tensor spherical
harmonics and traces; a finite-difference oracle of the same quantity lives
in the test suite.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import tensor_core as tc
from .angular_momentum import cg, double_factorial
from .spin_rotations import spin_matrix
from .standard_basis import _epsilon_recursive

_SQ4PI = math.sqrt(4.0 * math.pi)


def unit(v):
    """Normalize a direction vector, rejecting near-zero input."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm < 1e-14:
        raise ValueError("direction vector must be nonzero")
    return v / norm


def n_coefficient(l):
    """Normalization relating Y_lm to the contraction of epsilon with r-hat powers."""
    return math.sqrt(float(double_factorial(2 * l + 1)) / math.factorial(l)) / _SQ4PI


# -- associated Legendre -------------------------------------------------------

@lru_cache(maxsize=None)
def _legendre_bundle_coeffs(l, m):
    # Rodrigues form: P_lm(x) = (-1)^(l+m)/(2^l l!) (1-x^2)^(m/2) d^(l+m)/dx^(l+m) (1-x^2)^l
    # returns the polynomial coefficients of the derivative factor, exact.
    coeffs = {}  # power -> integer coefficient of (1-x^2)^l expanded
    for k in range(l + 1):
        coeffs[2 * k] = math.comb(l, k) * (-1) ** k
    order = l + m
    for _ in range(order):
        coeffs = {p - 1: c * p for p, c in coeffs.items() if p > 0}
    return tuple(sorted(coeffs.items()))


def assoc_legendre(l, m, x, method="rodrigues"):
    """Associated Legendre function P_lm(x) (Condon-Shortley phase).

    ``method='tensorial'`` evaluates the explicit binomial-sum expression
    instead of the Rodrigues derivative; the two agree to roundoff.
    P_l0 is the Legendre polynomial.
    """
    if l < 0 or abs(m) > l:
        raise ValueError("need l >= 0 and |m| <= l")
    if abs(x) > 1 + 1e-12:
        raise ValueError("argument must lie in [-1, 1]")
    x = min(1.0, max(-1.0, float(x)))
    if method == "rodrigues":
        s = math.sqrt(max(0.0, 1.0 - x * x))
        if s == 0.0 and m != 0:
            return 0.0
        val = sum(c * x**p for p, c in _legendre_bundle_coeffs(l, m))
        return (-1) ** (l + m) / (2**l * math.factorial(l)) * s**m * val
    if method == "tensorial":
        return _assoc_legendre_tensorial(l, m, x)
    raise ValueError(f"unknown method {method!r}")


def _assoc_legendre_tensorial(l, m, x):
    s = math.sqrt(max(0.0, 1.0 - x * x))
    total = 0.0
    for n1 in range(max(m, 0), (l + m) // 2 + 1):
        if n1 - m < 0 or n1 - m > l - n1:
            continue
        total += (
            math.comb(l, n1)
            * math.comb(l - n1, n1 - m)
            * (-1.0) ** n1
            / 2.0 ** (2 * n1 - m)
            * s ** (2 * n1 - m)
            * x ** (l - 2 * n1 + m)
        )
    return math.factorial(l + m) / math.factorial(l) * total


def _legendre_stable(l, m, x):
    # standard three-term recurrence in l at fixed |m|; numerically stable on
    # [-1, 1] where the expanded Rodrigues polynomial cancels badly at high l
    ma = abs(m)
    s = math.sqrt(max(0.0, 1.0 - x * x))
    pmm = 1.0
    for k in range(1, ma + 1):
        pmm *= -(2 * k - 1) * s
    if l == ma:
        plm = pmm
    else:
        pm1 = x * (2 * ma + 1) * pmm
        if l == ma + 1:
            plm = pm1
        else:
            for ll in range(ma + 2, l + 1):
                pmm, pm1 = pm1, (x * (2 * ll - 1) * pm1 - (ll + ma - 1) * pmm) / (ll - ma)
            plm = pm1
    if m < 0:
        plm *= (-1) ** ma * math.factorial(l - ma) / math.factorial(l + ma)
    return plm


def legendre_poly(l, x):
    return _legendre_stable(l, 0, x)


@lru_cache(maxsize=None)
def _legendre_series(l):
    c = np.zeros(l + 1)
    c[l] = 1.0
    return np.polynomial.legendre.Legendre(c)


def legendre_derivative(l, k, x):
    """k-th derivative of the Legendre polynomial P_l at x."""
    if k > l:
        return 0.0
    if k == 0:
        return legendre_poly(l, x)
    return float(_legendre_series(l).deriv(k)(x))


# -- ordinary spherical harmonics ----------------------------------------------

def ylm(l, m, direction, method="analytic"):
    """Spherical harmonic Y_lm evaluated at a direction vector.

    ``method='tensorial'`` contracts the rank-l standard basis tensor with
    the l-fold power of the direction; it needs no special-casing at the
    poles and serves as the reference there.
    """
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    d = unit(direction)
    if method == "analytic":
        ct = min(1.0, max(-1.0, d[2]))
        phi = math.atan2(d[1], d[0])
        norm = math.sqrt(
            (2 * l + 1)
            / (4 * math.pi)
            * math.factorial(l - m)
            / math.factorial(l + m)
        )
        return norm * _legendre_stable(l, m, ct) * complex(math.cos(m * phi), math.sin(m * phi))
    if method == "tensorial":
        if l == 0:
            return complex(1.0 / _SQ4PI)
        return n_coefficient(l) * tc.contract_all(
            _epsilon_recursive(l, m), tc.outer_power(d, l)
        )
    raise ValueError(f"unknown method {method!r}")


def legendre_multilinear(l, a, b):
    """P_l(a.b) evaluated as a full contraction of irreducible direction powers."""
    from .standard_basis import irreducible_part

    a = unit(a)
    b = unit(b)
    if l == 0:
        return 1.0
    pa = irreducible_part(tc.outer_power(a, l))
    val = tc.contract_all(pa, tc.outer_power(b, l))
    return float(
        (float(double_factorial(2 * l - 1)) / math.factorial(l)) * val.real
    )


# -- bipolar spherical harmonics -------------------------------------------------

def bipolar(l1, l2, j, m, d1, d2, method="cg_sum"):
    """Bipolar spherical harmonic of two directions.

    ``method='tensorial'`` uses the closed tensorial expression (maximal
    coupling and the general epsilon/Legendre-derivative form); ``'cg_sum'``
    couples two ordinary harmonics with Clebsch-Gordan coefficients.
    """
    if not (abs(l1 - l2) <= j <= l1 + l2):
        raise ValueError("coupling violates the triangle inequality")
    if abs(m) > j:
        raise ValueError("|m| must not exceed j")
    if method == "cg_sum":
        total = 0.0 + 0.0j
        for mu1 in range(-l1, l1 + 1):
            mu2 = m - mu1
            if abs(mu2) > l2:
                continue
            c = cg(l1, mu1, l2, mu2, j, m)
            if c:
                total += c * ylm(l1, mu1, d1) * ylm(l2, mu2, d2)
        return total
    if method == "tensorial":
        if l1 <= l2:
            return _bipolar_tensorial(l1, l2, j, m, d1, d2)
        return (-1) ** (l1 + l2 - j) * _bipolar_tensorial(l2, l1, j, m, d2, d1)
    raise ValueError(f"unknown method {method!r}")


def _bipolar_tensorial(l, lp, j, m, d1, d2):
    # requires lp >= l; the rank-j basis tensor is contracted with powers of
    # the two directions and of their cross product, weighted by Legendre
    # derivatives of the relative angle.
    d1 = unit(d1)
    d2 = unit(d2)
    if j == l + lp:
        # maximal coupling: plain contraction, no Legendre machinery
        e = _epsilon_recursive(j, m)
        block = np.multiply.outer(tc.outer_power(d1, l), tc.outer_power(d2, lp))
        return n_coefficient(l) * n_coefficient(lp) * tc.contract_all(e, block)
    nu = lp + l - j
    n = lp - l
    t = j - n
    v = np.cross(d1, d2)
    ct = float(np.dot(d1, d2))
    if nu % 2 == 0:
        k1min = max(0, n - nu // 2)
        k2max = min(nu // 2, n)
        qmax = l - nu // 2
    else:
        k1min = max(0, n - (nu - 1) // 2)
        k2max = min((nu - 1) // 2, n)
        qmax = l - (nu - 1) // 2 - 1
    pref = (
        (1j**nu / (4 * math.pi))
        * math.sqrt(2.0**j * math.factorial(nu))
        * math.sqrt(math.comb(2 * j, j + n))
        * math.sqrt(
            (2 * j + 1)
            * (2 * l + 1)
            * (2 * lp + 1)
            / math.factorial(lp + l + j + 1)
        )
    )
    total = 0.0 + 0.0j
    for k2 in range(0, k2max + 1):
        k1 = n - k2
        if k1 < k1min:
            continue
        qmin = max(0, l + k2 - nu)
        for q in range(qmin, qmax + 1):
            if 2 * q > t:
                continue
            pl = legendre_derivative(l + k1, j - q, ct)
            if pl == 0.0:
                continue
            coeff = (
                (-1) ** k2
                * math.comb(n, k1)
                * float(double_factorial(2 * q - 1))
                * math.comb(t, 2 * q)
            )
            e = _epsilon_recursive(j, m)
            # contract j slots with d1^(k2+q), d2^(k1+q), v^(t-2q)
            vecs = [d1] * (k2 + q) + [d2] * (k1 + q) + [v] * (t - 2 * q)
            val = e
            for w in vecs:
                val = np.tensordot(val, np.asarray(w, dtype=complex), axes=([val.ndim - 1], [0]))
            total += coeff * pl * complex(val)
    return pref * total


def bipolar_local(l1, l2, j, m, d):
    """Coincident-direction reduction of the bipolar harmonic."""
    return (
        math.sqrt((2 * l1 + 1) * (2 * l2 + 1) / (4 * math.pi * (2 * j + 1)))
        * cg(l1, 0, l2, 0, j, 0)
        * ylm(j, m, d)
    )


def ylm_linear_combo(l, m, alpha, beta, r1, r2):
    """Binomial expansion of Y_lm of a linear combination of two vectors.

    Returns ``{n: term}`` whose values sum to Y_lm of the direction of
    ``alpha*r1 + beta*r2``.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    resultant = alpha * r1 + beta * r2
    norm = np.linalg.norm(resultant)
    if norm < 1e-14:
        raise ValueError("resultant vector vanishes")
    a1 = np.linalg.norm(r1)
    a2 = np.linalg.norm(r2)
    out = {}
    for n in range(l + 1):
        w1 = alpha * a1
        w2 = beta * a2
        if (w1 == 0 and n > 0) or (w2 == 0 and n < l):
            out[n] = 0.0 + 0.0j
            continue
        coeff = (
            _SQ4PI
            / math.sqrt(2 * (l - n) + 1)
            * math.sqrt(math.comb(2 * l + 1, 2 * n + 1))
            * w1**n
            * w2 ** (l - n)
            / norm**l
        )
        out[n] = coeff * bipolar(n, l - n, l, m, r1 if a1 else (0, 0, 1), r2 if a2 else (0, 0, 1))
    return out


# -- tensor spherical harmonics ---------------------------------------------------

def tensor_sh(l, s, j, m, direction, method="cg_sum"):
    """Rank-s tensor spherical harmonic with orbital l and total j.

    ``method='maximal'`` is the closed contraction form, valid for j = l+s;
    ``'recoupled'`` reaches j = l+s-1 and j = l+s-2 by applying helicity-type
    contractions to maximal harmonics at lowered orbital degree.
    """
    if not (abs(l - s) <= j <= l + s):
        raise ValueError("coupling violates the triangle inequality")
    if abs(m) > j:
        raise ValueError("|m| must not exceed j")
    d = unit(direction)
    if method == "cg_sum":
        out = tc.zeros(s)
        for nu in range(-s, s + 1):
            mu = m - nu
            if abs(mu) > l:
                continue
            c = cg(l, mu, s, nu, j, m)
            if c:
                out = out + c * ylm(l, mu, d) * _epsilon_recursive(s, nu)
        return out
    if method == "maximal":
        if j != l + s:
            raise ValueError("closed contraction form requires j = l + s")
        return _tensor_sh_maximal(l, s, m, d)
    if method == "recoupled":
        return _tensor_sh_recoupled(l, s, j, m, d)
    raise ValueError(f"unknown method {method!r}")


def _tensor_sh_maximal(l, s, m, d):
    e = _epsilon_recursive(l + s, m)
    out = e
    for _ in range(l):
        out = np.tensordot(out, d.astype(complex), axes=([out.ndim - 1], [0]))
    return n_coefficient(l) * out


def _dot_spin(d, s, a):
    """Apply (d . S_(s)) to a rank-s tensor."""
    out = np.zeros(a.shape, dtype=complex)
    for k in range(3):
        if d[k]:
            out += d[k] * spin_matrix(s, k).apply(a)
    return out


def _tensor_sh_recoupled(l, s, j, m, d):
    if j == l + s:
        return _tensor_sh_maximal(l, s, m, d)
    if j == l + s - 1:
        if l < 1 or s < 1:
            raise ValueError("recoupled form needs l >= 1 and s >= 1 here")
        base = _tensor_sh_maximal(l - 1, s, m, d)
        return -math.sqrt((2 * l + 1) / (s * (l + s))) * _dot_spin(d, s, base)
    if j == l + s - 2:
        if s == 1:
            if l < 2:
                raise ValueError("recoupled form needs l >= 2 here")
            base = _tensor_sh_maximal(l - 2, 1, m, d)
            return math.sqrt((l - 1) / l) * base - math.sqrt((2 * l - 1) / l) * (
                ylm(l - 1, m, d) * d.astype(complex)
            )
        if l < 2:
            raise ValueError("recoupled form needs l >= 2 here")
        base = _tensor_sh_maximal(l - 2, s, m, d)
        hel = _dot_spin(d, s, _dot_spin(d, s, base))
        combo = hel - s * (l + s - 1) / (2 * l - 1) * base
        pref = (
            (2 * l - 1)
            / math.sqrt(s * (2 * s - 1))
            * math.sqrt((2 * l + 1) / (l - 1))
            / (math.sqrt(2 * (l + s) - 1) * math.sqrt(l + s - 1))
        )
        return pref * combo
    raise ValueError("recoupled route reaches only j >= l + s - 2")


# -- derivatives of spherical harmonics ---------------------------------------------

def theta(n, s, l, lp):
    """Prefactor of the (s, l') channel in the rank-n derivative expansion.

    Uses the double-factorial extension to negative odd arguments; channels
    whose denominator double factorial has a negative even argument vanish.
    """
    if (n - s) % 2 or s < 0 or s > n:
        raise ValueError("need 0 <= s <= n with n - s even")
    nd = (n - s) // 2
    if (l - lp + s) % 2:
        raise ValueError("parity violation: l - l' + s must be even")
    if lp - n + 1 < 0 and (lp - n + 1) % 2 == 0:
        return 0.0
    num = Fraction(2 * s + 1, 2**nd * math.factorial(nd) * int(double_factorial(n + s + 1)))
    val = (
        float(num)
        * math.sqrt(float(double_factorial(2 * s - 1)) / math.factorial(s))
        * float(double_factorial(l + 1)) / float(double_factorial(l - 2))
        * float(double_factorial(lp + n - 2)) / float(double_factorial(lp - n + 1))
    )
    return (-1) ** ((l - lp + s) // 2) * (-1) ** nd * val


def ylm_derivatives(order, l, m, direction):
    """|r|^order times the order-th derivatives of Y_lm, as a rank-order tensor.

    Valid in the regime l >= order; lower l is rejected.
    """
    n = int(order)
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    if l < n:
        raise ValueError(f"formula requires l >= order, got l={l}, order={n}")
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    d = unit(direction)
    out = tc.zeros(n)
    for lp in range(abs(l - n), l + n + 1):
        for s in range(n % 2, n + 1, 2):
            if not (abs(lp - s) <= l <= lp + s):
                continue
            c = cg(l, 0, s, 0, lp, 0)
            if not c:
                continue
            th = theta(n, s, l, lp)
            if th == 0.0:
                continue
            ysh = tensor_sh(lp, s, l, m, d)
            block = ysh
            for _ in range((n - s) // 2):
                block = np.multiply.outer(block, tc.delta())
            out += th * c * tc.symmetrize(block)
    return out


def ylm_gradient(l, m, point):
    """Gradient of Y_lm(r/|r|) at a general (non-unit) point."""
    r = np.asarray(point, dtype=float)
    norm = np.linalg.norm(r)
    return ylm_derivatives(1, l, m, r) / norm
