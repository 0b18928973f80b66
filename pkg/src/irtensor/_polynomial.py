"""Exact polynomial arithmetic on monomial coefficient maps.

A polynomial in (x, y, z) is a dict mapping integer exponent triples to
complex coefficients.  Differentiation on this representation is exact, which
keeps the polynomial-based constructions free of finite-difference noise.
"""

import math


def poly_const(c):
    return {(0, 0, 0): complex(c)} if c else {}

def poly_linear(v):
    """Polynomial v[0]*x + v[1]*y + v[2]*z."""
    out = {}
    for axis, c in enumerate(v):
        if c:
            e = [0, 0, 0]
            e[axis] = 1
            out[tuple(e)] = complex(c)
    return out


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0.0) + c
        if out[e] == 0:
            del out[e]
    return out


def poly_scale(p, c):
    return {e: v * c for e, v in p.items()} if c else {}


def poly_mul(p, q):
    out = {}
    for (a1, b1, c1), v1 in p.items():
        for (a2, b2, c2), v2 in q.items():
            e = (a1 + a2, b1 + b2, c1 + c2)
            out[e] = out.get(e, 0.0) + v1 * v2
    return {e: v for e, v in out.items() if v != 0}


def poly_pow(p, n):
    out = poly_const(1.0)
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def poly_diff(p, axis):
    """Partial derivative along axis 0, 1 or 2."""
    out = {}
    for e, v in p.items():
        if e[axis] == 0:
            continue
        d = list(e)
        k = d[axis]
        d[axis] = k - 1
        out[tuple(d)] = out.get(tuple(d), 0.0) + k * v
    return out


def poly_eval(p, point):
    x, y, z = point
    total = 0.0 + 0.0j
    for (a, b, c), v in p.items():
        total += v * x**a * y**b * z**c
    return total


def r_squared():
    return {(2, 0, 0): 1.0 + 0j, (0, 2, 0): 1.0 + 0j, (0, 0, 2): 1.0 + 0j}


def solid_harmonic(l, m):
    """Harmonic polynomial |r|^l Y_lm(r/|r|) as a monomial map.

    Built from the explicit associated-Legendre sum, so it shares no code
    with the recursive tensor constructions it is used to cross-check.
    """
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    if m < 0:
        # Y_{l,-|m|} = (-1)^m conj(Y_{l,|m|}); conjugation maps (x+iy) -> (x-iy)
        pos = solid_harmonic(l, -m)
        out = {e: (-1) ** m * v.conjugate() for e, v in pos.items()}
        return out
    norm = math.sqrt(
        (2 * l + 1)
        / (4.0 * math.pi)
        * math.factorial(l - m)
        / math.factorial(l + m)
    ) * (math.factorial(l + m) / math.factorial(l))
    xy = {(1, 0, 0): 1.0 + 0j, (0, 1, 0): 1.0j}  # x + iy
    rho = {(2, 0, 0): 1.0 + 0j, (0, 2, 0): 1.0 + 0j}  # x^2 + y^2
    zpoly = {(0, 0, 1): 1.0 + 0j}
    out = {}
    for n1 in range(max(m, 0), (l + m) // 2 + 1):
        coeff = (
            math.comb(l, n1)
            * math.comb(l - n1, n1 - m)
            * (-1.0) ** n1
            / 2.0 ** (2 * n1 - m)
        )
        if coeff == 0:
            continue
        term = poly_mul(poly_pow(rho, n1 - m), poly_pow(zpoly, l + m - 2 * n1))
        out = poly_add(out, poly_scale(term, coeff))
    out = poly_mul(poly_pow(xy, m), out)
    return poly_scale(out, norm)


def poly_gradient_tensor(p, order):
    """All order-th partial derivatives of p, as a nested list shaped (3,)*order.

    Intended for polynomials of degree == order, where the derivatives are
    constants; entries are the evaluated derivatives at the origin.
    """
    import numpy as np

    out = np.zeros((3,) * order, dtype=complex)
    _fill_derivatives(p, (), order, out)
    return out


def _fill_derivatives(p, prefix, remaining, out):
    if remaining == 0:
        out[prefix] = poly_eval(p, (0.0, 0.0, 0.0))
        return
    for axis in range(3):
        _fill_derivatives(poly_diff(p, axis), prefix + (axis,), remaining - 1, out)
