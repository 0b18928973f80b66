"""Angular-momentum quantum numbers, Clebsch-Gordan coefficients, and the
standard matrix elements of the generators.

Quantum numbers are half-integers stored as doubled integers (:class:`HalfInt`),
covering integer and half-odd-integer values exactly.  Clebsch-Gordan
coefficients use the Condon-Shortley phase convention (all coefficients real,
``<j1 j1; j2 j-j1 | j j> >= 0``) and are evaluated with exact big-integer
arithmetic internally, so they stay accurate far beyond desk-scale quantum
numbers.
"""

import math
from fractions import Fraction
from functools import lru_cache, total_ordering

import numpy as np


@total_ordering
class HalfInt:
    """An integer or half-odd-integer, stored as twice its value.

    Accepts ints, exact-half floats, strings like ``"3/2"``, and other
    HalfInt instances.
    """

    __slots__ = ("twice",)

    def __init__(self, value=0, *, twice=None):
        if twice is not None:
            self.twice = int(twice)
            return
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, (int, np.integer)):
            self.twice = 2 * int(value)
        elif isinstance(value, str):
            s = value.strip()
            if "/" in s:
                num, den = s.split("/")
                if int(den) not in (1, 2):
                    raise ValueError(f"cannot parse half-integer from {value!r}")
                self.twice = int(num) * (2 // int(den))
            else:
                self.twice = 2 * int(s)
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise ValueError(f"{value} is not a half-integer")
            self.twice = int(value * 2)
        elif isinstance(value, float):
            t = round(2 * value)
            if abs(2 * value - t) > 1e-9:
                raise ValueError(f"{value} is not a half-integer")
            self.twice = t
        else:
            raise TypeError(f"cannot build HalfInt from {type(value).__name__}")

    @property
    def is_integer(self):
        return self.twice % 2 == 0

    def __float__(self):
        return self.twice / 2.0

    def __int__(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        return HalfInt(twice=self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(twice=self.twice - HalfInt(other).twice)

    def __rsub__(self, other):
        return HalfInt(other) - self

    def __neg__(self):
        return HalfInt(twice=-self.twice)

    def __abs__(self):
        return HalfInt(twice=abs(self.twice))

    def __eq__(self, other):
        try:
            return self.twice == HalfInt(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt(other).twice

    def __hash__(self):
        return hash(self.twice)

    def __repr__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _twice(x):
    return HalfInt(x).twice


@lru_cache(maxsize=None)
def factorial(n):
    if n < 0:
        raise ValueError("factorial of negative integer")
    return math.factorial(n)


@lru_cache(maxsize=None)
def double_factorial(n):
    """n!! with (-1)!! = 1 extended to negative odd n via n!! = (n+2)!!/(n+2).

    Negative even arguments have no finite value and raise.
    """
    if n >= 2:
        return n * double_factorial(n - 2)
    if n in (0, 1):
        return 1
    if n % 2 == 0:
        raise ValueError(f"double factorial undefined for negative even {n}")
    # n negative odd: climb back down from (-1)!! = 1
    return Fraction(double_factorial(n + 2), n + 2)


def triangle_ok(a, b, c):
    """Triangle condition |a-b| <= c <= a+b with consistent parity."""
    ta, tb, tc = _twice(a), _twice(b), _twice(c)
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def cg(j1, m1, j2, m2, j, m):
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>.

    Arguments may be ints, exact-half floats, "p/2" strings, or HalfInt.
    Out-of-triangle or m-mismatched arguments return 0.0, matching the
    coefficient's defined value.  Malformed quantum numbers (negative j,
    |m| > j, inconsistent parity) raise ValueError.
    """
    tj1, tm1 = _twice(j1), _twice(m1)
    tj2, tm2 = _twice(j2), _twice(m2)
    tj, tm = _twice(j), _twice(m)
    for tjj, tmm in ((tj1, tm1), (tj2, tm2), (tj, tm)):
        if tjj < 0:
            raise ValueError("negative angular momentum")
        if abs(tmm) > tjj or (tjj - tmm) % 2 != 0:
            raise ValueError(f"invalid (j, m) pair ({tjj}/2, {tmm}/2)")
    if tm1 + tm2 != tm or not triangle_ok(j1, j2, j):
        return 0.0
    return _cg_exact(tj1, tm1, tj2, tm2, tj, tm)


@lru_cache(maxsize=100000)
def _cg_exact(tj1, tm1, tj2, tm2, tj, tm):
    # Racah's closed form; every factorial argument below is an integer.
    def f(tx):
        return factorial(tx // 2)

    pref = Fraction(tj + 1) * Fraction(
        f(tj1 + tj2 - tj) * f(tj1 - tj2 + tj) * f(-tj1 + tj2 + tj),
        f(tj1 + tj2 + tj + 2),
    )
    pref *= Fraction(
        f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2)
        * f(tj + tm) * f(tj - tm),
        1,
    )
    kmin = max(0, tj2 - tj - tm1, tj1 + tm2 - tj) // 2
    kmax = min(tj1 + tj2 - tj, tj1 - tm1, tj2 + tm2) // 2
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            factorial(k)
            * f(tj1 + tj2 - tj - 2 * k)
            * f(tj1 - tm1 - 2 * k)
            * f(tj2 + tm2 - 2 * k)
            * f(tj - tj2 + tm1 + 2 * k)
            * f(tj - tj1 - tm2 + 2 * k)
        )
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(float(pref * total * total))


def j_matrix_element(j, mp, m, component):
    """<j, mp | J_component | j, m> in the standard phase convention.

    ``component`` is one of ``'x'``, ``'y'``, ``'z'``, ``'+'``, ``'-'`` or an
    integer 0, +1, -1 selecting a spherical component, i.e. the matrix
    element of the spherical basis vector dotted into J.
    """
    tj, tmp, tm = _twice(j), _twice(mp), _twice(m)
    if abs(tmp) > tj or abs(tm) > tj:
        raise ValueError("|m| must not exceed j")
    jj = tj / 2.0
    mm = tm / 2.0
    if component == "z":
        return complex(mm if tmp == tm else 0.0)
    if component == "+":
        return complex(
            math.sqrt((jj - mm) * (jj + mm + 1)) if tmp == tm + 2 else 0.0
        )
    if component == "-":
        return complex(
            math.sqrt((jj + mm) * (jj - mm + 1)) if tmp == tm - 2 else 0.0
        )
    if component == "x":
        return (
            j_matrix_element(j, mp, m, "+") + j_matrix_element(j, mp, m, "-")
        ) / 2.0
    if component == "y":
        return (
            j_matrix_element(j, mp, m, "+") - j_matrix_element(j, mp, m, "-")
        ) / (2.0j)
    if component in (0, 1, -1):
        # <j mp| eps(k).J |j m> = sqrt(j(j+1)) <j m; 1 k | j mp>
        return complex(
            math.sqrt(jj * (jj + 1)) * cg(j, m, 1, component, j, mp)
        )
    raise ValueError(f"unknown component {component!r}")


def j_matrix(j, component):
    """Dense (2j+1) x (2j+1) generator matrix, basis ordered m = j, ..., -j."""
    tj = _twice(j)
    ms = [HalfInt(twice=t) for t in range(tj, -tj - 2, -2)]
    dim = len(ms)
    out = np.zeros((dim, dim), dtype=complex)
    for a, mp in enumerate(ms):
        for b, m in enumerate(ms):
            out[a, b] = j_matrix_element(j, mp, m, component)
    return out


def m_values(j):
    """Magnetic quantum numbers of the j multiplet, descending from +j."""
    tj = _twice(j)
    return [HalfInt(twice=t) for t in range(tj, -tj - 2, -2)]
