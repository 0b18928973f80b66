"""Electric and magnetic multipole moments of discrete sources, their
spherical/cartesian conversions to all orders, and field evaluation.

Sources are weighted point charges or closed current polylines, so moment
integrals reduce to exact finite sums (charges) or midpoint-rule segment sums
(currents).  SI prefactors are kept as overridable constants that default to
one: ``coulomb_constant`` stands for 1/(4 pi eps0) and ``mu_over_4pi`` for
mu0/(4 pi).

Spherical moments follow the convention in which the potential expansions read

    phi(r) = C sum_n 4 pi/(2n+1) |r|^-(n+1) sum_m conj(q_nm) Y_nm(rhat),
    A(r)   = M sum_l 4 pi/(2l+1) |r|^-(l+1) sum_m conj(m_lm) Y^{l1}_{lm}(rhat),

and the cartesian tensors are the irreducible parts of the plain moment
integrals, normalized so that the same expansions take the polynomial forms

    phi(r) = C sum_n 1/n!  |r|^-(2n+1) <Q_n, r^n>,
    A_j(r) = M sum_l 1/l!  |r|^-(2l+1) eps_{jkh} r_k (M_l . r^(l-1))_h.

The spherical<->cartesian conversion factors are fixed by requiring these
expansions to agree term by term; the round-trip identity and the agreement
with direct integration are both enforced by the test suite.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import tensor_core as tc
from ._polynomial import poly_eval, solid_harmonic
from .angular_momentum import double_factorial
from .harmonics import n_coefficient, tensor_sh, ylm
from .standard_basis import _epsilon_recursive, irreducible_part


@dataclass(frozen=True)
class ChargeDistribution:
    """Weighted point charges: a tuple of (position, charge) pairs."""

    points: tuple

    @classmethod
    def from_arrays(cls, positions, charges):
        pts = tuple(
            (np.array(p, dtype=float), float(q))
            for p, q in zip(positions, charges)
        )
        if not pts:
            raise ValueError("charge distribution needs at least one point")
        return cls(points=pts)

    @classmethod
    def from_json_dict(cls, d):
        return cls.from_arrays(
            [c["pos"] for c in d["charges"]], [c["q"] for c in d["charges"]]
        )

    def to_json_dict(self):
        return {
            "charges": [
                {"pos": [float(x) for x in p], "q": q} for p, q in self.points
            ]
        }

    def radius(self):
        return max(float(np.linalg.norm(p)) for p, _ in self.points)

    def total_charge(self):
        return sum(q for _, q in self.points)


@dataclass(frozen=True)
class CurrentDistribution:
    """Closed current polylines: a tuple of (current, vertex-array) pairs.

    Each polyline must close on itself (first vertex equals last); this
    guarantees discrete divergence-freedom for static currents.
    """

    loops: tuple

    @classmethod
    def from_loops(cls, loops):
        norm = []
        for current, vertices in loops:
            v = np.array(vertices, dtype=float)
            if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 3:
                raise ValueError("loop needs at least 3 vertices of dimension 3")
            if not np.allclose(v[0], v[-1], atol=1e-12):
                raise ValueError("polyline is not closed (first vertex != last)")
            norm.append((float(current), v))
        if not norm:
            raise ValueError("current distribution needs at least one loop")
        return cls(loops=tuple(norm))

    @classmethod
    def from_json_dict(cls, d):
        return cls.from_loops([(lp["I"], lp["vertices"]) for lp in d["loops"]])

    def to_json_dict(self):
        return {
            "loops": [
                {"I": current, "vertices": [[float(x) for x in row] for row in v]}
                for current, v in self.loops
            ]
        }

    def segments(self):
        """Midpoints, directed lengths, and currents of all segments."""
        mids, dls, currents = [], [], []
        for current, v in self.loops:
            for a, b in zip(v[:-1], v[1:]):
                mids.append(0.5 * (a + b))
                dls.append(b - a)
                currents.append(current)
        return np.array(mids), np.array(dls), np.array(currents)

    def refine(self, factor):
        """Subdivide every segment into ``factor`` equal pieces."""
        out = []
        for current, v in self.loops:
            new = []
            for a, b in zip(v[:-1], v[1:]):
                for k in range(factor):
                    new.append(a + (b - a) * k / factor)
            new.append(v[-1])
            out.append((current, np.array(new)))
        return CurrentDistribution.from_loops(out)

    def radius(self):
        return max(float(np.max(np.linalg.norm(v, axis=1))) for _, v in self.loops)


@dataclass
class MultipoleSet:
    """Spherical moments paired with their cartesian tensors."""

    kind: str                      # 'electric' | 'magnetic'
    n_max: int
    spherical: dict                # (n, m) -> complex moment
    cartesian: dict                # n -> irreducible tensor
    residual: dict = field(default_factory=dict)  # magnetic j = l+1 channel

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "n_max": self.n_max,
            "spherical": {
                f"{n},{m}": [v.real, v.imag] for (n, m), v in self.spherical.items()
            },
            "cartesian": {str(n): tc.to_json_dict(t) for n, t in self.cartesian.items()},
            "residual": {
                f"{n},{m}": [v.real, v.imag] for (n, m), v in self.residual.items()
            },
        }

    @classmethod
    def from_json_dict(cls, d):
        def parse(dd):
            out = {}
            for key, (re, im) in dd.items():
                n, m = key.split(",")
                out[(int(n), int(m))] = complex(re, im)
            return out

        return cls(
            kind=d["kind"],
            n_max=int(d["n_max"]),
            spherical=parse(d["spherical"]),
            cartesian={int(n): tc.from_json_dict(t) for n, t in d["cartesian"].items()},
            residual=parse(d.get("residual", {})),
        )


# -- electric ----------------------------------------------------------------------

def electric_spherical_from_cartesian(n, q_tensor):
    """q_nm from the rank-n cartesian moment tensor."""
    pref = math.sqrt(
        (2 * n + 1)
        / (math.factorial(n) * float(double_factorial(2 * n - 1)))
    ) / math.sqrt(4 * math.pi)
    return {
        (n, m): pref * tc.contract_all(q_tensor, _epsilon_recursive(n, m))
        for m in range(-n, n + 1)
    }


def electric_cartesian_from_spherical(n, moments):
    """Rank-n cartesian moment tensor from the spherical moments q_nm."""
    pref = math.sqrt(
        4 * math.pi
        * math.factorial(n)
        * float(double_factorial(2 * n - 1))
        / (2 * n + 1)
    )
    out = tc.zeros(n)
    for m in range(-n, n + 1):
        out += moments[(n, m)] * np.conj(_epsilon_recursive(n, m))
    return pref * out


def electric_moments(dist, n_max):
    """Spherical and cartesian electric moments up to order ``n_max``.

    Both families are computed independently from the source sum; the
    conversion identities between them hold to roundoff and are asserted in
    the test suite.
    """
    spherical = {}
    cartesian = {}
    for n in range(n_max + 1):
        for m in range(-n, n + 1):
            acc = 0.0 + 0.0j
            for p, q in dist.points:
                acc += q * poly_eval(solid_harmonic(n, m), p)
            spherical[(n, m)] = acc
        raw = tc.zeros(n)
        for p, q in dist.points:
            raw += q * tc.outer_power(p, n)
        cartesian[n] = float(double_factorial(2 * n - 1)) * irreducible_part(raw)
    return MultipoleSet(
        kind="electric", n_max=n_max, spherical=spherical, cartesian=cartesian
    )


def electric_potential(dist, r, method="direct", n_max=4, coulomb_constant=1.0):
    """Electric potential at a field point, by expansion or direct sum."""
    r = np.asarray(r, dtype=float)
    rn = float(np.linalg.norm(r))
    if method == "direct":
        total = sum(q / np.linalg.norm(r - p) for p, q in dist.points)
        return coulomb_constant * float(total)
    if rn <= dist.radius():
        raise ValueError(
            "expansion methods require the field point outside the source radius"
        )
    moments = electric_moments(dist, n_max)
    if method == "spherical":
        d = r / rn
        total = 0.0
        for n in range(n_max + 1):
            term = sum(
                np.conj(moments.spherical[(n, m)]) * ylm(n, m, d)
                for m in range(-n, n + 1)
            )
            total += 4 * math.pi / (2 * n + 1) / rn ** (n + 1) * term
        return coulomb_constant * float(np.real(total))
    if method == "cartesian":
        total = 0.0
        for n in range(n_max + 1):
            val = tc.contract_all(moments.cartesian[n], tc.outer_power(r, n))
            total += val.real / math.factorial(n) / rn ** (2 * n + 1)
        return coulomb_constant * float(total)
    raise ValueError(f"unknown method {method!r}")


# -- magnetic ----------------------------------------------------------------------

def _magnetic_conversion_prefactor(l):
    # fixes the normalization tying the j = l spherical channel to the
    # cartesian tensor so that both potential expansions agree term by term
    return (
        4 * math.pi
        * math.factorial(l)
        / (2 * l + 1)
        * math.sqrt(l / (l + 1))
        * n_coefficient(l)
    )


def magnetic_spherical_from_cartesian(l, m_tensor):
    """Spherical j = l moments from the rank-l cartesian magnetic tensor."""
    pref = _magnetic_conversion_prefactor(l)
    return {
        (l, m): -1j / pref * tc.contract_all(_epsilon_recursive(l, m), m_tensor)
        for m in range(-l, l + 1)
    }


def magnetic_cartesian_from_spherical(l, moments):
    """Rank-l cartesian magnetic tensor from the spherical j = l moments."""
    pref = _magnetic_conversion_prefactor(l)
    out = tc.zeros(l)
    for m in range(-l, l + 1):
        out += moments[(l, m)] * np.conj(_epsilon_recursive(l, m))
    return 1j * pref * out


def magnetic_moments(dist, l_max):
    """Static magnetic multipoles of closed current loops up to order ``l_max``.

    The spherical moments are the j = l channel of the vector-harmonic
    projections of the current; the j = l+1 channel is the time derivative of
    the electric moments, which vanishes for static sources up to
    discretization error and is reported in ``residual``.  Cartesian tensors
    come independently from the segment sum of (j ^ r') r'^(l-1).
    """
    mids, dls, currents = dist.segments()
    spherical = {}
    residual = {}
    cartesian = {}
    for l in range(1, l_max + 1):
        for m in range(-l, l + 1):
            acc = 0.0 + 0.0j
            res = 0.0 + 0.0j
            for mid, dl, cur in zip(mids, dls, currents):
                rn = float(np.linalg.norm(mid))
                ysh = tensor_sh(l, 1, l, m, mid)
                acc += cur * rn**l * np.dot(dl, ysh)
                ysh_up = tensor_sh(l, 1, l + 1, m, mid)
                res += cur * rn**l * np.dot(dl, ysh_up)
            spherical[(l, m)] = acc
            residual[(l, m)] = res
        raw = tc.zeros(l)
        for mid, dl, cur in zip(mids, dls, currents):
            cross = np.cross(dl, mid)
            raw += cur * np.multiply.outer(
                cross.astype(complex), tc.outer_power(mid, l - 1)
            )
        cartesian[l] = (
            float(double_factorial(2 * l - 1)) * l / (l + 1) * irreducible_part(raw)
        )
    return MultipoleSet(
        kind="magnetic", n_max=l_max, spherical=spherical,
        cartesian=cartesian, residual=residual,
    )


def vector_potential(dist, r, method="direct", l_max=4, mu_over_4pi=1.0, qdot=None):
    """Magnetic vector potential at a field point.

    For static sources only the magnetic (j = l) channel contributes.  A
    time-varying charge distribution adds electric-moment derivative terms:
    pass ``qdot`` as a dict {(n, m): dq_nm/dt} to include them in either
    expansion method.
    """
    r = np.asarray(r, dtype=float)
    rn = float(np.linalg.norm(r))
    if method == "direct":
        mids, dls, currents = dist.segments()
        total = np.zeros(3)
        for mid, dl, cur in zip(mids, dls, currents):
            total += cur * dl / np.linalg.norm(r - mid)
        return mu_over_4pi * total
    if rn <= dist.radius():
        raise ValueError(
            "expansion methods require the field point outside the source radius"
        )
    moments = magnetic_moments(dist, l_max)
    d = r / rn
    if method == "spherical":
        total = np.zeros(3, dtype=complex)
        for l in range(1, l_max + 1):
            term = np.zeros(3, dtype=complex)
            for m in range(-l, l + 1):
                term += np.conj(moments.spherical[(l, m)]) * tensor_sh(l, 1, l, m, d)
            total += 4 * math.pi / (2 * l + 1) / rn ** (l + 1) * term
        if qdot is not None:
            total += _qdot_spherical_terms(qdot, d, rn, l_max)
        return mu_over_4pi * np.real(total)
    if method == "cartesian":
        total = np.zeros(3, dtype=complex)
        for l in range(1, l_max + 1):
            mt = np.conj(moments.cartesian[l])
            core = mt
            for _ in range(l - 1):
                core = np.tensordot(core, r.astype(complex), axes=([core.ndim - 1], [0]))
            total += np.cross(r, core) / math.factorial(l) / rn ** (2 * l + 1)
        if qdot is not None:
            total += _qdot_cartesian_terms(qdot, r, rn, l_max)
        return mu_over_4pi * np.real(total)
    raise ValueError(f"unknown method {method!r}")


def _qdot_spherical_terms(qdot, d, rn, l_max):
    total = np.zeros(3, dtype=complex)
    for l in range(0, l_max + 1):
        term = np.zeros(3, dtype=complex)
        seen = False
        for m in range(-(l + 1), l + 2):
            v = qdot.get((l + 1, m))
            if v:
                seen = True
                term += np.conj(v) * tensor_sh(l, 1, l + 1, m, d)
        if seen:
            total += (
                4 * math.pi
                / (2 * l + 1)
                / math.sqrt((l + 1) * (2 * l + 3))
                / rn ** (l + 1)
                * term
            )
    return total


def _qdot_cartesian_terms(qdot, r, rn, l_max):
    total = np.zeros(3, dtype=complex)
    for l in range(0, l_max + 1):
        moments = {
            (l + 1, m): qdot.get((l + 1, m), 0.0) for m in range(-(l + 1), l + 2)
        }
        if not any(moments.values()):
            continue
        qd = np.conj(electric_cartesian_from_spherical(l + 1, moments))
        if l == 0:
            total += qd / rn
            continue
        core = qd
        for _ in range(l):
            core = np.tensordot(core, r.astype(complex), axes=([0], [0]))
        total += core / math.factorial(l) / ((l + 1) * (2 * l + 1)) / rn ** (2 * l + 1)
    return total


# -- JSON loading -------------------------------------------------------------------

def load_source(path_or_dict):
    """Load a charge or current source from a JSON file or parsed dict."""
    if isinstance(path_or_dict, dict):
        d = path_or_dict
    else:
        with open(path_or_dict) as fh:
            d = json.load(fh)
    if "charges" in d:
        return ChargeDistribution.from_json_dict(d)
    if "loops" in d:
        return CurrentDistribution.from_json_dict(d)
    raise ValueError("source JSON needs a 'charges' or 'loops' key")
