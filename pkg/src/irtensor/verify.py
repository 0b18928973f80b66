"""Self-verification suite: every structural identity the library promises,
run as a named check with a measured error and a tolerance.

Each check is deterministic for a fixed seed.  The report is a plain dict
(JSON-serializable); check results are reproducible across runs, while the
per-check runtimes naturally vary.
"""

import json
import math
import time
from dataclasses import dataclass

import numpy as np

from . import harmonics as hm
from . import multipoles as mp
from . import spin_rotations as sr
from . import standard_basis as sb
from . import tensor_core as tc
from . import wigner_eckart as we
from .angular_momentum import HalfInt, cg, j_matrix, j_matrix_element, m_values
from .quadrature import sphere_grid

DEFAULT_SEED = 0xC1EB5C  # documented default for all randomized checks


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    ref: str
    tolerance: float
    fn: object


def _rand_tensor(rng, n):
    return rng.normal(size=(3,) * n) + 1j * rng.normal(size=(3,) * n)


# -- tensor_core ---------------------------------------------------------------

def _check_index_bijection(rng):
    worst = 0.0
    for n in range(0, 9):
        for offset in range(3**n):
            if tc.encode_index(tc.decode_index(offset, n)) != offset:
                worst = 1.0
    return worst


def _check_contract_positivity(rng):
    worst = 0.0
    for n in (0, 1, 2, 3, 4):
        a = _rand_tensor(rng, n)
        v = tc.contract_all(np.conj(a), a)
        worst = max(worst, abs(v.imag), max(0.0, -v.real))
        z = tc.contract_all(np.conj(tc.zeros(n)), tc.zeros(n))
        worst = max(worst, abs(z))
    return worst


def _check_symmetrize_idempotent(rng):
    worst = 0.0
    for n in (2, 3, 4, 5):
        a = _rand_tensor(rng, n)
        lhs = tc.symmetrize(tc.symmetrize(a))
        rhs = math.factorial(n) * tc.symmetrize(a)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / math.factorial(n))
    return worst


# -- angular_momentum ----------------------------------------------------------

def _check_cg_orthogonality(rng):
    worst = 0.0
    twos = range(0, 9)  # 2j = 0..8, i.e. j up to 4 in half steps
    for tj1 in twos:
        for tj2 in twos:
            j1 = HalfInt(twice=tj1)
            j2 = HalfInt(twice=tj2)
            pairs = [(m1, m2) for m1 in m_values(j1) for m2 in m_values(j2)]
            coupled = [
                (HalfInt(twice=tj), m)
                for tj in range(abs(tj1 - tj2), tj1 + tj2 + 2, 2)
                for m in m_values(HalfInt(twice=tj))
            ]
            u = np.array(
                [[cg(j1, m1, j2, m2, j, m) for (j, m) in coupled] for (m1, m2) in pairs]
            )
            worst = max(worst, float(np.max(np.abs(u.T @ u - np.eye(len(coupled))))))
    return worst


def _ladder_cg_table(j1, j2):
    """Clebsch-Gordan table built by lowering from the highest weight.

    Works entirely with dense product-space matrices; shares nothing with
    the closed-form evaluation it cross-checks.
    """
    d1, d2 = j1.twice + 1, j2.twice + 1
    jm_minus = {}
    for j, d in ((j1, d1), (j2, d2)):
        m = np.zeros((d, d), dtype=complex)
        for a, mp_ in enumerate(m_values(j)):
            for b, mv in enumerate(m_values(j)):
                m[a, b] = j_matrix_element(j, mp_, mv, "-")
        jm_minus[j] = m
    lower = np.kron(jm_minus[j1], np.eye(d2)) + np.kron(np.eye(d1), jm_minus[j2])
    basis = {
        (m1, m2): np.kron(
            np.eye(d1)[m_values(j1).index(m1)], np.eye(d2)[m_values(j2).index(m2)]
        )
        for m1 in m_values(j1)
        for m2 in m_values(j2)
    }
    table = {}
    states_above = []  # orthonormal coupled states of higher j at each m
    for tj in range(j1.twice + j2.twice, abs(j1.twice - j2.twice) - 2, -2):
        j = HalfInt(twice=tj)
        # top state: either the product highest weight or the orthogonal
        # complement of the already-built states at this m
        m_top = HalfInt(twice=tj)
        if tj == j1.twice + j2.twice:
            state = basis[(j1, j2)].astype(complex)
        else:
            candidates = [v for (jj, mm), v in table.items() if mm == m_top]
            state = None
            for (m1, m2) in basis:
                if m1 + m2 == m_top:
                    trial = basis[(m1, m2)].astype(complex)
                    for c in candidates:
                        trial = trial - np.vdot(c, trial) * c
                    if np.linalg.norm(trial) > 1e-8:
                        state = trial / np.linalg.norm(trial)
                        break
            # Condon-Shortley: the coefficient at the highest m1 present is positive
            for m1 in m_values(j1):
                m2 = m_top - m1
                if abs(m2.twice) <= j2.twice:
                    amp = np.vdot(basis[(m1, m2)], state)
                    if abs(amp) > 1e-12:
                        state = state * (abs(amp) / amp)
                        break
        table[(j, m_top)] = state
        m = m_top
        while m.twice > -tj:
            nxt = lower @ table[(j, m)]
            nxt /= np.linalg.norm(nxt)
            m = m - 1
            table[(j, m)] = nxt
    out = {}
    for (j, m), state in table.items():
        for (m1, m2), b in basis.items():
            out[(m1, m2, j, m)] = np.vdot(b, state).real
    return out


def _check_cg_ladder(rng):
    worst = 0.0
    for tj1 in range(0, 6):
        for tj2 in range(0, 6):
            j1, j2 = HalfInt(twice=tj1), HalfInt(twice=tj2)
            table = _ladder_cg_table(j1, j2)
            for (m1, m2, j, m), val in table.items():
                worst = max(worst, abs(val - cg(j1, m1, j2, m2, j, m)))
    return worst


def _check_j_commutators(rng):
    worst = 0.0
    for tj in range(1, 13):
        j = HalfInt(twice=tj)
        jx, jy, jz = (j_matrix(j, k) for k in "xyz")
        worst = max(worst, float(np.max(np.abs(jx @ jy - jy @ jx - 1j * jz))))
    return worst


def _check_cartesian_element_identity(rng):
    worst = 0.0
    for tj in range(0, 9):
        j = HalfInt(twice=tj)
        jj = float(j)
        for k, comp in enumerate("xyz"):
            for mp_ in m_values(j):
                for m in m_values(j):
                    lhs = j_matrix_element(j, mp_, m, comp)
                    dm = mp_ - m
                    if dm.twice % 2 or abs(dm.twice) > 2:
                        rhs = 0.0
                    else:
                        dmi = dm.twice // 2
                        rhs = (
                            math.sqrt(jj * (jj + 1))
                            * cg(j, m, 1, dmi, j, mp_)
                            * np.conj(sb.epsilon(1, dmi)[k])
                        )
                    worst = max(worst, abs(lhs - rhs))
    return worst


# -- standard_basis --------------------------------------------------------------

def _check_completeness(rng):
    worst = 0.0
    for n in range(1, 7):
        a = _rand_tensor(rng, n)
        proj = tc.zeros(n)
        for m in range(-n, n + 1):
            e = sb.epsilon(n, m)
            proj += np.conj(e) * tc.contract_all(e, a)
        worst = max(worst, float(np.max(np.abs(proj - sb.irreducible_part(a)))))
        e = sb.epsilon(n, min(1, n))
        proj_e = tc.zeros(n)
        for m in range(-n, n + 1):
            b = sb.epsilon(n, m)
            proj_e += np.conj(b) * tc.contract_all(b, e)
        worst = max(worst, float(np.max(np.abs(proj_e - e))))
    return worst


def _check_maximal_coupling(rng):
    worst = 0.0
    for n1 in range(1, 6):
        for n2 in range(1, 7 - n1):
            n = n1 + n2
            for m in range(-n, n + 1):
                acc = tc.zeros(n)
                for m1 in range(-n1, n1 + 1):
                    m2 = m - m1
                    if abs(m2) > n2:
                        continue
                    c = cg(n1, m1, n2, m2, n, m)
                    if c:
                        acc += c * np.multiply.outer(sb.epsilon(n1, m1), sb.epsilon(n2, m2))
                worst = max(worst, float(np.max(np.abs(acc - sb.epsilon(n, m)))))
    return worst


def _check_spin_eigenvectors(rng):
    worst = 0.0
    for n in range(1, 7):
        s2 = sr.spin_squared(n)
        sz = sr.spin_matrix(n, "z")
        for s in range(n % 2, n + 1, 2):
            for m in range(-s, s + 1):
                t = sb.sym_basis(n, s, m)
                worst = max(worst, float(np.max(np.abs(s2.apply(t) - s * (s + 1) * t))))
                worst = max(worst, float(np.max(np.abs(sz.apply(t) - m * t))))
    return worst


def _check_spin_matrix_elements(rng):
    worst = 0.0
    for n in range(1, 6):
        eps = {m: sb.epsilon(n, m) for m in range(-n, n + 1)}
        for compo in (("x",), ("z", "+"), ("y", "x", "z")):
            mats = [j_matrix(n, k) for k in compo]
            ref = mats[0]
            for mat in mats[1:]:
                ref = ref @ mat
            ms = list(range(n, -n - 1, -1))
            for a, mp_ in enumerate(ms):
                for b, m in enumerate(ms):
                    vec = eps[m]
                    for k in reversed(compo):
                        vec = _apply_spin_component(n, k, vec)
                    val = tc.contract_all(np.conj(eps[mp_]), vec)
                    worst = max(worst, abs(val - ref[a, b]))
    return worst


def _apply_spin_component(n, k, vec):
    if k in "+-":
        x = sr.spin_matrix(n, "x").apply(vec)
        y = sr.spin_matrix(n, "y").apply(vec)
        return x + 1j * y if k == "+" else x - 1j * y
    return sr.spin_matrix(n, k).apply(vec)


# -- spin_rotations ----------------------------------------------------------------

def _check_spin_action(rng):
    worst = 0.0
    for n in range(1, 6):
        for k, comp in enumerate("xyz"):
            jmat = j_matrix(n, comp)
            ms = list(range(n, -n - 1, -1))
            for b, m in enumerate(ms):
                lhs = sr.spin_matrix(n, comp).apply(sb.epsilon(n, m))
                rhs = tc.zeros(n)
                for a, mp_ in enumerate(ms):
                    if jmat[a, b]:
                        rhs += sb.epsilon(n, mp_) * jmat[a, b]
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _check_exponential_factorization(rng):
    worst = 0.0
    for n in range(1, 5):
        theta = rng.normal(size=3)
        big = sr.rotation_generator_exponential(theta, n=n)
        r = sr.rotation_axis_angle(theta, float(np.linalg.norm(theta))).matrix
        kron = np.ones((1, 1))
        for _ in range(n):
            kron = np.kron(kron, r)
        worst = max(worst, float(np.max(np.abs(big - kron))))
    return worst


def _check_dmatrix_consistency(rng):
    worst = 0.0
    for l in range(0, 6):
        r = sr.random_rotation(rng)
        d = sr.wigner_d(l, r)
        ms = sr.d_matrix_indices(l)
        for b, m in enumerate(ms):
            lhs = sr.tensor_rotate(r, sb.epsilon(l, m))
            rhs = tc.zeros(l)
            for a, mp_ in enumerate(ms):
                rhs += sb.epsilon(l, mp_) * d[a, b]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


# -- harmonics -----------------------------------------------------------------------

def _check_addition_theorem(rng):
    worst = 0.0
    for l in range(0, 9):
        for _ in range(3):
            a = hm.unit(rng.normal(size=3))
            b = hm.unit(rng.normal(size=3))
            s = sum(hm.ylm(l, m, a) * np.conj(hm.ylm(l, m, b)) for m in range(-l, l + 1))
            p = (2 * l + 1) / (4 * math.pi) * hm.legendre_poly(l, float(np.dot(a, b)))
            worst = max(worst, abs(s - p))
    return worst


def _check_orthonormality(rng):
    lmax = 6
    pts, wts = sphere_grid(lmax)
    ys = {
        (l, m): np.array([hm.ylm(l, m, p) for p in pts])
        for l in range(lmax + 1)
        for m in range(-l, l + 1)
    }
    worst = 0.0
    keys = list(ys)
    for i, k1 in enumerate(keys):
        for k2 in keys[i:]:
            v = np.sum(wts * np.conj(ys[k1]) * ys[k2])
            worst = max(worst, abs(v - (1.0 if k1 == k2 else 0.0)))
    return worst


def _check_conjugation(rng):
    worst = 0.0
    d = hm.unit(rng.normal(size=3))
    for l in range(0, 7):
        for m in range(-l, l + 1):
            worst = max(
                worst,
                abs(np.conj(hm.ylm(l, m, d)) - (-1) ** m * hm.ylm(l, -m, d)),
            )
    for (l, s, j) in ((1, 1, 1), (2, 1, 2), (2, 2, 3), (3, 2, 2)):
        for m in range(-j, j + 1):
            lhs = np.conj(hm.tensor_sh(l, s, j, m, d))
            rhs = (-1) ** (l + s - j) * (-1) ** m * hm.tensor_sh(l, s, j, -m, d)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _check_bipolar_derivative_route(rng):
    from ._polynomial import (
        poly_add,
        poly_gradient_tensor,
        poly_scale,
        solid_harmonic,
    )
    from .angular_momentum import double_factorial

    worst = 0.0
    d = hm.unit(rng.normal(size=3))
    for l in range(0, 4):
        for s in range(0, 4):
            for j in range(abs(l - s), l + s + 1):
                for m in (-j, 0, j):
                    # assemble d^s_(r') of |r'|^s Y^{sl}_{jm}(rhat', rhat) and
                    # compare with the tensor harmonic itself
                    acc = {}
                    for mu_p in range(-s, s + 1):
                        mu = m - mu_p
                        if abs(mu) > l:
                            continue
                        c = cg(s, mu_p, l, mu, j, m)
                        if c:
                            acc = poly_add(
                                acc,
                                poly_scale(solid_harmonic(s, mu_p), c * hm.ylm(l, mu, d)),
                            )
                    grad = poly_gradient_tensor(acc, s)
                    pref = math.sqrt(4 * math.pi) * math.sqrt(
                        1.0 / (math.factorial(s) * float(double_factorial(2 * s + 1)))
                    )
                    lhs = pref * (-1) ** (l + s - j) * grad
                    rhs = hm.tensor_sh(l, s, j, m, d)
                    worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _check_derivative_trace(rng):
    worst = 0.0
    for l in range(2, 7):
        m = int(rng.integers(-l, l + 1))
        d = hm.unit(rng.normal(size=3))
        tr = np.trace(hm.ylm_derivatives(2, l, m, d))
        worst = max(worst, abs(tr + l * (l + 1) * hm.ylm(l, m, d)))
    return worst


# -- wigner_eckart ----------------------------------------------------------------------

def _check_reduced_me_independence(rng):
    worst = 0.0
    for (lp, l, n) in ((2, 2, 2), (3, 1, 2), (4, 2, 2), (3, 2, 1)):
        spec = we.orbital_block(
            lambda p, n=n: sb.irreducible_part(tc.outer_power(p, n)), lp, l, n
        )
        comps = we.sito_from_cito(spec)
        vals = []
        for mp_ in range(lp, -lp - 1, -1):
            for m in range(l, -l - 1, -1):
                k = mp_ - m
                if abs(k) <= n:
                    c = cg(l, m, n, k, lp, mp_)
                    if abs(c) > 1e-9:
                        vals.append(comps[k][lp - mp_, l - m] / c)
        worst = max(worst, max(abs(v - vals[0]) for v in vals))
    return worst


def _check_duality_roundtrip(rng):
    worst = 0.0
    for (lp, l, n) in ((2, 2, 2), (3, 2, 1), (4, 2, 2), (3, 3, 2)):
        spec = we.orbital_block(
            lambda p, n=n: sb.irreducible_part(tc.outer_power(p, n)), lp, l, n
        )
        comps = we.sito_from_cito(spec)
        back = we.cito_from_sito(comps, lp, l)
        worst = max(worst, float(np.max(np.abs(back.blocks - spec.blocks))))
        comps2 = we.sito_from_cito(back)
        worst = max(
            worst,
            max(float(np.max(np.abs(comps2[m] - comps[m]))) for m in comps),
        )
    return worst


def _check_hermiticity_correspondence(rng):
    worst = 0.0
    l, n = 2, 2
    spec = we.orbital_block(
        lambda p: sb.irreducible_part(tc.outer_power(p, n)), l, l, n
    )
    herm = 0.0
    for a in range(2 * l + 1):
        for b in range(2 * l + 1):
            herm = max(
                herm,
                float(np.max(np.abs(spec.blocks[a, b] - np.conj(spec.blocks[b, a])))),
            )
    comps = we.sito_from_cito(spec)
    dual = 0.0
    for m in range(-n, n + 1):
        dual = max(
            dual,
            float(
                np.max(np.abs(comps[m] - (-1) ** m * comps[-m].conj().T))
            ),
        )
    # a hermitian cartesian block must map to a hermitian spherical family
    worst = max(herm, dual)
    return worst


def _check_position_momentum_blocks(rng):
    # direction powers and derivative operators between fixed-|r| states:
    # closed forms against the quadrature/finite-difference constructions
    worst = 0.0
    lp, l, n = 3, 2, 3
    spec = we.direction_power_block(lp, l, n)
    reduced = {
        s: we.reduced_me_ylm(lp, s, l, cartesian=True).value
        for s in range(n % 2, n + 1, 2)
    }
    for a, mp_ in enumerate(range(lp, -lp - 1, -1)):
        for b, m in enumerate(range(l, -l - 1, -1)):
            pred = we.we_matrix_element(
                reduced, lp, mp_, l, m, n=n, klass="totally_symmetric"
            )
            worst = max(worst, float(np.max(np.abs(pred - spec.blocks[a, b]))))
    # gradient block: quadrature of Y* x exact first derivatives
    lp, l, n = 2, 1, 1
    pts, wts = sphere_grid(lp + l + n)
    for mp_ in (lp, 0):
        for m in range(-l, l + 1):
            quad = np.zeros(3, dtype=complex)
            for p, w in zip(pts, wts):
                quad += w * np.conj(hm.ylm(lp, mp_, p)) * hm.ylm_derivatives(1, l, m, p)
            pred = we.momentum_sandwich(lp, mp_, n, l, m)
            worst = max(worst, float(np.max(np.abs(pred - quad))))
    return worst


# -- multipoles ---------------------------------------------------------------------------

def _check_electric_roundtrip(rng):
    pos = rng.normal(size=(6, 3)) * 0.6
    qs = rng.uniform(0.5, 1.5, 6)
    dist = mp.ChargeDistribution.from_arrays(pos, qs)
    ms = mp.electric_moments(dist, 6)
    worst = 0.0
    for n in range(7):
        sph = mp.electric_spherical_from_cartesian(n, ms.cartesian[n])
        scale = max(1.0, max(abs(v) for v in sph.values()))
        worst = max(
            worst,
            max(abs(sph[(n, m)] - ms.spherical[(n, m)]) for m in range(-n, n + 1))
            / scale,
        )
        cart = mp.electric_cartesian_from_spherical(n, ms.spherical)
        cscale = max(1.0, float(np.max(np.abs(ms.cartesian[n]))))
        worst = max(worst, float(np.max(np.abs(cart - ms.cartesian[n]))) / cscale)
    return worst


def _check_cartesian_irreducibility(rng):
    pos = rng.normal(size=(5, 3)) * 0.6
    qs = rng.uniform(-1.0, 1.0, 5)
    dist = mp.ChargeDistribution.from_arrays(pos, qs)
    ms = mp.electric_moments(dist, 6)
    worst = 0.0
    for n in range(2, 7):
        t = ms.cartesian[n]
        scale = max(1.0, float(np.max(np.abs(t))))
        worst = max(worst, tc.max_asymmetry(t) / scale)
        worst = max(
            worst, float(np.max(np.abs(np.trace(t, axis1=0, axis2=1)))) / scale
        )
    return worst


def _random_loop(rng, nseg=40):
    angles = np.linspace(0, 2 * math.pi, nseg, endpoint=False)
    axis = hm.unit(rng.normal(size=3))
    ref = hm.unit(np.cross(axis, [1.0, 0.3, -0.2]))
    ref2 = np.cross(axis, ref)
    verts = [math.cos(a) * ref + math.sin(a) * ref2 for a in angles]
    verts.append(verts[0])
    return mp.CurrentDistribution.from_loops([(1.0 + float(rng.uniform()), verts)])


def _check_magnetic_roundtrip(rng):
    loop = _random_loop(rng)
    ms = mp.magnetic_moments(loop, 4)
    worst = 0.0
    for l in range(1, 5):
        cart = mp.magnetic_cartesian_from_spherical(l, ms.spherical)
        scale = max(1.0, float(np.max(np.abs(ms.cartesian[l]))))
        worst = max(worst, float(np.max(np.abs(cart - ms.cartesian[l]))) / scale)
        sph = mp.magnetic_spherical_from_cartesian(l, ms.cartesian[l])
        sscale = max(1.0, max(abs(v) for v in sph.values()))
        worst = max(
            worst,
            max(abs(sph[(l, m)] - ms.spherical[(l, m)]) for m in range(-l, l + 1))
            / sscale,
        )
    return worst


def _check_static_residual(rng):
    verts = rng.normal(size=(5, 3)) * 0.7
    verts = np.vstack([verts, verts[0]])
    loop = mp.CurrentDistribution.from_loops([(1.0, verts)])
    mags = []
    for factor in (1, 2, 4, 8):
        msf = mp.magnetic_moments(loop.refine(factor), 3)
        mags.append(max(abs(v) for v in msf.residual.values()))
    # require at least first-order decay per refinement doubling
    worst = 0.0
    for a, b in zip(mags, mags[1:]):
        worst = max(worst, b / a if a else 0.0)
    return worst


def _check_transversality(rng):
    loop = _random_loop(rng)
    worst = 0.0
    for _ in range(4):
        r = 3.5 * hm.unit(rng.normal(size=3))
        a = mp.vector_potential(loop, r, "spherical", 4)
        worst = max(worst, abs(float(np.dot(r, a))) / np.linalg.norm(r))
    return worst


# -- cli ------------------------------------------------------------------------------------

def _check_deterministic_streams(rng):
    # the randomized checks draw from seeded generators; two generators with
    # the same seed must produce identical draws
    a = np.random.default_rng(12345).normal(size=32)
    b = np.random.default_rng(12345).normal(size=32)
    return float(np.max(np.abs(a - b)))


CHECKS = [
    Check("tensor_core.index_bijection", "tensor_core",
          "multi-index/flat-offset round trip", 1e-15, _check_index_bijection),
    Check("tensor_core.contract_positivity", "tensor_core",
          "conjugate self-contraction is a non-negative real norm", 1e-12,
          _check_contract_positivity),
    Check("tensor_core.symmetrize_idempotent", "tensor_core",
          "symmetrizing twice rescales by rank factorial", 1e-12,
          _check_symmetrize_idempotent),
    Check("angular_momentum.cg_orthogonality", "angular_momentum",
          "coupling coefficients form an orthogonal matrix", 1e-12,
          _check_cg_orthogonality),
    Check("angular_momentum.cg_ladder_oracle", "angular_momentum",
          "closed-form coefficients match the lowering-operator construction",
          1e-10, _check_cg_ladder),
    Check("angular_momentum.commutators", "angular_momentum",
          "generator matrices satisfy the angular-momentum algebra", 1e-12,
          _check_j_commutators),
    Check("angular_momentum.cartesian_element_identity", "angular_momentum",
          "cartesian generator elements factor into coupling times basis vector",
          1e-12, _check_cartesian_element_identity),
    Check("standard_basis.completeness", "standard_basis",
          "basis sum acts as the irreducible projector", 1e-11,
          _check_completeness),
    Check("standard_basis.maximal_coupling", "standard_basis",
          "maximal coupling of two basis tensors is again a basis tensor",
          1e-12, _check_maximal_coupling),
    Check("standard_basis.spin_eigenvectors", "standard_basis",
          "symmetric basis tensors are spin eigenvectors", 1e-11,
          _check_spin_eigenvectors),
    Check("standard_basis.spin_matrix_elements", "standard_basis",
          "spin matrix elements in the tensor basis match the generator matrices",
          1e-11, _check_spin_matrix_elements),
    Check("spin_rotations.spin_action", "spin_rotations",
          "spin matrices act on basis tensors through generator matrix elements",
          1e-11, _check_spin_action),
    Check("spin_rotations.exponential_factorization", "spin_rotations",
          "rotation exponential factorizes into a Kronecker power", 1e-12,
          _check_exponential_factorization),
    Check("spin_rotations.dmatrix_consistency", "spin_rotations",
          "rotating basis tensors reproduces the D-matrix expansion", 1e-10,
          _check_dmatrix_consistency),
    Check("harmonics.addition_theorem", "harmonics",
          "harmonic addition theorem against the Legendre polynomial", 1e-11,
          _check_addition_theorem),
    Check("harmonics.orthonormality", "harmonics",
          "orthonormality under sphere quadrature", 1e-10, _check_orthonormality),
    Check("harmonics.conjugation", "harmonics",
          "complex conjugation relations of scalar and tensor harmonics", 1e-12,
          _check_conjugation),
    Check("harmonics.bipolar_derivative_route", "harmonics",
          "tensor harmonics from derivatives of bipolar harmonics", 1e-11,
          _check_bipolar_derivative_route),
    Check("harmonics.derivative_trace", "harmonics",
          "trace of second derivatives gives the angular Laplacian eigenvalue",
          1e-8, _check_derivative_trace),
    Check("wigner_eckart.reduced_me_independence", "wigner_eckart",
          "reduced matrix elements are channel-independent", 1e-10,
          _check_reduced_me_independence),
    Check("wigner_eckart.duality_roundtrip", "wigner_eckart",
          "spherical/cartesian operator maps are mutually inverse", 1e-11,
          _check_duality_roundtrip),
    Check("wigner_eckart.hermiticity_correspondence", "wigner_eckart",
          "hermitian cartesian blocks map to hermitian spherical families",
          1e-11, _check_hermiticity_correspondence),
    Check("wigner_eckart.position_momentum_blocks", "wigner_eckart",
          "direction-power and derivative operator blocks match closed forms",
          1e-9, _check_position_momentum_blocks),
    Check("multipoles.electric_roundtrip", "multipoles",
          "electric spherical/cartesian conversion round trip", 1e-12,
          _check_electric_roundtrip),
    Check("multipoles.cartesian_irreducibility", "multipoles",
          "cartesian moment tensors are symmetric and traceless", 1e-12,
          _check_cartesian_irreducibility),
    Check("multipoles.magnetic_roundtrip", "multipoles",
          "magnetic spherical/cartesian conversion round trip", 1e-10,
          _check_magnetic_roundtrip),
    Check("multipoles.static_residual_refinement", "multipoles",
          "static loops kill the electric-derivative channel under refinement",
          0.6, _check_static_residual),
    Check("multipoles.transversality", "multipoles",
          "static expansion is transverse to the field point", 1e-12,
          _check_transversality),
    Check("cli.deterministic_streams", "cli",
          "seeded generators reproduce identical draws", 0.0,
          _check_deterministic_streams),
]


def run_verify(module=None, seed=DEFAULT_SEED, tolerance=None):
    """Run the verification suite; returns the report dict."""
    results = []
    for idx, check in enumerate(sorted(CHECKS, key=lambda c: c.name)):
        if module and check.module != module:
            continue
        rng = np.random.default_rng([seed, idx])
        t0 = time.perf_counter()
        err = float(check.fn(rng))
        dt = time.perf_counter() - t0
        tol = tolerance if tolerance is not None else check.tolerance
        results.append(
            {
                "name": check.name,
                "module": check.module,
                "ref": check.ref,
                "status": "pass" if err <= tol else "fail",
                "max_error": err,
                "tolerance": tol,
                "runtime": dt,
            }
        )
    report = {
        "seed": seed,
        "checks": results,
        "passed": all(c["status"] == "pass" for c in results),
    }
    return report


def report_to_json(report, indent=2):
    return json.dumps(report, indent=indent)


def report_to_csv(report):
    lines = ["name,module,status,max_error,tolerance,runtime"]
    for c in report["checks"]:
        lines.append(
            f"{c['name']},{c['module']},{c['status']},{c['max_error']:.6e},"
            f"{c['tolerance']:.1e},{c['runtime']:.3f}"
        )
    return "\n".join(lines) + "\n"
