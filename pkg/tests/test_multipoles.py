import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from irtensor import multipoles as mp
from irtensor import tensor_core as tc


def square_loop(side=1.0, current=2.0, z=0.0):
    c = side / 2
    verts = [[c, -c, z], [c, c, z], [-c, c, z], [-c, -c, z], [c, -c, z]]
    return mp.CurrentDistribution.from_loops([(current, verts)])


def tilted_circle(nseg=96, current=1.5, tilt=0.7):
    rot = np.array(
        [
            [1, 0, 0],
            [0, math.cos(tilt), -math.sin(tilt)],
            [0, math.sin(tilt), math.cos(tilt)],
        ]
    )
    verts = [
        (rot @ np.array([math.cos(2 * math.pi * k / nseg),
                         math.sin(2 * math.pi * k / nseg), 0.0])).tolist()
        for k in range(nseg)
    ]
    verts.append(verts[0])
    return mp.CurrentDistribution.from_loops([(current, verts)])


@pytest.fixture
def charge_cloud(rng):
    pos = rng.normal(size=(8, 3)) * 0.5
    qs = rng.uniform(0.5, 1.5, 8)
    return mp.ChargeDistribution.from_arrays(pos, qs)


class TestElectricMoments:
    def test_point_charge_at_origin(self):
        d = mp.ChargeDistribution.from_arrays([[0, 0, 0]], [1.0])
        ms = mp.electric_moments(d, 3)
        assert ms.spherical[(0, 0)] == pytest.approx(1 / math.sqrt(4 * math.pi))
        assert complex(ms.cartesian[0]) == pytest.approx(1.0)
        for n in (1, 2, 3):
            assert np.max(np.abs(ms.cartesian[n])) < 1e-15
            assert all(
                abs(ms.spherical[(n, m)]) < 1e-15 for m in range(-n, n + 1)
            )

    def test_displaced_charge(self):
        q, d = 2.0, 0.7
        ms = mp.electric_moments(
            mp.ChargeDistribution.from_arrays([[0, 0, d]], [q]), 1
        )
        assert ms.spherical[(1, 0)] == pytest.approx(q * d * math.sqrt(3 / (4 * math.pi)))
        assert_allclose(ms.cartesian[1].real, [0, 0, q * d], atol=1e-15)

    def test_physical_dipole(self):
        q, d = 1.0, 0.5
        dist = mp.ChargeDistribution.from_arrays(
            [[0, 0, d / 2], [0, 0, -d / 2]], [q, -q]
        )
        ms = mp.electric_moments(dist, 1)
        assert complex(ms.cartesian[0]) == pytest.approx(0.0)
        assert ms.cartesian[1][2] == pytest.approx(q * d)

    def test_conversions_round_trip(self, charge_cloud):
        ms = mp.electric_moments(charge_cloud, 6)
        for n in range(7):
            sph = mp.electric_spherical_from_cartesian(n, ms.cartesian[n])
            for m in range(-n, n + 1):
                assert sph[(n, m)] == pytest.approx(ms.spherical[(n, m)], abs=1e-11)
            cart = mp.electric_cartesian_from_spherical(n, ms.spherical)
            scale = max(1.0, float(np.max(np.abs(ms.cartesian[n]))))
            assert float(np.max(np.abs(cart - ms.cartesian[n]))) / scale < 1e-13

    def test_cartesian_irreducible(self, charge_cloud):
        ms = mp.electric_moments(charge_cloud, 6)
        for n in range(2, 7):
            t = ms.cartesian[n]
            scale = max(1.0, float(np.max(np.abs(t))))
            assert tc.max_asymmetry(t) / scale < 1e-13
            assert float(np.max(np.abs(np.trace(t, axis1=0, axis2=1)))) / scale < 1e-12

    def test_hermiticity_for_real_sources(self, charge_cloud):
        ms = mp.electric_moments(charge_cloud, 4)
        for (n, m), v in ms.spherical.items():
            assert np.conj(v) == pytest.approx((-1) ** m * ms.spherical[(n, -m)])


class TestElectricPotential:
    def test_single_charge_exact_at_any_order(self):
        dist = mp.ChargeDistribution.from_arrays([[0, 0, 0]], [2.5])
        r = np.array([0.3, -1.0, 0.6])
        want = 2.5 / np.linalg.norm(r)
        for nmax in (0, 3):
            assert mp.electric_potential(dist, r, "spherical", nmax) == pytest.approx(want)
            assert mp.electric_potential(dist, r, "cartesian", nmax) == pytest.approx(want)

    def test_dipole_truncation_error_scale(self):
        d = 0.1
        dist = mp.ChargeDistribution.from_arrays(
            [[0, 0, d / 2], [0, 0, -d / 2]], [1.0, -1.0]
        )
        r = np.array([0.0, 0.0, 10 * d])
        direct = mp.electric_potential(dist, r, "direct")
        approx = mp.electric_potential(dist, r, "spherical", 1)
        # the first neglected term is two orders down in d/|r|
        assert abs(approx - direct) / abs(direct) < (1 / 10.0) ** 2

    def test_methods_agree_and_converge(self, charge_cloud):
        r = 3.0 * charge_cloud.radius() * np.array([0.3, -0.9, 0.4]) / np.linalg.norm(
            [0.3, -0.9, 0.4]
        )
        direct = mp.electric_potential(charge_cloud, r, "direct")
        for nmax in (2, 5, 8):
            ps = mp.electric_potential(charge_cloud, r, "spherical", nmax)
            pc = mp.electric_potential(charge_cloud, r, "cartesian", nmax)
            assert ps == pytest.approx(pc, abs=1e-12 * max(1, abs(ps)))
        assert abs(ps - direct) / abs(direct) < 1e-4

    def test_inside_radius_rejected(self, charge_cloud):
        with pytest.raises(ValueError, match="outside"):
            mp.electric_potential(charge_cloud, [0.01, 0, 0], "spherical", 2)

    def test_prefactor_scaling(self):
        dist = mp.ChargeDistribution.from_arrays([[0, 0, 0]], [1.0])
        r = [0, 0, 2.0]
        assert mp.electric_potential(dist, r, "direct", coulomb_constant=3.0) \
            == pytest.approx(1.5)


class TestMagneticMoments:
    def test_square_loop_dipole(self):
        loop = square_loop(side=1.0, current=2.0)
        ms = mp.magnetic_moments(loop, 2)
        # rank-1 tensor along z with |M| = I * area; the sign is fixed by the
        # (current ^ position) convention of the cartesian integrand
        assert_allclose(ms.cartesian[1].real, [0, 0, -2.0], atol=1e-12)
        # spherical moment consistent through the inverse conversion
        sph = mp.magnetic_spherical_from_cartesian(1, ms.cartesian[1])
        assert sph[(1, 0)] == pytest.approx(ms.spherical[(1, 0)], abs=1e-12)

    def test_monopole_channel_absent(self):
        ms = mp.magnetic_moments(square_loop(), 3)
        assert min(l for (l, m) in ms.spherical) == 1

    def test_conversion_round_trips(self, rng):
        verts = rng.normal(size=(6, 3)) * 0.7
        loop = mp.CurrentDistribution.from_loops([(1.3, np.vstack([verts, verts[0]]))])
        ms = mp.magnetic_moments(loop, 4)
        for l in range(1, 5):
            cart = mp.magnetic_cartesian_from_spherical(l, ms.spherical)
            scale = max(1.0, float(np.max(np.abs(ms.cartesian[l]))))
            assert float(np.max(np.abs(cart - ms.cartesian[l]))) / scale < 1e-11
            sph = mp.magnetic_spherical_from_cartesian(l, ms.cartesian[l])
            for m in range(-l, l + 1):
                assert sph[(l, m)] == pytest.approx(ms.spherical[(l, m)], abs=1e-11)

    def test_residual_channel_shrinks_under_refinement(self, rng):
        verts = rng.normal(size=(5, 3)) * 0.7
        loop = mp.CurrentDistribution.from_loops([(1.0, np.vstack([verts, verts[0]]))])
        mags = []
        for factor in (1, 2, 4, 8):
            ms = mp.magnetic_moments(loop.refine(factor), 3)
            mags.append(max(abs(v) for v in ms.residual.values()))
        for a, b in zip(mags, mags[1:]):
            assert b < 0.6 * a

    def test_open_polyline_rejected(self):
        with pytest.raises(ValueError, match="closed"):
            mp.CurrentDistribution.from_loops(
                [(1.0, [[0, 0, 0], [1, 0, 0], [1, 1, 0]])]
            )


class TestVectorPotential:
    def test_far_field_matches_ideal_dipole(self):
        loop = square_loop(side=1.0, current=2.0).refine(8)
        r = np.array([5.0, 1.0, 2.0])
        a1 = mp.vector_potential(loop, r, "cartesian", 1)
        m_std = np.array([0, 0, 2.0])  # I * area along +z for ccw circulation
        want = np.cross(m_std, r) / np.linalg.norm(r) ** 3
        assert_allclose(a1, want, atol=1e-12)

    def test_methods_agree_exactly(self):
        loop = tilted_circle()
        r = np.array([0.9, -1.3, 0.7]) * 3.0
        a_s = mp.vector_potential(loop, r, "spherical", 4)
        a_c = mp.vector_potential(loop, r, "cartesian", 4)
        assert_allclose(a_s, a_c, atol=1e-12)

    def test_transverse(self):
        loop = tilted_circle()
        for r in ([3.0, 0.5, 0.2], [0.1, -2.8, 1.4]):
            a = mp.vector_potential(loop, np.array(r), "spherical", 4)
            assert abs(np.dot(r, a)) < 1e-13

    def test_converges_to_direct(self, rng):
        # centered circular loop: the boundary-gradient channel vanishes, so
        # the static expansion converges pointwise to the direct integral
        loop = tilted_circle()
        d = rng.normal(size=3)
        r = 4.0 * d / np.linalg.norm(d)
        direct = mp.vector_potential(loop, r, "direct")
        err = [
            np.linalg.norm(
                mp.vector_potential(loop, r, "cartesian", lmax) - direct
            ) / np.linalg.norm(direct)
            for lmax in (1, 4, 6)
        ]
        assert err[1] < 1e-3
        assert err[2] < err[1]

    def test_qdot_terms_consistent(self, rng):
        loop = square_loop().refine(4)
        qdot = {}
        for n in (1, 2, 3):
            for m in range(0, n + 1):
                v = complex(rng.normal(), rng.normal())
                qdot[(n, m)] = v
                qdot[(n, -m)] = (-1) ** m * np.conj(v)
        r = np.array([2.0, -1.0, 1.5])
        a_s = mp.vector_potential(loop, r, "spherical", 4, qdot=qdot)
        a_c = mp.vector_potential(loop, r, "cartesian", 4, qdot=qdot)
        assert_allclose(a_s, a_c, atol=1e-12)

    def test_inside_radius_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            mp.vector_potential(square_loop(), [0.01, 0, 0], "spherical", 2)


class TestSerialization:
    def test_charge_json_round_trip(self, charge_cloud, tmp_path):
        path = tmp_path / "charges.json"
        path.write_text(json.dumps(charge_cloud.to_json_dict()))
        loaded = mp.load_source(str(path))
        assert isinstance(loaded, mp.ChargeDistribution)
        assert loaded.total_charge() == pytest.approx(charge_cloud.total_charge())

    def test_loop_json_round_trip(self, tmp_path):
        loop = square_loop()
        path = tmp_path / "loops.json"
        path.write_text(json.dumps(loop.to_json_dict()))
        loaded = mp.load_source(str(path))
        assert isinstance(loaded, mp.CurrentDistribution)
        mids, dls, currents = loaded.segments()
        assert len(mids) == 4 and currents[0] == 2.0

    def test_multipole_set_round_trip(self, charge_cloud):
        ms = mp.electric_moments(charge_cloud, 3)
        back = mp.MultipoleSet.from_json_dict(ms.to_json_dict())
        assert back.kind == "electric" and back.n_max == 3
        for key, v in ms.spherical.items():
            assert back.spherical[key] == pytest.approx(v)
        for n, t in ms.cartesian.items():
            assert_allclose(back.cartesian[n], t)

    def test_bad_source_rejected(self):
        with pytest.raises(ValueError, match="charges.*loops|loops.*charges"):
            mp.load_source({"stuff": []})
