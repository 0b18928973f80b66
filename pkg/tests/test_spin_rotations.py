import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from irtensor import spin_rotations as sr
from irtensor import standard_basis as sb
from irtensor import tensor_core as tc
from irtensor.angular_momentum import j_matrix


class TestSpinMatrix:
    def test_rank1_z_entries(self):
        s1z = sr.spin_matrix(1, "z").matrix
        assert s1z[0, 1] == -1j  # (x; y)
        assert s1z[1, 0] == 1j   # (y; x)

    @pytest.mark.parametrize("n", (1, 2, 3, 4))
    def test_traceless_and_hermitian(self, n):
        for k in "xyz":
            m = sr.spin_matrix(n, k).matrix
            assert abs(np.trace(m)) < 1e-13
            assert np.max(np.abs(m - m.conj().T)) < 1e-13

    @pytest.mark.parametrize("n", (1, 2, 3, 4))
    def test_commutators(self, n):
        sx, sy, sz = (sr.spin_matrix(n, k).matrix for k in "xyz")
        assert_allclose(sx @ sy - sy @ sx, 1j * sz, atol=1e-13)

    def test_kronecker_sum_recursion(self):
        for p, q in ((1, 1), (2, 1), (2, 2)):
            lhs = sr.spin_matrix(p + q, "y").matrix
            rhs = np.kron(sr.spin_matrix(p, "y").matrix, np.eye(3**q)) + np.kron(
                np.eye(3**p), sr.spin_matrix(q, "y").matrix
            )
            assert_allclose(lhs, rhs, atol=0)

    def test_lazy_apply_matches_dense(self, rng):
        n = 3
        a = rng.normal(size=(3,) * n) + 1j * rng.normal(size=(3,) * n)
        lazy = sr.SpinOperator(n=n, component="x", matrix=None)
        dense = sr.spin_matrix(n, "x")
        assert_allclose(lazy.apply(a), dense.apply(a), atol=1e-13)

    def test_dense_cap(self, monkeypatch):
        monkeypatch.setenv("IRTENSOR_RANK_CAP", "2")
        op = sr.spin_matrix(3, "x")
        assert op.matrix is None  # lazy beyond the cap
        with pytest.raises(ValueError, match="dense cap"):
            op.dense()
        assert sr.spin_matrix(2, "x").dense() is not None


class TestSpinSquared:
    def test_rank1_is_twice_identity(self):
        assert_allclose(sr.spin_squared(1).matrix, 2 * np.eye(3), atol=0)

    def test_rank2_closed_form_matches_component_sum(self):
        for n in (1, 2, 3, 4):
            s2 = sr.spin_squared(n).matrix
            acc = sum(
                sr.spin_matrix(n, k).matrix @ sr.spin_matrix(n, k).matrix for k in "xyz"
            )
            assert_allclose(s2, acc, atol=1e-12)

    def test_rank2_delta_structure(self):
        # explicit entries: 4 d_{i1k1} d_{i2k2} - 2 d_{i1i2} d_{k1k2}
        #                   + 2 d_{i1k2} d_{i2k1}
        d = np.eye(3)
        want = np.zeros((3, 3, 3, 3))
        for i1 in range(3):
            for i2 in range(3):
                for k1 in range(3):
                    for k2 in range(3):
                        want[i1, i2, k1, k2] = (
                            4 * d[i1, k1] * d[i2, k2]
                            - 2 * d[i1, i2] * d[k1, k2]
                            + 2 * d[i1, k2] * d[i2, k1]
                        )
        got = sr.spin_squared(2).matrix.reshape(3, 3, 3, 3)
        assert_allclose(got, want, atol=0)

    def test_rank2_eigenspaces(self):
        s2 = sr.spin_squared(2)
        anti = np.zeros((3, 3), dtype=complex)
        anti[0, 1], anti[1, 0] = 1.0, -1.0
        assert_allclose(s2.apply(anti), 2 * anti, atol=1e-14)           # s = 1
        assert_allclose(s2.apply(np.eye(3, dtype=complex)), 0 * anti, atol=1e-14)  # s = 0
        e = np.asarray(sb.epsilon(2, 1))
        assert_allclose(s2.apply(e), 6 * e, atol=1e-14)                 # s = 2

    @pytest.mark.parametrize("n", (3, 5))
    def test_irreducible_eigenvalue(self, n):
        e = np.asarray(sb.epsilon(n, 1))
        assert_allclose(sr.spin_squared(n).apply(e), n * (n + 1) * e, atol=1e-12)


class TestRotation:
    def test_identity(self):
        assert_allclose(sr.rotation(axis=(0, 0, 1), angle=0.0).matrix, np.eye(3))

    def test_quarter_turn_about_z(self):
        r = sr.rotation(axis=(0, 0, 1), angle=math.pi / 2)
        assert_allclose(r @ np.array([1.0, 0, 0]), [0, 1, 0], atol=1e-15)

    def test_euler_z_rotations_compose(self):
        assert_allclose(
            sr.rotation(euler=(0.3, 0.0, 0.4)).matrix,
            sr.rotation(axis=(0, 0, 1), angle=0.7).matrix,
            atol=1e-14,
        )

    def test_orthogonal_unit_determinant(self, rng):
        for _ in range(5):
            r = sr.random_rotation(rng).matrix
            assert_allclose(r.T @ r, np.eye(3), atol=1e-13)
            assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-13)

    def test_rodrigues_matches_exponential(self, rng):
        for _ in range(3):
            v = rng.normal(size=3)
            assert_allclose(
                sr.rotation_axis_angle(v, float(np.linalg.norm(v))).matrix,
                sr.rotation_generator_exponential(v, n=1),
                atol=1e-12,
            )


class TestTensorRotate:
    def test_identity_and_vector(self, rng):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert_allclose(sr.tensor_rotate(np.eye(3), a), a)
        r = sr.random_rotation(rng)
        v = rng.normal(size=3).astype(complex)
        assert_allclose(sr.tensor_rotate(r, v), r.matrix @ v, atol=1e-14)

    def test_norm_and_irreducibility_preserved(self, rng):
        r = sr.random_rotation(rng)
        a = np.asarray(sb.epsilon(3, 2))
        b = sr.tensor_rotate(r, a)
        assert tc.frobenius_norm(b) == pytest.approx(1.0, abs=1e-13)
        assert_allclose(sb.irreducible_part(b), b, atol=1e-13)

    @pytest.mark.parametrize("n", (1, 2, 3, 4))
    def test_matches_generator_exponential(self, rng, n):
        theta = rng.normal(size=3)
        r = sr.rotation_axis_angle(theta, float(np.linalg.norm(theta)))
        a = rng.normal(size=(3,) * n) + 1j * rng.normal(size=(3,) * n)
        dense = sr.rotation_generator_exponential(theta, n=n)
        assert_allclose(
            sr.tensor_rotate(r, a),
            (dense @ a.reshape(-1)).reshape(a.shape),
            atol=1e-12,
        )


class TestWignerD:
    def test_l0(self, rng):
        assert_allclose(sr.wigner_d(0, sr.random_rotation(rng)), [[1.0]])

    def test_d1_about_y_is_little_d(self):
        beta = 0.7
        d = sr.wigner_d(1, sr.rotation(axis=(0, 1, 0), angle=beta))
        # frozen from exponentiating the spin-1 generator in the spherical basis
        c, s = math.cos(beta), math.sin(beta)
        expected = np.array(
            [
                [(1 + c) / 2, -s / math.sqrt(2), (1 - c) / 2],
                [s / math.sqrt(2), c, -s / math.sqrt(2)],
                [(1 - c) / 2, s / math.sqrt(2), (1 + c) / 2],
            ]
        )
        assert_allclose(d, expected, atol=1e-14)

    @pytest.mark.parametrize("l", range(0, 6))
    def test_unitary_and_routes_agree(self, rng, l):
        r = sr.random_rotation(rng)
        dc = sr.wigner_d(l, r, "contraction")
        dp = sr.wigner_d(l, r, "product_expansion")
        assert np.max(np.abs(dc @ dc.conj().T - np.eye(2 * l + 1))) < 1e-11
        assert np.max(np.abs(dc - dp)) < 1e-10

    @pytest.mark.parametrize("l", (1, 2, 4))
    def test_homomorphism(self, rng, l):
        r1, r2 = sr.random_rotation(rng), sr.random_rotation(rng)
        assert_allclose(
            sr.wigner_d(l, r1 @ r2),
            sr.wigner_d(l, r1) @ sr.wigner_d(l, r2),
            atol=1e-12,
        )

    @pytest.mark.parametrize("l", (1, 3, 5))
    def test_columns_transform_basis_tensors(self, rng, l):
        r = sr.random_rotation(rng)
        expanded = sr.rotate_in_epsilon_basis(l, r)
        for m in range(-l, l + 1):
            assert_allclose(
                sr.tensor_rotate(r, sb.epsilon(l, m)), expanded[m], atol=1e-12
            )

    def test_d1_matches_generator_route(self, rng):
        # independent route: exponentiate the angular-momentum matrix for j=1
        from scipy.linalg import expm

        beta = 1.1
        d_cart = sr.wigner_d(1, sr.rotation(axis=(0, 1, 0), angle=beta))
        d_gen = expm(-1j * beta * j_matrix(1, "y"))
        assert_allclose(d_cart, d_gen, atol=1e-13)
