import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from irtensor import standard_basis as sb
from irtensor import tensor_core as tc

ZHAT = np.array([0.0, 0.0, 1.0], dtype=complex)
XHAT = np.array([1.0, 0.0, 0.0], dtype=complex)


def test_outer_scalars():
    a = np.array(2.0, dtype=complex)
    b = np.array(3.0, dtype=complex)
    assert complex(tc.outer(a, b)) == 6.0


def test_outer_unit_vectors():
    t = tc.outer(ZHAT, ZHAT)
    expected = np.zeros((3, 3), dtype=complex)
    expected[2, 2] = 1.0
    assert_allclose(t, expected)


def test_outer_of_top_basis_vectors_climbs_the_ladder():
    e1 = sb.epsilon(1, 1)
    assert_allclose(tc.outer(e1, e1), sb.epsilon(2, 2), atol=1e-15)


def test_outer_rank_cap(monkeypatch):
    monkeypatch.setenv("IRTENSOR_RANK_CAP", "3")
    a = tc.zeros(2)
    with pytest.raises(ValueError, match="cap"):
        tc.outer(a, a)


def test_contract_basics():
    assert complex(tc.contract(ZHAT, ZHAT, [(0, 0)])) == 1.0
    e1 = sb.epsilon(1, 1)
    assert_allclose(complex(tc.contract(np.conj(e1), e1, [(0, 0)])), 1.0, atol=1e-15)
    assert complex(tc.contract(tc.delta(), tc.delta(), [(0, 0), (1, 1)])) == 3.0


def test_contract_rejects_bad_pairs():
    with pytest.raises(ValueError):
        tc.contract(tc.delta(), tc.delta(), [(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        tc.contract(ZHAT, ZHAT, [(1, 0)])


def test_contract_conjugate_norm(rng):
    for n in (0, 1, 3):
        a = rng.normal(size=(3,) * n) + 1j * rng.normal(size=(3,) * n)
        v = tc.contract_all(np.conj(a), a)
        assert v.imag == pytest.approx(0.0, abs=1e-13)
        assert v.real == pytest.approx(np.linalg.norm(a.reshape(-1)) ** 2)
    assert tc.contract_all(tc.zeros(2).conj(), tc.zeros(2)) == 0.0


def test_symmetrize_sum_convention():
    t = tc.outer(ZHAT, XHAT)
    expected = tc.outer(XHAT, ZHAT) + tc.outer(ZHAT, XHAT)
    assert_allclose(tc.symmetrize(t), expected)


def test_symmetrize_on_symmetric_input_scales_by_factorial():
    e2 = sb.epsilon(2, 0)
    assert_allclose(tc.symmetrize(e2), 2.0 * e2, atol=1e-15)


def test_symmetrize_kills_antisymmetric():
    anti = np.zeros((3, 3), dtype=complex)
    anti[0, 1], anti[1, 0] = 1.0, -1.0
    assert_allclose(tc.symmetrize(anti), np.zeros((3, 3)), atol=0)


def test_symmetrize_multiset_path_matches_permutation_path(rng):
    a = rng.normal(size=(3,) * 5) + 1j * rng.normal(size=(3,) * 5)
    assert_allclose(tc._symmetrize_multiset(a), tc.symmetrize(a), atol=1e-12)


def test_symmetrize_twice(rng):
    for n in (2, 3, 4):
        a = rng.normal(size=(3,) * n) + 1j * rng.normal(size=(3,) * n)
        assert_allclose(
            tc.symmetrize(tc.symmetrize(a)),
            math.factorial(n) * tc.symmetrize(a),
            atol=1e-12,
        )


def test_trace_pair():
    assert complex(tc.trace_pair(tc.delta(), 0, 1)) == 3.0
    zz = tc.outer(ZHAT, ZHAT)
    assert complex(tc.trace_pair(zz, 0, 1)) == 1.0
    for m in range(-2, 3):
        assert abs(complex(tc.trace_pair(sb.epsilon(2, m), 0, 1))) < 1e-15
    with pytest.raises(ValueError):
        tc.trace_pair(tc.delta(), 0, 0)


@pytest.mark.parametrize("n", range(0, 9))
def test_index_round_trip(n):
    for offset in range(0, 3**n, max(1, 3**n // 200)):
        digits = tc.decode_index(offset, n)
        assert tc.encode_index(digits) == offset
        assert all(d in (0, 1, 2) for d in digits)


def test_json_round_trip(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert_allclose(tc.loads(tc.dumps(a)), a)
    d = tc.to_json_dict(a)
    assert d["rank"] == 2 and len(d["entries"]) == 9


def test_from_json_validates_length():
    with pytest.raises(ValueError):
        tc.from_json_dict({"rank": 2, "entries": [[1.0, 0.0]] * 8})
