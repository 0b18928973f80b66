import json
import math

import numpy as np
import pytest

from irtensor.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cg_json(capsys):
    code, out = run_cli(
        capsys, "cg", "--j1", "1", "--m1", "0", "--j2", "1", "--m2", "0",
        "--j", "2", "--m", "0",
    )
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(math.sqrt(2 / 3))


def test_cg_half_integ64s_plain(capsys):
    code, out = run_cli(
        capsys, "cg", "--j1", "3/2", "--m1", "1/2", "--j2", "1", "--m2", "0",
        "--j", "3/2", "--m", "1/2", "--format", "plain",
    )
    assert code == 0
    assert float(out) == pytest.approx(0.2581988897471611)


def test_epsilon_unit_vector(capsys):
    code, out = run_cli(capsys, "epsilon", "--n", "1", "--m", "0")
    assert code == 0
    d = json.loads(out)
    assert d["rank"] == 1
    assert d["entries"] == [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]


def test_epsilon_sym_and_partial_bases(capsys):
    code, out = run_cli(capsys, "epsilon", "--n", "2", "--m", "0", "--basis", "sym:0")
    assert code == 0
    d = json.loads(out)
    assert d["entries"][0][0] == pytest.approx(1 / math.sqrt(3))
    code, out = run_cli(capsys, "epsilon", "--n", "1", "--m", "0", "--basis", "partial:0")
    assert code == 0
    d = json.loads(out)
    assert d["rank"] == 2
    assert d["entries"][0][0] == pytest.approx(-1 / math.sqrt(3))


def test_epsilon_method_routes_agree(capsys):
    outs = []
    for method in ("recursive", "explicit", "harmonic"):
        code, out = run_cli(
            capsys, "epsilon", "--n", "3", "--m", "1", "--method", method
        )
        assert code == 0
        outs.append(json.loads(out)["entries"])
    a, b, c = (np.array(o) for o in outs)
    assert np.max(np.abs(a - b)) < 1e-12 and np.max(np.abs(a - c)) < 1e-12


def test_dmat_json_and_csv(capsys):
    code, out = run_cli(capsys, "dmat", "--l", "1", "--axis", "0,1,0", "--angle", "0.7")
    assert code == 0
    d = json.loads(out)
    assert d["row_m_descending"] == [1, 0, -1]
    assert d["matrix"][1][1][0] == pytest.approx(math.cos(0.7))
    code, out = run_cli(
        capsys, "dmat", "--l", "2", "--euler", "0.2,0.3,0.4", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines()[0] == "m_prime,m,re,im"
    assert len(out.splitlines()) == 1 + 25


def test_dmat_requires_parameters(capsys):
    code = main(["dmat", "--l", "1"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_ylm(capsys):
    code, out = run_cli(capsys, "ylm", "--l", "2", "--m", "0", "--dir", "0,0,1")
    assert code == 0
    assert json.loads(out)["value"][0] == pytest.approx(math.sqrt(5 / (4 * math.pi)))


def test_ylm_grad(capsys):
    code, out = run_cli(
        capsys, "ylm-grad", "--order", "1", "--l", "1", "--m", "0", "--dir", "1,0,0"
    )
    assert code == 0
    d = json.loads(out)
    assert d["rank"] == 1
    assert d["entries"][2][0] == pytest.approx(math.sqrt(3 / (4 * math.pi)))


def test_rme(capsys):
    code, out = run_cli(capsys, "rme", "--kind", "jpow", "--j", "2", "--n", "2")
    assert code == 0
    assert json.loads(out)["value"][0] == pytest.approx(4.58257569495584)


def test_we_cito(capsys):
    code, out = run_cli(
        capsys, "we", "--class", "cito", "--jp", "2", "--mp", "2", "--j", "2",
        "--m", "0", "--n", "2", "--rme", "1.0",
    )
    assert code == 0
    d = json.loads(out)
    assert d["rank"] == 2
    from irtensor.angular_momentum import cg
    from irtensor.standard_basis import epsilon

    want = cg(2, 0, 2, 2, 2, 2) * np.conj(epsilon(2, 2))
    got = np.array([complex(re, im) for re, im in d["entries"]]).reshape(3, 3)
    assert np.max(np.abs(got - want)) < 1e-13


def test_we_channel_count_enforced(capsys):
    code = main(
        ["we", "--class", "totsym", "--jp", "2", "--mp", "0", "--j", "2",
         "--m", "0", "--n", "2", "--rme", "1.0"]
    )
    assert code == 2
    assert "totsym" in capsys.readouterr().err


def test_multipole_electric(capsys, tmp_path):
    src = tmp_path / "dipole.json"
    src.write_text(json.dumps(
        {"charges": [{"pos": [0, 0, 0.5], "q": 1.0}, {"pos": [0, 0, -0.5], "q": -1.0}]}
    ))
    code, out = run_cli(
        capsys, "multipole", "--kind", "e", "--source", str(src), "--order", "2",
        "--eval", "0,0,3", "--method", "spherical",
    )
    assert code == 0
    d = json.loads(out)
    assert d["spherical"]["1,0"][0] == pytest.approx(math.sqrt(3 / (4 * math.pi)))
    assert d["potential"] == pytest.approx(1.0 / 9.0)


def test_multipole_magnetic_csv(capsys, tmp_path):
    src = tmp_path / "loop.json"
    src.write_text(json.dumps(
        {"loops": [{"I": 2.0, "vertices": [
            [0.5, -0.5, 0], [0.5, 0.5, 0], [-0.5, 0.5, 0], [-0.5, -0.5, 0],
            [0.5, -0.5, 0]]}]}
    ))
    code, out = run_cli(
        capsys, "multipole", "--kind", "m", "--source", str(src), "--order", "2",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "n,m,re,im"


def test_multipole_kind_mismatch(capsys, tmp_path):
    src = tmp_path / "x.json"
    src.write_text(json.dumps({"charges": [{"pos": [0, 0, 0], "q": 1.0}]}))
    code = main(["multipole", "--kind", "m", "--source", str(src), "--order", "1"])
    assert code == 2
    assert "current-loop" in capsys.readouterr().err


def test_verify_module_filter(capsys):
    code, out = run_cli(capsys, "verify", "--module", "tensor_core")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert {c["module"] for c in report["checks"]} == {"tensor_core"}
    for field in ("name", "module", "ref", "status", "max_error", "tolerance", "runtime"):
        assert field in report["checks"][0]


def test_verify_deterministic_at_fixed_seed(capsys):
    def strip(report):
        return [
            {k: v for k, v in c.items() if k != "runtime"} for c in report["checks"]
        ]

    _, out1 = run_cli(capsys, "verify", "--module", "harmonics", "--seed", "7")
    _, out2 = run_cli(capsys, "verify", "--module", "harmonics", "--seed", "7")
    assert strip(json.loads(out1)) == strip(json.loads(out2))


def test_verify_tightened_tolerance_fails(capsys):
    code, out = run_cli(
        capsys, "verify", "--module", "harmonics", "--tol", "1e-15", "--format", "csv"
    )
    assert code == 1
    assert ",fail," in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 2


def test_invalid_value_reports_error(capsys):
    code = main(["epsilon", "--n", "2", "--m", "5"])
    assert code == 2
    assert "error" in capsys.readouterr().err
