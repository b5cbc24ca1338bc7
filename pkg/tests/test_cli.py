import argparse
import json

import pytest

from fspair.cli import parse_complex, run


def test_parse_complex():
    assert parse_complex("0+2i") == 2j
    assert parse_complex("-1.5-0.25i") == -1.5 - 0.25j
    assert parse_complex("3e-1+1e0i") == 0.3 + 1j
    for bad in ("2i", "1 + 2i", "1+2j", "abc"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_complex(bad)


def test_pairs_list(capsys):
    assert run(["pairs", "list"]) == 0
    out = capsys.readouterr().out.split()
    assert out == ["poisson", "guinand", "meyer", "file"]


def test_verify_poisson_json(tmp_path):
    out = tmp_path / "report.json"
    code = run(["verify", "--pair", "poisson", "--testfn", "bump",
                "--scale", "5.3", "--tol", "1e-8", "--json", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["abs_residual"] < 1e-8
    assert payload["pair_name"] == "poisson"
    assert payload["mu_truncation"] == 64.0
    assert payload["quadrature_tol"] == 1e-8


def test_verify_tolerance_violation_exit_1(tmp_path):
    out = tmp_path / "report.json"
    code = run(["verify", "--pair", "poisson", "--testfn", "bump",
                "--scale", "5.3", "--tol", "1e-18", "--json", str(out)])
    assert code == 1
    assert out.exists()  # report still written on violation


def test_verify_usage_errors():
    assert run(["verify", "--pair", "nosuch", "--testfn", "bump"]) == 2
    assert run(["verify", "--pair", "poisson", "--testfn", "bump",
                "--frobnicate", "1"]) == 2
    assert run(["verify", "--pair", "file", "--testfn", "bump"]) == 2
    assert run(["verify", "--pair", "file", "--file", "/nonexistent.json",
                "--testfn", "bump"]) == 2
    assert run(["nosuchcommand"]) == 2


def test_coeffs_csv(tmp_path):
    out = tmp_path / "alpha.csv"
    assert run(["coeffs", "--family", "guinand", "--c", "0.111111",
                "--n", "8", "--csv", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,alpha_n"
    n1 = float(lines[2].split(",")[1])
    assert abs(n1 - (-(24.0 * 0.111111 - 2.0))) < 1e-12


def test_coeffs_requires_c():
    assert run(["coeffs", "--family", "guinand", "--n", "4"]) == 2


def test_coeffs_r3(capsys):
    assert run(["coeffs", "--family", "r3", "--n", "7"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1] == "0,1.0"
    assert lines[2] == "1,6.0"
    assert lines[8] == "7,0.0"


def test_csv_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(["coeffs", "--family", "theta", "--n", "32", "--csv", str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_json_determinism(tmp_path):
    payloads = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        run(["verify", "--pair", "poisson", "--testfn", "plateau",
             "--scale", "2.7", "--json", str(out)])
        p = json.loads(out.read_text())
        p.pop("runtime_ms")  # the one timing field
        payloads.append(json.dumps(p, sort_keys=True))
    assert payloads[0] == payloads[1]


def test_bridge_json(tmp_path):
    out = tmp_path / "bridge.json"
    code = run(["bridge", "--pair", "poisson", "--trunc", "600", "--k", "0",
                "--z", "0+2i", "--w", "0+2i", "--tmax", "256", "--sweep",
                "--json", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["k"] == 0
    assert payload["z"] == {"re": 0.0, "im": 2.0}
    assert len(payload["sweep"]) >= 3
    residuals = [entry["abs_residual"] for entry in payload["sweep"]]
    assert residuals[-1] < residuals[0] + 1e-3


def test_efcoef(tmp_path):
    out = tmp_path / "ef.json"
    assert run(["efcoef", "--pair", "poisson", "--lambda", "1", "--y", "1",
                "--T", "256", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert abs(payload["value_re"] - 1.0) < 1e-5
    assert abs(payload["value_im"]) < 1e-5


def test_recover(tmp_path):
    out = tmp_path / "rec.json"
    assert run(["recover", "--pair", "poisson", "--k", "0", "--a", "0.5",
                "--b", "1.5", "--s", "0.001", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert abs(payload["value_re"] - 0.25) < 1e-3


def test_recover_bad_interval():
    assert run(["recover", "--pair", "poisson", "--k", "0", "--a", "1.5",
                "--b", "0.5", "--s", "0.001"]) == 2


def test_nevindex(tmp_path):
    out = tmp_path / "nev.json"
    assert run(["nevindex", "--pair", "poisson", "--points", "6",
                "--seed", "1", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["neg_index"] == 0
    assert payload["seed"] == 1


def test_verify_custom_file(tmp_path):
    pair_file = tmp_path / "pair.json"
    pair_file.write_text(json.dumps({
        "name": "two-atoms", "antipodal": True, "strip_constant": 0.1,
        "mu": {"degree_bound": 2,
               "atoms": [{"t": -1.0, "re": 1.0, "im": 0.0},
                         {"t": 1.0, "re": 1.0, "im": 0.0}],
               "density": None},
        "a": {"growth_constant": 0.1, "support": []},
    }))
    out = tmp_path / "rep.json"
    code = run(["verify", "--pair", "file", "--file", str(pair_file),
                "--testfn", "bump", "--scale", "0.25", "--shift", "3.0",
                "--json", str(out)])
    # bump supported on [2.75, 3.25]: rhs empty, lhs = FT mass at the atoms
    assert code in (0, 1)
    payload = json.loads(out.read_text())
    assert payload["pair_name"] == "two-atoms"
