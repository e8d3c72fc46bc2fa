import json
from fractions import Fraction

import pytest

from divisikit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write


def test_divide_example(capsys, files):
    path = files("dice.json", {"pmf": ["1/4", "1/2", "1/4"]})
    assert run(capsys, "divide", "--n", "2", path) == (0, '{"answer":"yes","witness":{"pmf":["1/2","1/2"]}}', "")


def test_divide_variants(capsys, files):
    path = files("u3.json", {"pmf": ["1", "1", "1"]})
    assert json.loads(run(capsys, "divide", "--n", "2", "--eps", "1/100", path)[1])["answer"] == "no"
    assert json.loads(run(capsys, "divide", "--n", "2", "--weak", "1/5", path)[1])["answer"] == "yes"
    out = json.loads(run(capsys, "divide", "--n", "2", "--closest", "1/100", path)[1])
    assert 0 < Fraction(out["epsilon_star"]) < Fraction(1, 2)


def test_oracle_partition(capsys, files):
    path = files("p.json", {"elements": ["1", "1", "2"]})
    code, out, _ = run(capsys, "oracle", "partition", path)
    res = json.loads(out)
    assert code == 0 and res["answer"] == "yes" and res["witness"]


def test_encode_sat_check(capsys, parity_json):
    assert run(capsys, "encode-sat", parity_json, "--check") == (0, '{"agree":true,"satisfiable":false}', "")


def test_encode_sat_artifacts(capsys, tmp_path, files):
    path = files("one.json", {"n_v": 3, "clauses": [[1, 2, 3]]})
    csv_path, mats = tmp_path / "h.csv", tmp_path / "mats"
    code, out, _ = run(capsys, "encode-sat", path, "--heatmap", str(csv_path), "--emit-matrices", str(mats))
    res = json.loads(out)
    assert code == 0 and res["nonnegative_branches"] == [1, 2, 4]
    assert len(csv_path.read_text().splitlines()) == res["dim"]
    assert len(list(mats.glob("branch_*.json"))) == res["branches"]


def test_decompose_and_encode(capsys, files, tmp_path):
    u4 = files("u4.json", {"pmf": ["1", "1", "1", "1"]})
    res = json.loads(run(capsys, "decompose", u4)[1])
    assert res["factors"] == [{"pmf": ["1/2", "1/2"]}, {"pmf": ["1/2", "0", "1/2"]}]
    assert json.loads(run(capsys, "decompose", "--complete", "3", u4)[1])["truncated"] is False
    inst = files("e.json", {"elements": ["1", "3"], "bound": "3", "variant": "even"})
    out_path = tmp_path / "dist.json"
    run(capsys, "encode-subsetsum", inst, "-o", str(out_path))
    dist = str(out_path)
    assert json.loads(run(capsys, "decompose", "--even", dist)[1])["answer"] == "yes"


def test_matrix_commands(capsys, files, tmp_path):
    # P = Q^2
    p = files("P.json", {"dim": 2, "rows": [["83/100", "17/100"], ["17/50", "33/50"]]})
    res = json.loads(run(capsys, "mat-root", p)[1])
    assert res["answer"] == "yes" and abs(float(res["root"]["rows"][0][0]) - 0.9) < 1e-9
    q = files("Q.json", {"dim": 2, "rows": [["9/10", "1/10"], ["1/5", "4/5"]]})
    ver = json.loads(run(capsys, "verify-root", q, p)[1])
    assert ver["ok"] and ver["deviation"] == "0"
    lift = json.loads(run(capsys, "lift", q)[1])
    assert lift["lifted"]["dim"] == 6
    b_path = tmp_path / "B.json"
    b_path.write_text(run(capsys, "emb", q)[1])
    assert json.loads(run(capsys, "cptp-check", str(b_path))[1])["cptp"] is True
    assert json.loads(run(capsys, "cptp-root", str(b_path))[1])["answer"] == "yes"


def test_error_codes(capsys, files, tmp_path):
    code, out, err = run(capsys, "divide", "--n", "2", str(tmp_path / "missing.json"))
    assert code == 2 and out == "" and json.loads(err)["error"] == "malformed_input"
    bad = files("bad.json", {"pmf": ["-1", "2"]})
    assert run(capsys, "divide", "--n", "2", bad)[0] == 2


def test_precision_exhausted_exit_code(capsys, files, monkeypatch):
    from divisikit import cli
    from divisikit.errors import PrecisionExhausted

    def boom(*args, **kwargs):
        raise PrecisionExhausted("residual above tolerance at 256 bits")

    monkeypatch.setattr(cli, "decompose", boom)
    code, _, err = run(capsys, "decompose", files("u4.json", {"pmf": ["1", "1", "1", "1"]}))
    assert code == 3 and json.loads(err)["error"] == "precision_exhausted"


def test_determinism(capsys, files):
    path = files("d.json", {"pmf": ["3", "5", "2", "1", "1"]})
    first = run(capsys, "--seed", "4", "divide", "--n", "2", "--eps", "1/10", path)
    assert run(capsys, "--seed", "4", "divide", "--n", "2", "--eps", "1/10", path) == first


def test_config_flag(capsys, files, tmp_path):
    cfg = tmp_path / "c.ini"
    cfg.write_text("tol = 0\n")
    code, _, err = run(capsys, "--config", str(cfg), "decompose", files("u.json", {"pmf": ["1", "1"]}))
    assert code == 2 and json.loads(err)["error"] == "malformed_input"


def test_sweep_subset(capsys):
    code, out, _ = run(capsys, "sweep", "--criteria", "2", "5")
    res = json.loads(out)
    assert code == 0 and res["passed"] and [r["criterion"] for r in res["results"]] == [2, 5]
