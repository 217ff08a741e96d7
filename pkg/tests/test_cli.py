import json

from curvlab.cli import main
from curvlab.connection import curvature_from_json
from curvlab.symmetry import report_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    for fid in ("Np", "Ni", "Sii", "Siv3", "sl2c"):
        assert fid in out
    assert "h1" in out and "g9" in out


def test_catalog_list_json(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 15


def test_check_kl_chern_true(capsys):
    code, out, _ = run(capsys, "check-kl", "--family", "Np", "--set", "rho=1",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "chern")
    assert code == 0
    assert "kahler-like = true" in out


def test_check_kl_bismut_false_with_witness(capsys):
    code, out, _ = run(capsys, "check-kl", "--family", "Np", "--set", "rho=1",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "bismut")
    assert code == 0
    assert "kahler-like = false" in out
    assert "B[1,1b,3,3b] = 1/2" in out


def test_check_kl_json_round_trip(capsys):
    code, out, _ = run(capsys, "check-kl", "--family", "Np", "--set", "rho=1",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "bismut",
                       "--format", "json")
    assert code == 0
    report = report_from_json(out)
    assert not report.verdict
    assert report.n_bianchi_nonzero > 0


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "--family", "Ni",
                       "--set", "rho=0,lambda=0,D=i", "--metric", "r2=1,s2=1,t2=1")
    assert code == 0
    assert "pluriclosed=true" in out
    assert "balanced=false" in out


def test_check_flat(capsys):
    code, out, _ = run(capsys, "check-flat", "--family", "sl2c",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "chern")
    assert code == 0 and "flat = true" in out
    code, out, _ = run(capsys, "check-flat", "--family", "Ni",
                       "--set", "rho=0,lambda=0,D=i",
                       "--metric", "r2=1,s2=1,t2=2", "--spec", "bismut")
    assert code == 0
    assert "flat = false" in out and "R[1,1b,1,1b] = 2" in out


def test_curvature_json_reparses(capsys):
    code, out, _ = run(capsys, "curvature", "--family", "Ni",
                       "--set", "rho=0,lambda=0,D=i",
                       "--metric", "r2=1,s2=1,t2=2", "--spec", "bismut",
                       "--format", "json")
    assert code == 0
    curv = curvature_from_json(out)
    assert curv.component(0, 3, 0, 3) == 2


def test_usage_errors(capsys):
    code, _, err = run(capsys, "check-kl", "--family", "Np", "--set", "rho=7",
                       "--metric", "r2=1,s2=1,t2=1")
    assert code == 2 and "rho in {0, 1}" in err

    code, _, err = run(capsys, "check-kl", "--family", "Ni",
                       "--set", "rho=0,lambda=0,D=i", "--metric", "r2=1,s2=1,t2=1,u=5")
    assert code == 2 and "r2*s2 > |u|^2" in err

    code, _, err = run(capsys, "classify", "--family", "Np", "--set", "rho=0",
                       "--metric", "bogus=1")
    assert code == 2 and "unknown metric keys" in err

    code, _, err = run(capsys, "check-kl", "--family", "Np", "--set", "rho=0",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "nonsense")
    assert code == 2 and "preset" in err

    code, _, err = run(capsys, "check-kl", "--family", "Np", "--set", "rho=1",
                       "--metric", "r2=3/0,s2=1,t2=1")
    assert code == 2 and "denominator" in err


def test_verify_theorems_deterministic(capsys, tmp_path):
    args = ["verify", "theorems", "--seed", "7", "--points", "1", "--format", "json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    board = json.loads(out1)
    assert board["passed"] is True


def test_verify_theorems_csv(capsys):
    code, out, _ = run(capsys, "verify", "theorems", "--seed", "0", "--points", "1",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "case_id,family,spec,expected,observed,witness"


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify", "appendix", "--seed", "0",
                       "--points", "1", "--draws", "1")
    assert code == 0
    assert "0 mismatches" in out and "PASS" in out


def test_flow_run_writes_csv(capsys, tmp_path):
    out_path = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "flow", "run", "--family", "Si", "--set", "A=i",
                       "--metric", "r2=2,s2=1,t2=1", "--horizon", "1",
                       "--step", "1/100", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 102
    assert lines[0].startswith("t,g_1_1,")
    assert "final deviation 0.000e+00" in out


def test_config_file_defaults(capsys, tmp_path):
    cfg = tmp_path / "curvlab.cfg"
    cfg.write_text("# defaults\nformat=json\nseed=7\n")
    code, out, _ = run(capsys, "--config", str(cfg), "catalog", "list")
    assert code == 0
    assert json.loads(out)  # format=json applied from the config file

    bad = tmp_path / "bad.cfg"
    bad.write_text("frobnicate=1\n")
    code, _, err = run(capsys, "--config", str(bad), "catalog", "list")
    assert code == 2 and "frobnicate" in err


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "check-kl", "--family", "Np", "--set", "rho=1",
                       "--metric", "r2=1,s2=1,t2=1", "--spec", "chern",
                       "--format", "json", "--out", str(path))
    assert code == 0
    assert report_from_json(path.read_text()).verdict
