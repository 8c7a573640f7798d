import io
import subprocess
import sys
from pathlib import Path

import pytest

from kanfuk import hofer
from kanfuk.cli import dispatch

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_maslov_index():
    assert run("maslov", "index", "--r", "1", "--chi", "1", "--maslov", "-2")[:2] == (0, "-1\n")


def test_maslov_dim_and_loop():
    assert run("maslov", "dim", "--d", "4", "--maslov", "-2", "--degs", "1", "1", "1", "1")[1] == "1\n"
    assert run("maslov", "loop", "--angles", str(FIX / "maslov" / "half_turn.txt"))[1] == "-2\n"
    assert run("maslov", "loop", "--angles", str(FIX / "maslov" / "half_turn.txt"),
               "--sign", "1")[1] == "2\n"


@pytest.mark.parametrize("name,corr,exists", [("obstruction_k1", 1, "false"),
                                              ("obstruction_k0", 0, "true")])
def test_nerve_obstruct(name, corr, exists):
    code, out, _ = run("nerve", "obstruct", "--category", str(FIX / name))
    assert code == 0
    assert out == f"correlator={corr} simplex_exists={exists}\n"


def test_spheres_build(tmp_path):
    code, out, _ = run("spheres", "build", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["d4_mod.sset", "homology.txt",
                                                          "s3_mod.sset", "s4_mod.sset"]
    report = (tmp_path / "homology.txt").read_text()
    assert "s4_mod H_4 = Z" in report and "s4_mod cells 8" in report
    for name in ("s3_mod", "d4_mod", "s4_mod"):
        assert (tmp_path / f"{name}.sset").read_text() == (FIX / "spheres" / f"{name}.sset").read_text()


def test_simplicial_info():
    code, out, _ = run("simplicial", "info", "--in", str(FIX / "spheres" / "s4_mod.sset"))
    assert code == 0
    assert out.splitlines() == ["counts 3 2 0 1 2", "euler_characteristic 2", "valid true"]


def test_kan_commands(tmp_path):
    code, out, _ = run("kan", "check", "--in", str(FIX / "spheres" / "delta1.sset"))
    assert code == 0 and out.startswith("status=not_kan")
    code, out, _ = run("kan", "check", "--in", str(FIX / "spheres" / "delta0.sset"))
    assert out.startswith("status=kan")
    code, out, _ = run("kan", "homology", "--in", str(FIX / "spheres" / "s3_mod.sset"),
                       "--ring", "F2")
    assert out.splitlines()[3] == "H_3 = F2^1"
    target = tmp_path / "c.sset"
    code, out, _ = run("kan", "complete", "--in", str(FIX / "spheres" / "s3_mod.sset"),
                       "--max-dim", "3", "--out", str(target))
    assert code == 0 and "certified true" in out and target.exists()


def test_kan_horn_lines():
    code, out, _ = run("kan", "check", "--in", str(FIX / "spheres" / "delta1.sset"), "--horns")
    assert code == 0 and ": unfilled" in out


def test_ainf_commands():
    code, out, _ = run("ainf", "check", "--category", str(FIX / "categories" / "dg.ainf"))
    assert code == 0 and out.startswith("ok checked=")
    code, out, _ = run("ainf", "homology", "--category", str(FIX / "categories" / "exterior.ainf"))
    assert out == "H(A,A) dim 4\n"


def test_nerve_build_and_kan_sub(tmp_path):
    code, out, _ = run("nerve", "build", "--category", str(FIX / "categories" / "field.ainf"),
                       "--max-dim", "3", "--labels")
    assert code == 0 and out.splitlines()[0] == "counts 1 1 1 1"
    code, out, _ = run("nerve", "kan-sub", "--in", str(FIX / "categories" / "exterior.ainf"))
    assert out.splitlines()[0] == "counts 1 1 13"


def test_hofer_commands():
    code, out, _ = run("hofer", "lplus", "--path", str(FIX / "hofer" / "quarter.txt"))
    assert code == 0 and abs(float(out) - 1.5707963267948966) < 1e-6
    assert len(out.strip().split(".")[1]) <= 9
    code, out, _ = run("hofer", "area", "--path", str(FIX / "hofer" / "quarter.txt"), "--grid", "256")
    assert code == 0 and out.splitlines()[1].startswith("residual ")


def test_hofer_minimax_labels_descent(tmp_path):
    f = hofer.optimal_family(6, 12, 33)
    hofer.save_family(tmp_path / "f.txt", f)
    code, out, _ = run("hofer", "minimax", "--family", str(tmp_path / "f.txt"), "--descend", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("family_max ")
    assert lines[1].startswith("stall_value=")
    assert "heuristic" in lines[2]


@pytest.mark.parametrize("argv", [[], ["bogus"], ["maslov"], ["maslov", "index", "--r", "x"],
                                  ["hofer", "lplus"]])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out.startswith("usage:")
    assert err.startswith("error: ") and err.count("\n") == 1


@pytest.mark.parametrize("argv", [
    ["simplicial", "info", "--in", "/nonexistent"],
    ["maslov", "dim", "--d", "1", "--maslov", "0", "--degs", "1"],
    ["nerve", "obstruct", "--category", str(FIX / "categories" / "dg.ainf")],
    ["hofer", "area", "--path", str(FIX / "hofer" / "quarter.txt"), "--grid", "2"],
])
def test_domain_errors(argv):
    code, out, err = run(*argv)
    assert code == 1 and out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_bad_config(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("budget.kan = -3\n")
    code, _, err = run("--config", str(p), "maslov", "index", "--r", "1", "--chi", "1",
                       "--maslov", "0")
    assert code == 1 and "budget kan" in err


def test_config_budget_is_used(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("budget.kan = 2\n")
    code, out, _ = run("--config", str(p), "kan", "complete", "--in",
                       str(FIX / "spheres" / "s3_mod.sset"), "--max-dim", "4")
    assert code == 0 and out.splitlines()[:2] == ["attached 2", "certified false"]


def test_determinism(tmp_path):
    args = ["nerve", "build", "--category", str(FIX / "categories" / "exterior.ainf"), "--labels"]
    assert run(*args) == run(*args)
    a, b = tmp_path / "a", tmp_path / "b"
    run("spheres", "build", "--out", str(a))
    run("spheres", "build", "--out", str(b))
    for p in a.iterdir():
        assert p.read_bytes() == (b / p.name).read_bytes()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "kanfuk.cli", "maslov", "index", "--r", "2",
                        "--chi", "0", "--maslov", "4"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "4\n"
