import subprocess
import sys

import pytest

from wcauchy.cli import run


def wcauchy(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "wcauchy", *map(str, args)],
                          capture_output=True, text=True, cwd=cwd)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def rows(stdout):
    return [line.split("\t") for line in stdout.splitlines()]


def test_conditions_row(tmp_path):
    cfg = write(tmp_path / "c.cfg", "p = 2\nbeta.family = invfactorial\ndelta.family = one\nq = 2\n")
    res = wcauchy("conditions", "--config", cfg)
    assert res.returncode == 0, res.stderr
    out = rows(res.stdout)
    assert out[0] == ["name", "value", "converged", "witness"]
    assert out[1] == ["C_o", "2.25", "true", "2"]


def test_product_of_files(tmp_path):
    write(tmp_path / "f.txt", "1\n1\n")
    cfg = write(tmp_path / "p.cfg",
                "degree = 4\ndelta.family = one\nseries.f = f.txt\nseries.g = f.txt\n")
    res = wcauchy("product", "--config", cfg, cwd="/")
    assert res.returncode == 0, res.stderr
    out = rows(res.stdout)
    assert out[0] == ["degree", "re", "im"]
    assert [r[1] for r in out[1:]] == ["1", "2", "1", "0", "0"]


def test_invert_factorial(tmp_path):
    write(tmp_path / "f.txt", "1\n-1\n")
    cfg = write(tmp_path / "i.cfg", "degree = 5\ndelta.family = factorial\nseries.f = f.txt\n")
    out = rows(wcauchy("invert", "--config", cfg).stdout)
    assert [float(r[1]) for r in out[1:]] == pytest.approx([1, 1, 2, 6, 24, 120], rel=1e-14)


def test_spectrum_member(tmp_path):
    write(tmp_path / "f.txt", "0.5\n1\n")
    cfg = write(tmp_path / "s.cfg", "degree = 8\nbeta.family = invfactorial\n"
                                    "series.f = f.txt\nlambda = 0.5\n")
    res = wcauchy("spectrum", "--config", cfg)
    assert res.returncode == 0
    assert ["member", "true"] in rows(res.stdout)
    write(cfg, "degree = 8\nseries.f = f.txt\nlambda = 0 0\n")
    assert ["member", "false"] in rows(wcauchy("spectrum", "--config", cfg).stdout)


def test_unconverged_constant_exits_2(tmp_path):
    cfg = write(tmp_path / "c.cfg", "p = 1\nbeta.family = invfactorial\nN = 0\n")
    res = wcauchy("conditions", "--config", cfg)
    assert res.returncode == 2
    out = rows(res.stdout)
    assert out[1][0] == "B" and out[1][2] == "false"

    write(cfg, "p = 1\nbeta.family = invfactorial\nN = 1\n")
    res = wcauchy("conditions", "--config", cfg)
    assert res.returncode == 0
    assert [r[0] for r in rows(res.stdout)[1:]] == ["B", "C^1"]


def test_report_written_to_file(tmp_path):
    cfg = write(tmp_path / "c.cfg", "beta.family = invfactorial\n")
    out = tmp_path / "r.tsv"
    assert run(["conditions", "--config", str(cfg), "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8").startswith("name\tvalue")


def test_opnorm_and_compactness(tmp_path):
    write(tmp_path / "z.txt", "0\n1\n")
    cfg = write(tmp_path / "o.cfg", "degree = 64\nbeta.family = invfactorial\nN = 1\n")
    out = rows(wcauchy("opnorm", "--config", cfg).stdout)
    assert out[1][0] == "shift^1" and float(out[1][1]) == pytest.approx(1.0, rel=1e-12)
    assert out[1][3] == "p2-power" and out[1][4] == "1"

    write(cfg, "degree = 64\nbeta.family = invfactorial\nseries.f = z.txt\nM = 4\n")
    res = wcauchy("compactness", "--config", cfg)
    assert res.returncode == 0, res.stderr
    out = rows(res.stdout)
    assert [float(r[1]) for r in out[1:]] == pytest.approx([1 / 3, 1 / 4, 1 / 5, 1 / 6], rel=1e-12)
    assert all(r[6] == "true" for r in out[1:])


def test_krylov_report(tmp_path):
    write(tmp_path / "f.txt", "0\n0\n1\n1\n")
    cfg = write(tmp_path / "k.cfg", "degree = 6\nseries.f = f.txt\nK = 4\n")
    out = dict(rows(wcauchy("krylov", "--config", cfg).stdout)[1:])
    assert out["index"] == "2" and out["rank"] == "5" and out["cyclic"] == "false"
    assert out["leading"] == "2,3,4,5,6" and out["ideal_closure_index"] == "2"


def test_verify_is_deterministic(tmp_path):
    a, b = wcauchy("verify"), wcauchy("verify")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert "fail" not in a.stdout


@pytest.mark.parametrize("text,needle", [
    ("bogus = 1\n", "unknown key"),
    ("degree\n", "key = value"),
    ("degree = x\n", "integer"),
    ("beta.family = nope\n", "nope"),
])
def test_config_errors_exit_1(tmp_path, capsys, text, needle):
    cfg = write(tmp_path / "bad.cfg", text)
    assert run(["conditions", "--config", str(cfg)]) == 1
    assert needle in capsys.readouterr().err


def test_usage_errors_exit_1(tmp_path, capsys):
    assert run(["nosuch"]) == 1
    assert run(["product"]) == 1
    cfg = write(tmp_path / "p.cfg", "degree = 4\n")
    assert run(["product", "--config", str(cfg)]) == 1
    assert "series.f" in capsys.readouterr().err
    assert run(["conditions", "--config", str(tmp_path / "missing.cfg")]) == 1


def test_math_errors_exit_1(tmp_path, capsys):
    write(tmp_path / "z.txt", "0\n1\n")
    cfg = write(tmp_path / "i.cfg", "degree = 4\nseries.f = z.txt\n")
    assert run(["invert", "--config", str(cfg)]) == 1
    assert "constant term" in capsys.readouterr().err
