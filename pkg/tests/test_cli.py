import csv
import io
import json
import os
import subprocess
import sys

import pytest

from disknorm.cli import format_complex, format_real, main, parse_complex, parse_grid, UsageError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------- formatting


@pytest.mark.parametrize(
    "x, s",
    [(2.0, "2.000000000000000"), (1.0, "1.000000000000000"), (0.0, "0.000000000000000"), (-12.5, "-12.50000000000000")],
)
def test_format_real(x, s):
    assert format_real(x) == s


def test_format_complex():
    assert format_complex(0.5 - 0.25j) == "0.5000000000000000-0.2500000000000000i"
    assert format_complex(3 + 0j) == "3.000000000000000"


@pytest.mark.parametrize("text, z", [("0.5", 0.5), ("0.3+0.2i", 0.3 + 0.2j), ("0.3-0.2j", 0.3 - 0.2j), ("-1i", -1j)])
def test_parse_complex(text, z):
    assert parse_complex(text) == z


def test_parse_grid():
    assert parse_grid("24x128") == (24, 128)
    for bad in ("24", "0x4", "ax3"):
        with pytest.raises(UsageError):
            parse_grid(bad)


# ---------------------------------------------------------------- eval


def test_eval_values():
    assert run("eval", "--expr", "1/(1-z)", "--at", "0.5")[1].strip() == "2.000000000000000"
    assert run("eval", "--expr", "exp(-z)/(1-z)", "--at", "0")[1].strip() == "1.000000000000000"


def test_eval_parse_error_has_column():
    code, _, err = run("eval", "--expr", "1/(1-z")
    assert code == 2
    assert "column 7" in err


def test_eval_errors():
    assert run("eval", "--expr", "1/z", "--at", "0")[0] == 3
    assert run("eval", "--expr", "log(z)", "--at", "0")[0] == 3
    assert run("eval", "--expr", "z", "--at", "abc")[0] == 2
    assert run("eval", "--bogus")[0] == 2


# ---------------------------------------------------------------- norm


def test_norm_pre_schwarzian(tmp_path):
    out = tmp_path / "n.json"
    code, text, _ = run("norm", "--kind", "pre-schwarzian", "--h", "1/(1-z)", "--omega", "z", "--out", str(out))
    assert code == 0
    assert "converged: true" in text
    data = json.loads(out.read_text())
    assert data["estimate"]["value"] == pytest.approx(5.0, abs=1e-4)
    assert data["manifest"]["command"] == "norm"
    assert data["manifest"]["sup_config"]["r_max"] == pytest.approx(1 - 1e-8)


def test_norm_other_kinds():
    def value(*argv):
        code, text, _ = run("norm", *argv)
        assert code == 0, text
        return float(text.split("value:")[1].split()[0])

    assert value("--kind", "bloch", "--h", "1/(1-z)", "--g", "1") == pytest.approx(2.0, abs=1e-4)
    assert value("--kind", "hyperbolic", "--omega", "z") == pytest.approx(1.0, abs=1e-12)
    assert value("--kind", "psi-pre-schwarzian", "--h", "1/(1-z)", "--omega", "z") == pytest.approx(6.0, abs=1e-4)
    assert value("--kind", "schwarzian", "--h", "z/(1-z)^2") == pytest.approx(6.0, abs=1e-6)
    k = value("--kind", "bloch", "--h", "z/(1-z)^2", "--lambda1", "1", "--lambda2", "0.5")
    assert k == pytest.approx(9.0, abs=1e-4)
    assert value("--kind", "pre-schwarzian", "--h", "1/(1-z)", "--omega", "z", "--rmax", "0.9") == pytest.approx(
        4.61, abs=1e-9
    )


def test_norm_invalid_maps_and_usage():
    assert run("norm", "--kind", "pre-schwarzian", "--h", "exp(z)", "--omega", "2*z")[0] == 4
    assert run("norm", "--kind", "pre-schwarzian", "--h", "z", "--g", "z")[0] == 4
    assert run("norm", "--kind", "pre-schwarzian", "--h", "z", "--g", "1", "--omega", "z")[0] == 2
    assert run("norm", "--kind", "hyperbolic", "--h", "z")[0] == 2
    assert run("norm", "--kind", "pre-schwarzian", "--h", "1/(1-z", "--g", "1")[0] == 2
    assert run("norm", "--kind", "pre-schwarzian", "--h", "z", "--g", "1", "--grid", "0x3")[0] == 2


# ---------------------------------------------------------------- dump


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_dump_pre_schwarzian(tmp_path):
    path = tmp_path / "d.csv"
    code, _, _ = run("dump", "--kind", "pre-schwarzian", "--h", "1/(1-z)", "--omega", "z", "--grid", "24x128", "--out", str(path))
    assert code == 0
    rows = _rows(path)
    assert rows[0] == ["r", "theta", "value"]
    assert len(rows) == 1 + 24 * 128
    best = max(float(v) for _, _, v in rows[1:])
    # outermost ladder ring sits at 1 - 2^-11.5; profile r^2 + 2r + 2
    r = 1 - 2**-11.5
    assert best == pytest.approx(r * r + 2 * r + 2, abs=1e-9)
    # shortest round-trip decimals
    assert all(repr(float(x)) == x for row in rows[1:50] for x in row)


def test_dump_single_point(tmp_path):
    path = tmp_path / "one.csv"
    assert run("dump", "--kind", "pre-schwarzian", "--h", "1/(1-z)", "--omega", "z", "--grid", "1x1", "--out", str(path))[0] == 0
    rows = _rows(path)
    assert len(rows) == 2
    assert float(rows[1][0]) == 0.0


def test_dump_profile(tmp_path):
    path = tmp_path / "e.csv"
    assert run("dump", "--kind", "profile-E", "--t", "0.6", "--grid", "3001x1", "--out", str(path))[0] == 0
    rows = [tuple(map(float, r)) for r in _rows(path)[1:]]
    r_best = max(rows, key=lambda row: row[2])[0]
    assert r_best == pytest.approx(1 / 3, abs=1e-3)


def test_dump_io_failure_leaves_nothing(tmp_path):
    target = tmp_path / "missing" / "x.csv"
    assert run("dump", "--kind", "bloch", "--h", "1/(1-z)", "--g", "1", "--grid", "2x2", "--out", str(target))[0] == 6
    assert not target.exists()
    ro = tmp_path / "ro"
    ro.mkdir()
    os.chmod(ro, 0o500)
    try:
        if os.access(ro, os.W_OK):
            pytest.skip("running with permissions that ignore directory modes")
        assert run("dump", "--kind", "bloch", "--h", "1/(1-z)", "--g", "1", "--grid", "2x2", "--out", str(ro / "x.csv"))[0] == 6
        assert os.listdir(ro) == []
    finally:
        os.chmod(ro, 0o700)


# ---------------------------------------------------------------- verify


def test_verify_closed_form_suite(tmp_path):
    path = tmp_path / "v.json"
    code, text, _ = run("verify", "--suite", "paper", "--tol", "1e-3", "--out", str(path))
    assert code == 0
    assert "27/27 checks passed" in text
    data = json.loads(path.read_text())
    assert set(data) == {"manifest", "reports"}
    assert data["manifest"]["seed"] == 42
    assert all(r["pass"] for r in data["reports"])


def test_verify_tight_tolerance_fails():
    code, text, _ = run("verify", "--suite", "paper", "--tol", "1e-9")
    assert code == 1
    assert "FAIL" in text


def test_verify_internal_error(monkeypatch):
    import disknorm.theorems.suites as suites

    def boom(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(suites, "run_suite", boom)
    assert run("verify", "--suite", "paper")[0] == 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "disknorm", "eval", "--expr", "1/(1-z)", "--at", "0.5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2.000000000000000"
