"""CLI surface: literal parsing, JSON output shapes, exit codes, file modes."""

import argparse
import json
import math
import shutil
import subprocess

import pytest

from saddlenode.cli import main, parse_complex
from saddlenode.conjugacy import ConjugacyMap, phi
from saddlenode.foliation import Sector, leaf_value


def fmt(z: complex) -> str:
    sign = "+" if z.imag >= 0 else ""
    return f"{z.real!r}{sign}{z.imag!r}i"


def test_parse_complex_accepts():
    cases = {
        "0.05": 0.05 + 0j,
        "3.": 3.0 + 0j,
        ".5+.25i": 0.5 + 0.25j,
        "0.9i": 0.9j,
        "1.9i": 1.9j,
        "2i": 2j,
        "-2i": -2j,
        "1+9i": 1 + 9j,
        "-0.5-0.3i": -0.5 - 0.3j,
        "1e-3-2.5e-2i": 1e-3 - 2.5e-2j,
        "1.9e2i": 190j,
        " 0.3+0.4i ": 0.3 + 0.4j,
    }
    for text, want in cases.items():
        assert parse_complex(text) == want, text


@pytest.mark.parametrize("bad", ["", "i", "abc", "1+i", "1.9j", "1 + 2i", "0.5x"])
def test_parse_complex_rejects(bad):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(bad)


def _run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured


def test_leaf_command(capsys):
    rc, cap = _run(capsys, ["leaf", "--alpha", "0.05", "--sector", "plus",
                            "--c", "1", "--x", "0.9i"])
    assert rc == 0
    y = leaf_value(0.05, Sector.PLUS, 1 + 0j, 0.9j)
    assert json.loads(cap.out) == {"re": y.real, "im": y.imag}


def test_invert_round_trip(capsys):
    c = 0.7 + 0.2j
    y = leaf_value(0.05, Sector.PLUS, c, 0.9j)
    rc, cap = _run(capsys, ["invert", "--alpha", "0.05", "--sector", "plus",
                            "--x", "0.9i", "--y", fmt(y)])
    assert rc == 0
    got = json.loads(cap.out)
    assert abs(complex(got["re"], got["im"]) - c) < 1e-9


def test_stokes_command(capsys):
    rc, cap = _run(capsys, ["stokes", "--alpha", "0.05"])
    assert rc == 0
    d = json.loads(cap.out)
    assert set(d) == {"tau0_est", "tau0_exact", "tau1_est", "tau1_exact", "max_err"}
    assert d["tau0_exact"] == {"re": 1.05, "im": 0.0}
    assert d["tau1_exact"] == {"re": 0.95, "im": 0.0}
    assert d["max_err"] <= 1e-7


def test_hankel_command(capsys):
    rc, cap = _run(capsys, ["hankel", "--a", "2", "--j", "0"])
    assert rc == 0
    d = json.loads(cap.out)
    assert set(d) == {"numeric", "closed", "rel_err"}
    assert d["closed"] == {"re": 0.0, "im": -math.pi}
    assert d["rel_err"] <= 1e-8


def test_map_single_point(capsys):
    rc, cap = _run(capsys, ["map", "--alpha", "0.05", "--x", "0", "--y", "1"])
    assert rc == 0
    d = json.loads(cap.out)
    assert d == {"X": {"re": 0.0, "im": 0.0}, "Y": {"re": 1.0, "im": 0.0}}


def test_negative_literal_both_spellings(capsys):
    # option values starting with a minus must not be eaten as flags
    rc1, cap1 = _run(capsys, ["map", "--alpha", "0.05", "--x=-0.5-0.3i",
                              "--y", "0.2"])
    rc2, cap2 = _run(capsys, ["map", "--alpha", "0.05", "--x", "-0.5-0.3i",
                              "--y", "0.2"])
    assert rc1 == 0 and rc2 == 0
    assert json.loads(cap1.out) == json.loads(cap2.out)


def test_chart_command(capsys):
    rc, cap = _run(capsys, ["chart", "--from", "xy", "--to", "st",
                            "--p1", "2", "--p2", "3"])
    assert rc == 0
    assert json.loads(cap.out) == {
        "chart": "st",
        "p1": {"re": 0.5, "im": 0.0},
        "p2": {"re": 1.5, "im": 0.0},
    }


def test_series_command(capsys):
    rc, cap = _run(capsys, ["series", "--order", "12"])
    assert rc == 0
    d = json.loads(cap.out)
    assert d == {"coefficients": [0, 0, 0, 0, 0, 0, 1, 0, 3, 0, 15, 0, 105]}
    assert all(isinstance(a, int) for a in d["coefficients"])


def test_verify_single_suite(capsys):
    rc, cap = _run(capsys, ["verify", "--alpha", "0.05", "--suite", "stokes",
                            "--samples", "3"])
    assert rc == 0
    d = json.loads(cap.out)
    assert d["suite"] == "stokes" and d["pass"] is True


def test_verify_failure_sets_exit_code(capsys):
    rc, cap = _run(capsys, ["verify", "--alpha", "0.05", "--suite", "stokes",
                            "--samples", "2", "--tol", "1e-30"])
    assert rc == 1
    assert json.loads(cap.out)["pass"] is False


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["leaf", "--alpha", "0.05"])
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["verify", "--alpha", "0", "--suite", "spectra"])
    assert ei.value.code == 2
    capsys.readouterr()


def test_numerical_error_exit_three(capsys):
    rc, cap = _run(capsys, ["leaf", "--alpha", "0.05", "--sector", "plus",
                            "--c", "0", "--x", "1.9i"])
    assert rc == 3
    err = json.loads(cap.err)
    assert err["error"] == "OutsideAnnulus"
    assert err["message"]


def test_map_batch(tmp_path, capsys):
    src = tmp_path / "in.csv"
    src.write_text("re_x,im_x,re_y,im_y\n"
                   "0.9,0,0.3,0.1\n"
                   "0,0,0.25,0\n"
                   "1.3,0.2,0.7,-0.4\n")
    dst = tmp_path / "out.csv"
    rc, cap = _run(capsys, ["map", "--alpha", "0.05",
                            "--input", str(src), "--output", str(dst)])
    assert rc == 0
    assert "mapped" in cap.err
    lines = dst.read_text().strip().splitlines()
    assert lines[0] == "re_x,im_x,re_y,im_y,re_X,im_X,re_Y,im_Y"
    assert len(lines) == 4
    for line in lines[1:]:
        assert len(line.split(",")) == 8

    # second row is the fixed fiber over x = 0
    row = lines[2].split(",")
    assert float(row[4]) == 0.0 and float(row[6]) == 0.25

    # first row must agree with the library to the last digit (repr round trip)
    row = lines[1].split(",")
    bigx, bigy = phi(ConjugacyMap(0.05), 0.9 + 0j, 0.3 + 0.1j)
    assert complex(float(row[4]), float(row[5])) == bigx
    assert complex(float(row[6]), float(row[7])) == bigy


def test_map_batch_rejects_wrong_header(tmp_path, capsys):
    src = tmp_path / "in.csv"
    src.write_text("re_x,im_x\n0.9,0\n")
    with pytest.raises(SystemExit) as ei:
        main(["map", "--alpha", "0.05", "--input", str(src),
              "--output", str(tmp_path / "out.csv")])
    assert ei.value.code == 2
    capsys.readouterr()


def test_plot_leaves_svg_with_companion(tmp_path, capsys):
    out = tmp_path / "leaves.svg"
    rc, cap = _run(capsys, ["plot-leaves", "--alpha", "0.05", "--radius", "0.9",
                            "--count", "2", "--out", str(out)])
    assert rc == 0
    d = json.loads(cap.out)
    assert len(d["written"]) == 2
    assert out.exists()
    companion = tmp_path / "leaves.csv"
    assert companion.exists()
    rows = companion.read_text().strip().splitlines()
    assert rows[0] == "theta,re_y,im_y,c_index"
    assert len(rows) == 1 + 2 * 181
    assert "<svg" in out.read_text()


def test_plot_leaves_csv_only(tmp_path, capsys):
    out = tmp_path / "trace.csv"
    rc, cap = _run(capsys, ["plot-leaves", "--alpha", "0", "--radius", "0.8",
                            "--count", "1", "--out", str(out)])
    assert rc == 0
    assert json.loads(cap.out)["written"] == [str(out)]
    assert not (tmp_path / "trace.svg").exists()


def test_plot_leaves_rejects_other_suffix(tmp_path, capsys):
    with pytest.raises(SystemExit) as ei:
        main(["plot-leaves", "--alpha", "0", "--radius", "0.8", "--count", "1",
              "--out", str(tmp_path / "x.png")])
    assert ei.value.code == 2
    capsys.readouterr()


def test_installed_script_smoke():
    exe = shutil.which("saddlenode")
    assert exe, "console script should be on PATH after install"
    proc = subprocess.run([exe, "series", "--order", "8"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficients"][6] == 1
