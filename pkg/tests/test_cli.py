import io
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bigraded_lc.cech import MonomialIdeal
from bigraded_lc.cli import ConfigError, JobConfig, main, parse_config, render_config
from bigraded_lc.core import RingSpec
from helpers import ideals

R22 = RingSpec(2, 2)


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def cfg(tmp_path):
    def make(text):
        p = tmp_path / "job.cfg"
        p.write_text(text)
        return str(p)
    return make


# ---------------------------------------------------------------- config parsing

def test_parse_basic_config():
    c = parse_config("ring: n=2 m=2\nideal: X1, X2\n")
    assert c.ring == R22
    assert c.ideal == MonomialIdeal.parse(R22, "X1, X2")
    assert c.localize is None and c.window is None


def test_parse_special_config():
    c = parse_config("special: binomial_edge_K3  # E over n=m=3\n")
    assert c.special == "binomial_edge_K3" and c.ring == RingSpec(3, 3)


def test_comments_and_optional_keys():
    c = parse_config("# job\n\nring: n=2 m=2\nideal: X1*Y1 # one generator\nlocalize: Y2\nwindow: -3 3 -2 2\n")
    assert c.localize == (0, 0, 0, 1)
    assert c.window == (-3, 3, -2, 2)


@pytest.mark.parametrize("text, fragment", [
    ("ring: n=1 m=1\nideal: X1^0\n", "line 2"),
    ("ring: n=1 m=1\nideal: X2\n", "line 2"),
    ("ring: n=1 m=1\ncolour: red\n", "line 2: unknown key"),
    ("ring: n=1\nideal: X1\n", "line 1"),
    ("ring: n=1 m=1\nideal X1\n", "line 2"),
    ("ring: n=1 m=1\nideal: X1\nwindow: 3 1 0 0\n", "line 3"),
    ("ring: n=1 m=1\nideal: X1\nwindow: 1 2 3\n", "line 3"),
    ("ring: n=1 m=1\n", "exactly one"),
    ("ring: n=1 m=1\nideal: X1\nspecial: binomial_edge_K3\n", "exactly one"),
    ("ideal: X1\n", "ring"),
    ("ring: n=1 m=1\nring: n=1 m=1\nideal: X1\n", "line 2: duplicate"),
    ("special: nope\n", "line 1"),
    ("ring: n=2 m=2\nspecial: binomial_edge_K3\n", "line 2"),
])
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


windows = st.tuples(st.integers(-9, 0), st.integers(0, 9), st.integers(-9, 0), st.integers(0, 9))


@given(ideals(), st.none() | windows, st.booleans(), st.data())
def test_config_round_trip(I, window, loc, data):
    f = None
    if loc:
        f = tuple(data.draw(st.integers(0, 2)) for _ in range(I.ring.nvars))
        if not any(f):
            f = None
    c = JobConfig(I.ring, ideal=I, localize=f, window=window)
    assert parse_config(render_config(c)) == c


def test_special_round_trip():
    c = parse_config("special: binomial_edge_K3\nwindow: -5 0 -5 0\n")
    assert parse_config(render_config(c)) == c


# ---------------------------------------------------------------- commands

def test_compute(cfg):
    path = cfg("ring: n=2 m=2\nideal: X1, X2\n")
    assert run(["compute", "--config", path, "--degree", "2"]) == (
        0, "[X1:neg X2:neg Y1:pos Y2:pos] mult=1 region=NW*\n")
    assert run(["compute", "--config", path, "--degree", "1"]) == (0, "ZERO MODULE\n")
    path = cfg("ring: n=2 m=2\nideal: X1, X2, Y1, Y2\n")
    assert run(["compute", "--config", path, "--degree", "4"]) == (
        0, "[X1:neg X2:neg Y1:neg Y2:neg] mult=1 region=S*W*\n")


def test_compute_localized(cfg):
    path = cfg("ring: n=2 m=2\nideal: X1, X2\nlocalize: Y1\n")
    assert run(["compute", "--config", path, "--degree", "2"]) == (
        0, "[X1:neg X2:neg Y1:lau Y2:pos] mult=1 region=W*\n")


def test_compute_usage_errors(cfg, capsys):
    path = cfg("ring: n=2 m=2\nideal: X1, X2\n")
    assert run(["compute", "--config", path, "--degree", "9"])[0] == 2
    assert run(["compute", "--config", path])[0] == 2
    assert run(["compute", "--config", "/nonexistent/job.cfg", "--degree", "1"])[0] == 2
    assert run(["frobnicate"])[0] == 2
    bad = cfg("ring: n=2 m=2\nideal: X1^0\n")
    assert run(["compute", "--config", bad, "--degree", "1"])[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_window_table(cfg):
    path = cfg("ring: n=1 m=1\nideal: X1, Y1\nwindow: -2 0 -2 0\n")
    code, out = run(["window", "--config", path, "--degree", "2"])
    rows = out.splitlines()
    assert code == 0 and rows[0] == "u\tv\tdim" and len(rows) == 10
    assert rows[1] == "-2\t-2\t1"
    assert "-1\t-1\t1" in rows and rows[-1] == "0\t0\t0"
    assert [tuple(map(int, r.split("\t")[:2])) for r in rows[1:]] == [(u, v) for u in (-2, -1, 0) for v in (-2, -1, 0)]
    localized = cfg("ring: n=2 m=2\nideal: X1, X2\nlocalize: Y1\nwindow: -2 -2 0 0\n")
    assert run(["window", "--config", localized, "--degree", "2"])[1] == "u\tv\tdim\n-2\t0\tinf\n"


def test_window_polynomial_ring(cfg, tmp_path):
    mod = tmp_path / "r.mod"
    mod.write_text("[X1:pos Y1:pos] mult=1\n")
    assert run(["window", "--module", str(mod)])[1].splitlines()[1:2] == ["-5\t-5\t0"]
    path = cfg("ring: n=1 m=1\nideal: X1\nwindow: 1 1 1 1\n")
    assert run(["window", "--config", path, "--degree", "1", "--module", str(mod)])[1] == "u\tv\tdim\n1\t1\t1\n"


def test_series(cfg):
    path = cfg("ring: n=3 m=3\nideal: X1, X2, X3, Y1, Y2, Y3\n")
    code, out = run(["series", "--config", path, "--degree", "6"])
    assert code == 0
    assert out.splitlines()[-1] == "t1^-3 * t2^-3 / ((1-t1^-1)^3 (1-t2^-1)^3)"
    path = cfg("ring: n=2 m=2\nideal: X1*Y1, X1*Y2, X2*Y1, X2*Y2\n")
    code, out = run(["series", "--config", path, "--degree", "2", "--normalize"])
    assert out.splitlines() == ["# semantics: rational function", "2 / ((1-t1)^2 (1-t2)^2)"]
    path = cfg("ring: n=2 m=2\nideal: X1, X2\nlocalize: Y1\n")
    code, out = run(["series", "--config", path, "--degree", "2"])
    assert code == 2 and out.startswith("ERROR")


def test_check_oracle(cfg):
    path = cfg("ring: n=2 m=2\nideal: X1, X2\n")
    code, out = run(["check", "--config", path, "--suite", "oracle"])
    assert code == 0
    assert all(line.startswith("PASS oracle") for line in out.splitlines())
    assert len(out.splitlines()) == 5


def test_check_all_special(cfg):
    path = cfg("special: binomial_edge_K3\n")
    code, out = run(["check", "--config", path, "--suite", "all"])
    assert code == 0 and "FAIL" not in out
    assert {l.split()[1] for l in out.splitlines()} == {"eulerian", "rigidity", "tameness", "vanishing",
                                                      "oracle", "series"}


def test_check_negative_control(tmp_path):
    mod = tmp_path / "bad.mod"
    # a twisted box: its monomials are no longer Euler eigenvectors with eigenvalue the degree
    mod.write_text("[X1:neg X2:neg Y1:pos Y2:pos] shift=(1,0) mult=1\n")
    code, out = run(["check", "--module", str(mod), "--suite", "eulerian"])
    assert code == 1 and out.startswith("FAIL eulerian")


def test_check_unknown_suite(cfg):
    path = cfg("ring: n=1 m=1\nideal: X1\n")
    assert run(["check", "--config", path, "--suite", "nonsense"])[0] == 2


def test_special_command():
    code, out = run(["special", "--name", "binomial_edge_K3"])
    assert code == 0
    assert "ring: n=3 m=3" in out and "[X1:neg X2:neg X3:neg Y1:neg Y2:neg Y3:neg] mult=1 region=S*W*" in out
    assert run(["special", "--name", "nope"])[0] == 2


def test_module_file_errors(tmp_path):
    mod = tmp_path / "bad.mod"
    mod.write_text("[X1:nope Y1:pos]\n")
    assert run(["compute", "--module", str(mod)])[0] == 2


def test_deterministic_output(cfg):
    path = cfg("ring: n=2 m=2\nideal: X1*Y1, X2*Y2, X1*X2\n")
    first = [run([c, "--config", path, "--degree", "2"]) for c in ("compute", "window", "series")]
    second = [run([c, "--config", path, "--degree", "2"]) for c in ("compute", "window", "series")]
    assert first == second


def test_module_entry_point(cfg):
    path = cfg("ring: n=2 m=2\nideal: X1, X2\n")
    res = subprocess.run([sys.executable, "-m", "bigraded_lc", "compute", "--config", path, "--degree", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout == "[X1:neg X2:neg Y1:pos Y2:pos] mult=1 region=NW*\n"
