import math
import re

import pytest

from lorentz_darboux import svg
from lorentz_darboux.cli import main
from lorentz_darboux.figures import FIGURE_FILES, builtin_scenario, figures_command
from lorentz_darboux.runner import solve

LINE_CFG = """\
name = line_neg
curve = line
polarization = constant
polarization.m = 1
lambda = -1
initial = 0, 1
t0 = 0
t1 = 3
"""


def test_figure_set_is_deterministic(tmp_path):
    a = figures_command(tmp_path / "a")
    b = figures_command(tmp_path / "b")
    assert [p.name for p in a] == list(FIGURE_FILES)
    assert len(a) >= 6
    for pa, pb in zip(a, b):
        assert pa.read_bytes() == pb.read_bytes()


def test_svg_has_no_volatile_content():
    text = svg.penrose_svg(solve(builtin_scenario("alp_line.cfg")), "t")
    assert text.startswith("<svg")
    assert 'viewBox="0 0 600 600"' in text
    assert not re.search(r"\d{4}-\d{2}-\d{2}", text)


def test_circle_figure_marks_lightlike_points():
    sol = solve(builtin_scenario("circle_pos.cfg"))
    text = svg.penrose_svg(sol, "t")
    black = text.count('fill="#000000"')
    # base curve and transform image at each of the four lightlike points
    assert black == 8


def test_penrose_image_of_the_line_tends_to_spatial_infinity():
    from lorentz_darboux.conformal import penrose_map
    from lorentz_darboux.curve import line

    c = line()
    far = penrose_map(c(1e9))
    assert far.psi == pytest.approx(math.pi, abs=1e-8)
    assert far.zeta == pytest.approx(0.0, abs=1e-12)


def test_run_writes_outputs(tmp_path, capsys):
    cfg = tmp_path / "line.cfg"
    cfg.write_text(LINE_CFG)
    code = main(["run", str(cfg), "--out", str(tmp_path / "out")])
    assert code == 0
    out = capsys.readouterr().out
    assert "null:upper_left" in out
    assert "t=0.7853981634" in out
    names = sorted(p.name for p in (tmp_path / "out" / "line_neg").iterdir())
    assert names == ["diagnostics.jsonl", "penrose.svg", "plane.svg", "trace.csv"]


def test_run_in_parallel(tmp_path):
    cfgs = []
    for i in range(3):
        p = tmp_path / f"s{i}.cfg"
        p.write_text(LINE_CFG.replace("name = line_neg", f"name = s{i}"))
        cfgs.append(str(p))
    assert main(["run", *cfgs, "--out", str(tmp_path / "out"), "--jobs", "2"]) == 0
    assert len(list((tmp_path / "out").iterdir())) == 3


def test_stationary_scenario_has_no_events(tmp_path, capsys):
    # lambda = 1, offsets (1, -1) sit at the fixed point p^2 = 1 of p' = p^2 - 1
    cfg = tmp_path / "fixed.cfg"
    cfg.write_text(LINE_CFG.replace("lambda = -1", "lambda = 1").replace("initial = 0, 1", "initial_null = 1, -1"))
    assert main(["run", str(cfg), "--out", str(tmp_path / "o")]) == 0
    assert "no blow-up events" in capsys.readouterr().out


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text(LINE_CFG.replace("lambda = -1", "lambda = 0"))
    assert main(["run", str(bad)]) == 2
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text(LINE_CFG + "gamma = 2\n")
    assert main(["run", str(unknown)]) == 2
    circle = tmp_path / "circle.cfg"
    circle.write_text("name = c\ncurve = euclidean_circle\nlambda = 1\ninitial_null = 0.3, 0.7\n"
                      "t0 = 0\nt1 = 1\n")
    assert main(["run", str(circle), "--out", str(tmp_path / "o")]) == 3
    assert main(["run", str(tmp_path / "missing.cfg")]) == 4
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    ok = tmp_path / "ok.cfg"
    ok.write_text(LINE_CFG)
    assert main(["run", str(ok), "--out", str(blocker)]) == 4


def test_tolerance_override(tmp_path, capsys):
    cfg = tmp_path / "line.cfg"
    cfg.write_text(LINE_CFG)
    assert main(["run", str(cfg), "--out", str(tmp_path / "o"), "--tol-rel", "1e-8"]) == 0
    assert main(["run", str(cfg), "--tol-rel", "-1"]) == 2


def test_figures_command(tmp_path):
    assert main(["figures", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(FIGURE_FILES)
