"""Regeneration of the figure set from the built-in scenarios."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from . import svg
from .runner import CIRCLES_EVERY, solve
from .scenario import Scenario, parse_scenario

# scenario file -> [(view, output file)]
FIGURES = (
    ("line_pos.cfg", (("plane", "fig_line_pos.svg"), ("penrose", "fig_line_pos_penrose.svg"))),
    ("line_neg.cfg", (("plane", "fig_line_neg.svg"), ("penrose", "fig_line_neg_penrose.svg"))),
    ("alp_line.cfg", (("plane", "fig_alp.svg"), ("penrose", "fig_alp_penrose.svg"))),
    ("circle_pos.cfg", (("penrose", "fig_circle_pos_penrose.svg"),)),
    ("circle_neg.cfg", (("penrose", "fig_circle_neg_penrose.svg"),)),
)

FIGURE_FILES = tuple(name for _, views in FIGURES for _, name in views)


def builtin_scenario(filename: str) -> Scenario:
    text = resources.files("lorentz_darboux").joinpath("scenarios").joinpath(filename).read_text("utf-8")
    return parse_scenario(text)


def builtin_scenarios() -> list[str]:
    folder = resources.files("lorentz_darboux").joinpath("scenarios")
    return sorted(p.name for p in folder.iterdir() if p.name.endswith(".cfg"))


def render_figure(entry) -> list[tuple[str, str]]:
    """SVG texts for one FIGURES entry, as (file name, text) pairs."""
    cfg, views = entry
    scenario = builtin_scenario(cfg)
    solution = solve(scenario)
    out = []
    for view, name in views:
        title = name.removesuffix(".svg")
        if view == "plane":
            text = svg.plane_svg(solution, title, CIRCLES_EVERY)
        else:
            text = svg.penrose_svg(solution, title)
        out.append((name, text))
    return out


def figures_command(out_dir: str | Path, executor=None) -> list[Path]:
    """Write every figure into out_dir; an executor parallelizes the scenarios."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    mapper = executor.map if executor is not None else map
    paths = []
    for rendered in mapper(render_figure, FIGURES):
        for name, text in rendered:
            path = out_dir / name
            svg.write_svg(text, path)
            paths.append(path)
    return paths
