"""Execute a scenario: integrate, analyse, write artifacts."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, csvio, svg
from .darboux import DarbouxSolution, integrate
from .scenario import Scenario

CIRCLES_EVERY = 25


@dataclass
class RunResult:
    scenario: Scenario
    solution: DarbouxSolution
    summary: dict
    files: list[Path] = field(default_factory=list)

    def text(self) -> str:
        s = self.summary
        lines = [f"{self.scenario.name}: {s['samples']} samples, lambda={s['lambda']!r}, mode={s['mode']}"]
        if "alp_deviation" in s:
            lines.append(f"  ALP deviation {s['alp_deviation']:.3e}")
        lines.append(f"  velocity identity residual {s['velocity_identity_residual']:.3e}")
        if not s["blowups"]:
            lines.append("  no blow-up events")
        for b in s["blowups"]:
            line = f"  blow-up at t={b['t_star']:.10f}: {b['infinity']}"
            if "boundary_angle_deg" in b and math.isfinite(b["boundary_angle_deg"]):
                line += f", boundary angle {b['boundary_angle_deg']:.4f} deg"
            lines.append(line)
        for kind in ("singular", "lightlike_velocity", "degenerate"):
            ts = s[f"{kind}_t"]
            if ts:
                lines.append(f"  {kind.replace('_', ' ')} points: " + ", ".join(f"{t:.8f}" for t in ts))
        for f in self.files:
            lines.append(f"  wrote {f}")
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def diagnostics_lines(solution: DarbouxSolution, summary: dict) -> list[str]:
    """JSON lines: the summary, then one record per finding and per blow-up."""
    out = [json.dumps(_jsonable({"record": "summary", **summary}), sort_keys=True)]
    for f in analysis.detect_singular_and_degenerate(solution):
        out.append(json.dumps(_jsonable({"record": "finding", "kind": f.kind, "t": f.t,
                                         "value": f.value}), sort_keys=True))
    for ev in solution.events:
        try:
            rep = analysis.classify_blowup(solution, ev)
        except analysis.InsufficientSamplesError:
            continue
        out.append(json.dumps(_jsonable({
            "record": "blowup", "t_star": rep.t_star, "infinity": rep.infinity.label(),
            "direction_indicator": rep.direction_indicator,
            "boundary_angle_deg": rep.boundary_angle_deg,
            "indicator_trend": rep.indicator_trend, "radius_trend": rep.radius_trend,
        }), sort_keys=True))
    return out


def solve(scenario: Scenario) -> DarbouxSolution:
    pcurve = scenario.polarized_curve()
    return integrate(pcurve, scenario.darboux_params(pcurve), scenario.t1, scenario.tolerances)


def run_scenario(scenario: Scenario, out_dir: str | Path | None) -> RunResult:
    """Integrate and analyse; write the requested outputs under out_dir/<name>/."""
    solution = solve(scenario)
    summary = analysis.report_summary(solution)
    result = RunResult(scenario, solution, summary)
    if out_dir is None:
        return result
    target = Path(out_dir) / scenario.name
    target.mkdir(parents=True, exist_ok=True)
    if "csv" in scenario.outputs:
        path = target / "trace.csv"
        csvio.write_csv(solution, path)
        result.files.append(path)
    if "svg_plane" in scenario.outputs:
        path = target / "plane.svg"
        svg.write_svg(svg.plane_svg(solution, scenario.name, CIRCLES_EVERY), path)
        result.files.append(path)
    if "svg_penrose" in scenario.outputs:
        path = target / "penrose.svg"
        svg.write_svg(svg.penrose_svg(solution, scenario.name), path)
        result.files.append(path)
    if "diagnostics" in scenario.outputs:
        path = target / "diagnostics.jsonl"
        path.write_text("\n".join(diagnostics_lines(solution, summary)) + "\n", encoding="utf-8")
        result.files.append(path)
    return result
