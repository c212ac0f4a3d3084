"""CSV traces of Darboux solutions, and their reconstruction.

One row per accepted sample. Floats are written with ``repr`` (shortest
round-trip decimal). Samples at infinity carry ``inf`` in the transform
columns, the boundary point in psi_xhat/zeta_xhat and the event token in
the last column.

Reading a trace back needs the scenario it came from: the base curve is
re-evaluated at each t, the null offsets are recovered from the Cartesian
difference (the smaller one through offset_norm2, which keeps its
relative precision), and the transform velocity is recomputed from the
Riccati right-hand side. The result feeds the analysis functions exactly
like a freshly integrated solution.
"""
from __future__ import annotations

import csv
import math
from pathlib import Path

from . import conformal
from .congruence import CongruenceKind, congruence_of_sample
from .darboux import (
    COMPONENTS,
    BlowupEvent,
    Chart,
    ChartValue,
    DarbouxSolution,
    DegeneratePoint,
    RiccatiChartState,
    make_sample,
)
from .errors import ParseError
from .splitc import classify, classify_null, to_null

HEADER = ("t,x1,x2,xhat1,xhat2,psi_x,zeta_x,psi_xhat,zeta_xhat,"
          "offset_norm2,xi,causal_x,causal_xhat,event")
COLUMNS = tuple(HEADER.split(","))
INF = "inf"


def _f(x: float) -> str:
    return repr(float(x))


def _xi(sample) -> float:
    cc = congruence_of_sample(sample)
    return math.inf if cc.kind is CongruenceKind.LINE else cc.radius_xi


def sample_row(sample) -> list[str]:
    x = sample.x
    px = conformal.penrose_map(x)
    row = [_f(sample.t), _f(x.re), _f(x.im)]
    if sample.at_infinity:
        ev = next(t for t in sample.tags if t.startswith("blowup:"))
        pt = _event_infinity_from_state(sample, ev).penrose_point()
        row += [INF, INF, _f(px.psi), _f(px.zeta), _f(pt.psi), _f(pt.zeta), INF, INF,
                str(classify(sample.xdot)), "infinity"]
    else:
        uh, vh = sample.xhat_null
        xh = sample.xhat
        ph = conformal.penrose_map_null(uh, vh)
        row += [_f(xh.re), _f(xh.im), _f(px.psi), _f(px.zeta), _f(ph.psi), _f(ph.zeta),
                _f(sample.offset_norm2), _f(_xi(sample)), str(classify(sample.xdot)),
                str(classify_null(*sample.xhatdot_null))]
    row.append(";".join(sample.tags))
    return row


def _event_infinity_from_state(sample, tag):
    label = tag[len("blowup:"):]
    u, v = to_null(sample.x)
    limits = []
    for comp, base in enumerate((u, v)):
        cv = sample.state[comp]
        limits.append(math.nan if cv.at_infinity else base + cv.offset())
    if label.startswith("null:"):
        edge = label[len("null:"):]
        finite = limits[1] if edge in ("upper_right", "lower_left") else limits[0]
        return conformal.NullInfinity(edge, finite)
    return _corner(label)


def _corner(label):
    kind, side = label.split(":")
    sign = 1 if side == "+" else -1
    return conformal.SpatialI0(sign) if kind == "spatial" else conformal.TimelikeI(sign)


def write_csv(solution: DarbouxSolution, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(HEADER + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        for s in solution.samples:
            writer.writerow(sample_row(s))


# -- reading ---------------------------------------------------------------------

def read_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        first = fh.readline().rstrip("\r\n")
        if first != HEADER:
            raise ParseError("unexpected CSV header", 1)
        reader = csv.reader(fh)
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != len(COLUMNS):
                raise ParseError(f"expected {len(COLUMNS)} fields, got {len(rec)}", lineno)
            rows.append(dict(zip(COLUMNS, rec)))
    return rows


# signs of (u, v) divergence per infinity label
_EDGE_COMPONENT = {
    "upper_right": ((0,), (1,)),
    "lower_left": ((0,), (-1,)),
    "lower_right": ((1,), (1,)),
    "upper_left": ((1,), (-1,)),
}


def _infinity_from_row(label: str, psi: float, zeta: float):
    if label.startswith("null:"):
        edge = label[len("null:"):]
        if edge in ("upper_right", "lower_left"):
            a = 0.5 * (psi - zeta)   # atan of the finite v
        else:
            a = 0.5 * (psi + zeta)   # atan of the finite u
        inf = conformal.NullInfinity(edge, math.tan(a))
        comps, signs = _EDGE_COMPONENT[edge]
        return inf, comps, signs
    inf = _corner(label)
    if isinstance(inf, conformal.SpatialI0):
        return inf, (0, 1), (inf.side, inf.side)
    return inf, (0, 1), (inf.side, -inf.side)


def _chart(value: float, s_switch: float) -> ChartValue:
    if abs(value) > s_switch:
        return ChartValue(Chart.INVERTED, 1.0 / value)
    return ChartValue(Chart.AFFINE, value)


def solution_from_rows(rows, pcurve, params, tol) -> DarbouxSolution:
    """Rebuild a DarbouxSolution (without dense output) from parsed CSV rows."""
    lam, mode = params.lam, params.mode
    samples, events, degenerate, lightlike = [], [], [], []
    for i, row in enumerate(rows):
        t = float(row["t"])
        tags = tuple(x for x in row["event"].split(";") if x)
        x = pcurve.curve(t)
        u, v = to_null(x)
        blow = next((tag for tag in tags if tag.startswith("blowup:")), None)
        if blow is not None:
            label = blow[len("blowup:"):]
            inf, comps, signs = _infinity_from_row(label, float(row["psi_xhat"]),
                                                   float(row["zeta_xhat"]))
            parts = []
            for comp, base in enumerate((u, v)):
                if comp in comps:
                    parts.append(ChartValue(Chart.INVERTED, 0.0))
                else:
                    parts.append(_chart(inf.offset - base, tol.s_switch))
            state = RiccatiChartState(*parts)
            samples.append(make_sample(t, state, pcurve, lam, mode, tags))
            events.append(BlowupEvent(t, tuple(COMPONENTS[c] for c in comps), tuple(signs), inf, i))
            continue
        xh1, xh2 = float(row["xhat1"]), float(row["xhat2"])
        n2 = float(row["offset_norm2"])
        p, q = (xh1 - x.re) + (xh2 - x.im), (xh1 - x.re) - (xh2 - x.im)
        if abs(p) >= abs(q):
            q = n2 / p if p != 0.0 else q
        else:
            p = n2 / q
        state = RiccatiChartState(_chart(p, tol.s_switch), _chart(q, tol.s_switch))
        sample = make_sample(t, state, pcurve, lam, mode, tags)
        samples.append(sample)
        for tag in tags:
            if tag.startswith("degenerate:"):
                degenerate.append(DegeneratePoint(t, tag.split(":")[1], i))
            elif tag == "lightlike":
                lightlike.append(t)
    return DarbouxSolution(pcurve, params, tol, tuple(samples), tuple(events),
                           tuple(lightlike), tuple(degenerate))


def read_csv(path, pcurve, params, tol) -> DarbouxSolution:
    return solution_from_rows(read_rows(path), pcurve, params, tol)
