"""Deterministic SVG renderings of a Darboux pair.

Output depends only on the solution: coordinates are printed with a
fixed number of decimals, elements are written in a fixed order and no
timestamps or ids are generated.
"""
from __future__ import annotations

import math
from pathlib import Path

from . import conformal
from .congruence import congruence_of_sample
from .splitc import to_null

SIZE = 600
MARGIN = 30
BASE_COLOR = "#1f4e9c"
XHAT_COLOR = "#c0392b"
CIRCLE_COLOR = "#9aa5b1"
PLANE_LIMIT = 6.0  # plane view never shows more than this around the base curve


def _num(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    """Affine map from a data window to the SVG square, y pointing up."""

    def __init__(self, xmin, xmax, ymin, ymax):
        span = max(xmax - xmin, ymax - ymin)
        cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
        self.x0, self.y0 = cx - 0.5 * span, cy - 0.5 * span
        self.scale = (SIZE - 2 * MARGIN) / span
        self.parts: list[str] = []

    def pt(self, x, y):
        return (MARGIN + (x - self.x0) * self.scale,
                SIZE - MARGIN - (y - self.y0) * self.scale)

    def polyline(self, pts, color, width=1.5, dash=None):
        if len(pts) < 2:
            return
        coords = " ".join(f"{_num(a)},{_num(b)}" for a, b in (self.pt(*p) for p in pts))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                          f'stroke-width="{width}"{extra}/>')

    def dot(self, x, y, color="#000000", r=3.0):
        a, b = self.pt(x, y)
        self.parts.append(f'<circle cx="{_num(a)}" cy="{_num(b)}" r="{r}" fill="{color}"/>')

    def text(self, x, y, label, anchor="middle"):
        a, b = self.pt(x, y)
        self.parts.append(f'<text x="{_num(a)}" y="{_num(b)}" font-family="sans-serif" '
                          f'font-size="13" text-anchor="{anchor}">{label}</text>')

    def render(self, title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
                f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
                f'<title>{title}</title>\n'
                f'<defs><clipPath id="frame"><rect x="0" y="0" width="{SIZE}" height="{SIZE}"/>'
                f'</clipPath></defs>\n'
                f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>\n'
                f'<g clip-path="url(#frame)">\n')
        return head + "\n".join(self.parts) + "\n</g>\n</svg>\n"


def _segments(samples, point):
    """Split the finite samples into runs separated by samples at infinity."""
    runs, cur = [], []
    for s in samples:
        if s.at_infinity:
            if cur:
                runs.append(cur)
            cur = []
            continue
        cur.append(point(s))
    if cur:
        runs.append(cur)
    return runs


def _circle_points(cc, n=64, extent=2.0):
    """Both branches of the Minkowski circle |y - c|^2 = -sigma r^2."""
    c, r = cc.center, cc.radius
    branches = []
    for sign in (1.0, -1.0):
        pts = []
        for k in range(n + 1):
            s = -extent + 2.0 * extent * k / n
            if cc.sigma > 0:   # |y - c|^2 = -r^2: y - c = r (sinh s, +-cosh s)
                pts.append((c.re + r * math.sinh(s), c.im + sign * r * math.cosh(s)))
            else:              # |y - c|^2 = r^2: y - c = r (+-cosh s, sinh s)
                pts.append((c.re + sign * r * math.cosh(s), c.im + r * math.sinh(s)))
        branches.append(pts)
    return branches


def _clamp(p, lim):
    return (min(max(p[0], -lim), lim), min(max(p[1], -lim), lim))


def plane_svg(solution, title: str = "plane", circles_every: int = 0) -> str:
    """Minkowski-plane view: x, xh and every K-th common circle."""
    base = [(s.x.re, s.x.im) for s in solution.samples]
    xs = [p[0] for p in base]
    ys = [p[1] for p in base]
    cx, cy = 0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys))
    half = max(max(xs) - min(xs), max(ys) - min(ys), 2.0) * 0.5 + 1.0
    half = min(half, PLANE_LIMIT)
    canvas = _Canvas(cx - half, cx + half, cy - half, cy + half)
    lim = 10.0 * (abs(cx) + abs(cy) + half)

    # light cone through the window center
    canvas.polyline([(cx - half, cy - half), (cx + half, cy + half)], "#dddddd", 1.0, "4 4")
    canvas.polyline([(cx - half, cy + half), (cx + half, cy - half)], "#dddddd", 1.0, "4 4")

    if circles_every:
        for i, s in enumerate(solution.samples):
            if s.at_infinity or i % circles_every:
                continue
            cc = congruence_of_sample(s)
            if not cc.kind.is_circle or not (0.0 < cc.radius < lim):
                continue
            for branch in _circle_points(cc):
                canvas.polyline([_clamp(p, lim) for p in branch], CIRCLE_COLOR, 0.6)

    canvas.polyline([_clamp(p, lim) for p in base], BASE_COLOR, 2.0)
    for run in _segments(solution.samples, lambda s: (s.xhat.re, s.xhat.im)):
        canvas.polyline([_clamp(p, lim) for p in run], XHAT_COLOR, 1.5)
    for t in solution.lightlike_crossings:
        s = next(s for s in solution.samples if s.t == t)
        canvas.dot(s.x.re, s.x.im)
        if not s.at_infinity:
            canvas.dot(s.xhat.re, s.xhat.im)
    return canvas.render(title)


def penrose_svg(solution, title: str = "penrose") -> str:
    """Penrose-diamond view with the boundary, its labels and both images."""
    pi = math.pi
    canvas = _Canvas(-pi - 0.35, pi + 0.35, -pi - 0.35, pi + 0.35)
    canvas.polyline([(pi, 0.0), (0.0, pi), (-pi, 0.0), (0.0, -pi), (pi, 0.0)], "#000000", 1.2)
    canvas.text(pi + 0.05, 0.05, "i0", "start")
    canvas.text(-pi - 0.05, 0.05, "i0", "end")
    canvas.text(0.0, pi + 0.12, "i+")
    canvas.text(0.0, -pi - 0.3, "i-")
    canvas.text(0.5 * pi + 0.25, 0.5 * pi + 0.1, "scri+", "start")
    canvas.text(-0.5 * pi - 0.25, 0.5 * pi + 0.1, "scri+", "end")
    canvas.text(0.5 * pi + 0.25, -0.5 * pi - 0.25, "scri-", "start")
    canvas.text(-0.5 * pi - 0.25, -0.5 * pi - 0.25, "scri-", "end")

    def img_x(s):
        p = conformal.penrose_map_null(*to_null(s.x))
        return (p.psi, p.zeta)

    def img_xhat(s):
        p = conformal.penrose_map_null(*s.xhat_null)
        return (p.psi, p.zeta)

    canvas.polyline([img_x(s) for s in solution.samples], BASE_COLOR, 2.0)
    samples = list(solution.samples)
    for run in _segments(samples, img_xhat):
        canvas.polyline(run, XHAT_COLOR, 1.5)
    for ev in solution.events:
        p = ev.infinity.penrose_point()
        canvas.dot(p.psi, p.zeta, XHAT_COLOR, 2.5)
    for t in solution.lightlike_crossings:
        s = next(s for s in samples if s.t == t)
        canvas.dot(*img_x(s))
        if not s.at_infinity:
            canvas.dot(*img_xhat(s))
    return canvas.render(title)


def write_svg(text: str, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
