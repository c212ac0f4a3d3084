"""Penrose compactification of the Minkowski plane.

A point with null coordinates (u, v) is sent to
psi = arctan u + arctan v, zeta = arctan u - arctan v, which lands in the
open diamond |psi +- zeta| < pi. The boundary edges are null infinity,
the left/right corners spatial infinity, the top/bottom corners timelike
infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import BoundaryPointError, NotAtInfinityError
from .splitc import SplitComplex, from_null, to_null

BOUNDARY_MARGIN = 1e-9
U_BIG = 1e8
TREND_WINDOW = 5

Edge = Literal["upper_right", "upper_left", "lower_left", "lower_right"]

# Euclidean direction of each boundary edge in the (psi, zeta) plane
EDGE_DIRECTIONS: dict[str, tuple[float, float]] = {
    "upper_right": (1.0, -1.0),
    "lower_left": (1.0, -1.0),
    "upper_left": (1.0, 1.0),
    "lower_right": (1.0, 1.0),
}


@dataclass(frozen=True)
class PenrosePoint:
    psi: float
    zeta: float

    def __iter__(self):
        yield self.psi
        yield self.zeta


@dataclass(frozen=True)
class SpatialI0:
    side: int  # +1 right corner, -1 left corner

    kind = "spatial"

    def penrose_point(self) -> PenrosePoint:
        return PenrosePoint(self.side * math.pi, 0.0)

    def label(self) -> str:
        return f"spatial:{'+' if self.side > 0 else '-'}"


@dataclass(frozen=True)
class TimelikeI:
    side: int  # +1 future (top), -1 past (bottom)

    kind = "timelike"

    def penrose_point(self) -> PenrosePoint:
        return PenrosePoint(0.0, self.side * math.pi)

    def label(self) -> str:
        return f"timelike:{'+' if self.side > 0 else '-'}"


@dataclass(frozen=True)
class NullInfinity:
    edge: Edge
    offset: float  # limit of the null coordinate that stays finite

    kind = "null"

    @property
    def future(self) -> bool:
        return self.edge in ("upper_right", "upper_left")

    def penrose_point(self) -> PenrosePoint:
        a = math.atan(self.offset)
        half = 0.5 * math.pi
        if self.edge == "upper_right":     # u -> +inf
            return PenrosePoint(half + a, half - a)
        if self.edge == "lower_left":      # u -> -inf
            return PenrosePoint(-half + a, -half - a)
        if self.edge == "lower_right":     # v -> +inf
            return PenrosePoint(a + half, a - half)
        return PenrosePoint(a - half, a + half)  # upper_left, v -> -inf

    def label(self) -> str:
        return f"null:{self.edge}"


InfinityClass = SpatialI0 | TimelikeI | NullInfinity


def penrose_map(x: SplitComplex) -> PenrosePoint:
    return penrose_map_null(*to_null(x))


def penrose_map_null(u: float, v: float) -> PenrosePoint:
    au, av = math.atan(u), math.atan(v)
    return PenrosePoint(au + av, au - av)


def _check_interior(p: PenrosePoint, margin: float) -> tuple[float, float]:
    s, d = p.psi + p.zeta, p.psi - p.zeta
    if abs(s) >= math.pi - margin or abs(d) >= math.pi - margin:
        raise BoundaryPointError(f"({p.psi}, {p.zeta}) is on the Penrose boundary")
    return s, d


def penrose_unmap(p: PenrosePoint, margin: float = BOUNDARY_MARGIN) -> SplitComplex:
    s, d = _check_interior(p, margin)
    return from_null(math.tan(0.5 * s), math.tan(0.5 * d))


def conformal_factor(p: PenrosePoint, margin: float = BOUNDARY_MARGIN) -> float:
    """Omega^2 with du dv = Omega^2 (dpsi^2 - dzeta^2)."""
    s, d = _check_interior(p, margin)
    c1, c2 = math.cos(0.5 * s), math.cos(0.5 * d)
    return 1.0 / (4.0 * c1 * c1 * c2 * c2)


def penrose_velocity(x: SplitComplex, xdot: SplitComplex) -> tuple[float, float]:
    u, v = to_null(x)
    du, dv = to_null(xdot)
    return penrose_velocity_null(u, v, du, dv)


def penrose_velocity_null(u, v, du, dv) -> tuple[float, float]:
    a = du / (1.0 + u * u)
    b = dv / (1.0 + v * v)
    return a + b, a - b


def penrose_norm2(dpsi: float, dzeta: float) -> float:
    """Signed Penrose metric dpsi^2 - dzeta^2, computed as a product."""
    return (dpsi + dzeta) * (dpsi - dzeta)


def lightlike_indicator(x: SplitComplex, xdot: SplitComplex) -> float:
    """4 (f'^2 - g'^2) / Theta for x = (f, g).

    This is the signed squared speed of the Penrose image of the inverted
    curve, so it tends to 0 exactly when the direction at infinity is
    lightlike.
    """
    u, v = to_null(x)
    du, dv = to_null(xdot)
    return lightlike_indicator_null(u, v, du, dv)


def lightlike_indicator_null(u, v, du, dv) -> float:
    return 4.0 * du * dv / ((1.0 + u * u) * (1.0 + v * v))


# -- infinity taxonomy -------------------------------------------------------

def divergence_descriptor(values, u_big: float = U_BIG, window: int = TREND_WINDOW) -> float:
    """Collapse a sampled coordinate history to a limit value or +-inf.

    A coordinate counts as diverging when its last value exceeds ``u_big``
    in magnitude and the sign is the same over the last ``window`` samples.
    """
    vals = list(values)
    if not vals:
        raise ValueError("empty trajectory")
    last = vals[-1]
    tail = vals[-window:]
    if abs(last) > u_big and all((x > 0) == (last > 0) and x != 0 for x in tail):
        return math.inf if last > 0 else -math.inf
    return float(last)


def classify_infinity(u_trend: float, v_trend: float) -> InfinityClass:
    u_inf, v_inf = math.isinf(u_trend), math.isinf(v_trend)
    if not (u_inf or v_inf):
        raise NotAtInfinityError(f"u -> {u_trend}, v -> {v_trend} are both finite")
    if u_inf and v_inf:
        if (u_trend > 0) == (v_trend > 0):
            return SpatialI0(1 if u_trend > 0 else -1)
        return TimelikeI(1 if u_trend > 0 else -1)
    if u_inf:
        return NullInfinity("upper_right" if u_trend > 0 else "lower_left", float(v_trend))
    return NullInfinity("lower_right" if v_trend > 0 else "upper_left", float(u_trend))


def classify_trajectory(points) -> InfinityClass:
    """Infinity class of a sampled trajectory (sequence of SplitComplex)."""
    nulls = [to_null(SplitComplex.of(p)) for p in points]
    return classify_infinity(divergence_descriptor(n[0] for n in nulls),
                             divergence_descriptor(n[1] for n in nulls))


def boundary_angle_deg(dpsi: float, dzeta: float, edge: str) -> float:
    """Euclidean angle in [0, 90] between a Penrose tangent and an edge."""
    ex, ey = EDGE_DIRECTIONS[edge]
    if dpsi == 0.0 and dzeta == 0.0:
        raise ValueError("zero tangent")
    dot = abs(dpsi * ex + dzeta * ey)
    cross = abs(dpsi * ey - dzeta * ex)
    return math.degrees(math.atan2(cross, dot))
