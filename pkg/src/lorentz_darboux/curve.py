"""Parametric curves in the Minkowski plane and their polarizations.

A polarization dt^2/m is stored through its reciprocal w = 1/m. At
lightlike points the arc-length polarization has m = inf, i.e. w = 0,
so keeping w is what lets type-changing curves be handled at all.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq, minimize_scalar

from .errors import InvalidParamsError
from .splitc import EPS_LIGHT, CausalClass, SplitComplex, classify, norm2

HALF_PI = 0.5 * math.pi
SEC_MARGIN = 1e-10


class CurveKind(enum.Enum):
    LINE = "line"
    EUCLIDEAN_CIRCLE = "euclidean_circle"
    TIMELIKE_CIRCLE = "timelike_circle"
    SPACELIKE_CIRCLE = "spacelike_circle"
    LIGHTLIKE_LINE = "lightlike_line"
    SAMPLED = "sampled"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ParamCurve:
    evaluator: Callable[[float], SplitComplex]
    derivative: Callable[[float], SplitComplex]
    domain: tuple[float, float]
    kind: CurveKind = CurveKind.CUSTOM
    params: dict = field(default_factory=dict, compare=False)

    def __call__(self, t: float) -> SplitComplex:
        return self.evaluator(t)

    def contains(self, t: float) -> bool:
        a, b = self.domain
        return a <= t <= b

    def speed2(self, t: float) -> float:
        return norm2(self.derivative(t))


class PolarizationKind(enum.Enum):
    CONSTANT = "constant"
    ARC_LENGTH = "arclength"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Polarization:
    reciprocal: Callable[[float], float]
    kind: PolarizationKind = PolarizationKind.CUSTOM

    def __call__(self, t: float) -> float:
        return self.reciprocal(t)

    def m(self, t: float) -> float:
        """The polarization itself; inf where w vanishes."""
        w = self.reciprocal(t)
        return math.inf if w == 0.0 else 1.0 / w


@dataclass(frozen=True)
class PolarizedCurve:
    curve: ParamCurve
    polarization: Polarization


def constant_polarization(m: float) -> Polarization:
    if not math.isfinite(m) or m == 0.0:
        raise InvalidParamsError(f"constant polarization needs finite nonzero m, got {m}")
    w = 1.0 / m
    return Polarization(lambda t: w, PolarizationKind.CONSTANT)


def arc_length_polarization(curve: ParamCurve) -> Polarization:
    deriv = curve.derivative
    return Polarization(lambda t: norm2(deriv(t)), PolarizationKind.ARC_LENGTH)


def causal_type_at(curve: ParamCurve, t: float, eps: float = EPS_LIGHT) -> CausalClass:
    return classify(curve.derivative(t), eps=eps)


# -- catalog -------------------------------------------------------------------

def _finite(**params):
    for name, value in params.items():
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise InvalidParamsError(f"{name} must be a finite real, got {value!r}")


def _radius(r):
    _finite(r=r)
    if r <= 0:
        raise InvalidParamsError(f"radius must be positive, got {r}")


def line(p=(0.0, 0.0), d=(1.0, 0.0), domain=(-math.inf, math.inf)) -> ParamCurve:
    p1, p2 = p
    d1, d2 = d
    _finite(p1=p1, p2=p2, d1=d1, d2=d2)
    if d1 == 0.0 and d2 == 0.0:
        raise InvalidParamsError("line direction must be nonzero")
    vel = SplitComplex(float(d1), float(d2))
    return ParamCurve(lambda t: SplitComplex(p1 + t * d1, p2 + t * d2),
                      lambda t: vel, tuple(domain), CurveKind.LINE,
                      {"p": (p1, p2), "d": (d1, d2)})


def lightlike_line(c=(0.0, 0.0), domain=(-math.inf, math.inf)) -> ParamCurve:
    c1, c2 = c
    _finite(c1=c1, c2=c2)
    vel = SplitComplex(1.0, 1.0)
    return ParamCurve(lambda t: SplitComplex(t + c1, t + c2), lambda t: vel,
                      tuple(domain), CurveKind.LIGHTLIKE_LINE, {"c": (c1, c2)})


def euclidean_circle(c=(0.0, 0.0), r=1.0, domain=(-math.inf, math.inf)) -> ParamCurve:
    c1, c2 = c
    _finite(c1=c1, c2=c2)
    _radius(r)
    return ParamCurve(
        lambda t: SplitComplex(c1 + r * math.cos(t), c2 + r * math.sin(t)),
        lambda t: SplitComplex(-r * math.sin(t), r * math.cos(t)),
        tuple(domain), CurveKind.EUCLIDEAN_CIRCLE, {"c": (c1, c2), "r": r})


def timelike_circle(c=(0.0, 0.0), r=1.0, domain=None) -> ParamCurve:
    """Branch t -> (r sec t + c1, r tan t + c2) on (-pi/2, pi/2)."""
    c1, c2 = c
    _finite(c1=c1, c2=c2)
    _radius(r)
    if domain is None:
        domain = (-HALF_PI + SEC_MARGIN, HALF_PI - SEC_MARGIN)

    def x(t):
        sec = 1.0 / math.cos(t)
        return SplitComplex(r * sec + c1, r * math.tan(t) + c2)

    def dx(t):
        sec = 1.0 / math.cos(t)
        return SplitComplex(r * sec * math.tan(t), r * sec * sec)

    return ParamCurve(x, dx, tuple(domain), CurveKind.TIMELIKE_CIRCLE,
                      {"c": (c1, c2), "r": r})


def spacelike_circle(c=(0.0, 0.0), r=1.0, domain=None) -> ParamCurve:
    """Branch t -> (r tan t + c1, r sec t + c2) on (-pi/2, pi/2)."""
    c1, c2 = c
    _finite(c1=c1, c2=c2)
    _radius(r)
    if domain is None:
        domain = (-HALF_PI + SEC_MARGIN, HALF_PI - SEC_MARGIN)

    def x(t):
        sec = 1.0 / math.cos(t)
        return SplitComplex(r * math.tan(t) + c1, r * sec + c2)

    def dx(t):
        sec = 1.0 / math.cos(t)
        return SplitComplex(r * sec * sec, r * sec * math.tan(t))

    return ParamCurve(x, dx, tuple(domain), CurveKind.SPACELIKE_CIRCLE,
                      {"c": (c1, c2), "r": r})


def sampled_curve(t, points, derivatives) -> ParamCurve:
    """C^1 curve through samples, cubic Hermite between them."""
    t = np.asarray(t, dtype=float)
    pts = np.asarray(points, dtype=float)
    ders = np.asarray(derivatives, dtype=float)
    if t.ndim != 1 or len(t) < 2 or pts.shape != (len(t), 2) or ders.shape != (len(t), 2):
        raise InvalidParamsError("sampled curve needs t (N,), points (N,2), derivatives (N,2)")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(pts)) and np.all(np.isfinite(ders))):
        raise InvalidParamsError("sampled curve data must be finite")
    if np.any(np.diff(t) <= 0):
        raise InvalidParamsError("sample parameters must be strictly increasing")
    spline = CubicHermiteSpline(t, pts, ders, axis=0)
    dspline = spline.derivative()

    def x(s):
        a = spline(s)
        return SplitComplex(float(a[0]), float(a[1]))

    def dx(s):
        a = dspline(s)
        return SplitComplex(float(a[0]), float(a[1]))

    return ParamCurve(x, dx, (float(t[0]), float(t[-1])), CurveKind.SAMPLED,
                      {"n": len(t)})


_CATALOG = {
    CurveKind.LINE: line,
    CurveKind.LIGHTLIKE_LINE: lightlike_line,
    CurveKind.EUCLIDEAN_CIRCLE: euclidean_circle,
    CurveKind.TIMELIKE_CIRCLE: timelike_circle,
    CurveKind.SPACELIKE_CIRCLE: spacelike_circle,
    CurveKind.SAMPLED: sampled_curve,
}


def make_catalog_curve(kind, **params) -> ParamCurve:
    kind = CurveKind(kind)
    try:
        factory = _CATALOG[kind]
    except KeyError:
        raise InvalidParamsError(f"{kind.value} is not a catalog curve") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise InvalidParamsError(str(exc)) from None


# -- lightlike points ----------------------------------------------------------

@dataclass(frozen=True)
class IdenticallyLightlike:
    """Returned instead of a root list when |x'|^2 vanishes on the whole interval."""
    interval: tuple[float, float]


def lightlike_points(curve: ParamCurve, interval=None, n: int = 2048,
                     xtol: float = 1e-13, eps: float = EPS_LIGHT):
    """Parameters in ``interval`` where x'(t) is lightlike.

    Sign changes of |x'|^2 on an n-point grid are refined by Brent's
    method; zeros that touch without changing sign are caught as dips of
    the relative magnitude below ``eps`` and refined by bounded
    minimization.
    """
    a, b = interval if interval is not None else curve.domain
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise InvalidParamsError(f"bad interval ({a}, {b})")
    ts = np.linspace(a, b, n)
    vel = [curve.derivative(float(t)) for t in ts]
    w = np.array([norm2(d) for d in vel])
    e2 = np.array([d.euclid2() for d in vel])
    rel = np.abs(w) / np.maximum(e2, 1e-300)

    if np.all(rel <= eps):
        return IdenticallyLightlike((a, b))

    def f(t):
        return curve.speed2(t)

    roots = []
    for i in range(n - 1):
        if w[i] == 0.0:
            roots.append(float(ts[i]))
        elif w[i] * w[i + 1] < 0.0:
            roots.append(brentq(f, ts[i], ts[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    if w[-1] == 0.0:
        roots.append(float(ts[-1]))

    # tangential zeros: local minima of the relative magnitude
    for i in range(1, n - 1):
        if w[i - 1] * w[i] <= 0.0 or w[i] * w[i + 1] <= 0.0:
            continue  # already bracketed by a sign change
        if rel[i] <= rel[i - 1] and rel[i] <= rel[i + 1] and rel[i] < 1e3 * eps:
            res = minimize_scalar(lambda t: abs(f(t)) / curve.derivative(t).euclid2(),
                                  bounds=(ts[i - 1], ts[i + 1]), method="bounded",
                                  options={"xatol": xtol})
            if res.fun <= eps:
                roots.append(float(res.x))

    roots.sort()
    merged = []
    for r in roots:
        if merged and abs(r - merged[-1]) < 1e-9:
            continue
        merged.append(r)
    return merged
