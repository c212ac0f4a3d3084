"""The common circle congruence of a Darboux pair.

At each parameter there is one Minkowski circle tangent to x at x(t) and
passing through xh(t) (and tangent to xh there). With the normal
n = (x2', x1') its center is c = x + xi n, where

    xi = |xh - x|^2 / (2 <xh - x, n>).

The center is placed along the unnormalized normal, which is what makes
x and xh equidistant from c for any parametrization speed; the geometric
radius is |xi| sqrt(| |x'|^2 |).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import CoincidentPointsError, NotACircleError, ZeroVelocityError
from .splitc import SplitComplex, from_null, minkowski_inner, norm2, to_null

LINE_EPS = 1e-9
DEGENERATE_EPS = 1e-9


class CongruenceKind(enum.Enum):
    TIMELIKE_CIRCLE = "timelike_circle"
    SPACELIKE_CIRCLE = "spacelike_circle"
    LIGHTLIKE_DEGENERATE = "lightlike_degenerate"
    LINE = "line"

    @property
    def is_circle(self) -> bool:
        return self in (CongruenceKind.TIMELIKE_CIRCLE, CongruenceKind.SPACELIKE_CIRCLE)


@dataclass(frozen=True)
class CircleCongruence:
    kind: CongruenceKind
    radius_xi: float
    center: SplitComplex | None = None
    line_direction: SplitComplex | None = None
    radius: float = 0.0  # geometric radius, |xi| sqrt(| |x'|^2 |)

    @property
    def sigma(self) -> int:
        """+1 when |y - c|^2 = -r^2 on the circle, -1 when it is +r^2."""
        if self.kind is CongruenceKind.SPACELIKE_CIRCLE:
            return 1
        if self.kind is CongruenceKind.TIMELIKE_CIRCLE:
            return -1
        raise NotACircleError(f"{self.kind.value} has no circle equation")


def normal_vector(xdot: SplitComplex) -> SplitComplex:
    """n = (x2', x1'); <n, x'> = 0 and |n|^2 = -|x'|^2."""
    if xdot.re == 0.0 and xdot.im == 0.0:
        raise ZeroVelocityError("normal of a zero velocity")
    return SplitComplex(xdot.im, xdot.re)


def _from_null_offsets(x, xdot, p, q, offset_norm2=None) -> CircleCongruence:
    """Congruence from null offsets (p, q) = xh - x; the core of congruence_at."""
    if p == 0.0 and q == 0.0:
        raise CoincidentPointsError("xh coincides with x")
    n = normal_vector(xdot)
    du, dv = to_null(xdot)
    d2 = p * q if offset_norm2 is None else offset_norm2
    # <d, n> in null coordinates; n has null coordinates (du, -dv)
    dn = 0.5 * (q * du - p * dv)
    d_e = math.sqrt(0.5 * (p * p + q * q))
    n_e = math.sqrt(n.euclid2())
    if abs(dn) < LINE_EPS * d_e * n_e:
        return CircleCongruence(CongruenceKind.LINE, math.inf, line_direction=xdot)
    if abs(d2) < DEGENERATE_EPS * d_e * d_e:
        return CircleCongruence(CongruenceKind.LIGHTLIKE_DEGENERATE, 0.0)
    xi = d2 / (2.0 * dn)
    center = SplitComplex(x.re + xi * n.re, x.im + xi * n.im)
    # x - c = -xi n, whose class is opposite to that of x'
    s2 = norm2(xdot)
    kind = CongruenceKind.SPACELIKE_CIRCLE if s2 > 0 else CongruenceKind.TIMELIKE_CIRCLE
    return CircleCongruence(kind, xi, center, radius=abs(xi) * math.sqrt(abs(s2)))


def congruence_at(x: SplitComplex, xdot: SplitComplex, xhat: SplitComplex,
                  offset_norm2: float | None = None) -> CircleCongruence:
    """The circle through xhat tangent to x at x.

    ``offset_norm2`` may carry a more accurate |xh - x|^2 than the one
    formed from the Cartesian difference (e.g. near a blow-up).
    """
    p, q = to_null(xhat - x)
    return _from_null_offsets(x, xdot, p, q, offset_norm2)


def congruence_of_sample(sample) -> CircleCongruence:
    """Congruence at a finite Darboux sample, using its chart-state offsets."""
    if sample.at_infinity:
        raise NotACircleError("sample is at infinity")
    p, q = sample.state.offsets()
    return _from_null_offsets(sample.x, sample.xdot, p, q, sample.offset_norm2)


@dataclass(frozen=True)
class ResidualReport:
    incidence_x: float
    incidence_xhat: float
    tangency_x: float
    tangency_xhat: float
    relative: float  # worst residual against its Euclidean scale

    def max_abs(self) -> float:
        return max(abs(self.incidence_x), abs(self.incidence_xhat),
                   abs(self.tangency_x), abs(self.tangency_xhat))


def incidence_tangency_check(cc: CircleCongruence, x, xdot, xhat, xhatdot) -> ResidualReport:
    """Residuals of the circle equation and tangency at both points.

    The raw residuals are |y - c|^2 + sigma r^2 and <y - c, y'>. The
    relative form divides incidence by the Euclidean |y - c|^2 and
    tangency by |y - c| |y'|, taking the worst of the four.
    """
    if not cc.kind.is_circle:
        raise NotACircleError(f"{cc.kind.value} sample has no circle to check")
    c = cc.center
    r2 = cc.radius * cc.radius
    sig = cc.sigma
    a, b = x - c, xhat - c
    res = (norm2(a) + sig * r2, norm2(b) + sig * r2,
           minkowski_inner(a, xdot), minkowski_inner(b, xhatdot))
    scales = (a.euclid2(), b.euclid2(),
              math.sqrt(a.euclid2() * xdot.euclid2()),
              math.sqrt(b.euclid2() * xhatdot.euclid2()))
    rel = max(abs(r) / s if s > 0 else abs(r) for r, s in zip(res, scales))
    return ResidualReport(*res, relative=rel)


def check_sample(sample) -> ResidualReport:
    """Residual report at a finite Darboux sample."""
    cc = congruence_of_sample(sample)
    xhat = from_null(*sample.xhat_null)
    return incidence_tangency_check(cc, sample.x, sample.xdot, xhat, sample.xhatdot)
