"""Split-complex numbers a + jb with j**2 = 1.

The ring is identified with the Minkowski plane R^{1,1} (signature +,-).
Multiplication is componentwise in the null coordinates u = a + b,
v = a - b, which is what the rest of the package leans on.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import LightlikePointError, ZeroDivisorError

# relative threshold for |z|^2 == 0, scaled by the Euclidean norm squared
EPS_LIGHT = 1e-10


@dataclass(frozen=True, slots=True)
class SplitComplex:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"non-finite split-complex number ({self.re}, {self.im})")

    @classmethod
    def of(cls, value) -> "SplitComplex":
        """Coerce a SplitComplex, a real or a 2-sequence."""
        if isinstance(value, SplitComplex):
            return value
        if isinstance(value, (int, float)):
            return cls(float(value), 0.0)
        a, b = value
        return cls(float(a), float(b))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return SplitComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return SplitComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return SplitComplex(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return SplitComplex(self.re * other, self.im * other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return SplitComplex(self.re / other, self.im / other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __iter__(self):
        yield self.re
        yield self.im

    def __repr__(self):
        sign = "+" if self.im >= 0 or math.isnan(self.im) else "-"
        return f"({self.re!r}{sign}{abs(self.im)!r}j)"

    def conj(self) -> "SplitComplex":
        return SplitComplex(self.re, -self.im)

    def norm2(self) -> float:
        return norm2(self)

    def to_null(self) -> tuple[float, float]:
        return to_null(self)

    def euclid2(self) -> float:
        return self.re * self.re + self.im * self.im


def _coerce(value):
    if isinstance(value, SplitComplex):
        return value
    if isinstance(value, (int, float)):
        return SplitComplex(float(value), 0.0)
    return NotImplemented


ZERO = SplitComplex(0.0, 0.0)
ONE = SplitComplex(1.0, 0.0)
J = SplitComplex(0.0, 1.0)


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"

    def __str__(self):
        return self.value


def mul(z: SplitComplex, w: SplitComplex) -> SplitComplex:
    return SplitComplex(z.re * w.re + z.im * w.im, z.re * w.im + z.im * w.re)


def minkowski_inner(x: SplitComplex, y: SplitComplex) -> float:
    return x.re * y.re - x.im * y.im


def norm2(z: SplitComplex) -> float:
    """Squared Minkowski norm z1**2 - z2**2, evaluated as the product u*v."""
    return (z.re + z.im) * (z.re - z.im)


def to_null(z: SplitComplex) -> tuple[float, float]:
    return z.re + z.im, z.re - z.im


def from_null(u: float, v: float) -> SplitComplex:
    return SplitComplex(0.5 * (u + v), 0.5 * (u - v))


def is_lightlike_value(n2: float, euclid2: float, eps: float = EPS_LIGHT) -> bool:
    return abs(n2) <= eps * euclid2


def classify(z: SplitComplex, eps: float = EPS_LIGHT) -> CausalClass:
    if z.re == 0.0 and z.im == 0.0:
        return CausalClass.ZERO
    return classify_null(*to_null(z), eps=eps)


def classify_null(u: float, v: float, eps: float = EPS_LIGHT) -> CausalClass:
    """Causal class from null coordinates (u*v carries the sign)."""
    if u == 0.0 and v == 0.0:
        return CausalClass.ZERO
    n2 = u * v
    # Euclidean norm squared of the Cartesian vector is (u^2 + v^2) / 2
    if abs(n2) <= eps * 0.5 * (u * u + v * v):
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if n2 > 0 else CausalClass.TIMELIKE


def inverse(z: SplitComplex) -> SplitComplex:
    n2 = norm2(z)
    if n2 == 0.0 or is_lightlike_value(n2, z.euclid2(), eps=1e-15):
        raise ZeroDivisorError(f"{z!r} is a zero divisor")
    return SplitComplex(z.re / n2, -z.im / n2)


def inversion_sigma(x: SplitComplex, center: SplitComplex = ZERO) -> SplitComplex:
    """Minkowski inversion c + (x - c)/|x - c|^2 (no conjugation)."""
    d = x - center
    n2 = norm2(d)
    if n2 == 0.0 or is_lightlike_value(n2, d.euclid2(), eps=1e-15):
        raise LightlikePointError(f"{x!r} lies on the light cone of {center!r}")
    return SplitComplex(center.re + d.re / n2, center.im + d.im / n2)
