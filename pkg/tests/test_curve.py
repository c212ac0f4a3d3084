import math

import numpy as np
import pytest

from lorentz_darboux.curve import (
    CurveKind,
    IdenticallyLightlike,
    ParamCurve,
    arc_length_polarization,
    causal_type_at,
    constant_polarization,
    euclidean_circle,
    lightlike_line,
    lightlike_points,
    line,
    make_catalog_curve,
    sampled_curve,
    spacelike_circle,
    timelike_circle,
)
from lorentz_darboux.errors import InvalidParamsError
from lorentz_darboux.splitc import CausalClass, SplitComplex, norm2


def test_catalog_curves_match_their_derivatives():
    h = 1e-6
    for c in (line(d=(2.0, 1.0)), euclidean_circle(c=(1.0, 2.0), r=2.0),
              timelike_circle(r=1.5), spacelike_circle(c=(1.0, -1.0), r=0.5)):
        for t in (-0.9, -0.2, 0.4, 1.1):
            a, b = c(t + h), c(t - h)
            d = c.derivative(t)
            assert math.isclose((a.re - b.re) / (2 * h), d.re, rel_tol=1e-6, abs_tol=1e-6)
            assert math.isclose((a.im - b.im) / (2 * h), d.im, rel_tol=1e-6, abs_tol=1e-6)


def test_circles_have_constant_minkowski_radius():
    tc, sc = timelike_circle(c=(1.0, 2.0), r=2.0), spacelike_circle(r=0.5)
    for t in np.linspace(-1.4, 1.4, 15):
        assert math.isclose(norm2(tc(t) - SplitComplex(1.0, 2.0)), 4.0, rel_tol=1e-12)
        assert math.isclose(norm2(sc(t)), -0.25, rel_tol=1e-12)


def test_causal_types():
    assert causal_type_at(line(), 0.0) is CausalClass.SPACELIKE
    assert causal_type_at(timelike_circle(), 0.3) is CausalClass.TIMELIKE
    assert causal_type_at(spacelike_circle(), 0.3) is CausalClass.SPACELIKE
    assert causal_type_at(euclidean_circle(), math.pi / 4) is CausalClass.LIGHTLIKE


def test_polarizations():
    c = euclidean_circle()
    w = arc_length_polarization(c)
    assert math.isclose(w(0.0), -1.0)
    assert w.m(math.pi / 4) == pytest.approx(1.0 / w(math.pi / 4))
    assert constant_polarization(2.0)(5.0) == 0.5
    with pytest.raises(InvalidParamsError):
        constant_polarization(0.0)


def test_zero_reciprocal_gives_infinite_polarization():
    c = lightlike_line()
    assert arc_length_polarization(c).m(0.0) == math.inf


def test_euclidean_circle_lightlike_points():
    roots = lightlike_points(euclidean_circle(), (0.0, 2 * math.pi))
    expected = [math.pi / 4 + k * math.pi / 2 for k in range(4)]
    assert len(roots) == 4
    assert max(abs(a - b) for a, b in zip(roots, expected)) < 1e-12


def test_tangential_lightlike_point():
    # |x'|^2 = cos^2 t touches zero at pi/2 without changing sign
    c = ParamCurve(lambda t: SplitComplex(t, -math.cos(t)),
                   lambda t: SplitComplex(1.0, math.sin(t)), (0.0, 3.0))
    roots = lightlike_points(c)
    assert len(roots) == 1
    assert abs(roots[0] - math.pi / 2) < 1e-6


def test_identically_lightlike_curve():
    assert isinstance(lightlike_points(lightlike_line(), (0.0, 1.0)), IdenticallyLightlike)


def test_spacelike_line_has_no_lightlike_points():
    assert lightlike_points(line(), (-5.0, 5.0)) == []


def test_sampled_curve_reproduces_data():
    t = np.linspace(0.0, 2.0, 21)
    pts = np.c_[t, 0.3 * t ** 2]
    ders = np.c_[np.ones_like(t), 0.6 * t]
    c = sampled_curve(t, pts, ders)
    assert c.kind is CurveKind.SAMPLED
    assert c(1.0) == SplitComplex(1.0, 0.3)
    # cubic Hermite is exact for this quadratic
    assert math.isclose(c(0.55).im, 0.3 * 0.55 ** 2, rel_tol=1e-12)
    assert math.isclose(c.derivative(0.55).im, 0.6 * 0.55, rel_tol=1e-12)


def test_invalid_parameters():
    with pytest.raises(InvalidParamsError):
        line(d=(0.0, 0.0))
    with pytest.raises(InvalidParamsError):
        euclidean_circle(r=-1.0)
    with pytest.raises(InvalidParamsError):
        sampled_curve([0.0, 0.0], [[0, 0], [1, 1]], [[1, 0], [1, 0]])
    with pytest.raises(InvalidParamsError):
        make_catalog_curve("line", q=(1, 2))
    with pytest.raises(InvalidParamsError):
        make_catalog_curve("custom")


def test_catalog_factory():
    c = make_catalog_curve("euclidean_circle", r=2.0)
    assert c.kind is CurveKind.EUCLIDEAN_CIRCLE
    assert c(0.0) == SplitComplex(2.0, 0.0)
