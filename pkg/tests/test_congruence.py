import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lorentz_darboux.congruence import (
    CongruenceKind,
    check_sample,
    congruence_at,
    congruence_of_sample,
    incidence_tangency_check,
    normal_vector,
)
from lorentz_darboux.curve import PolarizedCurve, arc_length_polarization, line, spacelike_circle, timelike_circle
from lorentz_darboux.darboux import DarbouxParams, integrate
from lorentz_darboux.errors import CoincidentPointsError, NotACircleError, ZeroVelocityError
from lorentz_darboux.splitc import SplitComplex, from_null, minkowski_inner, norm2

reals = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)

X0, E1, E2 = SplitComplex(0.0, 0.0), SplitComplex(1.0, 0.0), SplitComplex(0.0, 1.0)


def test_normal_of_unit_tangent():
    assert normal_vector(E1) == E2
    with pytest.raises(ZeroVelocityError):
        normal_vector(X0)


@given(reals, reals)
def test_normal_is_orthogonal_with_opposite_norm(a, b):
    if a == 0.0 and b == 0.0:
        return
    xd = SplitComplex(a, b)
    n = normal_vector(xd)
    assert minkowski_inner(n, xd) == 0.0
    assert norm2(n) == -norm2(xd)


def test_hand_example():
    cc = congruence_at(X0, E1, E2)
    assert cc.kind is CongruenceKind.SPACELIKE_CIRCLE
    assert cc.radius_xi == pytest.approx(0.5, abs=1e-12)
    assert cc.center.re == pytest.approx(0.0, abs=1e-12)
    assert cc.center.im == pytest.approx(0.5, abs=1e-12)
    assert norm2(E2 - cc.center) == pytest.approx(-0.25, abs=1e-12)


def test_line_and_degenerate_cases():
    cc = congruence_at(X0, E1, SplitComplex(2.0, 0.0))
    assert cc.kind is CongruenceKind.LINE
    assert cc.line_direction == E1
    cc = congruence_at(X0, E1, SplitComplex(1.0, 1.0))
    assert cc.kind is CongruenceKind.LIGHTLIKE_DEGENERATE
    assert cc.radius_xi == 0.0
    with pytest.raises(NotACircleError):
        incidence_tangency_check(cc, X0, E1, SplitComplex(1.0, 1.0), E1)
    with pytest.raises(CoincidentPointsError):
        congruence_at(E1, E1, E1)


def test_timelike_tangent_gives_timelike_circle():
    cc = congruence_at(X0, E2, E1)
    assert cc.kind is CongruenceKind.TIMELIKE_CIRCLE
    assert norm2(X0 - cc.center) == pytest.approx(cc.radius ** 2)
    assert norm2(E1 - cc.center) == pytest.approx(cc.radius ** 2)


@given(reals, reals, st.floats(0.1, 10.0), st.floats(-0.9, 0.9), reals, reals)
def test_both_points_on_the_circle_for_any_speed(x1, x2, speed, slope, h1, h2):
    x = SplitComplex(x1, x2)
    xd = SplitComplex(speed, speed * slope)
    xh = SplitComplex(h1, h2)
    d = xh - x
    if d.euclid2() < 1e-4:
        return
    cc = congruence_at(x, xd, xh)
    if not cc.kind.is_circle:
        return
    scale = (x - cc.center).euclid2() + (xh - cc.center).euclid2()
    assert abs(norm2(x - cc.center) - norm2(xh - cc.center)) <= 1e-9 * scale
    assert abs(minkowski_inner(x - cc.center, xd)) <= 1e-9 * math.sqrt(scale * xd.euclid2())


def _solutions():
    out = []
    for c, t0, t1 in ((line(), 0.0, 2.0), (spacelike_circle(), -1.0, 1.0), (timelike_circle(), -1.0, 1.0)):
        pc = PolarizedCurve(c, arc_length_polarization(c))
        out.append(integrate(pc, DarbouxParams.from_offsets(pc, -1.0, 0.7, -0.4, t0), t1))
    return out


def test_residuals_vanish_on_darboux_samples():
    for sol in _solutions():
        for s in sol.finite_samples():
            if congruence_of_sample(s).kind.is_circle:
                assert check_sample(s).relative < 1e-9


def test_line_scenario_at_t0():
    c = line()
    pc = PolarizedCurve(c, arc_length_polarization(c))
    sol = integrate(pc, DarbouxParams(-1.0, E2, 0.0), 0.5)
    rep = check_sample(sol.samples[0])
    assert rep.max_abs() < 1e-8


def test_perturbed_velocity_is_detected():
    c = line()
    pc = PolarizedCurve(c, arc_length_polarization(c))
    sol = integrate(pc, DarbouxParams(-1.0, E2, 0.0), 0.5)
    s = sol.samples[0]
    cc = congruence_of_sample(s)
    xh = from_null(*s.xhat_null)
    bad = s.xhatdot + SplitComplex(0.0, 1e-3)
    rep = incidence_tangency_check(cc, s.x, s.xdot, xh, bad)
    assert 1e-4 < abs(rep.tangency_xhat) < 1e-2


def test_common_radius_from_either_curve():
    for sol in _solutions():
        for s in sol.finite_samples():
            cc = congruence_of_sample(s)
            if not cc.kind.is_circle:
                continue
            xh = from_null(*s.xhat_null)
            back = congruence_at(xh, s.xhatdot, s.x, s.offset_norm2)
            assert back.kind.is_circle
            assert back.radius == pytest.approx(cc.radius, rel=1e-7)
            assert back.center.re == pytest.approx(cc.center.re, rel=1e-7, abs=1e-7)
            assert back.center.im == pytest.approx(cc.center.im, rel=1e-7, abs=1e-7)
