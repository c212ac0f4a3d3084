import dataclasses
import math

import numpy as np
import pytest

from lorentz_darboux import analysis
from lorentz_darboux.analysis import (
    NullTrack,
    check_simultaneous_alp,
    classify_blowup,
    detect_singular_and_degenerate,
    report_summary,
    tangent_at_infinity,
    velocity_identity_residual,
)
from lorentz_darboux.conformal import NullInfinity
from lorentz_darboux.curve import PolarizedCurve, arc_length_polarization, euclidean_circle, line
from lorentz_darboux.darboux import DarbouxParams, Mode, Tolerances, integrate
from lorentz_darboux.errors import InsufficientSamplesError, LightlikeObstructionError
from lorentz_darboux.splitc import SplitComplex


def alp_line(lam, p0, q0, t1=3.0, tol=Tolerances()):
    c = line()
    pc = PolarizedCurve(c, arc_length_polarization(c))
    return integrate(pc, DarbouxParams.from_offsets(pc, lam, p0, q0, 0.0, Mode.ALP_REGULARIZED), t1, tol)


def test_alp_deviation_examples():
    assert check_simultaneous_alp(alp_line(-1.0, 1.0, -1.0)) < 1e-9
    assert check_simultaneous_alp(alp_line(1.0, 2.0, 0.5)) < 1e-9
    # |xh - x|^2 starts at 2, not 1/lambda
    assert check_simultaneous_alp(alp_line(1.0, 2.0, 1.0)) > 0.5


def test_velocity_identity_and_its_negative_control():
    sol = alp_line(-1.0, 1.0, -1.0)
    assert velocity_identity_residual(sol) < 1e-8
    bad = [dataclasses.replace(s, xhatdot_null=(1.01 * s.xhatdot_null[0], 1.01 * s.xhatdot_null[1]))
           if not s.at_infinity else s for s in sol.samples]
    corrupted = dataclasses.replace(sol, samples=tuple(bad))
    assert velocity_identity_residual(corrupted) == pytest.approx(1 - 1 / 1.01 ** 2, rel=1e-6)


def test_circle_lightlike_points_and_degenerate_points():
    c = euclidean_circle()
    pc = PolarizedCurve(c, arc_length_polarization(c))
    sol = integrate(pc, DarbouxParams.from_offsets(pc, 1.0, 0.3, 0.7, 0.0, Mode.ALP_REGULARIZED),
                    2 * math.pi - 1e-9)
    findings = detect_singular_and_degenerate(sol)
    assert not [f for f in findings if f.kind == "singular"]
    light = [f.t for f in findings if f.kind == "lightlike_velocity"]
    for k in range(4):
        assert min(abs(t - (math.pi / 4 + k * math.pi / 2)) for t in light) < 1e-9
    degenerate = [f.t for f in findings if f.kind == "degenerate"]
    assert degenerate == pytest.approx([d.t for d in sol.degenerate_points], abs=1e-9)


def test_no_singular_points_on_spacelike_line():
    for lam in (-4.0, -1.0, -0.25, 0.25, 1.0, 4.0):
        sol = alp_line(lam, 0.7, -0.4, 3.0)
        assert not [f for f in detect_singular_and_degenerate(sol) if f.kind == "singular"]


def test_classify_blowup_on_alp_line():
    sol = alp_line(-1.0, 1.0, -1.0)
    rep = classify_blowup(sol, sol.events[0])
    assert rep.t_star == pytest.approx(math.pi / 4, abs=1e-12)
    assert isinstance(rep.infinity, NullInfinity)
    assert rep.infinity.edge == "upper_left"
    assert rep.infinity.offset == pytest.approx(math.pi / 4, abs=1e-9)
    assert abs(rep.direction_indicator) < 1e-4
    assert rep.indicator_decreasing()
    assert 88.0 <= rep.boundary_angle_deg <= 90.0
    assert rep.radius_decreasing(10)
    assert abs(rep.radius_trend[-1][1]) < 1e-2


def test_classify_blowup_needs_enough_samples():
    # start 4e-3 before the pole so only the approach samples precede it
    t0 = math.pi / 4 - 4e-3
    p0 = math.tan(math.pi / 4 - t0)
    c = line()
    pc = PolarizedCurve(c, arc_length_polarization(c))
    params = DarbouxParams.from_offsets(pc, -1.0, p0, -1.0 / p0, t0, Mode.ALP_REGULARIZED)
    sol = integrate(pc, params, 1.0, Tolerances(approach_samples=4))
    with pytest.raises(InsufficientSamplesError):
        classify_blowup(sol, sol.events[0])


def _approach_track(sol, ev):
    return NullTrack.from_samples(analysis.samples_before(sol, ev))


def _lightlike_line_track(track, u_limit):
    """u = const, v -> -inf at the same rate as 1/(t* - t)."""
    t_star = math.pi / 4
    t = track.t
    d = t_star - t
    return NullTrack(t, np.full_like(t, u_limit), -1.0 / d, np.zeros_like(t), -1.0 / d ** 2)


def test_tangency_at_infinity():
    sol = alp_line(-1.0, 1.0, -1.0)
    ev = sol.events[0]
    track = _approach_track(sol, ev)
    assert tangent_at_infinity(track, track, ev.t_star).tangent

    rep = classify_blowup(sol, ev)
    ref = _lightlike_line_track(track, rep.infinity.offset)
    res = tangent_at_infinity(track, ref, ev.t_star)
    # the direction at infinity is lightlike, so the lightlike line is tangent
    assert res.tangent == (abs(rep.direction_indicator) < 1e-3)
    assert res.tangent

    shifted = dataclasses.replace(track, u=track.u + 1.0)
    assert not tangent_at_infinity(track, shifted, ev.t_star).tangent


def test_tangency_verdict_independent_of_center():
    sol = alp_line(-1.0, 1.0, -1.0)
    ev = sol.events[0]
    track = _approach_track(sol, ev)
    ref = _lightlike_line_track(track, classify_blowup(sol, ev).infinity.offset)
    rng = np.random.default_rng(3)
    verdicts = set()
    for _ in range(3):
        center = tuple(rng.uniform(-3.0, -1.0, size=2))
        verdicts.add(tangent_at_infinity(track, ref, ev.t_star, center=center).tangent)
    assert verdicts == {True}


def test_lightlike_obstruction():
    sol = alp_line(-1.0, 1.0, -1.0)
    ev = sol.events[0]
    track = _approach_track(sol, ev)
    # a center on the light cone of the last samples
    u_last = float(track.u[-1])
    center = SplitComplex(0.5 * (u_last + 0.0), 0.5 * (u_last - 0.0))
    with pytest.raises(LightlikeObstructionError):
        tangent_at_infinity(track, track, ev.t_star, center=center)


def test_summary_contents():
    s = report_summary(alp_line(-1.0, 1.0, -1.0))
    assert s["alp_deviation"] < 1e-9
    assert [b["infinity"] for b in s["blowups"]] == ["null:upper_left", "null:lower_left"]
    assert s["singular_t"] == []
