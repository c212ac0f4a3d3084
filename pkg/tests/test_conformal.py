import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lorentz_darboux import conformal
from lorentz_darboux.conformal import (
    NullInfinity,
    PenrosePoint,
    SpatialI0,
    TimelikeI,
    boundary_angle_deg,
    classify_infinity,
    classify_trajectory,
    conformal_factor,
    divergence_descriptor,
    lightlike_indicator,
    penrose_map,
    penrose_map_null,
    penrose_norm2,
    penrose_unmap,
    penrose_velocity,
)
from lorentz_darboux.curve import timelike_circle
from lorentz_darboux.errors import BoundaryPointError, NotAtInfinityError
from lorentz_darboux.splitc import SplitComplex, to_null

coord = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)
direction = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


def test_origin_maps_to_center():
    p = penrose_map(SplitComplex(0.0, 0.0))
    assert (p.psi, p.zeta) == (0.0, 0.0)
    assert conformal_factor(p) == 0.25


def test_unmap_rejects_boundary():
    with pytest.raises(BoundaryPointError):
        penrose_unmap(PenrosePoint(math.pi / 2, math.pi / 2))
    with pytest.raises(BoundaryPointError):
        conformal_factor(PenrosePoint(math.pi, 0.0))


@given(coord, coord)
def test_round_trip(u, v):
    x = SplitComplex(0.5 * (u + v), 0.5 * (u - v))
    back = penrose_unmap(penrose_map(x))
    scale = 1.0 + math.hypot(x.re, x.im)
    assert abs(back.re - x.re) <= 1e-12 * scale ** 2
    assert abs(back.im - x.im) <= 1e-12 * scale ** 2


@given(coord, coord, direction, direction)
def test_pullback_of_the_metric(u, v, du, dv):
    p = penrose_map_null(u, v)
    dpsi, dzeta = conformal.penrose_velocity_null(u, v, du, dv)
    rhs = conformal_factor(p) * penrose_norm2(dpsi, dzeta)
    assert math.isclose(du * dv, rhs, rel_tol=1e-9, abs_tol=1e-12)


@given(coord, coord, direction, direction)
def test_indicator_is_penrose_squared_speed(u, v, du, dv):
    x = SplitComplex(0.5 * (u + v), 0.5 * (u - v))
    xdot = SplitComplex(0.5 * (du + dv), 0.5 * (du - dv))
    assert math.isclose(lightlike_indicator(x, xdot), penrose_norm2(*penrose_velocity(x, xdot)),
                        rel_tol=1e-9, abs_tol=1e-12)


def test_indicator_vanishes_for_lightlike_velocity():
    x = SplitComplex(0.4, -1.3)
    assert lightlike_indicator(x, SplitComplex(1.0, 1.0)) == 0.0
    assert lightlike_indicator(x, SplitComplex(2.0, 1.0)) > 0.0
    assert lightlike_indicator(x, SplitComplex(1.0, 2.0)) < 0.0


def test_classify_infinity_table():
    inf = math.inf
    assert classify_infinity(inf, inf) == SpatialI0(1)
    assert classify_infinity(-inf, -inf) == SpatialI0(-1)
    assert classify_infinity(inf, -inf) == TimelikeI(1)
    assert classify_infinity(-inf, inf) == TimelikeI(-1)
    assert classify_infinity(inf, 0.5) == NullInfinity("upper_right", 0.5)
    assert classify_infinity(-inf, 0.5) == NullInfinity("lower_left", 0.5)
    assert classify_infinity(0.5, inf) == NullInfinity("lower_right", 0.5)
    assert classify_infinity(0.5, -inf) == NullInfinity("upper_left", 0.5)
    with pytest.raises(NotAtInfinityError):
        classify_infinity(1.0, 2.0)


def test_null_infinity_points_lie_on_their_edges():
    for edge in ("upper_right", "upper_left", "lower_left", "lower_right"):
        p = NullInfinity(edge, 0.3).penrose_point()
        s, d = p.psi + p.zeta, p.psi - p.zeta
        assert math.isclose(max(abs(s), abs(d)), math.pi)
        future = edge.startswith("upper")
        assert (p.zeta > 0) == future


def test_limit_of_finite_points_matches_edge_point():
    big = 1e12
    for (u, v), edge, off in (((big, 0.3), "upper_right", 0.3), ((-big, 0.3), "lower_left", 0.3),
                              ((0.3, big), "lower_right", 0.3), ((0.3, -big), "upper_left", 0.3)):
        p = penrose_map_null(u, v)
        q = NullInfinity(edge, off).penrose_point()
        assert math.isclose(p.psi, q.psi, abs_tol=1e-10)
        assert math.isclose(p.zeta, q.zeta, abs_tol=1e-10)
    assert SpatialI0(1).penrose_point() == PenrosePoint(math.pi, 0.0)
    assert TimelikeI(-1).penrose_point() == PenrosePoint(0.0, -math.pi)


def test_divergence_descriptor():
    assert divergence_descriptor([1.0, 2.0, 3.0]) == 3.0
    assert divergence_descriptor([1e9, 2e9, 3e9, 4e9, 5e9]) == math.inf
    assert divergence_descriptor([-1e9, -2e9, -3e9, -4e9, -5e9]) == -math.inf
    # sign flip in the window: not a divergence
    assert divergence_descriptor([1e9, -2e9, 3e9, 4e9, 5e9]) == 5e9


def test_timelike_circle_reaches_null_infinity():
    c = timelike_circle()
    ts = [math.pi / 2 - 10.0 ** -k for k in range(1, 10)]
    assert classify_trajectory([c(t) for t in ts]) == NullInfinity("upper_right", pytest.approx(0.0, abs=1e-8))


def test_synthetic_spatial_infinity():
    t_star = 1.0
    pts = [SplitComplex(1.0 / (t_star - t), 0.0) for t in (1 - 10.0 ** -k for k in range(2, 12))]
    assert classify_trajectory(pts) == SpatialI0(1)


def test_boundary_angle():
    assert math.isclose(boundary_angle_deg(1.0, 1.0, "upper_right"), 90.0)
    assert math.isclose(boundary_angle_deg(1.0, -1.0, "upper_right"), 0.0, abs_tol=1e-6)
    assert math.isclose(boundary_angle_deg(1.0, 0.0, "upper_left"), 45.0)
    with pytest.raises(ValueError):
        boundary_angle_deg(0.0, 0.0, "upper_left")


def test_edge_labels():
    assert NullInfinity("upper_left", 0.0).label() == "null:upper_left"
    assert SpatialI0(-1).label() == "spatial:-"
    assert TimelikeI(1).label() == "timelike:+"
    assert to_null(SplitComplex(1.0, 0.0)) == (1.0, 1.0)
