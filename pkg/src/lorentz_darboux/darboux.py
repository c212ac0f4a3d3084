"""Lorentz-Darboux transforms by projective Riccati integration.

The defining relation x' xh' = (lambda/m) (xh - x)^2 splits, in null
coordinates, into two independent scalar equations. Writing the offsets
p = uh - u_x and q = vh - v_x they read

    p' = A_u p^2 + C_u,    q' = A_v q^2 + C_v,

with A_u = lambda w / u_x', C_u = -u_x' (and u <-> v). Each offset lives
on the projective line: it is integrated either as p itself (affine chart)
or as s = 1/p (inverted chart, s' = -A - C s^2). Switching charts when
|value| exceeds ``s_switch`` keeps the state bounded, and a zero crossing
of s is a blow-up of the transform, after which the offset re-enters from
the other end of the projective line.

In ALP mode (arc-length polarization, w = u_x' v_x') the coefficient
becomes A_u = lambda v_x', which is polynomial and stays regular at
lightlike points of the base curve.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import conformal
from .curve import IdenticallyLightlike, PolarizationKind, PolarizedCurve, lightlike_points
from .errors import (
    CoincidentPointsError,
    DomainExceededError,
    InvalidParamsError,
    LightlikeBaseCurveError,
    NoSignChangeError,
    StepSizeUnderflowError,
)
from .splitc import SplitComplex, from_null, mul, to_null


class Mode(enum.Enum):
    GENERIC = "generic"
    ALP_REGULARIZED = "alp"


class Chart(enum.Enum):
    AFFINE = "affine"
    INVERTED = "inverted"


class _AtInfinity:
    """Marker for a sample where the transform sits on the Penrose boundary."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"

    def __bool__(self):
        return False


AT_INFINITY = _AtInfinity()

COMPONENTS = ("u", "v")


@dataclass(frozen=True)
class Tolerances:
    rel: float = 1e-12
    abs: float = 1e-14
    s_switch: float = 4.0
    max_step: float = 0.05
    fixed_step: float | None = None
    approach_samples: int = 12
    approach_min: float = 2e-3
    approach_span: float = 0.05
    eps_light: float = 1e-10


@dataclass(frozen=True)
class DarbouxParams:
    lam: float
    initial_point: SplitComplex
    t0: float
    mode: Mode = Mode.GENERIC

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam == 0.0:
            raise InvalidParamsError("lambda must be a finite nonzero real")

    @classmethod
    def from_offsets(cls, pcurve: PolarizedCurve, lam, p0, q0, t0, mode=Mode.GENERIC):
        """Initial point given by its null offsets from x(t0)."""
        x0 = pcurve.curve(t0)
        u, v = to_null(x0)
        return cls(lam, from_null(u + p0, v + q0), t0, mode)


@dataclass(frozen=True)
class ChartValue:
    chart: Chart
    value: float

    @property
    def at_infinity(self) -> bool:
        return self.chart is Chart.INVERTED and self.value == 0.0

    def offset(self) -> float:
        """Affine offset; +-inf only for the exact blow-up marker."""
        if self.chart is Chart.AFFINE:
            return self.value
        if self.value == 0.0:
            return math.inf
        return 1.0 / self.value

    def switched(self) -> "ChartValue":
        other = Chart.INVERTED if self.chart is Chart.AFFINE else Chart.AFFINE
        return ChartValue(other, 1.0 / self.value)


@dataclass(frozen=True)
class RiccatiChartState:
    u: ChartValue
    v: ChartValue

    def __getitem__(self, i):
        return (self.u, self.v)[i]

    def offsets(self) -> tuple[float, float]:
        return self.u.offset(), self.v.offset()

    def offset_norm2(self) -> float:
        """|xh - x|^2 = p q, formed without leaving the charts."""
        a, b = self.u, self.v
        if a.chart is Chart.AFFINE and b.chart is Chart.AFFINE:
            return a.value * b.value
        if a.chart is Chart.AFFINE:
            return a.value / b.value
        if b.chart is Chart.AFFINE:
            return b.value / a.value
        return 1.0 / (a.value * b.value)


@dataclass(frozen=True)
class Sample:
    t: float
    x: SplitComplex
    xdot: SplitComplex
    w: float
    state: RiccatiChartState
    xhat: SplitComplex | _AtInfinity
    xhat_null: tuple[float, float] | None
    xhatdot_null: tuple[float, float] | None
    offset_norm2: float | None
    tags: tuple[str, ...] = ()

    @property
    def at_infinity(self) -> bool:
        return self.xhat is AT_INFINITY

    @property
    def xhatdot(self) -> SplitComplex | None:
        if self.xhatdot_null is None:
            return None
        return from_null(*self.xhatdot_null)

    @property
    def offset(self) -> SplitComplex | None:
        if self.at_infinity:
            return None
        return from_null(*self.state.offsets())


@dataclass(frozen=True)
class BlowupEvent:
    t_star: float
    components: tuple[str, ...]
    signs: tuple[int, ...]
    infinity: conformal.InfinityClass
    sample_index: int


@dataclass(frozen=True)
class DegeneratePoint:
    t: float
    component: str
    sample_index: int


@dataclass(frozen=True)
class _Step:
    t0: float
    h: float
    y0: tuple[float, float]
    k: tuple  # seven stage derivatives, each a pair
    charts: tuple[Chart, Chart]


@dataclass(frozen=True)
class DarbouxSolution:
    pcurve: PolarizedCurve
    params: DarbouxParams
    tol: Tolerances
    samples: tuple[Sample, ...]
    events: tuple[BlowupEvent, ...]
    lightlike_crossings: tuple[float, ...]
    degenerate_points: tuple[DegeneratePoint, ...]
    _steps: tuple[_Step, ...] = field(default=(), repr=False)

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def mode(self) -> Mode:
        return self.params.mode

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def finite_samples(self) -> list[Sample]:
        return [s for s in self.samples if not s.at_infinity]

    def state_at(self, t: float) -> RiccatiChartState:
        """Dense-output chart state at any t inside the integrated range."""
        if not self._steps:
            raise ValueError("solution carries no dense output")
        starts = [st.t0 for st in self._steps]
        i = int(np.searchsorted(starts, t, side="right")) - 1
        i = min(max(i, 0), len(self._steps) - 1)
        st = self._steps[i]
        if not (st.t0 - 1e-12 <= t <= st.t0 + st.h + 1e-12):
            raise DomainExceededError(f"t={t} outside the integrated range")
        theta = (t - st.t0) / st.h
        y = _dense(st, theta)
        return RiccatiChartState(ChartValue(st.charts[0], y[0]), ChartValue(st.charts[1], y[1]))

    def xhat_null_at(self, t: float) -> tuple[float, float]:
        p, q = self.state_at(t).offsets()
        u, v = to_null(self.pcurve.curve(t))
        return u + p, v + q

    def xhatdot_null_at(self, t: float) -> tuple[float, float]:
        p, q = self.state_at(t).offsets()
        (au, _), (av, _) = _coefficients(t, self.pcurve, self.lam, self.mode)
        return au * p * p, av * q * q


# -- Dormand-Prince 5(4) --------------------------------------------------------

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_E = (-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40)
# dense output polynomial coefficients (theta, theta^2, theta^3, theta^4)
_P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)


def _dense(st: _Step, theta: float) -> tuple[float, float]:
    powers = (theta, theta ** 2, theta ** 3, theta ** 4)
    out = []
    for comp in range(2):
        acc = 0.0
        for j in range(7):
            pj = _P[j]
            acc += st.k[j][comp] * (pj[0] * powers[0] + pj[1] * powers[1]
                                    + pj[2] * powers[2] + pj[3] * powers[3])
        out.append(st.y0[comp] + st.h * acc)
    return out[0], out[1]


def _coefficients(t, pcurve: PolarizedCurve, lam, mode, guard=0.0):
    """((A_u, C_u), (A_v, C_v)) of the offset Riccati equations at t."""
    du, dv = to_null(pcurve.curve.derivative(t))
    if mode is Mode.ALP_REGULARIZED:
        return (lam * dv, -du), (lam * du, -dv)
    if guard and (abs(du) <= guard * abs(dv) or abs(dv) <= guard * abs(du)):
        raise LightlikeBaseCurveError(f"base curve is lightlike at t={t!r}; use ALP mode")
    w = pcurve.polarization(t)
    return (lam * w / du, -du), (lam * w / dv, -dv)


def rhs_null(t, uhat, vhat, pcurve: PolarizedCurve, lam, mode=Mode.GENERIC, eps=1e-10):
    """Velocity (uh', vh') of the transform in null coordinates."""
    mode = Mode(mode)
    if mode is Mode.ALP_REGULARIZED and pcurve.polarization.kind is not PolarizationKind.ARC_LENGTH:
        raise InvalidParamsError("ALP mode requires the arc-length polarization")
    (au, _), (av, _) = _coefficients(t, pcurve, lam, mode, guard=eps)
    u, v = to_null(pcurve.curve(t))
    p, q = uhat - u, vhat - v
    return au * p * p, av * q * q


def cross_ratio_residual(x, xdot, xhat, xhatdot, w, lam) -> SplitComplex:
    """x' xh' - lambda w (xh - x)^2; vanishes on a Darboux pair."""
    d = xhat - x
    return mul(xdot, xhatdot) - mul(d, d) * (lam * w)


class _System:
    def __init__(self, pcurve, lam, mode, guard):
        self.pcurve = pcurve
        self.lam = lam
        self.mode = mode
        self.guard = guard

    def f(self, t, y, charts):
        (au, cu), (av, cv) = _coefficients(t, self.pcurve, self.lam, self.mode, self.guard)
        a, b = y
        fa = au * a * a + cu if charts[0] is Chart.AFFINE else -au - cu * a * a
        fb = av * b * b + cv if charts[1] is Chart.AFFINE else -av - cv * b * b
        return fa, fb

    def step(self, t, y, h, charts, k0=None):
        """One Dormand-Prince step; returns (y_new, err_vector, stages)."""
        k = [k0 if k0 is not None else self.f(t, y, charts)]
        for i in range(1, 6):
            row = _A[i]
            ya = y[0] + h * sum(row[j] * k[j][0] for j in range(i))
            yb = y[1] + h * sum(row[j] * k[j][1] for j in range(i))
            k.append(self.f(t + _C[i] * h, (ya, yb), charts))
        y_new = (y[0] + h * sum(_B[j] * k[j][0] for j in range(6)),
                 y[1] + h * sum(_B[j] * k[j][1] for j in range(6)))
        k.append(self.f(t + h, y_new, charts))
        err = (h * sum(_E[j] * k[j][0] for j in range(7)),
               h * sum(_E[j] * k[j][1] for j in range(7)))
        return y_new, err, tuple(k)


def _finite(*vals):
    return all(math.isfinite(x) for x in vals)


def integrate(pcurve: PolarizedCurve, params: DarbouxParams, t_end: float,
              tol: Tolerances = Tolerances()) -> DarbouxSolution:
    """Integrate the transform from ``params.t0`` to ``t_end``."""
    curve = pcurve.curve
    t0, lam, mode = float(params.t0), float(params.lam), Mode(params.mode)
    t_end = float(t_end)
    if not (curve.contains(t0) and curve.contains(t_end)):
        raise DomainExceededError(f"[{t0}, {t_end}] is not inside the curve domain {curve.domain}")
    if t_end <= t0:
        raise DomainExceededError("t_end must exceed t0")
    if mode is Mode.ALP_REGULARIZED and pcurve.polarization.kind is not PolarizationKind.ARC_LENGTH:
        raise InvalidParamsError("ALP mode requires the arc-length polarization")

    lightlike = lightlike_points(curve, (t0, t_end), eps=tol.eps_light)
    if isinstance(lightlike, IdenticallyLightlike):
        raise LightlikeBaseCurveError("base curve is identically lightlike")
    if mode is Mode.GENERIC and lightlike:
        raise LightlikeBaseCurveError(
            f"base curve has lightlike points {lightlike}; Generic mode cannot cross them")
    stops = sorted(t for t in lightlike if t0 < t < t_end) + [t_end]

    x0 = curve(t0)
    u0, v0 = to_null(x0)
    uh0, vh0 = to_null(params.initial_point)
    p0, q0 = uh0 - u0, vh0 - v0
    if p0 == 0.0 and q0 == 0.0:
        raise CoincidentPointsError("initial point coincides with x(t0)")

    system = _System(pcurve, lam, mode, guard=1e-12 if mode is Mode.GENERIC else 0.0)
    run = _Run(system, tol)
    state = run.normalize(RiccatiChartState(ChartValue(Chart.AFFINE, p0), ChartValue(Chart.AFFINE, q0)))
    run.emit(t0, state, ())

    t = t0
    h = tol.fixed_step or min(tol.max_step, 0.01 * (t_end - t0))
    stop_idx = 0
    growth_cap_until = -math.inf
    while t < t_end:
        target = stops[stop_idx]
        h = min(h, target - t)
        if tol.fixed_step is None:
            h = min(h, tol.max_step)
        if h <= 16 * np.finfo(float).eps * max(1.0, abs(t)):
            raise StepSizeUnderflowError(f"step size underflow at t={t!r}")

        y = (state.u.value, state.v.value)
        charts = (state.u.chart, state.v.chart)
        y_new, err, k = system.step(t, y, h, charts)
        limit = 4.0 * tol.s_switch
        ok = _finite(*y_new, *err) and abs(y_new[0]) <= limit and abs(y_new[1]) <= limit
        if ok and tol.fixed_step is None:
            scale = [tol.abs + tol.rel * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
            enorm = math.sqrt(0.5 * sum((e / s) ** 2 for e, s in zip(err, scale)))
        else:
            enorm = 0.0 if ok else math.inf
        if enorm > 1.0:
            if math.isfinite(enorm):
                h *= max(0.2, 0.9 * enorm ** -0.2)
            else:
                h *= 0.25
            continue

        t_new = target if h == target - t else t + h
        events = run.crossings(t, y, y_new, t_new, charts)
        if events:
            t_e, kind, comp, _ = events[0]
            if kind == "degenerate":
                state = run.advance_to(t, state, t_e)
                state = _set_component(state, comp, Chart.AFFINE, 0.0)
                run.emit(t_e, state, (f"degenerate:{COMPONENTS[comp]}",))
                run.degenerate.append(DegeneratePoint(t_e, COMPONENTS[comp], len(run.samples) - 1))
                run.last_degenerate[comp] = t_e
                t = t_e
                continue
            near = 1e-9 * max(1.0, abs(t_e))
            hits = sorted((c, sg) for te, kd, c, sg in events if kd == "blowup" and abs(te - t_e) <= near)
            state = run.approach(t_e)
            for c, _ in hits:
                state = _set_component(state, c, Chart.INVERTED, 0.0)
            run.blowup(t_e, state, [c for c, _ in hits], [sg for _, sg in hits])
            t = t_e
            if tol.fixed_step is None:
                # restart small and grow slowly so the exit from infinity is resolved
                h = min(tol.approach_min, h)
                growth_cap_until = t_e + 20 * tol.approach_min
            continue

        if tol.fixed_step is None:
            fac = 10.0 if t_new > growth_cap_until else 2.0
            h_next = h * min(fac, max(0.2, 0.9 * enorm ** -0.2)) if enorm > 0 else h * fac
        else:
            h_next = tol.fixed_step
        run.record_step(t, h, y, k, charts)
        state = run.normalize(RiccatiChartState(ChartValue(charts[0], y_new[0]), ChartValue(charts[1], y_new[1])))
        run.check_coincident(t_new, state)
        tags = ()
        if t_new == target and stop_idx < len(stops) - 1:
            tags = ("lightlike",)
            run.lightlike.append(t_new)
            stop_idx += 1
        run.emit(t_new, state, tags)
        t = t_new
        h = h_next

    return DarbouxSolution(pcurve, params, tol, tuple(run.samples), tuple(run.events),
                           tuple(run.lightlike), tuple(run.degenerate), tuple(run.steps))


def _set_component(state: RiccatiChartState, comp: int, chart: Chart, value: float):
    cv = ChartValue(chart, value)
    return RiccatiChartState(cv, state.v) if comp == 0 else RiccatiChartState(state.u, cv)


class _Run:
    """Mutable bookkeeping for one integration."""

    def __init__(self, system: _System, tol: Tolerances):
        self.system = system
        self.tol = tol
        self.samples: list[Sample] = []
        self.events: list[BlowupEvent] = []
        self.degenerate: list[DegeneratePoint] = []
        self.lightlike: list[float] = []
        self.steps: list[_Step] = []
        self.last_blowup = -math.inf
        self.last_degenerate = [-math.inf, -math.inf]

    def normalize(self, state: RiccatiChartState) -> RiccatiChartState:
        parts = []
        for cv in (state.u, state.v):
            if abs(cv.value) > self.tol.s_switch:
                cv = cv.switched()
            parts.append(cv)
        return RiccatiChartState(*parts)

    def check_coincident(self, t, state):
        p, q = state.u, state.v
        if (p.chart is Chart.AFFINE and q.chart is Chart.AFFINE
                and abs(p.value) < 1e-14 and abs(q.value) < 1e-14):
            raise CoincidentPointsError(f"transform meets the base curve at t={t!r}")

    def record_step(self, t, h, y, k, charts):
        self.steps.append(_Step(t, h, tuple(y), k, tuple(charts)))

    def emit(self, t, state: RiccatiChartState, tags):
        self.samples.append(make_sample(t, state, self.system.pcurve, self.system.lam,
                                        self.system.mode, tags))

    def crossings(self, t, y, y_new, t_new, charts):
        """Zero crossings inside one accepted step, earliest first."""
        found = []
        for comp in range(2):
            a, b = y[comp], y_new[comp]
            if not (a * b < 0.0 or (b == 0.0 and a != 0.0)):
                continue
            kind = "blowup" if charts[comp] is Chart.INVERTED else "degenerate"

            def g(tau, comp=comp):
                if tau == t:
                    return a
                return self.system.step(t, y, tau - t, charts)[0][comp]

            t_e = t_new if b == 0.0 else brentq(g, t, t_new, xtol=1e-15 * max(1.0, abs(t)), rtol=1e-15)
            window = 1e-8 * max(1.0, abs(t_e))
            if kind == "degenerate":
                if abs(t_e - self.last_blowup) <= window or abs(t_e - self.last_degenerate[comp]) <= window:
                    continue
            elif abs(t_e - self.last_blowup) <= window:
                continue
            found.append((t_e, kind, comp, 1 if a > 0 else -1))
        # a degenerate crossing that coincides with a blow-up of the other
        # component is the 0 * inf of a finite |xh - x|^2, not a degenerate point
        blow = [ev[0] for ev in found if ev[1] == "blowup"]
        found = [ev for ev in found
                 if ev[1] == "blowup" or all(abs(ev[0] - tb) > 1e-8 * max(1.0, abs(tb)) for tb in blow)]
        found.sort()
        return found

    def advance_to(self, t, state, t_target):
        """Error-controlled steps to exactly t_target, without event checks."""
        tol = self.tol
        h = min(t_target - t, tol.max_step)
        while t < t_target:
            h = min(h, t_target - t)
            y = (state.u.value, state.v.value)
            charts = (state.u.chart, state.v.chart)
            y_new, err, k = self.system.step(t, y, h, charts)
            if not _finite(*y_new, *err):
                enorm = math.inf
            elif tol.fixed_step is not None:
                enorm = 0.0
            else:
                scale = [tol.abs + tol.rel * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
                enorm = math.sqrt(0.5 * sum((e / sc) ** 2 for e, sc in zip(err, scale)))
            if enorm > 1.0:
                h *= max(0.2, 0.9 * enorm ** -0.2) if math.isfinite(enorm) else 0.25
                if h <= 16 * np.finfo(float).eps * max(1.0, abs(t)):
                    raise StepSizeUnderflowError(f"step size underflow at t={t!r}")
                continue
            t_new = t_target if h == t_target - t else t + h
            self.record_step(t, t_new - t, y, k, charts)
            state = RiccatiChartState(ChartValue(charts[0], y_new[0]), ChartValue(charts[1], y_new[1]))
            t = t_new
            if enorm > 0:
                h *= min(5.0, max(0.2, 0.9 * enorm ** -0.2))
        return state

    def rewind(self, t_limit):
        """Drop plain trailing samples later than t_limit; return the last kept one."""
        while (len(self.samples) > 1 and self.samples[-1].t > t_limit
               and not self.samples[-1].tags):
            self.samples.pop()
        last = self.samples[-1]
        while self.steps and self.steps[-1].t0 >= last.t:
            self.steps.pop()
        return last

    def approach(self, t_e):
        """Walk toward a blow-up through a geometric sequence of samples.

        Samples closer than ``approach_span`` are discarded first so the
        sequence always starts a fixed distance out and ends at
        ``approach_min`` from the event.
        """
        tol = self.tol
        start = self.rewind(t_e - tol.approach_span)
        cur_t, state = start.t, start.state
        d0 = t_e - cur_t
        n = tol.approach_samples
        ratio = (tol.approach_min / d0) ** (1.0 / n) if d0 > tol.approach_min else 0.5
        for i in range(1, n + 1):
            ti = t_e - d0 * ratio ** i
            if ti <= cur_t:
                continue
            state = self.normalize(self.advance_to(cur_t, state, ti))
            self.emit(ti, state, ())
            cur_t = ti
        return self.advance_to(cur_t, state, t_e)

    def blowup(self, t_e, state, comps, signs):
        uh_vh = []
        u, v = to_null(self.system.pcurve.curve(t_e))
        base = (u, v)
        for comp in range(2):
            if comp in comps:
                uh_vh.append(math.inf * signs[comps.index(comp)])
            else:
                uh_vh.append(base[comp] + state[comp].offset())
        infinity = conformal.classify_infinity(*uh_vh)
        self.emit(t_e, state, (f"blowup:{infinity.label()}",))
        self.events.append(BlowupEvent(t_e, tuple(COMPONENTS[c] for c in comps), tuple(signs),
                                       infinity, len(self.samples) - 1))
        self.last_blowup = t_e


def make_sample(t, state: RiccatiChartState, pcurve: PolarizedCurve, lam, mode, tags=()) -> Sample:
    curve = pcurve.curve
    x = curve(t)
    xdot = curve.derivative(t)
    w = pcurve.polarization(t)
    if state.u.at_infinity or state.v.at_infinity:
        return Sample(t, x, xdot, w, state, AT_INFINITY, None, None, None, tuple(tags))
    p, q = state.offsets()
    u, v = to_null(x)
    du, dv = to_null(xdot)
    if mode is Mode.ALP_REGULARIZED:
        au, av = lam * dv, lam * du
    else:
        au, av = lam * w / du, lam * w / dv
    uh, vh = u + p, v + q
    return Sample(t, x, xdot, w, state, from_null(uh, vh), (uh, vh),
                  (au * p * p, av * q * q), state.offset_norm2(), tuple(tags))


# -- blow-up location and the closed-form line oracle ------------------------------

def locate_blowup(solution: DarbouxSolution, component: str, bracket) -> tuple[float, int]:
    """Refine the zero of the inverted-chart offset of ``component`` in ``bracket``.

    Returns (t_star, sign) where sign is the direction in which the null
    coordinate diverges as t increases toward t_star.
    """
    comp = COMPONENTS.index(component)
    a, b = bracket

    def s(t):
        cv = solution.state_at(t)[comp]
        if cv.chart is Chart.INVERTED:
            return cv.value
        return math.inf if cv.value == 0.0 else 1.0 / cv.value

    sa, sb = s(a), s(b)
    if not (_finite(sa, sb) and sa * sb < 0.0):
        raise NoSignChangeError(f"no blow-up of {component} in [{a}, {b}]")
    t_star = brentq(s, a, b, xtol=1e-13, rtol=1e-15)
    cv = solution.state_at(t_star)[comp]
    if cv.chart is not Chart.INVERTED or abs(cv.value) > 1e-8:
        # the sign change was a zero of the offset, i.e. a pole of 1/p
        raise NoSignChangeError(f"no blow-up of {component} in [{a}, {b}]")
    return t_star, (1 if sa > 0 else -1)


@dataclass(frozen=True)
class LineOracle:
    """Closed-form offsets for x(t) = (t, 0), m = 1: p' = lambda p^2 - 1."""
    lam: float
    p0: float
    q0: float

    def _flow(self, y0, t):
        lam = self.lam
        k = math.sqrt(abs(lam))
        if lam < 0:
            return math.tan(math.atan(k * y0) - k * t) / k
        th = math.tanh(k * t)
        den = 1.0 - k * y0 * th
        if den == 0.0:
            return math.inf
        return (k * y0 - th) / den / k

    def p(self, t):
        return self._flow(self.p0, t)

    def q(self, t):
        return self._flow(self.q0, t)

    def blowup_times(self, y0, t_max):
        """Poles of the offset flow started at y0 within (0, t_max]."""
        lam = self.lam
        k = math.sqrt(abs(lam))
        if lam < 0:
            first = (math.atan(k * y0) + 0.5 * math.pi) / k
            period = math.pi / k
            out = []
            t = first
            while t <= t_max:
                out.append(t)
                t += period
            return out
        if k * y0 > 1.0:
            t = math.atanh(1.0 / (k * y0)) / k
            return [t] if t <= t_max else []
        return []


def line_oracle(lam, p0, q0) -> LineOracle:
    if not math.isfinite(lam) or lam == 0.0:
        raise InvalidParamsError("lambda must be nonzero")
    return LineOracle(float(lam), float(p0), float(q0))
