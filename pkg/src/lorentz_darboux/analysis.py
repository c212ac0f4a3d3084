"""Diagnostics over Darboux solutions.

Everything here is sample-based: the functions read the accepted samples
of a solution (null data included) and never re-integrate. Refinement of
event times uses the solution's dense output when it has one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import conformal
from .congruence import CongruenceKind, congruence_of_sample
from .curve import PolarizationKind
from .darboux import COMPONENTS, BlowupEvent, DarbouxSolution, Sample
from .errors import InsufficientSamplesError, LightlikeObstructionError
from .splitc import EPS_LIGHT, SplitComplex, to_null

MIN_BLOWUP_SAMPLES = 8
SINGULAR_EPS = 1e-6


# -- invariants ----------------------------------------------------------------

def check_simultaneous_alp(solution: DarbouxSolution, lam: float | None = None) -> float:
    """max | |xh - x|^2 - 1/lambda | over the finite samples."""
    lam = solution.lam if lam is None else lam
    return max(abs(s.offset_norm2 - 1.0 / lam) for s in solution.finite_samples())


def velocity_identity_residual(solution: DarbouxSolution) -> float:
    """Max relative error of |x'|^2 |xh'|^2 = (lambda w)^2 (|xh - x|^2)^2."""
    lam = solution.lam
    worst = 0.0
    for s in solution.finite_samples():
        du, dv = to_null(s.xdot)
        a, b = s.xhatdot_null
        lhs = (du * dv) * (a * b)
        rhs = (lam * s.w) ** 2 * s.offset_norm2 ** 2
        den = max(abs(lhs), abs(rhs))
        if den > 0.0:
            worst = max(worst, abs(lhs - rhs) / den)
    return worst


def min_xhatdot_euclid2(solution: DarbouxSolution) -> float:
    """Smallest Euclidean squared speed of the transform over finite samples."""
    return min(0.5 * (a * a + b * b) for a, b in (s.xhatdot_null for s in solution.finite_samples()))


# -- singular, lightlike-velocity and degenerate points -----------------------

@dataclass(frozen=True)
class Finding:
    kind: str  # "singular" | "lightlike_velocity" | "degenerate"
    t: float
    value: float
    sample_index: int


def _velocity_measures(a, b):
    e2 = 0.5 * (a * a + b * b)
    rel = abs(a * b) / e2 if e2 > 0.0 else 0.0
    return e2, rel


def _refine(fun, solution, i):
    """Minimize fun between the neighbours of sample i, if dense output exists."""
    samples = solution.samples
    t = samples[i].t
    if not solution._steps:
        return t
    lo = samples[i - 1].t if i > 0 else t
    hi = samples[i + 1].t if i + 1 < len(samples) else t
    if any(samples[j].at_infinity for j in (max(i - 1, 0), min(i + 1, len(samples) - 1))):
        return t
    if hi <= lo:
        return t
    res = minimize_scalar(fun, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x) if res.fun <= fun(t) else t


def detect_singular_and_degenerate(solution: DarbouxSolution, eps: float = EPS_LIGHT,
                                   singular_eps: float = SINGULAR_EPS,
                                   refine: bool = True) -> list[Finding]:
    """Scan the samples for points where xh' or xh - x degenerates.

    A sample is a singular candidate when the Euclidean |xh'|^2 falls
    below ``singular_eps``, a lightlike-velocity point when |xh'|^2 is
    relatively small but xh' is not, and degenerate when |xh - x|^2 is
    relatively small. Runs of flagged samples collapse to their minimum.
    """
    samples = solution.samples
    flagged: dict[str, list[tuple[int, float]]] = {"singular": [], "lightlike_velocity": [],
                                                    "degenerate": []}
    for i, s in enumerate(samples):
        if s.at_infinity:
            continue
        a, b = s.xhatdot_null
        e2, rel = _velocity_measures(a, b)
        if e2 < singular_eps:
            flagged["singular"].append((i, e2))
        elif rel <= eps:
            flagged["lightlike_velocity"].append((i, rel))
        p, q = s.state.offsets()
        d_e2 = 0.5 * (p * p + q * q)
        rel_d = abs(s.offset_norm2) / d_e2
        if rel_d <= eps or any(tag.startswith("degenerate") for tag in s.tags):
            flagged["degenerate"].append((i, rel_d))

    def fun_for(kind):
        def vel(t):
            e2, rel = _velocity_measures(*solution.xhatdot_null_at(t))
            return e2 if kind == "singular" else rel

        def deg(t):
            st = solution.state_at(t)
            p, q = st.offsets()
            return abs(st.offset_norm2()) / (0.5 * (p * p + q * q))

        return deg if kind == "degenerate" else vel

    findings = []
    for kind, hits in flagged.items():
        runs: list[list[tuple[int, float]]] = []
        for i, val in hits:
            if runs and i == runs[-1][-1][0] + 1:
                runs[-1].append((i, val))
            else:
                runs.append([(i, val)])
        for run in runs:
            i, val = min(run, key=lambda iv: iv[1])
            t = samples[i].t
            if refine and not samples[i].tags:
                t = _refine(fun_for(kind), solution, i)
            findings.append(Finding(kind, t, val, i))
    findings.sort(key=lambda f: (f.t, f.kind))
    return findings


# -- blow-ups ------------------------------------------------------------------

@dataclass(frozen=True)
class BlowupReport:
    t_star: float
    infinity: conformal.InfinityClass
    direction_indicator: float
    boundary_angle_deg: float
    indicator_trend: tuple[tuple[float, float], ...]
    radius_trend: tuple[tuple[float, float], ...]
    penrose_tangent: tuple[float, float] = field(default=(0.0, 0.0))

    def radius_decreasing(self, n: int = 10) -> bool:
        tail = [abs(xi) for _, xi in self.radius_trend[-n:]]
        return len(tail) >= n and all(b < a for a, b in zip(tail, tail[1:]))

    def indicator_decreasing(self, n: int = MIN_BLOWUP_SAMPLES) -> bool:
        tail = [abs(v) for _, v in self.indicator_trend[-n:]]
        return len(tail) >= n and all(b < a for a, b in zip(tail, tail[1:]))


def samples_before(solution: DarbouxSolution, event: BlowupEvent) -> list[Sample]:
    """Finite samples between the previous event (exclusive) and ``event``."""
    out = []
    for s in reversed(solution.samples[:event.sample_index]):
        if s.at_infinity:
            break
        out.append(s)
    out.reverse()
    return out


def _sigma_indicator(s: Sample, center=(0.0, 0.0)) -> float:
    """Lightlike indicator of the inverted transform sigma(xh) at a sample."""
    cu, cv = to_null(SplitComplex.of(center))
    uh, vh = s.xhat_null
    a, b = s.xhatdot_null
    du_, dv_ = uh - cu, vh - cv
    # sigma swaps and inverts the null coordinates: (u, v) -> (1/v, 1/u)
    U, V = 1.0 / dv_, 1.0 / du_
    dU, dV = -b / (dv_ * dv_), -a / (du_ * du_)
    return conformal.lightlike_indicator_null(U, V, dU, dV)


def classify_blowup(solution: DarbouxSolution, event: BlowupEvent,
                    n_last: int = MIN_BLOWUP_SAMPLES, center=(0.0, 0.0)) -> BlowupReport:
    """Infinity class, direction at infinity and boundary angle of a blow-up."""
    before = samples_before(solution, event)
    if len(before) < n_last:
        raise InsufficientSamplesError(
            f"{len(before)} samples precede the blow-up at t={event.t_star}, need {n_last}")
    at = solution.samples[event.sample_index]
    base = to_null(at.x)
    limits = []
    for comp in range(2):
        name = COMPONENTS[comp]
        if name in event.components:
            limits.append(math.inf * event.signs[event.components.index(name)])
        else:
            limits.append(base[comp] + at.state[comp].offset())
    infinity = conformal.classify_infinity(*limits)

    tail = before[-max(n_last, 10):]
    indicator = tuple((s.t, _sigma_indicator(s, center)) for s in tail)
    radius = []
    for s in tail:
        cc = congruence_of_sample(s)
        radius.append((s.t, cc.radius_xi if cc.kind is not CongruenceKind.LINE else math.inf))

    last = before[-1]
    dpsi, dzeta = conformal.penrose_velocity_null(*last.xhat_null, *last.xhatdot_null)
    if isinstance(infinity, conformal.NullInfinity):
        angle = conformal.boundary_angle_deg(dpsi, dzeta, infinity.edge)
    else:
        angle = math.nan
    return BlowupReport(event.t_star, infinity, indicator[-1][1], angle, indicator,
                        tuple(radius), (dpsi, dzeta))


# -- tangency at infinity ------------------------------------------------------

@dataclass(frozen=True)
class NullTrack:
    """Sampled trajectory in null coordinates: positions and velocities."""
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray

    @classmethod
    def from_samples(cls, samples) -> "NullTrack":
        rows = [(s.t, *s.xhat_null, *s.xhatdot_null) for s in samples]
        return cls(*(np.array(c, dtype=float) for c in zip(*rows)))

    @classmethod
    def from_curve(cls, curve, ts) -> "NullTrack":
        rows = [(t, *to_null(curve(t)), *to_null(curve.derivative(t))) for t in ts]
        return cls(*(np.array(c, dtype=float) for c in zip(*rows)))


@dataclass(frozen=True)
class TangencyResult:
    tangent: bool
    position_residual: float
    direction_residual: float


def _sigma_limit(track: NullTrack, t_star, center, window):
    """Extrapolated position and unit tangent of sigma(track) at t_star (null coords)."""
    cu, cv = center
    du_ = track.u[-window:] - cu
    dv_ = track.v[-window:] - cv
    n2 = du_ * dv_
    scale = 0.5 * (du_ * du_ + dv_ * dv_)
    if np.any(np.abs(n2) <= 1e-12 * scale) or np.any(np.sign(n2) != np.sign(n2[-1])):
        raise LightlikeObstructionError("inverted trajectory crosses the light cone of the center")
    U, V = 1.0 / dv_[-1], 1.0 / du_[-1]
    dU = -track.dv[-1] / dv_[-1] ** 2
    dV = -track.du[-1] / du_[-1] ** 2
    gap = t_star - track.t[-1]
    pos = np.array([U + dU * gap, V + dV * gap])
    tan = np.array([dU, dV])
    norm = float(np.hypot(*tan))
    return pos, tan / norm if norm > 0 else tan


def tangent_at_infinity(track_a: NullTrack, track_b: NullTrack, t_star: float,
                        center=(0.0, 0.0), tol: float = 1e-3, window: int = 8) -> TangencyResult:
    """First-order contact of two trajectories at t_star after inversion about center.

    Both trajectories are pushed to finite position by sigma, their images
    are linearly extrapolated to t_star, and the positions and tangent
    lines (unoriented) are compared.
    """
    c = to_null(SplitComplex.of(center))
    pa, ta = _sigma_limit(track_a, t_star, c, window)
    pb, tb = _sigma_limit(track_b, t_star, c, window)
    pos_res = float(np.hypot(*(pa - pb)))
    dir_res = float(1.0 - abs(float(np.dot(ta, tb))))
    return TangencyResult(pos_res < tol and dir_res < tol, pos_res, dir_res)


# -- summary ---------------------------------------------------------------------

def report_summary(solution: DarbouxSolution) -> dict:
    """Flat numeric report; everything in it is reproducible from the CSV trace."""
    out = {
        "lambda": solution.lam,
        "mode": solution.mode.value,
        "samples": len(solution.samples),
        "velocity_identity_residual": velocity_identity_residual(solution),
        "min_xhatdot_euclid2": min_xhatdot_euclid2(solution),
    }
    if solution.pcurve.polarization.kind is PolarizationKind.ARC_LENGTH:
        out["alp_deviation"] = check_simultaneous_alp(solution)
    findings = detect_singular_and_degenerate(solution, refine=False)
    for kind in ("singular", "lightlike_velocity", "degenerate"):
        out[f"{kind}_t"] = [f.t for f in findings if f.kind == kind]
    blowups = []
    for ev in solution.events:
        entry = {"t_star": ev.t_star, "infinity": ev.infinity.label()}
        try:
            rep = classify_blowup(solution, ev)
        except InsufficientSamplesError:
            entry["insufficient_samples"] = True
        else:
            entry.update({
                "infinity": rep.infinity.label(),
                "direction_indicator": rep.direction_indicator,
                "boundary_angle_deg": rep.boundary_angle_deg,
                "final_xi": rep.radius_trend[-1][1],
                "radius_decreasing": rep.radius_decreasing(),
                "indicator_decreasing": rep.indicator_decreasing(),
            })
        blowups.append(entry)
    out["blowups"] = blowups
    return out
