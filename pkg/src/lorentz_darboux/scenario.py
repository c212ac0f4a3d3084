"""Declarative scenario files.

The format is line based: ``key = value``, ``#`` starts a comment, blank
lines are ignored and every key may appear once. Numeric values accept
plain arithmetic with ``pi`` (``t1 = 2*pi - 1e-9``); pairs are written
``a, b``. Unknown keys are rejected.

Example::

    name = line_neg
    curve = line
    polarization = constant
    polarization.m = 1
    lambda = -1
    initial = 0, 1
    t0 = 0
    t1 = 3
"""
from __future__ import annotations

import ast
import csv
import math
import operator
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .curve import (
    CurveKind,
    PolarizationKind,
    PolarizedCurve,
    arc_length_polarization,
    constant_polarization,
    make_catalog_curve,
    sampled_curve,
)
from .darboux import DarbouxParams, Mode, Tolerances
from .errors import DarbouxError, ParseError, ValidationError
from .splitc import SplitComplex

OUTPUTS = ("csv", "svg_plane", "svg_penrose", "diagnostics")
DEFAULT_OUTPUTS = ("csv", "svg_plane", "svg_penrose", "diagnostics")

# catalog parameters per curve kind: name -> "pair" | "real" | "path"
CURVE_PARAMS = {
    CurveKind.LINE: {"p": "pair", "d": "pair"},
    CurveKind.LIGHTLIKE_LINE: {"c": "pair"},
    CurveKind.EUCLIDEAN_CIRCLE: {"c": "pair", "r": "real"},
    CurveKind.TIMELIKE_CIRCLE: {"c": "pair", "r": "real"},
    CurveKind.SPACELIKE_CIRCLE: {"c": "pair", "r": "real"},
    CurveKind.SAMPLED: {"file": "path"},
}

TOL_KEYS = {"rel", "abs", "s_switch", "max_step", "approach_samples", "approach_min",
            "approach_span", "eps_light"}

TOP_KEYS = {"name", "curve", "polarization", "polarization.m", "lambda", "initial",
            "initial_null", "t0", "t1", "outputs", "mode"}


@dataclass(frozen=True)
class Scenario:
    name: str
    curve: CurveKind
    curve_params: dict
    polarization: PolarizationKind
    lam: float
    t0: float
    t1: float
    initial: SplitComplex | None = None
    initial_null: tuple[float, float] | None = None
    polarization_m: float | None = None
    mode: Mode = Mode.GENERIC
    tolerances: Tolerances = field(default_factory=Tolerances)
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def polarized_curve(self) -> PolarizedCurve:
        if self.curve is CurveKind.SAMPLED:
            c = _load_sampled(self.curve_params["file"])
        else:
            c = make_catalog_curve(self.curve, **self.curve_params)
        if self.polarization is PolarizationKind.ARC_LENGTH:
            pol = arc_length_polarization(c)
        else:
            pol = constant_polarization(self.polarization_m)
        return PolarizedCurve(c, pol)

    def darboux_params(self, pcurve: PolarizedCurve | None = None) -> DarbouxParams:
        pcurve = pcurve or self.polarized_curve()
        if self.initial_null is not None:
            return DarbouxParams.from_offsets(pcurve, self.lam, *self.initial_null, self.t0, self.mode)
        return DarbouxParams(self.lam, self.initial, self.t0, self.mode)

    def with_tolerances(self, **changes) -> "Scenario":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, tolerances=replace(self.tolerances, **changes)) if changes else self


def _load_sampled(path) -> object:
    """Sampled curve from a CSV with columns t, x1, x2, dx1, dx2."""
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise ValidationError("curve.file", str(exc)) from None
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    try:
        data = [[float(v) for v in r] for r in rows]
        return sampled_curve([r[0] for r in data], [r[1:3] for r in data], [r[3:5] for r in data])
    except (ValueError, IndexError, DarbouxError) as exc:
        raise ValidationError("curve.file", str(exc)) from None


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


# -- value parsing ----------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_eval_node(node.operand))
    raise ValueError("unsupported expression")


def parse_real(text: str) -> float:
    """A real number, possibly an arithmetic expression in ``pi``."""
    try:
        value = _eval_node(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError):
        raise ValueError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {text!r}")
    return value


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated numbers, got {text!r}")
    return parse_real(parts[0]), parse_real(parts[1])


# -- parsing ------------------------------------------------------------------------

def _read_pairs(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError("empty key", lineno)
        if not value:
            raise ParseError(f"empty value for {key!r}", lineno)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno)
        if not (key in TOP_KEYS or key.startswith("curve.")
                or (key.startswith("tol.") and key[4:] in TOL_KEYS)):
            raise ParseError(f"unknown key {key!r}", lineno)
        entries[key] = (value, lineno)
    return entries


def parse_scenario(text: str, base_dir: str | Path | None = None) -> Scenario:
    """Parse and validate a scenario; relative curve files resolve against base_dir."""
    entries = _read_pairs(text)

    def get(key, conv=str, default=None, required=False):
        if key not in entries:
            if required:
                raise ValidationError(key, "missing")
            return default
        value, lineno = entries[key]
        try:
            return conv(value)
        except ValueError as exc:
            raise ValidationError(key, f"line {lineno}: {exc}") from None

    name = get("name", required=True)
    if not re.fullmatch(r"[A-Za-z0-9_.-]+", name):
        raise ValidationError("name", "use letters, digits, '_', '.' or '-'")
    get("curve", required=True)
    try:
        kind = get("curve", CurveKind)
    except ValidationError:
        raise ValidationError("curve", f"unknown curve {entries['curve'][0]!r}") from None
    if kind is CurveKind.CUSTOM:
        raise ValidationError("curve", "custom curves cannot be declared in a scenario")

    allowed = CURVE_PARAMS[kind]
    params = {}
    for key, (value, lineno) in entries.items():
        if not key.startswith("curve."):
            continue
        pname = key[len("curve."):]
        if pname not in allowed:
            raise ParseError(f"unknown key {key!r} for curve {kind.value}", lineno)
        typ = allowed[pname]
        if typ == "path":
            path = Path(value)
            if not path.is_absolute() and base_dir is not None:
                path = Path(base_dir) / path
            params[pname] = str(path)
        else:
            params[pname] = get(key, parse_pair if typ == "pair" else parse_real)
    if kind is CurveKind.SAMPLED and "file" not in params:
        raise ValidationError("curve.file", "missing")

    try:
        pol = get("polarization", PolarizationKind, default=PolarizationKind.ARC_LENGTH)
    except ValidationError:
        raise ValidationError("polarization", "expected 'arclength' or 'constant'") from None
    if pol is PolarizationKind.CUSTOM:
        raise ValidationError("polarization", "expected 'arclength' or 'constant'")
    m = get("polarization.m", parse_real)
    if pol is PolarizationKind.CONSTANT:
        if m is None or m == 0.0:
            raise ValidationError("polarization.m", "constant polarization needs a nonzero m")
    elif m is not None:
        raise ValidationError("polarization.m", "only meaningful for constant polarization")

    lam = get("lambda", parse_real, required=True)
    if lam == 0.0:
        raise ValidationError("lambda", "must be nonzero")

    initial = get("initial", parse_pair)
    initial_null = get("initial_null", parse_pair)
    if (initial is None) == (initial_null is None):
        raise ValidationError("initial", "give exactly one of 'initial' and 'initial_null'")

    t0 = get("t0", parse_real, required=True)
    t1 = get("t1", parse_real, required=True)
    if not t1 > t0:
        raise ValidationError("t1", "must exceed t0")

    try:
        mode = get("mode", Mode, default=Mode.GENERIC)
    except ValidationError:
        raise ValidationError("mode", "expected 'generic' or 'alp'") from None
    if mode is Mode.ALP_REGULARIZED and pol is not PolarizationKind.ARC_LENGTH:
        raise ValidationError("mode", "alp mode needs the arc-length polarization")

    outputs = DEFAULT_OUTPUTS
    if "outputs" in entries:
        outputs = tuple(o.strip() for o in entries["outputs"][0].split(",") if o.strip())
        bad = [o for o in outputs if o not in OUTPUTS]
        if bad:
            raise ValidationError("outputs", f"unknown output {bad[0]!r}")

    tol_changes = {}
    for key in entries:
        if key.startswith("tol."):
            conv = (lambda s: int(parse_real(s))) if key == "tol.approach_samples" else parse_real
            tol_changes[key[4:]] = get(key, conv)
    tolerances = replace(Tolerances(), **tol_changes)

    scenario = Scenario(
        name=name, curve=kind, curve_params=params, polarization=pol, lam=lam, t0=t0, t1=t1,
        initial=SplitComplex(*initial) if initial is not None else None,
        initial_null=initial_null, polarization_m=m, mode=mode,
        tolerances=tolerances, outputs=outputs)
    _validate_geometry(scenario)
    return scenario


def _validate_geometry(s: Scenario) -> None:
    try:
        pcurve = s.polarized_curve()
    except ValidationError:
        raise
    except DarbouxError as exc:
        raise ValidationError("curve", str(exc)) from None
    c = pcurve.curve
    if not (c.contains(s.t0) and c.contains(s.t1)):
        raise ValidationError("t0" if not c.contains(s.t0) else "t1",
                              f"outside the curve domain {c.domain}")
    if s.initial_null is not None:
        if s.initial_null == (0.0, 0.0):
            raise ValidationError("initial_null", "initial point coincides with x(t0)")
    elif s.initial == c(s.t0):
        raise ValidationError("initial", "initial point coincides with x(t0)")


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), base_dir=path.parent)
