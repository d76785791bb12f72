"""Crisp value <-> triple conversion.

Truth is a trapezoid; indeterminacy and falsity are "valleys", i.e. one minus
a trapezoid, so they sit at 1 away from the label and dip towards 0 inside it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .algebra import LabeledNSet, Triple


class MembershipError(ValueError):
    pass


class ConfigurationError(MembershipError):
    pass


class DegenerateCurveError(MembershipError):
    pass


def _check_breakpoints(name: str, pts: Sequence[float]) -> tuple[float, float, float, float]:
    pts = tuple(float(v) for v in pts)
    if len(pts) != 4:
        raise ConfigurationError(f"{name}: expected 4 breakpoints, got {len(pts)}")
    if not all(math.isfinite(v) for v in pts):
        raise ConfigurationError(f"{name}: breakpoints must be finite")
    if any(pts[k] > pts[k + 1] for k in range(3)):
        raise ConfigurationError(f"{name}: breakpoints {pts} are not ascending")
    return pts  # type: ignore[return-value]


def trapezoid(x: float, p: Sequence[float]) -> float:
    """0 outside [p1, p4], 1 on [p2, p3], linear in between."""
    a1, a2, a3, a4 = p
    if a2 <= x <= a3:
        return 1.0
    if x <= a1 or x >= a4:
        return 0.0
    if x < a2:
        return (x - a1) / (a2 - a1)
    return (a4 - x) / (a4 - a3)


@dataclass(frozen=True)
class TrapezoidParams:
    a: tuple[float, float, float, float]
    b: tuple[float, float, float, float]
    c: tuple[float, float, float, float]
    label: str = ""

    def __post_init__(self) -> None:
        tag = self.label or "label"
        object.__setattr__(self, "a", _check_breakpoints(f"{tag}.a", self.a))
        object.__setattr__(self, "b", _check_breakpoints(f"{tag}.b", self.b))
        object.__setattr__(self, "c", _check_breakpoints(f"{tag}.c", self.c))

    @property
    def anchor(self) -> float:
        """Midpoint of the truth plateau."""
        return 0.5 * (self.a[1] + self.a[2])


@dataclass(frozen=True)
class LabelMembership:
    name: str
    params: TrapezoidParams


@dataclass(frozen=True)
class DeneutroParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for k in ("alpha", "beta", "gamma"):
            v = getattr(self, k)
            if not (0.0 <= v <= 1.0):
                raise MembershipError(f"{k}={v!r} outside [0, 1]")
        if abs(self.alpha + self.beta + self.gamma - 1.0) > 1e-9:
            raise MembershipError(
                f"alpha + beta + gamma must be 1, got {self.alpha + self.beta + self.gamma!r}"
            )


def _clamp(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


def neutrosophicate(x: float, p: TrapezoidParams) -> Triple:
    return Triple(
        _clamp(trapezoid(x, p.a)),
        _clamp(1.0 - trapezoid(x, p.b)),
        _clamp(1.0 - trapezoid(x, p.c)),
    )


def neutrosophicate_record(
    attrs: Mapping[str, float],
    config: Mapping[str, Sequence[LabelMembership]],
) -> dict[str, LabeledNSet]:
    """One labelled set per attribute, in the order of ``attrs``."""
    out: dict[str, LabeledNSet] = {}
    for name, value in attrs.items():
        labels = config.get(name)
        if not labels:
            raise ConfigurationError(f"no membership labels configured for attribute {name!r}")
        out[name] = LabeledNSet(tuple((lm.name, neutrosophicate(value, lm.params)) for lm in labels))
    return out


def synthesize(h, d: DeneutroParams) -> float:
    """alpha*T + beta*F/4 + gamma*I/2 for anything with t, i, f attributes."""
    return d.alpha * h.t + d.beta * h.f / 4.0 + d.gamma * h.i / 2.0


def _trapezoid_rule(ys: Sequence[float], h: float) -> float:
    return h * (math.fsum(ys) - 0.5 * (ys[0] + ys[-1]))


def deneutrosophicate(
    curve: Callable[[float], float],
    lo: float,
    hi: float,
    grid_points: int = 1001,
) -> float:
    """Centre of gravity of ``curve`` on [lo, hi] by the composite trapezoid rule."""
    if grid_points < 2:
        raise MembershipError("grid_points must be at least 2")
    if not hi > lo:
        raise MembershipError("interval must have positive length")
    h = (hi - lo) / (grid_points - 1)
    xs = [lo + k * h for k in range(grid_points)]
    xs[-1] = hi
    ys = [float(curve(x)) for x in xs]
    mass = _trapezoid_rule(ys, h)
    if not mass > 0.0:
        raise DegenerateCurveError("curve has zero total mass")
    moment = _trapezoid_rule([x * y for x, y in zip(xs, ys)], h)
    return min(hi, max(lo, moment / mass))


def label_centroid(scores: Sequence[float], anchors: Sequence[float]) -> float:
    """Centre of gravity of per-label scores placed at the label anchors."""
    if len(scores) != len(anchors) or not scores:
        raise MembershipError("scores and anchors must be nonempty and of equal length")
    mass = math.fsum(scores)
    if not mass > 0.0:
        raise DegenerateCurveError("all label scores are zero")
    return math.fsum(s * a for s, a in zip(scores, anchors)) / mass
