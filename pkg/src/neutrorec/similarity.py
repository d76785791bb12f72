"""Component similarities between records, pair measures and pair matrices.

The component score is a normalised max-abs distance: 0 for identical label
sets, growing as they drift apart.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import AlignmentError, LabeledNSet, NrsRecord


class SimilarityError(ValueError):
    pass


class IncompleteComponentsError(SimilarityError):
    pass


class WeightError(SimilarityError):
    pass


class MeasureKind(str, enum.Enum):
    EQ60 = "eq60_union_intersection"
    EQ65 = "eq65_prob_sum"
    EQ67 = "eq67_bold_sum"
    EQ69 = "eq69_bounded_diff"
    EQ71 = "eq71_sym_diff"

    @property
    def short(self) -> str:
        return self.value[:4]

    @classmethod
    def parse(cls, s: "MeasureKind | str") -> "MeasureKind":
        if isinstance(s, cls):
            return s
        for k in cls:
            if s in (k.value, k.short):
                return k
        raise SimilarityError(f"unknown measure {s!r}")


@dataclass(frozen=True)
class Measure:
    """A pair measure plus optional branch weights and flags.

    ``absolute`` switches eq71 to absolute differences per branch.
    """

    kind: MeasureKind
    weights: tuple[float, float] | None = None
    absolute: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", MeasureKind.parse(self.kind))
        if self.weights is not None:
            w1, w2 = (float(w) for w in self.weights)
            if w1 < 0 or w2 < 0 or abs(w1 + w2 - 1.0) > 1e-12:
                raise WeightError(f"weights must be nonnegative and sum to 1, got ({w1}, {w2})")
            object.__setattr__(self, "weights", (w1, w2))

    def describe(self) -> str:
        s = self.kind.short
        if self.weights is not None:
            s += f" w1={self.weights[0]:g} w2={self.weights[1]:g}"
        if self.absolute:
            s += " absolute"
        return s


def as_measure(m: Measure | MeasureKind | str) -> Measure:
    return m if isinstance(m, Measure) else Measure(MeasureKind.parse(m))


@dataclass(frozen=True)
class SimilarityComponents:
    sx: float
    sy: float
    sd: float | None = None

    def __post_init__(self) -> None:
        for k in ("sx", "sy", "sd"):
            v = getattr(self, k)
            if v is not None and not (0.0 <= v <= 1.0):
                raise SimilarityError(f"{k}={v!r} outside [0, 1]")


def component_similarity(A: LabeledNSet, B: LabeledNSet) -> float:
    """(1 / 2r) * sum over labels of the largest absolute component gap."""
    if A.names != B.names:
        raise AlignmentError(f"label schemas differ: {A.names} vs {B.names}")
    if len(A) == 0:
        raise AlignmentError("cannot compare empty label sets")
    total = math.fsum(
        max(abs(a.t - b.t), abs(a.i - b.i), abs(a.f - b.f))
        for a, b in zip(A.triples, B.triples)
    )
    return total / (2 * len(A))


def record_components(a: NrsRecord, b: NrsRecord, *, with_ratings: bool = True) -> SimilarityComponents:
    """Components for a record pair; with several diseases sd is their mean."""
    sx = component_similarity(a.x, b.x)
    sy = component_similarity(a.y, b.y)
    if not with_ratings:
        return SimilarityComponents(sx, sy)
    if len(a.d) != len(b.d):
        raise AlignmentError("disease slot counts differ", slot="d")
    sd = math.fsum(component_similarity(p, q) for p, q in zip(a.d, b.d)) / len(a.d)
    return SimilarityComponents(sx, sy, sd)


def _psum(x: float, y: float) -> float:
    return x + y - x * y


def pair_measure(kind: Measure | MeasureKind | str, c: SimilarityComponents) -> float:
    """Combine (sx, sy, sd) into one score for a record pair."""
    m = as_measure(kind)
    if c.sd is None:
        raise IncompleteComponentsError("rating component sd is missing")
    sx, sy, sd = c.sx, c.sy, c.sd
    w1, w2 = m.weights if m.weights is not None else (1.0, 1.0)
    k = m.kind
    if k is MeasureKind.EQ60:
        return max(w1 * min(sx, sy), w2 * min(sy, sd))
    if k is MeasureKind.EQ65:
        return min(w1 * _psum(sx, sy), w2 * _psum(sy, sd))
    if k is MeasureKind.EQ67:
        return min(w1 * min(1.0, sx + sy), w2 * min(1.0, sy + sd))
    if k is MeasureKind.EQ69:
        return max(w1 * max(0.0, sx - sy), w2 * max(0.0, sy - sd))
    d1, d2 = sx - sy, sy - sd
    if m.absolute:
        d1, d2 = abs(d1), abs(d2)
    return w1 * d1 + w2 * d2


def weighted_pair_measure(
    kind: MeasureKind | str, c: SimilarityComponents, w1: float, w2: float
) -> float:
    return pair_measure(Measure(MeasureKind.parse(kind), (w1, w2)), c)


_AGG = {
    MeasureKind.EQ60: max,
    MeasureKind.EQ65: lambda a, b: a + b,
    MeasureKind.EQ67: lambda a, b: a * b,
    MeasureKind.EQ69: lambda a, b: a + b,
    MeasureKind.EQ71: lambda a, b: a + b,
}
_HALVABLE = {MeasureKind.EQ65, MeasureKind.EQ69, MeasureKind.EQ71}


@dataclass(frozen=True)
class SimilarityMatrix:
    measure: Measure
    values: np.ndarray

    def to_csv(self, labels: Sequence[str] | None = None) -> str:
        n = self.values.shape[0]
        labels = list(labels) if labels is not None else [str(k + 1) for k in range(n)]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self.measure.describe()] + labels)
        for lab, row in zip(labels, self.values.tolist()):
            w.writerow([lab] + [repr(float(v)) for v in row])
        return buf.getvalue()


def similarity_matrix(
    kind: Measure | MeasureKind | str,
    rows: Sequence[SimilarityComponents],
    *,
    normalize: bool = False,
) -> SimilarityMatrix:
    """cell(i, j) = agg(v_i, v_j) where v_k is the pair measure of row k.

    agg is max for eq60, the product for eq67 and the sum otherwise.
    ``normalize`` halves the summed kinds so they fall back into [-1, 1].
    """
    m = as_measure(kind)
    if not rows:
        raise SimilarityError("need at least one row")
    v = [pair_measure(m, c) for c in rows]
    agg = _AGG[m.kind]
    n = len(v)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = agg(v[i], v[j])
    if normalize and m.kind in _HALVABLE:
        out /= 2.0
    return SimilarityMatrix(m, out)
