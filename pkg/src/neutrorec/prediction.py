"""Neighbour-weighted triple prediction and label recommendation."""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlignmentError, LabeledNSet, NrsRecord, Triple
from .similarity import Measure, MeasureKind, SimilarityComponents, as_measure, component_similarity, pair_measure


class PredictionError(ValueError):
    pass


class DegenerateNeighborhoodError(PredictionError):
    pass


class WeightMode(str, enum.Enum):
    AS_STATED = "as-stated"
    INVERTED = "inverted"  # exp(-w): small distance, large weight


@dataclass(frozen=True)
class PredictedTriple:
    """Cumulative prediction: i includes t, f includes i."""

    t: float
    i: float
    f: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t, self.i, self.f)


@dataclass(frozen=True)
class NeighborWeight:
    index: int
    weight: float


def _weight(w) -> float:
    return float(w.weight if isinstance(w, NeighborWeight) else w)


def _weighted_means(neighbors: Sequence[tuple[NeighborWeight | float, Triple]]) -> tuple[float, float, float]:
    if not neighbors:
        raise DegenerateNeighborhoodError("no neighbours")
    ws = [_weight(w) for w, _ in neighbors]
    if any(w < 0 or not math.isfinite(w) for w in ws):
        raise PredictionError("neighbour weights must be finite and nonnegative")
    top = max(ws)
    if not top > 0.0:
        raise DegenerateNeighborhoodError("all neighbour weights are zero")
    # rescale so subnormal weights keep full precision in the products
    ws = [w / top for w in ws]
    total = math.fsum(ws)
    tm = math.fsum(w * t.t for w, (_, t) in zip(ws, neighbors)) / total
    im = math.fsum(w * t.i for w, (_, t) in zip(ws, neighbors)) / total
    fm = math.fsum(w * t.f for w, (_, t) in zip(ws, neighbors)) / total
    return tm, im, fm


def predict_triple(neighbors: Sequence[tuple[NeighborWeight | float, Triple]]) -> PredictedTriple:
    """Weighted means, accumulated: (T, T + I, T + I + F)."""
    tm, im, fm = _weighted_means(neighbors)
    t = tm
    i = t + im
    return PredictedTriple(t, i, i + fm)


def theorem1_identity(p: PredictedTriple, neighbors: Sequence[tuple[NeighborWeight | float, Triple]]) -> float:
    """|t + i + f - (3 mean_T + 2 mean_I + mean_F)|, zero up to rounding."""
    tm, im, fm = _weighted_means(neighbors)
    return abs((p.t + p.i + p.f) - (3.0 * tm + 2.0 * im + fm))


# --- recommendation ------------------------------------------------------------


def score_1(t: Triple) -> float:
    return t.t * (4.0 - t.t - t.i - t.f)


def score_2(t: Triple) -> float:
    return t.t * (3.0 - 2.0 * t.t - t.i - t.f)


_SCORES = {1: score_1, 2: score_2}


def _argmax(xs: Sequence[float]) -> int:
    best = 0
    for k in range(1, len(xs)):
        if xs[k] > xs[best]:
            best = k
    return best


def _levels(levels: LabeledNSet | Sequence[Triple]) -> tuple[Triple, ...]:
    ts = levels.triples if isinstance(levels, LabeledNSet) else tuple(levels)
    if not ts:
        raise PredictionError("need at least one level")
    return ts


def recommend_1(levels: LabeledNSet | Sequence[Triple]) -> int:
    return _argmax([score_1(t) for t in _levels(levels)])


def recommend_2(levels: LabeledNSet | Sequence[Triple]) -> int:
    return _argmax([score_2(t) for t in _levels(levels)])


def mc_recommend(
    per_disease_levels: Sequence[LabeledNSet | Sequence[Triple]],
    disease_weights: Sequence[float],
    variant: int = 1,
) -> int:
    """Argmax over labels of the weight-summed per-disease scores."""
    if variant not in _SCORES:
        raise PredictionError(f"variant must be 1 or 2, got {variant!r}")
    if len(per_disease_levels) != len(disease_weights) or not disease_weights:
        raise PredictionError("need one weight per disease")
    if any(w < 0 for w in disease_weights) or abs(math.fsum(disease_weights) - 1.0) > 1e-12:
        raise PredictionError("disease weights must be nonnegative and sum to 1")
    sets = [_levels(s) for s in per_disease_levels]
    s = len(sets[0])
    if any(len(x) != s for x in sets):
        raise AlignmentError("diseases carry different label counts")
    score = _SCORES[variant]
    totals = [math.fsum(w * score(lv[q]) for w, lv in zip(disease_weights, sets)) for q in range(s)]
    return _argmax(totals)


def find_disagreement(trials: int = 10_000, seed: int = 0, labels: int = 3) -> tuple[Triple, ...] | None:
    """Random level sets until the two selectors pick different labels."""
    rng = random.Random(seed)
    for _ in range(trials):
        levels = tuple(Triple(rng.random(), rng.random(), rng.random()) for _ in range(labels))
        if recommend_1(levels) != recommend_2(levels):
            return levels
    return None


# --- neighbourhood prediction ---------------------------------------------------


@dataclass(frozen=True)
class LabelPrediction:
    disease: int
    label: str
    triple: PredictedTriple


def query_weights(
    query: NrsRecord,
    corpus: Sequence[NrsRecord],
    kind: Measure | MeasureKind | str = MeasureKind.EQ65,
    weight_mode: WeightMode | str = WeightMode.AS_STATED,
) -> list[float]:
    """Neighbour weights for a query whose ratings are unknown.

    The rating component is unavailable, so sx stands in for sd.
    """
    m = as_measure(kind)
    mode = WeightMode(weight_mode)
    out = []
    for rec in corpus:
        sx = component_similarity(query.x, rec.x)
        sy = component_similarity(query.y, rec.y)
        w = pair_measure(m, SimilarityComponents(sx, sy, sx))
        if mode is WeightMode.INVERTED:
            w = math.exp(-w)
        elif w < 0:
            raise PredictionError(f"negative weight {w!r} from {m.describe()} in as-stated mode")
        out.append(w)
    return out


def predict_labels(
    query: NrsRecord,
    corpus: Sequence[NrsRecord],
    kind: Measure | MeasureKind | str = MeasureKind.EQ65,
    weight_mode: WeightMode | str = WeightMode.AS_STATED,
) -> list[LabelPrediction]:
    """Predict every disease label of ``query`` from the corpus records."""
    if not corpus:
        raise PredictionError("empty corpus")
    for rec in corpus:
        if rec.x.names != query.x.names:
            raise AlignmentError("feature labels differ", slot="x")
        if rec.y.names != query.y.names:
            raise AlignmentError("symptom labels differ", slot="y")
        if len(rec.d) != len(corpus[0].d):
            raise AlignmentError("disease slot counts differ", slot="d")
    weights = query_weights(query, corpus, kind, weight_mode)
    out = []
    for k, dset in enumerate(corpus[0].d):
        for name in dset.names:
            nb = [(NeighborWeight(j, w), rec.d[k][name]) for j, (w, rec) in enumerate(zip(weights, corpus))]
            out.append(LabelPrediction(k, name, predict_triple(nb)))
    return out
