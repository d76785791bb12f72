"""End-to-end regression pipeline, MSE reports and the deneutrosophication grid."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .algebra import LabeledNSet, NrsRecord, Triple
from .ingestion import Dataset, MembershipConfig, load_membership_config, percentile_membership
from .membership import DeneutroParams, DegenerateCurveError, label_centroid, neutrosophicate, synthesize
from .prediction import DegenerateNeighborhoodError, PredictedTriple, WeightMode, predict_labels
from .similarity import Measure, MeasureKind


class EvaluationError(ValueError):
    pass


class EmptyTrainingError(EvaluationError):
    pass


class SplitProtocol(str, enum.Enum):
    LEAVE_ONE_OUT = "leave-one-out"
    HOLDOUT = "holdout"


SYNTHESIS_GRID: tuple[DeneutroParams, ...] = tuple(
    DeneutroParams(*p) for p in (
        (0.2, 0.3, 0.5), (0.3, 0.2, 0.5), (0.5, 0.3, 0.2),
        (0.5, 0.2, 0.3), (0.3, 0.5, 0.2), (0.2, 0.5, 0.3),
    )
)


@dataclass(frozen=True)
class PipelineConfig:
    measure: Measure = field(default_factory=lambda: Measure(MeasureKind.EQ65))
    weight_mode: WeightMode = WeightMode.INVERTED
    deneutro: DeneutroParams = field(default_factory=lambda: DeneutroParams(0.5, 0.3, 0.2))
    membership: str | None = None  # path; None derives quartile labels from the data
    split: SplitProtocol = SplitProtocol.LEAVE_ONE_OUT
    seed: int = 0
    holdout_fraction: float = 0.3
    clamp: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight_mode", WeightMode(self.weight_mode))
        object.__setattr__(self, "split", SplitProtocol(self.split))
        if not (0.0 < self.holdout_fraction < 1.0):
            raise EvaluationError("holdout fraction must lie in (0, 1)")

    def echo(self) -> dict:
        m = self.measure
        return {
            "measure": m.kind.short,
            "weights": list(m.weights) if m.weights is not None else None,
            "absolute": m.absolute,
            "weight_mode": self.weight_mode.value,
            "alpha": self.deneutro.alpha,
            "beta": self.deneutro.beta,
            "gamma": self.deneutro.gamma,
            "membership": self.membership or "quartiles",
            "split": self.split.value,
            "seed": self.seed,
            "holdout_fraction": self.holdout_fraction if self.split is SplitProtocol.HOLDOUT else None,
            "clamp": self.clamp,
        }

    @classmethod
    def from_dict(cls, doc: dict, base: Path | None = None) -> "PipelineConfig":
        known = {"measure", "weights", "absolute", "weight_mode", "alpha", "beta", "gamma",
                 "membership", "split", "seed", "holdout_fraction", "clamp"}
        unknown = set(doc) - known
        if unknown:
            raise EvaluationError(f"unknown config keys {sorted(unknown)}")
        w = doc.get("weights")
        measure = Measure(doc.get("measure", "eq65"), tuple(w) if w is not None else None,
                          bool(doc.get("absolute", False)))
        defaults = cls()
        d = defaults.deneutro
        mem = doc.get("membership")
        if mem is not None and base is not None and not Path(mem).is_absolute():
            mem = str(base / mem)
        return cls(
            measure=measure,
            weight_mode=doc.get("weight_mode", defaults.weight_mode),
            deneutro=DeneutroParams(doc.get("alpha", d.alpha), doc.get("beta", d.beta), doc.get("gamma", d.gamma)),
            membership=mem,
            split=doc.get("split", defaults.split),
            seed=int(doc.get("seed", 0)),
            holdout_fraction=float(doc.get("holdout_fraction", defaults.holdout_fraction)),
            clamp=bool(doc.get("clamp", True)),
        )

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        p = Path(path)
        try:
            doc = json.loads(p.read_text())
        except FileNotFoundError:
            raise EvaluationError(f"config not found: {p}") from None
        except json.JSONDecodeError as e:
            raise EvaluationError(f"{p}: invalid JSON ({e})") from None
        if not isinstance(doc, dict):
            raise EvaluationError(f"{p}: expected a JSON object")
        return cls.from_dict(doc, base=p.parent)


@dataclass(frozen=True)
class EvalReport:
    dataset: str
    records: int
    attributes: int
    classes: int
    evaluated: int
    scored: int
    skipped: int
    clamped: int
    mse: float
    elapsed: float
    config: dict

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "dataset": self.dataset,
            "records": self.records,
            "attributes": self.attributes,
            "classes": self.classes,
            "evaluated": self.evaluated,
            "scored": self.scored,
            "skipped": self.skipped,
            "clamped": self.clamped,
            "mse": self.mse,
            "config": self.config,
        }
        if timing:
            d["elapsed_seconds"] = self.elapsed
        return d


REPORT_COLUMNS = (
    "dataset", "measure", "weight_mode", "alpha", "beta", "gamma", "split", "seed",
    "records", "evaluated", "scored", "skipped", "clamped", "mse", "elapsed_seconds",
)


def reports_to_json(reports: Sequence[EvalReport], timing: bool = True) -> str:
    return json.dumps([r.to_dict(timing) for r in reports], indent=2, sort_keys=True) + "\n"


def reports_to_csv(reports: Sequence[EvalReport], timing: bool = True) -> str:
    cols = [c for c in REPORT_COLUMNS if timing or c != "elapsed_seconds"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in reports:
        flat = {**r.to_dict(timing=True), **r.config, "elapsed_seconds": r.elapsed}
        w.writerow([repr(flat[c]) if isinstance(flat[c], float) else flat[c] for c in cols])
    return buf.getvalue()


def mse(predicted: Sequence[float], actual: Sequence[float]) -> float:
    if len(predicted) != len(actual):
        raise EvaluationError(f"length mismatch: {len(predicted)} vs {len(actual)}")
    if not predicted:
        raise EvaluationError("mse of empty sequences")
    return math.fsum((p - a) ** 2 for p, a in zip(predicted, actual)) / len(predicted)


# --- records ------------------------------------------------------------------


def _slot(row: dict, names: Sequence[str], cfg: MembershipConfig) -> LabeledNSet:
    items = []
    for n in names:
        for lm in cfg.attributes[n]:
            items.append((f"{n}:{lm.name}", neutrosophicate(row[n], lm.params)))
    return LabeledNSet(tuple(items))


def build_records(dataset: Dataset, cfg: MembershipConfig) -> list[NrsRecord]:
    """Neutrosophicate every row; the target becomes the single rating set."""
    cfg.check_coverage(dataset.schema)
    fx = [a.name for a in dataset.schema.features]
    fy = [a.name for a in dataset.schema.symptoms]
    out = []
    for k, (row, target) in enumerate(zip(dataset.rows, dataset.targets)):
        d = LabeledNSet(tuple((lm.name, neutrosophicate(target, lm.params)) for lm in cfg.output))
        out.append(NrsRecord(_slot(row, fx, cfg), _slot(row, fy, cfg), (d,), name=str(k)))
    return out


def _clamp_triple(p: PredictedTriple) -> tuple[Triple, bool]:
    vals = [min(1.0, max(0.0, v)) for v in p.as_tuple()]
    return Triple(*vals), vals != list(p.as_tuple())


def crisp_output(
    predictions: Sequence[PredictedTriple],
    cfg: MembershipConfig,
    deneutro: DeneutroParams,
    clamp: bool = True,
) -> tuple[float, bool]:
    """Synthesize each output label, then take the centroid over label anchors."""
    scores, clamped = [], False
    for p in predictions:
        if clamp:
            t, c = _clamp_triple(p)
            clamped |= c
        else:
            t = p
        scores.append(synthesize(t, deneutro))
    return label_centroid(scores, cfg.anchors), clamped


def _split(n: int, config: PipelineConfig) -> list[tuple[int, list[int]]]:
    if config.split is SplitProtocol.LEAVE_ONE_OUT:
        if n < 2:
            raise EmptyTrainingError("leave-one-out needs at least two records")
        return [(q, [j for j in range(n) if j != q]) for q in range(n)]
    idx = list(range(n))
    random.Random(config.seed).shuffle(idx)
    n_test = min(n - 1, max(1, round(config.holdout_fraction * n)))
    if n_test < 1 or n - n_test < 1:
        raise EmptyTrainingError("holdout split leaves no training records")
    train = sorted(idx[n_test:])
    return [(q, train) for q in sorted(idx[:n_test])]


def resolve_membership(dataset: Dataset, config: PipelineConfig) -> MembershipConfig:
    if config.membership is None:
        return percentile_membership(dataset)
    return load_membership_config(config.membership, dataset.schema)


@dataclass(frozen=True)
class RecordPrediction:
    record: int
    label: str
    triple: PredictedTriple
    clamped: bool


def predict_dataset(dataset: Dataset, config: PipelineConfig) -> tuple[list[RecordPrediction], int]:
    """Per-record output-label predictions under the configured split."""
    cfg = resolve_membership(dataset, config)
    records = build_records(dataset, cfg)
    rows, skipped = [], 0
    for q, train in _split(len(records), config):
        try:
            preds = predict_labels(records[q], [records[j] for j in train], config.measure, config.weight_mode)
        except DegenerateNeighborhoodError:
            skipped += 1
            continue
        for lp in preds:
            clamped = config.clamp and _clamp_triple(lp.triple)[1]
            rows.append(RecordPrediction(q, lp.label, lp.triple, clamped))
    return rows, skipped


def run_pipeline(dataset: Dataset, config: PipelineConfig) -> EvalReport:
    """Neutrosophicate, predict from neighbours, deneutrosophicate and score."""
    cfg = resolve_membership(dataset, config)
    records = build_records(dataset, cfg)
    splits = _split(len(records), config)
    start = time.perf_counter()
    predicted, actual = [], []
    skipped = clamped = 0
    for q, train in splits:
        try:
            preds = predict_labels(records[q], [records[j] for j in train], config.measure, config.weight_mode)
            value, c = crisp_output([lp.triple for lp in preds], cfg, config.deneutro, config.clamp)
        except (DegenerateNeighborhoodError, DegenerateCurveError):
            skipped += 1
            continue
        clamped += c
        predicted.append(value)
        actual.append(dataset.targets[q])
    elapsed = time.perf_counter() - start
    if not predicted:
        raise EvaluationError("every evaluation record was skipped")
    return EvalReport(
        dataset=dataset.name,
        records=len(records),
        attributes=len(dataset.schema.attributes),
        classes=len(set(dataset.targets)),
        evaluated=len(splits),
        scored=len(predicted),
        skipped=skipped,
        clamped=clamped,
        mse=mse(predicted, actual),
        elapsed=elapsed,
        config=config.echo(),
    )


def deneutro_grid(
    dataset: Dataset,
    base: PipelineConfig,
    grid: Sequence[DeneutroParams] = SYNTHESIS_GRID,
) -> list[EvalReport]:
    """One report per (alpha, beta, gamma); splits and seed are shared."""
    out = []
    for p in grid:
        if not isinstance(p, DeneutroParams):
            p = DeneutroParams(*p)
        out.append(run_pipeline(dataset, replace(base, deneutro=p)))
    return out


def mse_spread(reports: Sequence[EvalReport]) -> float:
    ms = [r.mse for r in reports]
    return max(ms) - min(ms)
