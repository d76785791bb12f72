"""Dataset schemas, delimited-file loading, membership configs and built-in data."""
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from .algebra import LabeledNSet, NrsRecord, Triple
from .membership import ConfigurationError, LabelMembership, TrapezoidParams

log = logging.getLogger(__name__)


class IngestionError(ValueError):
    pass


class SchemaError(IngestionError):
    pass


# --- schemas ------------------------------------------------------------------


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    lo: float = -math.inf
    hi: float = math.inf


@dataclass(frozen=True)
class DatasetSchema:
    name: str
    features: tuple[AttributeSpec, ...]
    symptoms: tuple[AttributeSpec, ...]
    target: str
    expected_records: int
    target_map: Mapping[str, float] | None = None
    file: str | None = None
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.features or not self.symptoms:
            raise SchemaError(f"{self.name}: need at least one feature and one symptom column")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError(f"{self.name}: duplicate attribute columns")
        if self.target in names:
            raise SchemaError(f"{self.name}: target column {self.target!r} is also an attribute")
        if self.expected_records <= 0:
            raise SchemaError(f"{self.name}: expected record count must be positive")

    @property
    def attributes(self) -> tuple[AttributeSpec, ...]:
        return self.features + self.symptoms

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any], base: Path | None = None) -> "DatasetSchema":
        def specs(key: str) -> tuple[AttributeSpec, ...]:
            out = []
            for item in doc.get(key, []):
                if isinstance(item, str):
                    out.append(AttributeSpec(item))
                else:
                    lo, hi = item.get("range", [-math.inf, math.inf])
                    out.append(AttributeSpec(item["name"], float(lo), float(hi)))
            return tuple(out)

        try:
            f = doc.get("file")
            if f is not None and base is not None and not Path(f).is_absolute():
                f = str(base / f)
            return cls(
                name=doc["name"],
                features=specs("features"),
                symptoms=specs("symptoms"),
                target=doc["target"],
                expected_records=int(doc["expected_records"]),
                target_map=doc.get("target_map"),
                file=f,
                notes=doc.get("notes", ""),
            )
        except KeyError as e:
            raise SchemaError(f"schema is missing field {e}") from None


def _data_dir() -> Path:
    return Path(str(resources.files("neutrorec") / "data"))


BUILTIN_DATASETS = ("heart", "rhc", "diabetes", "breast", "dmd")


def load_schema(name_or_path: str | Path) -> DatasetSchema:
    """A built-in schema by name, or a schema JSON file."""
    p = Path(name_or_path)
    if str(name_or_path) in BUILTIN_DATASETS:
        p = _data_dir() / "schemas" / f"{name_or_path}.json"
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise IngestionError(f"schema not found: {name_or_path}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{p}: invalid JSON ({e})") from None
    return DatasetSchema.from_dict(doc, base=p.parent)


# --- datasets -------------------------------------------------------------------


@dataclass(frozen=True)
class Dataset:
    schema: DatasetSchema
    rows: tuple[dict[str, float], ...]
    targets: tuple[float, ...]  # normalised to [0, 1]
    dropped: int = 0
    source: str = ""
    columns: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def name(self) -> str:
        return self.schema.name


def _sniff_delimiter(header: str) -> str:
    try:
        return csv.Sniffer().sniff(header, delimiters=",\t;").delimiter
    except csv.Error:
        return "\t" if header.count("\t") > header.count(",") else ","


def load_dataset(path: str | Path | None, schema: DatasetSchema) -> Dataset:
    """Read a delimited file with a header row.

    Rows whose required fields are missing, unparseable or out of range are
    dropped and counted. A record count differing from the schema's
    expectation is logged, not raised.
    """
    path = Path(path if path is not None else (schema.file or ""))
    if not path.is_file():
        raise IngestionError(f"dataset file not found: {path}")
    with path.open(newline="") as fh:
        header = fh.readline()
        if not header.strip():
            raise SchemaError(f"{path}: missing header row")
        delim = _sniff_delimiter(header)
        cols = [c.strip() for c in next(csv.reader([header], delimiter=delim))]
        need = [a.name for a in schema.attributes] + [schema.target]
        missing = [c for c in need if c not in cols]
        if missing:
            raise SchemaError(f"{path}: header lacks columns {missing}")
        idx = {c: cols.index(c) for c in need}
        rows, raw_targets, dropped = [], [], 0
        for rec in csv.reader(fh, delimiter=delim):
            if not rec or all(not v.strip() for v in rec):
                continue
            try:
                row = {}
                for a in schema.attributes:
                    v = float(rec[idx[a.name]])
                    if not (math.isfinite(v) and a.lo <= v <= a.hi):
                        raise ValueError(a.name)
                    row[a.name] = v
                t = rec[idx[schema.target]].strip()
                if schema.target_map is not None:
                    tv = float(schema.target_map[t])
                else:
                    tv = float(t)
                    if not math.isfinite(tv):
                        raise ValueError(schema.target)
            except (ValueError, IndexError, KeyError):
                dropped += 1
                continue
            rows.append(row)
            raw_targets.append(tv)
    if not rows:
        raise IngestionError(f"{path}: no valid rows")
    if schema.target_map is None:
        lo, hi = min(raw_targets), max(raw_targets)
        span = hi - lo
        targets = [0.0 if span == 0 else (v - lo) / span for v in raw_targets]
    else:
        targets = raw_targets
    if len(rows) != schema.expected_records:
        log.warning("%s: loaded %d records, schema expects %d", schema.name, len(rows), schema.expected_records)
    return Dataset(schema, tuple(rows), tuple(targets), dropped, str(path), tuple(cols))


def load_builtin_dataset(name: str) -> Dataset:
    schema = load_schema(name)
    if schema.file is None or not Path(schema.file).is_file():
        raise IngestionError(
            f"no data file is bundled for {name!r}; pass the file path explicitly"
        )
    return load_dataset(schema.file, schema)


# --- membership configs ---------------------------------------------------------


@dataclass(frozen=True)
class MembershipConfig:
    attributes: Mapping[str, tuple[LabelMembership, ...]]
    output: tuple[LabelMembership, ...] = ()

    @property
    def anchors(self) -> tuple[float, ...]:
        return tuple(lm.params.anchor for lm in self.output)

    def check_coverage(self, schema: DatasetSchema) -> None:
        missing = [a.name for a in schema.attributes if not self.attributes.get(a.name)]
        if missing:
            raise ConfigurationError(f"membership config does not cover attributes {missing}")
        if not self.output:
            raise ConfigurationError("membership config has no output labels")

    def to_dict(self) -> dict:
        def labels(seq):
            return {lm.name: {"a": list(lm.params.a), "b": list(lm.params.b), "c": list(lm.params.c)} for lm in seq}

        return {
            "attributes": {k: labels(v) for k, v in self.attributes.items()},
            "output": labels(self.output),
        }


def _labels_from(doc: Mapping[str, Any], owner: str) -> tuple[LabelMembership, ...]:
    out = []
    for name, spec in doc.items():
        try:
            params = TrapezoidParams(spec["a"], spec["b"], spec["c"], label=f"{owner}.{name}")
        except KeyError as e:
            raise ConfigurationError(f"{owner}.{name}: missing breakpoints {e}") from None
        out.append(LabelMembership(name, params))
    return tuple(out)


def membership_from_dict(doc: Mapping[str, Any], schema: DatasetSchema | None = None) -> MembershipConfig:
    attrs = {name: _labels_from(spec, name) for name, spec in doc.get("attributes", {}).items()}
    cfg = MembershipConfig(attrs, _labels_from(doc.get("output", {}), "output"))
    if schema is not None:
        cfg.check_coverage(schema)
    return cfg


def load_membership_config(path: str | Path, schema: DatasetSchema | None = None) -> MembershipConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise IngestionError(f"membership config not found: {path}") from None
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{path}: invalid JSON ({e})") from None
    return membership_from_dict(doc, schema)


def example3_membership() -> MembershipConfig:
    return load_membership_config(_data_dir() / "example3_membership.json")


# Output labels on the unit target scale; anchors 0.125, 0.5, 0.875.
UNIT_OUTPUT_LABELS: tuple[LabelMembership, ...] = (
    LabelMembership("low", TrapezoidParams((0.0, 0.0, 0.25, 0.5), (0.0, 0.0, 0.125, 0.375), (0.0, 0.0, 0.375, 0.625))),
    LabelMembership("mid", TrapezoidParams((0.25, 0.5, 0.5, 0.75), (0.375, 0.5, 0.5, 0.625), (0.125, 0.5, 0.5, 0.875))),
    LabelMembership("high", TrapezoidParams((0.5, 0.75, 1.0, 1.0), (0.625, 0.875, 1.0, 1.0), (0.375, 0.625, 1.0, 1.0))),
)


def _quantile(sorted_vals: Sequence[float], q: float) -> float:
    # linear interpolation between closest ranks
    pos = q * (len(sorted_vals) - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, len(sorted_vals) - 1)
    return sorted_vals[lo] + (pos - lo) * (sorted_vals[hi] - sorted_vals[lo])


def percentile_labels(values: Sequence[float]) -> tuple[LabelMembership, ...]:
    """Low/mid/high labels with breakpoints at the quartiles of ``values``.

    Indeterminacy dips over a narrower window than truth and falsity over a
    wider one, so I is high on the label edges and F vanishes a little beyond
    the truth support.
    """
    if not values:
        raise ConfigurationError("cannot derive labels from no values")
    s = sorted(values)
    p0, p1, p2, p3, p4 = (_quantile(s, q) for q in (0.0, 0.25, 0.5, 0.75, 1.0))

    def shapes(a1: float, a2: float, a3: float, a4: float) -> TrapezoidParams:
        b = (a1 + 0.5 * (a2 - a1), a2, a3, a4 - 0.5 * (a4 - a3))
        c = (a1 - 0.5 * (a2 - a1), a2, a3, a4 + 0.5 * (a4 - a3))
        return TrapezoidParams((a1, a2, a3, a4), b, c)

    return (
        LabelMembership("low", shapes(p0, p0, p1, p2)),
        LabelMembership("mid", shapes(p1, p2, p2, p3)),
        LabelMembership("high", shapes(p2, p3, p4, p4)),
    )


def percentile_membership(dataset: Dataset) -> MembershipConfig:
    attrs = {
        a.name: percentile_labels([row[a.name] for row in dataset.rows])
        for a in dataset.schema.attributes
    }
    return MembershipConfig(attrs, UNIT_OUTPUT_LABELS)


# --- built-in worked example ----------------------------------------------------

_AGE_LABELS = ("old", "middle", "young")
_TEMP_LABELS = ("cold", "medium", "hot")
_FEVER_LABELS = ("L1", "L2", "L3")

_EXAMPLE3 = (
    ("Alex", 30.0, 4.0,
     ((0, 0.8, 1), (0.25, 0.25, 0.5), (0.75, 0.16, 0.25)),
     ((0.64, 0.4, 0.1), (0.73, 0.33, 0.6), (0.6, 0.8, 0.09)),
     ((0.5, 0.3, 0.5), (0.4, 0.7, 0.1), (0.7, 0, 0))),
    ("Linda", 40.0, 15.0,
     ((1, 0, 1), (1, 0.6, 0), (0.25, 1, 1)),
     ((0.66, 0.66, 0.5), (0.25, 0.55, 0.57), (0.47, 0.43, 0.22)),
     ((0.9, 0.1, 0.3), (0, 0, 0.8), (0.7, 0, 0.5))),
    ("Bill", 50.0, 22.0,
     ((0.75, 0, 0.5), (1, 0.4, 0), (0, 1, 1)),
     ((0.53, 0.23, 0.4), (0.8, 0.26, 0.57), (0.47, 0.5, 0.44)),
     ((0.15, 0.03, 0.01), (0.24, 0.75, 0.16), (0.8, 0.3, 0.1))),
    ("John", 55.0, 28.0,
     ((0.4, 1, 0.8), (0.75, 0, 0.25), (0, 1, 1)),
     ((0.13, 0.43, 0.1), (0.2, 0.06, 0.14), (0.11, 0.12, 0.11)),
     ((0.55, 0, 0), (0, 0.7, 0.9), (0.4, 0.4, 0.4))),
)

# Crisp (age, temperature) behind each built-in record.
EXAMPLE3_CRISP: dict[str, tuple[float, float]] = {r[0]: (r[1], r[2]) for r in _EXAMPLE3}


def _lset(names: Sequence[str], triples) -> LabeledNSet:
    return LabeledNSet(tuple((n, Triple(*map(float, t))) for n, t in zip(names, triples)))


def builtin_example3() -> tuple[NrsRecord, ...]:
    """Four patients: age labels, temperature labels and fever levels L1-L3."""
    return tuple(
        NrsRecord(_lset(_AGE_LABELS, age), _lset(_TEMP_LABELS, temp), (_lset(_FEVER_LABELS, fever),), name=name)
        for name, _, _, age, temp, fever in _EXAMPLE3
    )


# --- worked set-operation example -------------------------------------------------


_D_NAMES = ("x1", "x2", "x3", "y1", "y2", "y3")


def builtin_example4() -> tuple[NrsRecord, NrsRecord]:
    """Two records over three features and three symptoms.

    Each record carries one rating set holding a triple per feature and per
    symptom element.
    """
    a = NrsRecord(
        _lset(("x1", "x2", "x3"), ((0.3, 0.5, 0.8), (0, 1, 0), (0.5, 0.2, 0.6))),
        _lset(("y1", "y2", "y3"), ((0, 0.7, 0), (0.4, 0.8, 0.6), (0.2, 0.7, 0.4))),
        (_lset(_D_NAMES, ((0, 1, 0.5), (1, 0, 0.5), (0.4, 1, 0.4), (0, 0.6, 0.2), (0, 0.8, 0.5), (0.8, 0, 0.4))),),
        name="NRS1",
    )
    b = NrsRecord(
        _lset(("x1", "x2", "x3"), ((0.4, 0.3, 0.7), (0, 1, 0), (0.8, 0, 0.5))),
        _lset(("y1", "y2", "y3"), ((0.4, 0.5, 0.8), (0.3, 0.4, 0.7), (0, 0.8, 0))),
        (_lset(_D_NAMES, ((0.3, 0.4, 0.1), (0.5, 0.2, 0.4), (0.6, 0.5, 0.2), (0.2, 0.7, 0.1), (0.8, 0.2, 0.1), (0.8, 0.5, 0.2))),),
        name="NRS2",
    )
    return a, b
