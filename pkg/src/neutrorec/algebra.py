"""Neutrosophic triples, labelled sets, recommender records and their set algebra.

Every operation is pure and works on immutable values. Scalar operations take
two :class:`Triple` values; :func:`nrs_combine` lifts them label-by-label onto
whole :class:`NrsRecord` values.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence


class AlgebraError(ValueError):
    """Base class for invalid inputs to the algebra."""


class AlignmentError(AlgebraError):
    """Two records or label sets cannot be aligned."""

    def __init__(self, message: str, slot: str | None = None):
        super().__init__(message if slot is None else f"{slot}: {message}")
        self.slot = slot


class DomainError(AlgebraError):
    """A parameter or operand lies outside its admissible domain."""


@dataclass(frozen=True, slots=True)
class Triple:
    """One (truth, indeterminacy, falsity) membership value."""

    t: float
    i: float
    f: float

    def __post_init__(self) -> None:
        for name in ("t", "i", "f"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):  # also rejects NaN
                raise DomainError(f"{name}={v!r} outside [0, 1]")

    def __iter__(self) -> Iterator[float]:
        yield self.t
        yield self.i
        yield self.f

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t, self.i, self.f)

    def isclose(self, other: "Triple", tol: float = 1e-12) -> bool:
        return distance(self, other) <= tol


def _mk(t: float, i: float, f: float) -> Triple:
    # Skips validation; callers guarantee closure in [0, 1].
    obj = object.__new__(Triple)
    object.__setattr__(obj, "t", t)
    object.__setattr__(obj, "i", i)
    object.__setattr__(obj, "f", f)
    return obj


TOP = Triple(1.0, 0.0, 0.0)
BOTTOM = Triple(0.0, 1.0, 1.0)
ZERO = Triple(0.0, 0.0, 0.0)
ONE = Triple(1.0, 1.0, 1.0)


def distance(a: Triple, b: Triple) -> float:
    """Largest absolute componentwise difference."""
    return max(abs(a.t - b.t), abs(a.i - b.i), abs(a.f - b.f))


# --- complement -------------------------------------------------------------


class ComplementVariant(str, enum.Enum):
    STANDARD = "standard"  # (F, 1 - I, T)
    SWAP = "swap"  # (F, I, T)
    CYCLIC = "cyclic"  # T' = F, F' = I, I' = T; not involutive
    NEGATION = "negation"  # (1 - T, 1 - I, 1 - F)


def triple_complement(a: Triple, variant: ComplementVariant | str = ComplementVariant.STANDARD) -> Triple:
    """Complement of a triple.

    The default reverses the indeterminacy order as well as swapping truth and
    falsity, which makes union/intersection De Morgan dual. ``"swap"`` keeps
    the indeterminacy untouched and ``"cyclic"`` rotates the three components;
    both are kept for audits. ``"negation"`` negates each component in place.
    """
    variant = ComplementVariant(variant)
    if variant is ComplementVariant.STANDARD:
        return _mk(a.f, 1.0 - a.i, a.t)
    if variant is ComplementVariant.SWAP:
        return _mk(a.f, a.i, a.t)
    if variant is ComplementVariant.NEGATION:
        return _mk(1.0 - a.t, 1.0 - a.i, 1.0 - a.f)
    return _mk(a.f, a.t, a.i)


# --- lattice operations and order --------------------------------------------


def triple_union(a: Triple, b: Triple) -> Triple:
    return _mk(max(a.t, b.t), min(a.i, b.i), min(a.f, b.f))


def triple_intersection(a: Triple, b: Triple) -> Triple:
    return _mk(min(a.t, b.t), max(a.i, b.i), max(a.f, b.f))


def triple_leq(a: Triple, b: Triple) -> bool:
    """Containment order: more truth, less indeterminacy, less falsity is larger."""
    return a.t <= b.t and a.i >= b.i and a.f >= b.f


def leq_violation(a: Triple, b: Triple) -> float:
    """How far ``a <= b`` is from holding (0.0 when it holds)."""
    return max(0.0, a.t - b.t, b.i - a.i, b.f - a.f)


# --- arithmetic-style operations ---------------------------------------------


def prob_sum(a: Triple, b: Triple) -> Triple:
    return _mk(a.t + b.t - a.t * b.t, a.i + b.i - a.i * b.i, a.f + b.f - a.f * b.f)


def bold_sum(a: Triple, b: Triple) -> Triple:
    return _mk(min(1.0, a.t + b.t), min(1.0, a.i + b.i), min(1.0, a.f + b.f))


def bold_intersection(a: Triple, b: Triple) -> Triple:
    return _mk(max(0.0, a.t + b.t - 1.0), max(0.0, a.i + b.i - 1.0), max(0.0, a.f + b.f - 1.0))


def bounded_diff(a: Triple, b: Triple) -> Triple:
    return _mk(max(0.0, a.t - b.t), max(0.0, a.i - b.i), max(0.0, a.f - b.f))


def sym_diff(a: Triple, b: Triple) -> Triple:
    return _mk(abs(a.t - b.t), abs(a.i - b.i), abs(a.f - b.f))


def convex_combo(a: Triple, b: Triple, lam: float) -> Triple:
    """lam * min + (1 - lam) * max, componentwise."""
    if not (0.0 <= lam <= 1.0):
        raise DomainError(f"lambda={lam!r} outside [0, 1]")

    def mix(x: float, y: float) -> float:
        lo, hi = (x, y) if x <= y else (y, x)
        # clamp guards against 1 ulp overshoot of hi
        return min(hi, lam * lo + (1.0 - lam) * hi)

    return _mk(mix(a.t, b.t), mix(a.i, b.i), mix(a.f, b.f))


def cart_prod_algebraic(a: Triple, b: Triple) -> Triple:
    return _mk(a.t * b.t, a.i * b.i, a.f * b.f)


def cart_prod_minmax(a: Triple, b: Triple) -> Triple:
    return _mk(min(a.t, b.t), max(a.i, b.i), min(a.f, b.f))


# --- operation kinds ----------------------------------------------------------


class OpKind(str, enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    PROB_SUM = "prob_sum"
    BOLD_SUM = "bold_sum"
    BOLD_INTERSECTION = "bold_intersection"
    BOUNDED_DIFF = "bounded_diff"
    SYM_DIFF = "sym_diff"
    CONVEX_COMBO = "convex_combo"
    CART_PROD_ALGEBRAIC = "cart_prod_algebraic"
    CART_PROD_MINMAX = "cart_prod_minmax"


_JOIN_FAMILY = {OpKind.UNION, OpKind.PROB_SUM, OpKind.BOLD_SUM, OpKind.SYM_DIFF, OpKind.CONVEX_COMBO}
_MEET_FAMILY = {OpKind.INTERSECTION, OpKind.BOLD_INTERSECTION}
_PRODUCTS = {OpKind.CART_PROD_ALGEBRAIC, OpKind.CART_PROD_MINMAX}

_SCALAR_OPS: dict[OpKind, Callable[[Triple, Triple], Triple]] = {
    OpKind.UNION: triple_union,
    OpKind.INTERSECTION: triple_intersection,
    OpKind.PROB_SUM: prob_sum,
    OpKind.BOLD_SUM: bold_sum,
    OpKind.BOLD_INTERSECTION: bold_intersection,
    OpKind.BOUNDED_DIFF: bounded_diff,
    OpKind.SYM_DIFF: sym_diff,
    OpKind.CART_PROD_ALGEBRAIC: cart_prod_algebraic,
    OpKind.CART_PROD_MINMAX: cart_prod_minmax,
}


def scalar_op(kind: OpKind | str, lam: float | None = None) -> Callable[[Triple, Triple], Triple]:
    """Return the binary triple operation for ``kind``.

    ``lam`` must be given exactly when ``kind`` is ``convex_combo``.
    """
    kind = OpKind(kind)
    if kind is OpKind.CONVEX_COMBO:
        if lam is None:
            raise DomainError("convex_combo requires lambda")
        if not (0.0 <= lam <= 1.0):
            raise DomainError(f"lambda={lam!r} outside [0, 1]")
        return lambda a, b: convex_combo(a, b, lam)
    if lam is not None:
        raise DomainError(f"lambda is only meaningful for convex_combo, not {kind.value}")
    return _SCALAR_OPS[kind]


# --- labelled sets and records -----------------------------------------------


@dataclass(frozen=True)
class LabeledNSet:
    """Ordered (label, Triple) pairs with unique label names."""

    labels: tuple[tuple[str, Triple], ...]

    def __post_init__(self) -> None:
        labels = tuple((str(n), t) for n, t in self.labels)
        object.__setattr__(self, "labels", labels)
        names = [n for n, _ in labels]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate label names in {names}")
        for n, t in labels:
            if not isinstance(t, Triple):
                raise AlgebraError(f"label {n!r} does not carry a Triple")

    @classmethod
    def of(cls, items: dict[str, Triple] | Iterable[tuple[str, Triple]]) -> "LabeledNSet":
        if isinstance(items, dict):
            items = items.items()
        return cls(tuple(items))

    @classmethod
    def from_tuples(cls, items: dict[str, Sequence[float]]) -> "LabeledNSet":
        return cls(tuple((n, Triple(*v)) for n, v in items.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.labels)

    @property
    def triples(self) -> tuple[Triple, ...]:
        return tuple(t for _, t in self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[tuple[str, Triple]]:
        return iter(self.labels)

    def __getitem__(self, name: str) -> Triple:
        for n, t in self.labels:
            if n == name:
                return t
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(n == name for n, _ in self.labels)

    def isclose(self, other: "LabeledNSet", tol: float = 1e-12) -> bool:
        return self.names == other.names and all(
            a.isclose(b, tol) for a, b in zip(self.triples, other.triples)
        )


@dataclass(frozen=True)
class NrsRecord:
    """Patient features ``x``, symptoms ``y`` and one rating set per disease."""

    x: LabeledNSet
    y: LabeledNSet
    d: tuple[LabeledNSet, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(self.d))
        if not self.d:
            raise AlgebraError("a record needs at least one disease slot")

    def slots(self) -> Iterator[tuple[str, LabeledNSet]]:
        yield "x", self.x
        yield "y", self.y
        for k, s in enumerate(self.d):
            yield f"d{k + 1}", s

    def isclose(self, other: "NrsRecord", tol: float = 1e-12) -> bool:
        return len(self.d) == len(other.d) and all(
            a.isclose(b, tol) for (_, a), (_, b) in zip(self.slots(), other.slots())
        )


def _combine_sets(kind: OpKind, op: Callable[[Triple, Triple], Triple], a: LabeledNSet, b: LabeledNSet) -> LabeledNSet:
    if kind in _PRODUCTS:
        return LabeledNSet(tuple(
            (f"({na},{nb})", op(ta, tb)) for na, ta in a.labels for nb, tb in b.labels
        ))
    if kind in _JOIN_FAMILY:
        names = list(a.names) + [n for n in b.names if n not in a]
        return LabeledNSet(tuple(
            (n, op(a[n] if n in a else BOTTOM, b[n] if n in b else BOTTOM)) for n in names
        ))
    if kind in _MEET_FAMILY:
        return LabeledNSet(tuple((n, op(t, b[n])) for n, t in a.labels if n in b))
    # bounded difference: A's labels; labels absent from B are left as they are
    return LabeledNSet(tuple((n, op(t, b[n]) if n in b else t) for n, t in a.labels))


def nrs_combine(kind: OpKind | str, A: NrsRecord, B: NrsRecord, lam: float | None = None) -> NrsRecord:
    """Apply a binary operation slot-by-slot and label-by-label.

    Label alignment when the two records carry different labels in a slot:
    union-like operations take the label union and treat a missing label as
    the bottom triple (0, 1, 1); intersection-like operations keep shared labels
    only; the bounded difference keeps A's labels; Cartesian products pair
    every label of A with every label of B.
    """
    kind = OpKind(kind)
    op = scalar_op(kind, lam)
    if len(A.d) != len(B.d):
        raise AlignmentError(f"records carry {len(A.d)} and {len(B.d)} disease slots", slot="d")
    x = _combine_sets(kind, op, A.x, B.x)
    y = _combine_sets(kind, op, A.y, B.y)
    d = tuple(_combine_sets(kind, op, da, db) for da, db in zip(A.d, B.d))
    return NrsRecord(x, y, d)


def nrs_complement(
    A: NrsRecord,
    universe: NrsRecord,
    variant: ComplementVariant | str = ComplementVariant.STANDARD,
) -> NrsRecord:
    """Complement of a record relative to a universe record.

    Feature and symptom slots are crisp parts: the result holds the universe's
    labels that ``A`` does not carry (with the universe's triples). Disease
    slots are complemented triple by triple. When ``A`` is a restriction of
    ``universe``, complementing twice returns ``A``.
    """
    if len(A.d) != len(universe.d):
        raise AlignmentError("disease slot count differs from the universe", slot="d")

    def crisp(slot: str, part: LabeledNSet, whole: LabeledNSet) -> LabeledNSet:
        missing = [n for n in part.names if n not in whole]
        if missing:
            raise DomainError(f"{slot}: labels {missing} are not in the universe")
        return LabeledNSet(tuple((n, t) for n, t in whole.labels if n not in part))

    d = []
    for k, (da, du) in enumerate(zip(A.d, universe.d)):
        missing = [n for n in da.names if n not in du]
        if missing:
            raise DomainError(f"d{k + 1}: labels {missing} are not in the universe")
        d.append(LabeledNSet(tuple((n, triple_complement(t, variant)) for n, t in da.labels)))
    return NrsRecord(crisp("x", A.x, universe.x), crisp("y", A.y, universe.y), tuple(d), name=A.name)


def is_finite_triple(values: Sequence[float]) -> bool:
    return len(values) == 3 and all(math.isfinite(v) for v in values)
