"""Randomised checks of lattice, De Morgan, Kleene, MV, BCK and residuation laws.

Each law is a predicate over one to three triples that returns a violation
magnitude (0.0 when the law holds). A sample fails when its violation exceeds
``TOLERANCE``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    BOTTOM,
    TOP,
    ZERO,
    ComplementVariant,
    Triple,
    _mk,
    bold_intersection,
    bold_sum,
    bounded_diff,
    cart_prod_algebraic,
    cart_prod_minmax,
    convex_combo,
    distance,
    leq_violation,
    prob_sum,
    sym_diff,
    triple_complement,
    triple_intersection,
    triple_union,
)

TOLERANCE = 1e-12


class LawId(str, enum.Enum):
    LATTICE_IDEMPOTENCE = "lattice_idempotence"
    LATTICE_ABSORPTION = "lattice_absorption"
    COMMUTATIVITY = "commutativity"
    ASSOCIATIVITY = "associativity"
    DISTRIBUTIVITY = "distributivity"
    DE_MORGAN_1 = "de_morgan_1"
    DE_MORGAN_2 = "de_morgan_2"
    COMPLEMENT_INVOLUTION = "complement_involution"
    KLEENE_CONDITION = "kleene_condition"
    BOOLEAN_COMPLEMENT = "boolean_complement"
    MV_DOUBLE_NEGATION = "mv_double_negation"
    MV_LUKASIEWICZ_AXIOM = "mv_lukasiewicz_axiom"
    MV_LUKASIEWICZ_AXIOM_JOIN = "mv_lukasiewicz_axiom_join"
    BCK_1 = "bck_1"
    BCK_2 = "bck_2"
    BCK_3 = "bck_3"
    BCK_4 = "bck_4"
    BCK_5 = "bck_5"
    STONE_IDENTITY = "stone_identity"
    RELATIVE_PSEUDOCOMPLEMENT_ADJUNCTION = "relative_pseudocomplement_adjunction"


# Laws a correct implementation must satisfy on every sample.
EXPECTED_TO_HOLD = frozenset({
    LawId.LATTICE_IDEMPOTENCE, LawId.LATTICE_ABSORPTION, LawId.COMMUTATIVITY,
    LawId.ASSOCIATIVITY, LawId.DISTRIBUTIVITY, LawId.DE_MORGAN_1, LawId.DE_MORGAN_2,
    LawId.COMPLEMENT_INVOLUTION, LawId.KLEENE_CONDITION, LawId.MV_DOUBLE_NEGATION,
    LawId.BCK_1, LawId.BCK_2, LawId.BCK_3, LawId.BCK_4, LawId.BCK_5,
    LawId.RELATIVE_PSEUDOCOMPLEMENT_ADJUNCTION,
})
# Laws that are known not to hold for membership triples.
EXPECTED_TO_FAIL = frozenset({
    LawId.BOOLEAN_COMPLEMENT, LawId.STONE_IDENTITY,
    LawId.MV_LUKASIEWICZ_AXIOM, LawId.MV_LUKASIEWICZ_AXIOM_JOIN,
})


@dataclass(frozen=True)
class LawReport:
    law: LawId
    samples: int
    failures: int
    max_violation: float
    first_counterexample: tuple[Triple, ...] | None = None
    variant: str = ComplementVariant.STANDARD.value

    def __post_init__(self) -> None:
        if self.failures == 0 and self.first_counterexample is not None:
            raise ValueError("a passing report cannot carry a counterexample")

    @property
    def status(self) -> str:
        return "holds" if self.failures == 0 else "fails"

    def as_row(self) -> dict:
        return {
            "law": self.law.value,
            "samples": self.samples,
            "failures": self.failures,
            "max_violation": self.max_violation,
            "status": self.status,
            "counterexample": None if self.first_counterexample is None
            else [list(t.as_tuple()) for t in self.first_counterexample],
        }


def relative_pseudocomplement(a: Triple, b: Triple) -> Triple:
    """Largest ``c`` (in containment order) with ``a ∩ c <= b``."""
    t = 1.0 if a.t <= b.t else b.t
    i = 0.0 if a.i >= b.i else b.i
    f = 0.0 if a.f >= b.f else b.f
    return _mk(t, i, f)


# --- law predicates ---------------------------------------------------------

_Cmp = Callable[[Triple], Triple]
_COMMUTATIVE = (
    triple_union, triple_intersection, prob_sum, bold_sum, bold_intersection,
    sym_diff, cart_prod_algebraic, cart_prod_minmax,
    lambda x, y: convex_combo(x, y, 0.3),
)
_ASSOCIATIVE = (triple_union, triple_intersection, prob_sum, bold_sum)


def _idempotence(c: _Cmp, a, b, x):
    return max(distance(triple_union(a, a), a), distance(triple_intersection(a, a), a))


def _absorption(c: _Cmp, a, b, x):
    return max(
        distance(triple_union(a, triple_intersection(a, b)), a),
        distance(triple_intersection(a, triple_union(a, b)), a),
    )


def _commutativity(c: _Cmp, a, b, x):
    return max(distance(op(a, b), op(b, a)) for op in _COMMUTATIVE)


def _associativity(c: _Cmp, a, b, x):
    return max(distance(op(op(a, b), x), op(a, op(b, x))) for op in _ASSOCIATIVE)


def _distributivity(c: _Cmp, a, b, x):
    u, n = triple_union, triple_intersection
    return max(
        distance(n(a, u(b, x)), u(n(a, b), n(a, x))),
        distance(u(a, n(b, x)), n(u(a, b), u(a, x))),
    )


def _de_morgan_1(c: _Cmp, a, b, x):
    return distance(c(triple_union(a, b)), triple_intersection(c(a), c(b)))


def _de_morgan_2(c: _Cmp, a, b, x):
    return distance(c(triple_intersection(a, b)), triple_union(c(a), c(b)))


def _involution(c: _Cmp, a, b, x):
    return distance(c(c(a)), a)


def _kleene(c: _Cmp, a, b, x):
    return leq_violation(triple_intersection(a, c(a)), triple_union(b, c(b)))


def _boolean_complement(c: _Cmp, a, b, x):
    return distance(triple_intersection(a, c(a)), BOTTOM)


def _stone(c: _Cmp, a, b, x):
    return distance(triple_union(c(a), a), TOP)


def _mv_lukasiewicz(c: _Cmp, a, b, x):
    n = triple_intersection
    return distance(n(c(n(c(a), b)), b), n(c(n(c(b), a)), a))


def _mv_lukasiewicz_join(c: _Cmp, a, b, x):
    u = triple_union
    return distance(u(c(u(c(a), b)), b), u(c(u(c(b), a)), a))


_d = bounded_diff


def _bck_1(c: _Cmp, a, b, x):
    return distance(_d(_d(_d(a, b), _d(a, x)), _d(x, b)), ZERO)


def _bck_2(c: _Cmp, a, b, x):
    return distance(_d(_d(a, _d(a, b)), b), ZERO)


def _bck_3(c: _Cmp, a, b, x):
    return distance(_d(a, a), ZERO)


def _bck_4(c: _Cmp, a, b, x):
    # antisymmetry; (a, a) keeps the premise from being vacuous
    worst = 0.0
    for p, q in ((a, b), (a, a)):
        if distance(_d(p, q), ZERO) <= TOLERANCE and distance(_d(q, p), ZERO) <= TOLERANCE:
            worst = max(worst, distance(p, q))
    return worst


def _bck_5(c: _Cmp, a, b, x):
    return distance(_d(ZERO, a), ZERO)


def _adjunction(c: _Cmp, a, b, x):
    r = relative_pseudocomplement(a, b)
    worst = 0.0
    for cand in (x, r):
        lhs = leq_violation(cand, r)
        rhs = leq_violation(triple_intersection(a, cand), b)
        if (lhs <= TOLERANCE) != (rhs <= TOLERANCE):
            worst = max(worst, lhs, rhs)
    return worst


_PREDICATES: dict[LawId, Callable] = {
    LawId.LATTICE_IDEMPOTENCE: _idempotence,
    LawId.LATTICE_ABSORPTION: _absorption,
    LawId.COMMUTATIVITY: _commutativity,
    LawId.ASSOCIATIVITY: _associativity,
    LawId.DISTRIBUTIVITY: _distributivity,
    LawId.DE_MORGAN_1: _de_morgan_1,
    LawId.DE_MORGAN_2: _de_morgan_2,
    LawId.COMPLEMENT_INVOLUTION: _involution,
    LawId.KLEENE_CONDITION: _kleene,
    LawId.BOOLEAN_COMPLEMENT: _boolean_complement,
    LawId.MV_DOUBLE_NEGATION: _involution,
    LawId.MV_LUKASIEWICZ_AXIOM: _mv_lukasiewicz,
    LawId.MV_LUKASIEWICZ_AXIOM_JOIN: _mv_lukasiewicz_join,
    LawId.BCK_1: _bck_1,
    LawId.BCK_2: _bck_2,
    LawId.BCK_3: _bck_3,
    LawId.BCK_4: _bck_4,
    LawId.BCK_5: _bck_5,
    LawId.STONE_IDENTITY: _stone,
    LawId.RELATIVE_PSEUDOCOMPLEMENT_ADJUNCTION: _adjunction,
}


def _sample(sample_count: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).random((sample_count, 3, 3))


def _cases(draws: np.ndarray, probes: Sequence[Sequence[Triple]]) -> list[tuple[Triple, Triple, Triple]]:
    cases: list[tuple[Triple, Triple, Triple]] = []
    for p in probes:
        p = tuple(p)
        cases.append(tuple((p + (p[0],) * 3)[:3]))  # type: ignore[arg-type]
    for row in draws.tolist():
        cases.append((_mk(*row[0]), _mk(*row[1]), _mk(*row[2])))
    return cases


def _run(law: LawId, cases, variant: ComplementVariant) -> LawReport:
    pred = _PREDICATES[law]

    def comp(t: Triple) -> Triple:
        return triple_complement(t, variant)

    failures = 0
    worst = 0.0
    first = None
    for a, b, x in cases:
        v = pred(comp, a, b, x)
        if v > worst:
            worst = v
        if v > TOLERANCE:
            failures += 1
            if first is None:
                first = (a, b, x)
    return LawReport(law, len(cases), failures, worst, first, variant.value)


def check_law(
    law: LawId | str,
    sample_count: int,
    seed: int,
    *,
    probes: Sequence[Sequence[Triple]] = (),
    variant: ComplementVariant | str = ComplementVariant.STANDARD,
) -> LawReport:
    """Evaluate one law on ``sample_count`` seeded uniform samples.

    ``probes`` are extra hand-picked argument tuples (1 to 3 triples, the rest
    padded with the first) evaluated before the random samples.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    return _run(LawId(law), _cases(_sample(sample_count, seed), probes), ComplementVariant(variant))


def audit_all(
    sample_count: int,
    seed: int,
    *,
    variant: ComplementVariant | str = ComplementVariant.STANDARD,
) -> list[LawReport]:
    """Run every law on the same seeded samples, in declaration order."""
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    cases = _cases(_sample(sample_count, seed), ())
    variant = ComplementVariant(variant)
    return [_run(law, cases, variant) for law in LawId]
