"""Recompute the worked four-patient example and diff it against reference values."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import golden
from .algebra import NrsRecord
from .ingestion import builtin_example3
from .similarity import MeasureKind, SimilarityComponents, record_components, similarity_matrix

MATRIX_KINDS = ("eq60", "eq65", "eq67", "eq69", "eq71")


def example3_components(records: Sequence[NrsRecord] | None = None) -> list[SimilarityComponents]:
    recs = builtin_example3() if records is None else records
    return [record_components(a, b) for a, b in itertools.combinations(recs, 2)]


def reference_components() -> list[SimilarityComponents]:
    return [SimilarityComponents(*c) for c in golden.COMPONENTS]


@dataclass(frozen=True)
class CellCheck:
    table: str
    row: int
    col: int
    computed: float
    expected: float

    @property
    def error(self) -> float:
        return abs(self.computed - self.expected)


@dataclass(frozen=True)
class Reproduction:
    tables: dict[str, list[list[float]]]
    checks: list[CellCheck]
    tolerance: float

    def failures(self) -> list[CellCheck]:
        return [c for c in self.checks if c.error > self.tolerance]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def summary(self) -> dict[str, tuple[int, int]]:
        """table -> (passing cells, total cells)"""
        out: dict[str, list[int]] = {}
        for c in self.checks:
            s = out.setdefault(c.table, [0, 0])
            s[1] += 1
            s[0] += c.error <= self.tolerance
        return {k: (v[0], v[1]) for k, v in out.items()}

    def render(self) -> str:
        lines = []
        for name, rows in self.tables.items():
            header = "components (sx, sy, sd)" if name == "components" else f"matrix {name}"
            lines.append(f"# {header}")
            for r in rows:
                lines.append(",".join(f"{v:.5f}" for v in r))
            ok, total = self.summary()[name]
            lines.append(f"# {name}: {ok}/{total} cells within {self.tolerance:g}")
        for c in self.failures():
            lines.append(
                f"MISMATCH {c.table}[{c.row + 1}][{c.col + 1}] computed={c.computed:.6f} "
                f"expected={c.expected:.6f} error={c.error:.6f}"
            )
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines) + "\n"


def reproduce_example3(tolerance: float = 5e-3, *, matrices_from_reference: bool = False) -> Reproduction:
    """Components from the built-in records, then the five pair matrices.

    With ``matrices_from_reference`` the matrices are built from the
    reference components instead of the recomputed ones.
    """
    comps = example3_components()
    tables: dict[str, list[list[float]]] = {
        "components": [[c.sx, c.sy, c.sd] for c in comps],
    }
    checks = [
        CellCheck("components", i, j, tables["components"][i][j], golden.COMPONENTS[i][j])
        for i in range(len(comps)) for j in range(3)
    ]
    source = reference_components() if matrices_from_reference else comps
    for kind in MATRIX_KINDS:
        m = similarity_matrix(MeasureKind.parse(kind), source).values.tolist()
        tables[kind] = m
        exp = golden.MATRICES[kind]
        checks += [CellCheck(kind, i, j, m[i][j], exp[i][j]) for i in range(6) for j in range(6)]
    return Reproduction(tables, checks, tolerance)
