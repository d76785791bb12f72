"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 invalid input or configuration,
3 runtime or data error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import ComplementVariant
from .audit import audit_all
from .evaluation import (
    EmptyTrainingError,
    PipelineConfig,
    SYNTHESIS_GRID,
    deneutro_grid,
    mse_spread,
    predict_dataset,
    reports_to_csv,
    reports_to_json,
    run_pipeline,
)
from .ingestion import IngestionError, SchemaError, builtin_example3, load_dataset, load_schema
from .membership import DegenerateCurveError, DeneutroParams
from .prediction import DegenerateNeighborhoodError, WeightMode, predict_labels
from .reproduce import example3_components, reproduce_example3
from .similarity import Measure, MeasureKind, similarity_matrix
from .stats import anova_one_way, kruskal_wallis

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_RUNTIME = 0, 1, 2, 3
MEASURES = ("eq60", "eq65", "eq67", "eq69", "eq71")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _measure(args) -> Measure:
    weights = None
    if args.w1 is not None or args.w2 is not None:
        if args.w1 is None or args.w2 is None:
            raise ValueError("--w1 and --w2 must be given together")
        weights = (args.w1, args.w2)
    return Measure(MeasureKind.parse(args.measure), weights, getattr(args, "absolute", False))


def _pipeline_config(args) -> PipelineConfig:
    cfg = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "membership", None):
        cfg = replace(cfg, membership=args.membership)
    return cfg


def _dataset(args):
    schema = load_schema(args.dataset)
    if not args.data and schema.file is None:
        raise IngestionError(f"no data file is bundled for {args.dataset!r}; pass --data")
    return load_dataset(args.data or schema.file, schema)


# --- commands -----------------------------------------------------------------


def cmd_reproduce(args) -> int:
    rep = reproduce_example3(args.tolerance, matrices_from_reference=args.reference_components)
    _emit(rep.render(), args.output)
    return EXIT_OK if rep.ok else EXIT_VALIDATION


def cmd_audit(args) -> int:
    reports = audit_all(args.samples, args.seed, variant=args.variant)
    rows = [r.as_row() for r in reports]
    if args.format == "json":
        text = json.dumps({"samples": args.samples, "seed": args.seed, "variant": args.variant,
                           "laws": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["law", "samples", "failures", "max_violation", "status", "counterexample"])
        for r in rows:
            w.writerow([r["law"], r["samples"], r["failures"], repr(r["max_violation"]), r["status"],
                        json.dumps(r["counterexample"]) if r["counterexample"] else ""])
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


def cmd_similarity(args) -> int:
    m = _measure(args)
    comps = example3_components()
    names = [r.name for r in builtin_example3()]
    labels = [f"{names[i]}-{names[j]}" for i in range(4) for j in range(i + 1, 4)]
    mat = similarity_matrix(m, comps, normalize=args.normalize)
    _emit(mat.to_csv(labels), args.output)
    return EXIT_OK


def cmd_predict(args) -> int:
    mode = WeightMode(args.mode)
    m = _measure(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"# measure={m.describe()} mode={mode.value}"])
    w.writerow(["record", "label", "t", "i", "f", "clamped"])
    if args.dataset == "example3":
        recs = builtin_example3()
        skipped = 0
        for q, rec in enumerate(recs):
            corpus = [r for k, r in enumerate(recs) if k != q]
            try:
                preds = predict_labels(rec, corpus, m, mode)
            except DegenerateNeighborhoodError:
                skipped += 1
                continue
            for lp in preds:
                p = lp.triple
                w.writerow([rec.name, lp.label, repr(p.t), repr(p.i), repr(p.f),
                            int(not all(0 <= v <= 1 for v in p.as_tuple()))])
    else:
        cfg = replace(_pipeline_config(args), measure=m, weight_mode=mode)
        rows, skipped = predict_dataset(_dataset(args), cfg)
        for r in rows:
            p = r.triple
            w.writerow([r.record, r.label, repr(p.t), repr(p.i), repr(p.f), int(r.clamped)])
    w.writerow([f"# skipped={skipped}"])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def _format_reports(reports, args) -> str:
    timing = not args.no_timing
    return reports_to_json(reports, timing) if args.format == "json" else reports_to_csv(reports, timing)


def cmd_evaluate(args) -> int:
    report = run_pipeline(_dataset(args), _pipeline_config(args))
    _emit(_format_reports([report], args), args.output)
    return EXIT_OK


def _read_grid(path: str) -> list[DeneutroParams]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() in ("alpha", "") or row[0].startswith("#"):
                continue
            out.append(DeneutroParams(*(float(v) for v in row[:3])))
    if not out:
        raise ValueError(f"{path}: no grid rows")
    return out


def cmd_grid(args) -> int:
    grid = _read_grid(args.grid) if args.grid else list(SYNTHESIS_GRID)
    reports = deneutro_grid(_dataset(args), _pipeline_config(args), grid)
    text = _format_reports(reports, args)
    if args.format == "csv":
        text += f"# mse_spread={mse_spread(reports)!r}\n"
    _emit(text, args.output)
    return EXIT_OK


def read_matrix(path: str, by: str = "columns") -> tuple[list[str], list[list[float]]]:
    """Numeric table with a header row; a non-numeric first column is a row label."""
    with open(path, newline="") as fh:
        sample = fh.read()
    delim = "\t" if sample.splitlines()[0].count("\t") > sample.splitlines()[0].count(",") else ","
    rows = [r for r in csv.reader(io.StringIO(sample), delimiter=delim) if r and not r[0].startswith("#")]
    if len(rows) < 2:
        raise ValueError(f"{path}: need a header row and at least one data row")
    header, body = rows[0], rows[1:]

    def numeric(v: str) -> bool:
        try:
            float(v)
            return True
        except ValueError:
            return False

    labelled = not all(numeric(r[0]) for r in body)
    if labelled:
        header, body = header[1:], [r[1:] for r in body]
    data = [[float(v) for v in r] for r in body]
    if any(len(r) != len(header) for r in data):
        raise ValueError(f"{path}: ragged rows")
    if by == "columns":
        return header, [list(col) for col in zip(*data)]
    return [str(k) for k in range(len(data))], data


def cmd_stats(args) -> int:
    names, groups = read_matrix(args.input, args.groups)
    if args.test == "anova":
        t = anova_one_way(groups)
        rows = [("columns", t.ss_columns, t.df_columns, t.ms_columns, t.f_stat, t.p_value),
                ("error", t.ss_error, t.df_error, t.ms_error, "", ""),
                ("total", t.ss_total, t.df_total, "", "", "")]
        stat = "F"
    else:
        k = kruskal_wallis(groups)
        rows = [("columns", k.ss_columns, k.df_columns, k.ms_columns, k.h_stat, k.p_value),
                ("error", k.ss_error, k.df_error, k.ms_error, "", ""),
                ("total", k.ss_total, k.df_total, "", "", "")]
        stat = "chi_sq"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "ss", "df", "ms", stat, "p"])
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="neutrorec", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def out(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    def measure(sp):
        sp.add_argument("--measure", choices=MEASURES, default="eq65")
        sp.add_argument("--w1", type=float)
        sp.add_argument("--w2", type=float)
        sp.add_argument("--absolute", action="store_true", help="absolute branch differences for eq71")

    def dataset(sp, config=True):
        sp.add_argument("--dataset", required=True, help="built-in data set name or schema JSON path")
        sp.add_argument("--data", help="data file (defaults to the file named by the schema)")
        if config:
            sp.add_argument("--config", help="pipeline config JSON")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--threads", type=int, default=1, help="worker cap; runs are sequential")

    def report(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--no-timing", action="store_true", help="omit wall-clock time from the report")

    sp = sub.add_parser("reproduce-example3", help="recompute the four-patient example and diff it")
    sp.add_argument("--tolerance", type=float, default=5e-3)
    sp.add_argument("--reference-components", action="store_true",
                    help="build the matrices from the reference components")
    out(sp)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("algebra-audit", help="randomised check of the algebraic laws")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--variant", choices=[v.value for v in ComplementVariant], default="standard")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    out(sp)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("similarity", help="pair matrix for the built-in example")
    measure(sp)
    sp.add_argument("--normalize", action="store_true", help="halve summed matrices")
    out(sp)
    sp.set_defaults(func=cmd_similarity)

    sp = sub.add_parser("predict", help="predicted output-label triples")
    sp.add_argument("--dataset", required=True, help="'example3', a built-in name or a schema JSON path")
    sp.add_argument("--data")
    sp.add_argument("--config")
    sp.add_argument("--membership", help="membership config JSON")
    sp.add_argument("--seed", type=int)
    measure(sp)
    sp.add_argument("--mode", choices=[m.value for m in WeightMode], default="inverted")
    out(sp)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("evaluate", help="MSE report for one pipeline run")
    dataset(sp)
    report(sp)
    out(sp)
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("grid", help="MSE report across (alpha, beta, gamma) settings")
    dataset(sp)
    sp.add_argument("--grid", help="CSV of alpha,beta,gamma rows (default: six built-in settings)")
    report(sp)
    out(sp)
    sp.set_defaults(func=cmd_grid)

    sp = sub.add_parser("stats", help="one-way ANOVA or Kruskal-Wallis on a matrix file")
    sp.add_argument("test", choices=("anova", "kruskal"))
    sp.add_argument("--input", required=True, help="CSV/TSV with a header row")
    sp.add_argument("--groups", choices=("columns", "rows"), default="columns")
    out(sp)
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, DegenerateNeighborhoodError, DegenerateCurveError, EmptyTrainingError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_RUNTIME
    except SchemaError as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_VALIDATION
    except IngestionError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_RUNTIME
    except ValueError as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
