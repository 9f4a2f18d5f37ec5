"""Command-line interface.

Subcommands::

    srsclone detect MANIFEST [--min-length N] [--filters PATH] [--out DIR]
                    [--fail-over-coverage PCT] [--sample N] [--seed S]
    srsclone precision REPORT ASSESSMENTS
    srsclone summary REPORT [REPORT ...] [--out FILE]
    srsclone stats pearson SUMMARY [--x COL] [--y COL]
    srsclone stats kappa ASSESSMENTS_A ASSESSMENTS_B

Exit codes: 0 success, 1 error, 2 coverage gate exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from .errors import CloneToolError
from .metrics import cohen_kappa, pearson, read_corpus_series
from .report import (
    RunOptions,
    emit_summary,
    parse_structured,
    precision_for_report,
    run,
)
from .tailor import (
    DEFAULT_SAMPLE_SEED,
    DEFAULT_SAMPLE_SIZE,
    AssessmentRecord,
    read_assessments,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srsclone",
        description="Detect duplicated passages in requirements documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="run detection for a corpus manifest")
    detect.add_argument("manifest", help="corpus manifest file")
    detect.add_argument("--min-length", type=int, default=None,
                        help="minimum clone length in normalized words")
    detect.add_argument("--filters", default=None,
                        help="filter file overriding the manifest's filters")
    detect.add_argument("--out", default=".", help="output directory")
    detect.add_argument("--fail-over-coverage", type=float, default=None,
                        metavar="PCT",
                        help="exit 2 if clone coverage exceeds PCT percent")
    detect.add_argument("--sample", type=int, default=DEFAULT_SAMPLE_SIZE,
                        help="number of clone groups to sample for assessment")
    detect.add_argument("--seed", type=int, default=DEFAULT_SAMPLE_SEED,
                        help="seed for the assessment sample")

    precision = sub.add_parser("precision", help="precision of an assessed sample")
    precision.add_argument("report", help="structured report file")
    precision.add_argument("assessments", help="assessment file (JSON lines)")

    summary = sub.add_parser("summary", help="summary table over several reports")
    summary.add_argument("reports", nargs="+", help="structured report files")
    summary.add_argument("--out", default=None, help="write table here instead of stdout")

    stats = sub.add_parser("stats", help="study statistics")
    stats_sub = stats.add_subparsers(dest="stat", required=True)
    stats_pearson = stats_sub.add_parser(
        "pearson", help="correlation between two summary columns")
    stats_pearson.add_argument("summary", help="summary table file")
    stats_pearson.add_argument("--x", default="total_words")
    stats_pearson.add_argument("--y", default="clone_coverage")
    stats_kappa = stats_sub.add_parser(
        "kappa", help="inter-rater agreement between two assessment files")
    stats_kappa.add_argument("assessments_a")
    stats_kappa.add_argument("assessments_b")

    return parser


def _assessment_label(record: AssessmentRecord) -> str:
    if not record.relevant:
        return f"false_positive:{record.false_positive_kind}"
    if record.categories:
        return "+".join(sorted(record.categories))
    return "relevant"


def _cmd_detect(args: argparse.Namespace) -> int:
    options = RunOptions(
        min_length=args.min_length,
        filters=args.filters,
        out_dir=args.out,
        fail_over_coverage=args.fail_over_coverage,
        sample_size=args.sample,
        sample_seed=args.seed,
    )
    report, exit_code = run(args.manifest, options)
    m = report.metrics
    coverage = m.clone_coverage * 100.0
    print(
        f"{report.corpus_name}: coverage {coverage:.1f}%, "
        f"{m.clone_groups} groups, {m.clones} clones, "
        f"blow-up {m.blow_up_words} words"
    )
    if exit_code == 2:
        print(
            f"coverage {coverage:.1f}% exceeds the configured gate of "
            f"{args.fail_over_coverage:.1f}%",
            file=sys.stderr,
        )
    return exit_code


def _cmd_precision(args: argparse.Namespace) -> int:
    report = parse_structured(args.report)
    assessments = read_assessments(args.assessments)
    value = precision_for_report(report, assessments)
    print(f"precision: {value * 100.0:.1f}%")
    kinds = Counter(
        record.false_positive_kind for record in assessments if not record.relevant
    )
    for kind, count in sorted(kinds.items()):
        print(f"  false positives ({kind}): {count}")
    return 0


def _cmd_summary(args: argparse.Namespace) -> int:
    reports = [parse_structured(path) for path in args.reports]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            emit_summary(reports, handle)
    else:
        emit_summary(reports, sys.stdout)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    if args.stat == "pearson":
        series = read_corpus_series(args.summary)
        value = pearson(series.column(args.x), series.column(args.y))
        print(f"pearson({args.x}, {args.y}) = {value:.4f}")
        return 0
    ratings_a = {r.clone_group_id: r for r in read_assessments(args.assessments_a)}
    ratings_b = {r.clone_group_id: r for r in read_assessments(args.assessments_b)}
    common = sorted(set(ratings_a) & set(ratings_b))
    if not common:
        raise CloneToolError("the two assessment files share no clone groups")
    labels_a = [_assessment_label(ratings_a[gid]) for gid in common]
    labels_b = [_assessment_label(ratings_b[gid]) for gid in common]
    value = cohen_kappa(labels_a, labels_b)
    print(f"kappa = {value:.4f} over {len(common)} clone groups")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "detect":
            return _cmd_detect(args)
        if args.command == "precision":
            return _cmd_precision(args)
        if args.command == "summary":
            return _cmd_summary(args)
        if args.command == "stats":
            return _cmd_stats(args)
    except CloneToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
