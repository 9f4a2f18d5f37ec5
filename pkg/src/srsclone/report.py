"""End-to-end runs and report serialization.

``run`` drives the whole pipeline (load, filter, normalize, detect,
measure) and writes two artifacts per corpus: a structured JSON report
(the machine contract consumed by the viewer, the precision command, and
tests) and a standalone HTML report for humans.  ``emit_summary``
aggregates several structured reports into one delimiter-separated table
with an average row for ratios and a sum row for counts.

Structured reports are canonical: stable field order, UTF-8, trailing
newline.  Identical inputs and parameters produce byte-identical files.
The ``created_at`` field is null unless SOURCE_DATE_EPOCH is set, so
reports never embed wall-clock time by default.
"""

from __future__ import annotations

import hashlib
import html
import json
import math
import os
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .corpus import load_corpus, load_manifest
from .detect import DetectionResult, detect_clones
from .errors import CloneToolError
from .metrics import (
    EffortEstimate,
    MetricsReport,
    effort,
    metrics_report,
)
from .normalize import LanguageConfig, normalize_stream
from .tailor import (
    DEFAULT_SAMPLE_SEED,
    DEFAULT_SAMPLE_SIZE,
    AssessmentRecord,
    FilterSet,
    compile_filters,
    compute_precision,
    sample_clone_groups,
)

SUMMARY_COLUMNS = (
    "corpus",
    "total_words",
    "clone_coverage",
    "clone_groups",
    "clones",
    "blow_up_relative",
    "blow_up_words",
)


@dataclass(frozen=True)
class DocumentRecord:
    id: str
    path: str
    sha256: str
    raw_words: int


@dataclass(frozen=True)
class CloneRecord:
    document_id: str
    stream_start: int
    raw_word_start: int
    raw_word_end: int
    char_start: int
    char_end: int
    snippet: str


@dataclass(frozen=True)
class GroupRecord:
    id: str
    length: int
    clones: tuple[CloneRecord, ...]


@dataclass(frozen=True)
class RunReport:
    version: str
    corpus_name: str
    language: str
    manifest_path: str
    documents: tuple[DocumentRecord, ...]
    min_clone_length: int
    filter_file: str | None
    filter_file_sha256: str | None
    sample_size: int
    sample_seed: int
    metrics: MetricsReport
    effort: EffortEstimate
    groups: tuple[GroupRecord, ...]
    sample_group_ids: tuple[str, ...]
    created_at: str | None = None


@dataclass
class RunOptions:
    min_length: int | None = None
    filters: str | None = None
    out_dir: str | Path = "."
    fail_over_coverage: float | None = None
    sample_size: int = DEFAULT_SAMPLE_SIZE
    sample_seed: int = DEFAULT_SAMPLE_SEED
    write_html: bool = True


def _created_at() -> str | None:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if not epoch:
        return None
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).isoformat()


def _file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def build_report(
    manifest_path: str | Path,
    result: DetectionResult,
    *,
    filter_file: str | None,
    sample_size: int,
    sample_seed: int,
) -> RunReport:
    """Assemble the serializable report from a detection result."""
    stream = result.stream
    corpus = stream.corpus
    texts = {doc.id: doc.text for doc in corpus.documents}
    documents = tuple(
        DocumentRecord(id=doc.id, path=doc.path, sha256=doc.sha256(), raw_words=count)
        for doc, count in zip(corpus.documents, stream.raw_word_counts)
    )
    groups = tuple(
        GroupRecord(
            id=group.id,
            length=group.length,
            clones=tuple(
                CloneRecord(
                    document_id=clone.document_id,
                    stream_start=clone.start,
                    raw_word_start=clone.raw_word_start,
                    raw_word_end=clone.raw_word_end,
                    char_start=clone.char_start,
                    char_end=clone.char_end,
                    snippet=texts[clone.document_id][clone.char_start : clone.char_end],
                )
                for clone in group.clones
            ),
        )
        for group in result.groups
    )
    sample = sample_clone_groups(result, sample_size, sample_seed)
    return RunReport(
        version=__version__,
        corpus_name=corpus.spec.name,
        language=corpus.spec.language,
        manifest_path=str(manifest_path),
        documents=documents,
        min_clone_length=result.min_clone_length,
        filter_file=filter_file,
        filter_file_sha256=result.filter_file_sha256,
        sample_size=sample_size,
        sample_seed=sample_seed,
        metrics=metrics_report(stream, result),
        effort=effort(metrics_report(stream, result).blow_up_words),
        groups=groups,
        sample_group_ids=tuple(group.id for group in sample),
        created_at=result.created_at,
    )


def run(manifest_path: str | Path, options: RunOptions | None = None) -> tuple[RunReport, int]:
    """Run the pipeline for one manifest; returns the report and exit code."""
    options = options or RunOptions()
    spec = load_manifest(manifest_path)
    min_length = options.min_length if options.min_length is not None else spec.min_clone_length
    if min_length < 2:
        raise CloneToolError(f"min clone length must be >= 2, got {min_length}")
    filter_path = options.filters if options.filters is not None else spec.filter_file

    corpus = load_corpus(spec)
    filters = compile_filters(filter_path) if filter_path else FilterSet()
    filter_hash = _file_sha256(filter_path) if filter_path else None
    config = LanguageConfig.for_language(spec.language)
    stream = normalize_stream(corpus, config, filters)
    result = detect_clones(
        stream,
        min_length,
        filter_file_sha256=filter_hash,
        created_at=_created_at(),
    )
    report = build_report(
        manifest_path,
        result,
        filter_file=str(filter_path) if filter_path else None,
        sample_size=options.sample_size,
        sample_seed=options.sample_seed,
    )

    out_dir = Path(options.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _safe_name(report.corpus_name)
    emit_structured(report, out_dir / f"{stem}.report.json")
    if options.write_html:
        emit_human_report(report, out_dir / f"{stem}.report.html")

    exit_code = 0
    if options.fail_over_coverage is not None:
        if report.metrics.clone_coverage * 100.0 > options.fail_over_coverage:
            exit_code = 2
    return report, exit_code


def _safe_name(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9._-]+", "_", name)
    return cleaned or "corpus"


# ---------------------------------------------------------------------------
# Structured report (JSON)
# ---------------------------------------------------------------------------


def _relative_for_json(value: float) -> float | None:
    return None if math.isinf(value) else value


def report_to_dict(report: RunReport) -> dict:
    return {
        "tool": {"name": "srsclone", "version": report.version},
        "corpus": {
            "name": report.corpus_name,
            "language": report.language,
            "manifest": report.manifest_path,
            "documents": [
                {
                    "id": doc.id,
                    "path": doc.path,
                    "sha256": doc.sha256,
                    "raw_words": doc.raw_words,
                }
                for doc in report.documents
            ],
        },
        "parameters": {
            "min_clone_length": report.min_clone_length,
            "filter_file": report.filter_file,
            "filter_file_sha256": report.filter_file_sha256,
            "sample_size": report.sample_size,
            "sample_seed": report.sample_seed,
        },
        "metrics": {
            "clone_coverage": report.metrics.clone_coverage,
            "clone_groups": report.metrics.clone_groups,
            "clones": report.metrics.clones,
            "blow_up_relative": _relative_for_json(report.metrics.blow_up_relative),
            "blow_up_unbounded": math.isinf(report.metrics.blow_up_relative),
            "blow_up_words": report.metrics.blow_up_words,
            "redundancy_free_words": report.metrics.redundancy_free_words,
            "total_words": report.metrics.total_words,
        },
        "effort": {
            "blow_up_words": report.effort.blow_up_words,
            "reading_minutes": report.effort.reading_minutes,
            "inspection_hours": report.effort.inspection_hours,
            "inspectors": report.effort.inspectors,
            "hours_per_day": report.effort.hours_per_day,
            "inspection_person_days": report.effort.inspection_person_days,
        },
        "groups": [
            {
                "id": group.id,
                "length": group.length,
                "clones": [
                    {
                        "document_id": clone.document_id,
                        "stream_start": clone.stream_start,
                        "raw_word_start": clone.raw_word_start,
                        "raw_word_end": clone.raw_word_end,
                        "char_start": clone.char_start,
                        "char_end": clone.char_end,
                        "snippet": clone.snippet,
                    }
                    for clone in group.clones
                ],
            }
            for group in report.groups
        ],
        "sample": {
            "size": report.sample_size,
            "seed": report.sample_seed,
            "group_ids": list(report.sample_group_ids),
        },
        "created_at": report.created_at,
    }


def emit_structured(report: RunReport, path: str | Path) -> Path:
    """Write the canonical JSON report; identical runs yield identical bytes."""
    payload = json.dumps(report_to_dict(report), ensure_ascii=False, indent=2)
    out_path = Path(path)
    out_path.write_text(payload + "\n", encoding="utf-8")
    return out_path


def report_from_dict(data: dict) -> RunReport:
    metrics_data = data["metrics"]
    relative = metrics_data["blow_up_relative"]
    if metrics_data.get("blow_up_unbounded"):
        relative = math.inf
    effort_data = data["effort"]
    return RunReport(
        version=data["tool"]["version"],
        corpus_name=data["corpus"]["name"],
        language=data["corpus"]["language"],
        manifest_path=data["corpus"]["manifest"],
        documents=tuple(
            DocumentRecord(
                id=doc["id"],
                path=doc["path"],
                sha256=doc["sha256"],
                raw_words=doc["raw_words"],
            )
            for doc in data["corpus"]["documents"]
        ),
        min_clone_length=data["parameters"]["min_clone_length"],
        filter_file=data["parameters"]["filter_file"],
        filter_file_sha256=data["parameters"]["filter_file_sha256"],
        sample_size=data["sample"]["size"],
        sample_seed=data["sample"]["seed"],
        metrics=MetricsReport(
            clone_coverage=metrics_data["clone_coverage"],
            clone_groups=metrics_data["clone_groups"],
            clones=metrics_data["clones"],
            blow_up_relative=relative,
            blow_up_words=metrics_data["blow_up_words"],
            redundancy_free_words=metrics_data["redundancy_free_words"],
            total_words=metrics_data["total_words"],
        ),
        effort=EffortEstimate(
            blow_up_words=effort_data["blow_up_words"],
            reading_minutes=effort_data["reading_minutes"],
            inspection_hours=effort_data["inspection_hours"],
            inspectors=effort_data["inspectors"],
            hours_per_day=effort_data["hours_per_day"],
            inspection_person_days=effort_data["inspection_person_days"],
        ),
        groups=tuple(
            GroupRecord(
                id=group["id"],
                length=group["length"],
                clones=tuple(
                    CloneRecord(
                        document_id=clone["document_id"],
                        stream_start=clone["stream_start"],
                        raw_word_start=clone["raw_word_start"],
                        raw_word_end=clone["raw_word_end"],
                        char_start=clone["char_start"],
                        char_end=clone["char_end"],
                        snippet=clone["snippet"],
                    )
                    for clone in group["clones"]
                ),
            )
            for group in data["groups"]
        ),
        sample_group_ids=tuple(data["sample"]["group_ids"]),
        created_at=data["created_at"],
    )


def parse_structured(path: str | Path) -> RunReport:
    with open(path, encoding="utf-8") as handle:
        return report_from_dict(json.load(handle))


# ---------------------------------------------------------------------------
# Summary table
# ---------------------------------------------------------------------------


def emit_summary(reports: Sequence[RunReport], out: TextIO) -> None:
    """One row per corpus plus an Avg row (ratios) and a Sum row (counts)."""
    if not reports:
        raise CloneToolError("summary needs at least one report")
    out.write("\t".join(SUMMARY_COLUMNS) + "\n")
    for report in reports:
        m = report.metrics
        relative = "" if math.isinf(m.blow_up_relative) else repr(m.blow_up_relative)
        row = (
            report.corpus_name,
            str(m.total_words),
            repr(m.clone_coverage),
            str(m.clone_groups),
            str(m.clones),
            relative,
            str(m.blow_up_words),
        )
        out.write("\t".join(row) + "\n")
    n = len(reports)
    coverages = [r.metrics.clone_coverage for r in reports]
    relatives = [
        r.metrics.blow_up_relative
        for r in reports
        if not math.isinf(r.metrics.blow_up_relative)
    ]
    avg_row = (
        "Avg",
        "",
        repr(sum(coverages) / n),
        "",
        "",
        repr(sum(relatives) / len(relatives)) if relatives else "",
        "",
    )
    out.write("\t".join(avg_row) + "\n")
    sum_row = (
        "Sum",
        str(sum(r.metrics.total_words for r in reports)),
        "",
        str(sum(r.metrics.clone_groups for r in reports)),
        str(sum(r.metrics.clones for r in reports)),
        "",
        str(sum(r.metrics.blow_up_words for r in reports)),
    )
    out.write("\t".join(sum_row) + "\n")


# ---------------------------------------------------------------------------
# Human-readable report
# ---------------------------------------------------------------------------

_HTML_STYLE = """
body { font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 70rem;
       color: #1d2733; }
h1 { font-size: 1.4rem; } h2 { font-size: 1.1rem; margin-top: 2rem; }
table.metrics { border-collapse: collapse; }
table.metrics td, table.metrics th { border: 1px solid #b8c4d0; padding: .3rem .7rem;
       text-align: right; }
table.metrics th { background: #eef2f6; }
.group { border: 1px solid #b8c4d0; border-radius: 6px; margin: 1rem 0;
       padding: .6rem .9rem; }
.group h3 { margin: .2rem 0 .6rem; font-size: 1rem; }
.clones { display: flex; flex-wrap: wrap; gap: .8rem; }
.clone { flex: 1 1 24rem; background: #f7f9fb; border: 1px solid #dbe2e9;
       border-radius: 4px; padding: .5rem .7rem; }
.clone .where { color: #5a6a7a; font-size: .8rem; margin-bottom: .3rem; }
.clone pre { white-space: pre-wrap; margin: 0; font-size: .85rem; }
.empty { color: #5a6a7a; font-style: italic; }
"""


def _pct(value: float) -> str:
    if math.isinf(value):
        return "unbounded"
    return f"{value * 100.0:.1f}%"


def emit_human_report(report: RunReport, path: str | Path) -> Path:
    """Write a self-contained HTML report with side-by-side clone snippets."""
    m = report.metrics
    e = report.effort
    parts: list[str] = []
    parts.append("<!DOCTYPE html>")
    parts.append("<html lang=\"en\"><head><meta charset=\"utf-8\">")
    parts.append(f"<title>Clone report: {html.escape(report.corpus_name)}</title>")
    parts.append(f"<style>{_HTML_STYLE}</style></head><body>")
    parts.append(f"<h1>Clone report: {html.escape(report.corpus_name)}</h1>")
    parts.append(
        "<p>"
        + html.escape(
            f"{len(report.documents)} document(s), language {report.language}, "
            f"minimum clone length {report.min_clone_length} normalized words."
        )
        + "</p>"
    )
    parts.append("<h2>Metrics</h2><table class=\"metrics\">")
    rows = (
        ("Clone coverage", _pct(m.clone_coverage)),
        ("Clone groups", str(m.clone_groups)),
        ("Clones", str(m.clones)),
        ("Blow-up (relative)", _pct(m.blow_up_relative)),
        ("Blow-up (words)", f"{m.blow_up_words:,}"),
        ("Redundancy-free words", f"{m.redundancy_free_words:,}"),
        ("Total words", f"{m.total_words:,}"),
        ("Extra reading time", f"{e.reading_minutes:.1f} min"),
        ("Extra inspection time", f"{e.inspection_hours:.1f} h"),
        (
            f"Extra inspection effort ({e.inspectors} inspectors)",
            f"{e.inspection_person_days:.2f} person-days",
        ),
    )
    for label, value in rows:
        parts.append(
            f"<tr><th>{html.escape(label)}</th><td>{html.escape(value)}</td></tr>"
        )
    parts.append("</table>")

    parts.append("<h2>Clone groups</h2>")
    if not report.groups:
        parts.append("<p class=\"empty\">No clones of the required length were found.</p>")
    sampled = set(report.sample_group_ids)
    for group in report.groups:
        flag = " (in sample)" if group.id in sampled else ""
        parts.append("<div class=\"group\">")
        parts.append(
            f"<h3>{html.escape(group.id)} — {group.length} words × "
            f"{len(group.clones)} instances{html.escape(flag)}</h3>"
        )
        parts.append("<div class=\"clones\">")
        for clone in group.clones:
            where = (
                f"{clone.document_id} · chars {clone.char_start}–{clone.char_end} · "
                f"raw words {clone.raw_word_start}–{clone.raw_word_end}"
            )
            parts.append("<div class=\"clone\">")
            parts.append(f"<div class=\"where\">{html.escape(where)}</div>")
            parts.append(f"<pre>{html.escape(clone.snippet)}</pre>")
            parts.append("</div>")
        parts.append("</div></div>")
    parts.append("</body></html>")
    out_path = Path(path)
    out_path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return out_path


# ---------------------------------------------------------------------------
# Precision over assessments
# ---------------------------------------------------------------------------


def precision_for_report(
    report: RunReport, assessments: Sequence[AssessmentRecord]
) -> float:
    """Precision over assessment records, validated against the report."""
    known = {group.id for group in report.groups}
    unknown = [a.clone_group_id for a in assessments if a.clone_group_id not in known]
    if unknown:
        raise CloneToolError(
            f"assessments reference unknown clone groups: {sorted(set(unknown))}"
        )
    return compute_precision(assessments)
