"""Detection tailoring: regex exclusion filters, sampling, and precision.

Tailoring is the loop that turns a noisy first detection run into a
trustworthy one: inspect a sample of clone groups, record verdicts, write
regex rules that match the false positives (page decorations, indexes,
template boilerplate, ...), and re-run detection with those regions
excluded from the raw text.

Filter files are line-oriented: ``scope<TAB>label<TAB>pattern`` where
scope is ``*`` (all documents) or a document id.  Patterns use Python's
``re`` dialect and are compiled with MULTILINE, so ``^``/``$`` anchor at
line boundaries; matching is otherwise position-free over the raw
document text.

Assessment files are JSON lines, one object per assessed clone group,
with the fields of :class:`AssessmentRecord`.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .corpus import RawDocument
from .errors import AssessmentError, FilterError

if TYPE_CHECKING:  # pragma: no cover
    from .detect import CloneGroup, DetectionResult

ALL_DOCUMENTS = "*"

DEFAULT_SAMPLE_SIZE = 20
DEFAULT_SAMPLE_SEED = 42

VERDICTS = ("relevant", "false_positive")

FALSE_POSITIVE_KINDS = (
    "document_meta_data",
    "index",
    "page_decoration",
    "open_issue",
    "template_information",
    "other",
)

# Category vocabulary for relevant clone groups.  Assessments may extend it;
# these are the canonical labels the viewer offers.
CATEGORIES = (
    "detailed_use_case_steps",
    "reference",
    "ui",
    "domain_knowledge",
    "interface_description",
    "pre_condition",
    "side_condition",
    "configuration",
    "feature",
    "technical_domain_knowledge",
    "post_condition",
    "rationale",
)


@dataclass(frozen=True)
class FilterRule:
    """One exclusion rule: a regex, the documents it applies to, a reason."""

    pattern: str
    scope: str = ALL_DOCUMENTS
    label: str = ""
    compiled: re.Pattern[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.scope:
            raise FilterError("filter rule scope must be '*' or a document id")
        try:
            compiled = re.compile(self.pattern, re.MULTILINE)
        except re.error as exc:
            raise FilterError(f"cannot compile pattern {self.pattern!r}: {exc}") from None
        object.__setattr__(self, "compiled", compiled)

    def applies_to(self, document_id: str) -> bool:
        return self.scope == ALL_DOCUMENTS or self.scope == document_id


@dataclass(frozen=True)
class FilterSet:
    """Ordered exclusion rules; the union of all matches is excluded."""

    rules: tuple[FilterRule, ...] = ()

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class ExclusionSpans:
    """Merged half-open character intervals excluded from one document."""

    document_id: str
    spans: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last_end = -1
        for start, end in self.spans:
            if start >= end:
                raise FilterError(f"empty or inverted span ({start}, {end})")
            if start <= last_end:
                raise FilterError("spans must be merged and strictly sorted")
            last_end = end

    def covers(self, start: int, end: int) -> bool:
        """True if [start, end) intersects any excluded span."""
        for span_start, span_end in self.spans:
            if span_start < end and start < span_end:
                return True
            if span_start >= end:
                break
        return False


def merge_spans(spans: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Merge overlapping or touching half-open intervals."""
    merged: list[tuple[int, int]] = []
    for start, end in sorted(spans):
        if start >= end:
            continue
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return tuple(merged)


def compile_filters(path: str | Path) -> FilterSet:
    """Parse and compile a filter file; empty files give an empty FilterSet."""
    filter_path = Path(path)
    try:
        lines = filter_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise FilterError(f"filter file not found: {filter_path}") from None

    rules: list[FilterRule] = []
    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t", 2)
        if len(parts) != 3:
            raise FilterError(
                f"{filter_path}:{lineno}: expected 'scope<TAB>label<TAB>pattern'"
            )
        scope, label, pattern = parts
        try:
            rules.append(FilterRule(pattern=pattern, scope=scope.strip(), label=label.strip()))
        except FilterError as exc:
            raise FilterError(f"{filter_path}:{lineno}: {exc}") from None
    return FilterSet(rules=tuple(rules))


def apply_filters(document: RawDocument, filters: FilterSet) -> ExclusionSpans:
    """Match every applicable rule against the document text and merge spans."""
    spans: list[tuple[int, int]] = []
    for rule in filters.rules:
        if not rule.applies_to(document.id):
            continue
        for match in rule.compiled.finditer(document.text):
            if match.end() > match.start():
                spans.append((match.start(), match.end()))
    return ExclusionSpans(document_id=document.id, spans=merge_spans(spans))


def sample_clone_groups(
    result: "DetectionResult",
    n: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SAMPLE_SEED,
) -> list["CloneGroup"]:
    """Pick up to n clone groups for manual inspection.

    With n or fewer groups every group is returned; otherwise the group
    list is shuffled by a generator seeded with ``seed`` and the first n
    are taken, so a given seed always yields the same sample.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    groups = list(result.groups)
    if len(groups) <= n:
        return groups
    rng = random.Random(seed)
    rng.shuffle(groups)
    return groups[:n]


@dataclass(frozen=True)
class AssessmentRecord:
    """A human verdict on one clone group."""

    clone_group_id: str
    verdict: str
    false_positive_kind: str | None = None
    categories: frozenset[str] = frozenset()
    note: str = ""
    rater: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise AssessmentError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "false_positive":
            if self.false_positive_kind not in FALSE_POSITIVE_KINDS:
                raise AssessmentError(
                    f"false positive needs a kind from {FALSE_POSITIVE_KINDS}, "
                    f"got {self.false_positive_kind!r}"
                )
            if self.categories:
                raise AssessmentError("false positives carry no categories")
        else:
            if self.false_positive_kind is not None:
                raise AssessmentError("relevant verdicts carry no false-positive kind")

    @property
    def relevant(self) -> bool:
        return self.verdict == "relevant"


def compute_precision(assessments: Sequence[AssessmentRecord]) -> float:
    """Fraction of assessed clone groups judged relevant."""
    if not assessments:
        raise AssessmentError("no assessable groups")
    relevant = sum(1 for record in assessments if record.relevant)
    return relevant / len(assessments)


def write_assessments(path: str | Path, records: Sequence[AssessmentRecord]) -> None:
    lines = []
    for record in records:
        lines.append(
            json.dumps(
                {
                    "clone_group_id": record.clone_group_id,
                    "verdict": record.verdict,
                    "false_positive_kind": record.false_positive_kind,
                    "categories": sorted(record.categories),
                    "note": record.note,
                    "rater": record.rater,
                },
                ensure_ascii=False,
                sort_keys=False,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_assessments(path: str | Path) -> list[AssessmentRecord]:
    assessment_path = Path(path)
    try:
        lines = assessment_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise AssessmentError(f"assessment file not found: {assessment_path}") from None
    records: list[AssessmentRecord] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AssessmentError(f"{assessment_path}:{lineno}: invalid JSON: {exc}") from None
        try:
            records.append(
                AssessmentRecord(
                    clone_group_id=str(data["clone_group_id"]),
                    verdict=data["verdict"],
                    false_positive_kind=data.get("false_positive_kind"),
                    categories=frozenset(data.get("categories") or ()),
                    note=data.get("note", ""),
                    rater=data.get("rater", ""),
                )
            )
        except KeyError as exc:
            raise AssessmentError(f"{assessment_path}:{lineno}: missing field {exc}") from None
        except AssessmentError as exc:
            raise AssessmentError(f"{assessment_path}:{lineno}: {exc}") from None
    return records
