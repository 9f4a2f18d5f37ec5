"""Cloning metrics, effort estimates, and study statistics.

All size metrics work on the raw-word projection of detection results:
a clone covers every raw word from its first origin to its last origin
inclusive (interior stop words included), so totals line up with
whole-document word counts.  Coverage is the fraction of raw words under
at least one clone instance.  Blow-up keeps the earliest instance of each
group and counts the raw words of all other instances as redundant;
a word marked twice counts once.

Effort converts absolute blow-up into time: reading at 220 words per
minute, inspection at 600 words per hour, person-days from inspection
hours times the number of inspectors over an 8-hour day.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .detect import Clone, DetectionResult
from .errors import StatisticsError
from .normalize import NormalizedStream

READING_WORDS_PER_MINUTE = 220
INSPECTION_WORDS_PER_HOUR = 600
DEFAULT_INSPECTORS = 3
DEFAULT_HOURS_PER_DAY = 8.0


@dataclass(frozen=True)
class MetricsReport:
    clone_coverage: float
    clone_groups: int
    clones: int
    blow_up_relative: float  # math.inf flags a fully redundant corpus
    blow_up_words: int
    redundancy_free_words: int
    total_words: int

    def __post_init__(self) -> None:
        if self.total_words != self.redundancy_free_words + self.blow_up_words:
            raise ValueError("total words must equal redundancy-free plus blow-up")
        if not 0.0 <= self.clone_coverage <= 1.0:
            raise ValueError("coverage must be within [0, 1]")
        if (self.clone_coverage == 0.0) != (self.clone_groups == 0):
            raise ValueError("coverage is zero exactly when there are no groups")


@dataclass(frozen=True)
class EffortEstimate:
    blow_up_words: int
    reading_minutes: float
    inspection_hours: float
    inspectors: int
    hours_per_day: float
    inspection_person_days: float


@dataclass(frozen=True)
class CorpusSeries:
    """Per-corpus metric records for cross-corpus statistics."""

    names: tuple[str, ...]
    columns: dict[str, tuple[float, ...]]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise StatisticsError("corpus names must be unique")
        for column, values in self.columns.items():
            if len(values) != len(self.names):
                raise StatisticsError(f"column {column!r} length mismatch")

    def column(self, name: str) -> tuple[float, ...]:
        try:
            return self.columns[name]
        except KeyError:
            raise StatisticsError(
                f"unknown column {name!r}; have {sorted(self.columns)}"
            ) from None


def _covered_raw_words(stream: NormalizedStream, clones: Sequence[Clone]) -> set[tuple[str, int]]:
    covered: set[tuple[str, int]] = set()
    for clone in clones:
        for raw_index in range(clone.raw_word_start, clone.raw_word_end + 1):
            covered.add((clone.document_id, raw_index))
    return covered


def clone_coverage(stream: NormalizedStream, result: DetectionResult) -> float:
    """Fraction of raw words covered by at least one clone instance."""
    total = stream.total_raw_words
    if total == 0:
        return 0.0
    covered = _covered_raw_words(
        stream, [clone for group in result.groups for clone in group.clones]
    )
    return len(covered) / total


def count_metrics(result: DetectionResult) -> tuple[int, int]:
    """(number of clone groups, total number of clone instances)."""
    groups = len(result.groups)
    clones = sum(group.cardinality for group in result.groups)
    return groups, clones


def blow_up(stream: NormalizedStream, result: DetectionResult) -> tuple[float, int, int]:
    """(relative, absolute words, redundancy-free words).

    For each group the earliest instance is kept; the projected raw words
    of every other instance are redundant.  Relative blow-up is
    total / redundancy-free - 1, reported as ``math.inf`` when nothing
    redundancy-free remains.
    """
    total = stream.total_raw_words
    redundant = _covered_raw_words(
        stream,
        [clone for group in result.groups for clone in group.clones[1:]],
    )
    absolute = len(redundant)
    redundancy_free = total - absolute
    if redundancy_free == 0:
        relative = math.inf if absolute else 0.0
    else:
        relative = total / redundancy_free - 1.0
    return relative, absolute, redundancy_free


def metrics_report(stream: NormalizedStream, result: DetectionResult) -> MetricsReport:
    groups, clones = count_metrics(result)
    relative, absolute, redundancy_free = blow_up(stream, result)
    return MetricsReport(
        clone_coverage=clone_coverage(stream, result),
        clone_groups=groups,
        clones=clones,
        blow_up_relative=relative,
        blow_up_words=absolute,
        redundancy_free_words=redundancy_free,
        total_words=stream.total_raw_words,
    )


def effort(
    blow_up_words: int,
    inspectors: int = DEFAULT_INSPECTORS,
    hours_per_day: float = DEFAULT_HOURS_PER_DAY,
) -> EffortEstimate:
    """Reading and inspection effort caused by the given blow-up."""
    if blow_up_words < 0:
        raise ValueError("blow-up words must be non-negative")
    reading_minutes = blow_up_words / READING_WORDS_PER_MINUTE
    inspection_hours = blow_up_words / INSPECTION_WORDS_PER_HOUR
    return EffortEstimate(
        blow_up_words=blow_up_words,
        reading_minutes=reading_minutes,
        inspection_hours=inspection_hours,
        inspectors=inspectors,
        hours_per_day=hours_per_day,
        inspection_person_days=inspection_hours * inspectors / hours_per_day,
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson product-moment correlation coefficient."""
    if len(xs) != len(ys):
        raise StatisticsError("input lengths differ")
    if len(xs) < 2:
        raise StatisticsError("need at least two observations")
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    var_x = sum((x - mean_x) ** 2 for x in xs)
    var_y = sum((y - mean_y) ** 2 for y in ys)
    if var_x == 0 or var_y == 0:
        raise StatisticsError("correlation undefined for constant input")
    covariance = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return covariance / math.sqrt(var_x * var_y)


def cohen_kappa(a: Sequence[str], b: Sequence[str]) -> float:
    """Cohen's Kappa for two raters' label sequences over the same items."""
    if len(a) != len(b):
        raise StatisticsError("rating lengths differ")
    if not a:
        raise StatisticsError("need at least one rated item")
    n = len(a)
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    labels = set(a) | set(b)
    expected = sum((a.count(label) / n) * (b.count(label) / n) for label in labels)
    if expected == 1.0:
        raise StatisticsError("kappa degenerate: both raters constant and identical")
    return (observed - expected) / (1.0 - expected)


def read_corpus_series(path: str | Path) -> CorpusSeries:
    """Load per-corpus metrics from a summary table written by the report module.

    Aggregate rows (Avg, Sum) are skipped; all non-name columns parse as
    floats.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise StatisticsError(f"empty summary file: {path}")
    header = lines[0].split("\t")
    if header[0] != "corpus":
        raise StatisticsError(f"not a summary table (header {header[0]!r}): {path}")
    names: list[str] = []
    columns: dict[str, list[float]] = {name: [] for name in header[1:]}
    for line in lines[1:]:
        if not line.strip():
            continue
        cells = line.split("\t")
        if cells[0] in ("Avg", "Sum"):
            continue
        names.append(cells[0])
        for name, cell in zip(header[1:], cells[1:]):
            columns[name].append(float(cell) if cell else math.nan)
    return CorpusSeries(
        names=tuple(names),
        columns={name: tuple(values) for name, values in columns.items()},
    )
