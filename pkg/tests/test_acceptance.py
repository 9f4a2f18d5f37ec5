"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The suite combines
published-table reproduction (effort, blow-up consistency, correlation),
large randomized oracle-equivalence for the detector, metric invariants,
stemmer conformance on full vocabularies, the tailoring precision
workflow, and byte-level determinism of structured reports.
"""

from __future__ import annotations

import random
import time

import pytest

from german_oracle import reference_german_stem
from helpers import (
    FOOTER_FILTER_LINE,
    build_tailoring_corpus,
    group_shape,
    make_stream,
)
from porter_oracle import reference_porter_stem
from reference_data import (
    AVG_BLOW_UP_WORDS,
    AVG_INSPECTION_HOURS,
    AVG_READING_MINUTES,
    BENCHMARK_ROWS,
    TOTAL_BLOW_UP_WORDS,
    TOTAL_WORDS,
)
from srsclone.detect import brute_force_detect, detect_clones
from srsclone.metrics import blow_up, clone_coverage, effort, metrics_report, pearson
from srsclone.normalize import LanguageConfig, normalize_stream
from srsclone.report import RunOptions, run
from srsclone.stemming import german_stem, porter_stem
from srsclone.tailor import (
    AssessmentRecord,
    FilterSet,
    apply_filters,
    compute_precision,
)
from vocabulary import english_vocabulary, german_vocabulary


def _announce(name: str) -> None:
    print(f"\nACCEPTANCE PASS: {name}")


# ---------------------------------------------------------------------------
# Published-table reproduction
# ---------------------------------------------------------------------------


def test_effort_table_reproduction():
    started = time.perf_counter()
    for row in BENCHMARK_ROWS:
        estimate = effort(row.blow_up_words)
        assert abs(round(estimate.reading_minutes, 1) - row.reading_minutes) <= 0.05, row
        assert abs(round(estimate.inspection_hours, 1) - row.inspection_hours) <= 0.05, row
    average = effort(AVG_BLOW_UP_WORDS)
    assert abs(round(average.reading_minutes, 1) - AVG_READING_MINUTES) <= 0.05
    assert abs(round(average.inspection_hours, 1) - AVG_INSPECTION_HOURS) <= 0.05
    assert sum(row.blow_up_words for row in BENCHMARK_ROWS) == TOTAL_BLOW_UP_WORDS
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _announce(
        f"effort-table reproduction (28 corpora, ±0.05 after rounding, {elapsed:.3f}s)"
    )


def test_blow_up_consistency():
    started = time.perf_counter()
    checked = 0
    for row in BENCHMARK_ROWS:
        if row.blow_up_words == 0:
            continue
        derived_pct = row.blow_up_words / (row.words - row.blow_up_words) * 100.0
        assert abs(derived_pct - row.blow_up_pct) <= 0.15, row
        checked += 1
    assert checked == 26
    assert sum(row.words for row in BENCHMARK_ROWS) == TOTAL_WORDS
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _announce(
        f"blow-up consistency (26 nonzero corpora, ±0.15 pp, {elapsed:.3f}s)"
    )


def test_correlation_reproduction():
    started = time.perf_counter()
    coverages = [row.coverage_pct for row in BENCHMARK_ROWS]
    words = [float(row.words) for row in BENCHMARK_ROWS]
    coefficient = pearson(coverages, words)
    assert abs(coefficient - (-0.06)) <= 0.02, coefficient
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _announce(
        f"correlation reproduction (r = {coefficient:.4f} vs -0.06 ± 0.02, {elapsed:.3f}s)"
    )


# ---------------------------------------------------------------------------
# Detector oracle equivalence
# ---------------------------------------------------------------------------


def _fibonacci_word(n: int) -> list[str]:
    a, b = ["a"], ["a", "b"]
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def _thue_morse(n: int) -> list[str]:
    return [f"t{bin(i).count('1') % 2}" for i in range(n)]


def _de_bruijn_binary(order: int) -> list[str]:
    # standard greedy construction
    seen = set()
    sequence = [0] * order
    seen.add(tuple(sequence))
    while True:
        for bit in (1, 0):
            candidate = tuple(sequence[-(order - 1):] + [bit]) if order > 1 else (bit,)
            if candidate not in seen:
                seen.add(candidate)
                sequence.append(bit)
                break
        else:
            break
    return [f"b{bit}" for bit in sequence]


def adversarial_fixtures() -> list[tuple[str, list[list[str]], list[int]]]:
    """(name, documents-as-token-lists, min-lengths) triples."""
    block_a = [f"A{i}" for i in range(6)]
    block_b = [f"B{i}" for i in range(4)]
    nested = (
        ["x0"] + block_a + block_b + block_a + ["y0"]
        + block_a + block_b + block_a + ["z0"]
    )
    long_block = [f"L{i}" for i in range(30)]
    cases = [
        ("unary run", [["a"] * 600], [2, 3, 20]),
        ("period two", [["a", "b"] * 300], [2, 5]),
        ("period three", [["a", "b", "c"] * 200], [2, 3, 20]),
        ("period four offset", [["a", "b", "c", "d"] * 150 + ["a", "b"]], [3]),
        ("fibonacci word", [_fibonacci_word(500)], [2, 5]),
        ("thue-morse", [_thue_morse(512)], [2, 5]),
        ("de bruijn order 8", [_de_bruijn_binary(8)], [2, 8]),
        ("nested repeats", [nested], [2, 4, 10]),
        ("adjacent twin blocks", [long_block + long_block], [2, 30]),
        ("triple block", [long_block + long_block + long_block], [30]),
        ("seam-spanning twin", [["u"] + long_block, long_block + ["v"]], [5, 30]),
        ("identical documents", [long_block, list(long_block)], [5, 30]),
        ("three identical documents", [long_block, list(long_block), list(long_block)], [10]),
        ("repeat butted at seam", [long_block, list(long_block) + list(long_block)], [30]),
        ("all distinct", [[f"w{i}" for i in range(500)]], [2]),
        ("empty stream", [[]], [2]),
        ("empty documents between", [[], ["p", "q", "p", "q"], []], [2]),
        ("single word", [["solo"]], [2]),
        ("shorter than minimum", [["p", "q", "r"]], [4]),
        ("exactly minimum pair", [["m1", "m2", "m3", "s", "m1", "m2", "m3"]], [3]),
        ("high cardinality 42", [sum((["r1", "r2", "r3", f"sep{i}"] for i in range(42)), [])], [2, 3]),
        ("planted in noise", None, [5, 20]),  # filled below
    ]
    rng = random.Random(424242)
    noise = [f"n{rng.randrange(1000)}" for _ in range(900)]
    passage = [f"planted{i}" for i in range(25)]
    planted = noise[:200] + passage + noise[200:500] + passage + noise[500:]
    cases = [
        (name, docs if docs is not None else [planted], lengths)
        for name, docs, lengths in cases
    ]
    return cases


def _assert_metric_invariants(stream, result) -> None:
    report = metrics_report(stream, result)
    assert report.total_words == report.redundancy_free_words + report.blow_up_words
    assert 0.0 <= report.clone_coverage <= 1.0
    assert (report.clone_coverage == 0.0) == (report.clone_groups == 0)
    for group in result.groups:
        for clone in group.clones:
            seg_start, seg_end = stream.segment_bounds(clone.start)
            assert seg_start <= clone.start and clone.end <= seg_end, (
                "clone crosses a document boundary"
            )


def test_oracle_equivalence_randomized_and_adversarial():
    started = time.perf_counter()
    rng = random.Random(1234)
    streams = 0

    # randomized streams: alphabet sizes 2-50, lengths up to 2000
    plan = [(700, 300), (200, 1000), (100, 2000)]
    alphabets = (2, 2, 3, 3, 4, 5, 6, 8, 12, 20, 35, 50)  # biased toward dense repeats
    for count, max_len in plan:
        for _ in range(count):
            alphabet = rng.choice(alphabets)
            length = rng.randint(0, max_len)
            doc_count = rng.randint(1, 3)
            cuts = sorted(rng.randint(0, length) for _ in range(doc_count - 1))
            tokens = [f"t{rng.randrange(alphabet)}" for _ in range(length)]
            docs = []
            previous = 0
            for cut in cuts + [length]:
                docs.append(tokens[previous:cut])
                previous = cut
            stream = make_stream(docs)
            min_length = rng.randint(2, 25)
            fast = detect_clones(stream, min_length)
            slow = brute_force_detect(stream, min_length)
            assert group_shape(fast) == group_shape(slow), (
                f"mismatch at stream {streams} (alphabet {alphabet}, "
                f"length {length}, min {min_length})"
            )
            _assert_metric_invariants(stream, fast)
            streams += 1
    assert streams >= 1000

    fixtures = 0
    for name, docs, min_lengths in adversarial_fixtures():
        stream = make_stream(docs)
        for min_length in min_lengths:
            fast = detect_clones(stream, min_length)
            slow = brute_force_detect(stream, min_length)
            assert group_shape(fast) == group_shape(slow), (name, min_length)
            _assert_metric_invariants(stream, fast)
        fixtures += 1
    assert fixtures >= 20

    elapsed = time.perf_counter() - started
    _announce(
        f"oracle equivalence ({streams} randomized streams, {fixtures} adversarial "
        f"fixtures, {elapsed:.1f}s)"
    )


def test_metric_invariants_with_exclusions():
    # invariants hold on a filtered corpus: no normalized word may
    # originate inside an exclusion span
    config = LanguageConfig.for_language("english")
    from srsclone.corpus import Corpus, CorpusSpec, RawDocument
    from srsclone.tailor import FilterRule

    text = (
        "alpha beta gamma delta epsilon zeta eta theta iota kappa\n"
        "Page 1 of 9\n"
        "alpha beta gamma delta epsilon zeta eta theta iota kappa\n"
        "Page 2 of 9\n"
    )
    document = RawDocument(id="doc.txt", path="mem/doc.txt", text=text, language="english")
    corpus = Corpus(
        spec=CorpusSpec(name="inv", documents=("mem/doc.txt",)),
        documents=(document,),
    )
    filters = FilterSet((FilterRule(pattern=r"Page \d+ of \d+", scope="*", label="f"),))
    stream = normalize_stream(corpus, config, filters)
    spans = apply_filters(document, filters)
    for word in stream.words:
        assert not spans.covers(word.origin.char_start, word.origin.char_end)
    result = detect_clones(stream, 5)
    _assert_metric_invariants(stream, result)
    assert result.groups, "the duplicated line must still be found"
    relative, absolute, redundancy_free = blow_up(stream, result)
    assert stream.total_raw_words == absolute + redundancy_free
    assert clone_coverage(stream, result) == pytest.approx(1.0)
    _announce("metric invariants (accounting identity, bounds, exclusion soundness)")


# ---------------------------------------------------------------------------
# Stemmer conformance
# ---------------------------------------------------------------------------


def test_stemmer_conformance():
    started = time.perf_counter()
    english = english_vocabulary()
    assert len(english) >= 10000
    english_mismatches = sum(
        1 for word in english if porter_stem(word) != reference_porter_stem(word)
    )
    assert english_mismatches == 0

    german = german_vocabulary()
    assert len(german) >= 10000
    german_mismatches = sum(
        1 for word in german if german_stem(word) != reference_german_stem(word)
    )
    assert german_mismatches == 0
    elapsed = time.perf_counter() - started
    _announce(
        f"stemmer conformance ({len(english)} English and {len(german)} German "
        f"words, zero mismatches, {elapsed:.1f}s)"
    )


# ---------------------------------------------------------------------------
# Tailoring precision workflow
# ---------------------------------------------------------------------------


def _assess_all(report) -> list[AssessmentRecord]:
    records = []
    for group in report.groups:
        snippet = group.clones[0].snippet
        if "Footer" in snippet:
            records.append(
                AssessmentRecord(
                    clone_group_id=group.id,
                    verdict="false_positive",
                    false_positive_kind="page_decoration",
                    rater="acceptance",
                )
            )
        else:
            records.append(
                AssessmentRecord(
                    clone_group_id=group.id,
                    verdict="relevant",
                    categories=frozenset({"detailed_use_case_steps"}),
                    rater="acceptance",
                )
            )
    return records


def test_tailoring_precision_workflow(tmp_path):
    manifest = build_tailoring_corpus(tmp_path)
    report, _ = run(manifest, RunOptions(out_dir=tmp_path / "before"))
    assessments = _assess_all(report)
    before = compute_precision(assessments)
    footer_groups = sum(1 for r in assessments if not r.relevant)
    genuine = sum(1 for r in assessments if r.relevant)
    assert genuine == 40, f"expected the 40 planted duplications, got {genuine}"
    assert footer_groups > genuine
    assert before < 0.5, f"precision before tailoring was {before:.3f}"

    filter_path = tmp_path / "tailored.filters"
    filter_path.write_text(FOOTER_FILTER_LINE + "\n", encoding="utf-8")
    tailored_report, _ = run(
        manifest,
        RunOptions(filters=str(filter_path), out_dir=tmp_path / "after"),
    )
    tailored_assessments = _assess_all(tailored_report)
    after = compute_precision(tailored_assessments)
    assert after == 1.0
    assert all("Footer" not in g.clones[0].snippet for g in tailored_report.groups)
    assert len(tailored_report.groups) == 40
    _announce(
        f"tailoring workflow (precision {before * 100:.1f}% -> {after * 100:.0f}%, "
        f"{footer_groups} footer groups removed by one rule)"
    )


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------


def test_structured_report_determinism(tmp_path):
    manifest = build_tailoring_corpus(tmp_path)
    run(manifest, RunOptions(out_dir=tmp_path / "run1"))
    run(manifest, RunOptions(out_dir=tmp_path / "run2"))
    first = (tmp_path / "run1" / "tailoring.report.json").read_bytes()
    second = (tmp_path / "run2" / "tailoring.report.json").read_bytes()
    assert first == second
    assert first, "report must not be empty"
    _announce(
        f"determinism (byte-identical structured reports, {len(first)} bytes)"
    )
