"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

from srsclone.corpus import Corpus, CorpusSpec, RawDocument
from srsclone.detect import DetectionResult
from srsclone.normalize import NormalizedStream, NormalizedWord, RawWord


def make_stream(token_lists: list[list[str]], language: str = "english") -> NormalizedStream:
    """Build a NormalizedStream from pre-normalized tokens, one document per list.

    Raw words map 1:1 onto normalized words, with consistent character
    spans inside a synthetic space-joined document text.
    """
    documents: list[RawDocument] = []
    words: list[NormalizedWord] = []
    doc_ids: list[str] = []
    boundaries: list[int] = []
    counts: list[int] = []
    paths: list[str] = []
    for doc_index, tokens in enumerate(token_lists):
        doc_id = f"doc{doc_index}.txt"
        text = " ".join(tokens)
        documents.append(
            RawDocument(id=doc_id, path=f"mem/{doc_id}", text=text, language=language)
        )
        paths.append(f"mem/{doc_id}")
        if doc_index > 0:
            boundaries.append(len(words))
        doc_ids.append(doc_id)
        counts.append(len(tokens))
        cursor = 0
        for raw_index, token in enumerate(tokens):
            words.append(
                NormalizedWord(
                    norm=token,
                    origin=RawWord(
                        document_id=doc_id,
                        raw_index=raw_index,
                        char_start=cursor,
                        char_end=cursor + len(token),
                        surface=token,
                    ),
                )
            )
            cursor += len(token) + 1
    spec = CorpusSpec(name="synthetic", language=language, documents=tuple(paths))
    corpus = Corpus(spec=spec, documents=tuple(documents))
    return NormalizedStream(
        corpus=corpus,
        words=tuple(words),
        doc_ids=tuple(doc_ids),
        doc_boundaries=tuple(boundaries),
        raw_word_counts=tuple(counts),
    )


def group_shape(result: DetectionResult) -> list[tuple[str, int, tuple[int, ...]]]:
    """Canonical (id, length, starts) view of a detection result."""
    return [
        (group.id, group.length, tuple(clone.start for clone in group.clones))
        for group in result.groups
    ]


def random_token_lists(
    rng: random.Random,
    max_docs: int = 3,
    max_words: int = 120,
    alphabet: int | None = None,
) -> list[list[str]]:
    """Random per-document token lists for detector fuzzing."""
    alphabet = alphabet if alphabet is not None else rng.randint(2, 50)
    docs = rng.randint(1, max_docs)
    lists = []
    budget = max_words
    for _ in range(docs):
        n = rng.randint(0, budget)
        budget -= n
        lists.append([f"t{rng.randrange(alphabet)}" for _ in range(n)])
    return lists


def write_corpus(
    tmp_path: Path,
    texts: dict[str, str],
    *,
    name: str = "fixture",
    language: str = "english",
    min_clone_length: int | None = None,
    filters: str | None = None,
) -> Path:
    """Write documents plus a manifest into tmp_path; returns the manifest path."""
    doc_dir = tmp_path / "docs"
    doc_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"corpus = {name}", f"language = {language}"]
    if min_clone_length is not None:
        lines.append(f"min_clone_length = {min_clone_length}")
    if filters is not None:
        filter_path = tmp_path / "rules.filters"
        filter_path.write_text(filters, encoding="utf-8")
        lines.append("filters = rules.filters")
        # manifest-relative: rules.filters sits next to the manifest
    for file_name, text in texts.items():
        (doc_dir / file_name).write_text(text, encoding="utf-8")
        lines.append(f"doc = docs/{file_name}")
    manifest = tmp_path / f"{name}.manifest"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


# ---------------------------------------------------------------------------
# Synthetic tailoring corpus: seeded duplications plus page footers
# ---------------------------------------------------------------------------

FOOTER_PREFIX = "Footer:"


def build_tailoring_corpus(
    tmp_path: Path,
    *,
    duplications: int = 40,
    footer_sections: int = 45,
    pages_per_section: int = 2,
    min_clone_length: int = 8,
    seed: int = 13,
) -> Path:
    """A corpus whose honest duplications are outnumbered by footer groups.

    Every page ends with a footer line naming its section; a section's
    pages share that footer, so each section yields one footer-only clone
    group.  Forty genuine passages are planted twice each inside unique
    filler text.  One filter rule matching the footer lines removes every
    footer group and leaves the genuine ones untouched.
    """
    rng = random.Random(seed)
    filler_counter = 0

    def filler(n: int) -> list[str]:
        nonlocal filler_counter
        out = [f"filler{filler_counter + i:05d}" for i in range(n)]
        filler_counter += n
        return out

    passages = [
        [f"payload{p:02d}x{i:02d}" for i in range(min_clone_length + 2 + (p % 3))]
        for p in range(duplications)
    ]
    # two instances per passage, spread over the corpus
    instances = [(p, 0) for p in range(duplications)] + [
        (p, 1) for p in range(duplications)
    ]
    rng.shuffle(instances)

    section_names = [
        (f"area{s:02d}", f"topic{s:02d}") for s in range(footer_sections)
    ]
    footer_words = 9  # footer line length in normalized words, >= min length

    pages: list[str] = []
    instance_iter = iter(instances)
    total_pages = footer_sections * pages_per_section
    per_page = max(1, (2 * duplications + total_pages - 1) // total_pages)
    for section, (area, topic) in enumerate(section_names):
        for _ in range(pages_per_section):
            body_parts: list[str] = []
            for _ in range(per_page):
                body_parts.extend(filler(3))
                item = next(instance_iter, None)
                if item is not None:
                    passage_index, _ = item
                    body_parts.extend(passages[passage_index])
                body_parts.extend(filler(3))
            page_lines = [
                " ".join(body_parts) + ".",
                f"{FOOTER_PREFIX} acme systems confidential internal section "
                f"{area} {topic} page",
            ]
            pages.append("\n".join(page_lines))
    remaining = list(instance_iter)
    if remaining:
        # spill leftover instances onto extra pages of the last section
        for passage_index, _ in remaining:
            area, topic = section_names[-1]
            body = filler(3) + passages[passage_index] + filler(3)
            pages.append(
                " ".join(body)
                + ".\n"
                + f"{FOOTER_PREFIX} acme systems confidential internal section "
                f"{area} {topic} page"
            )

    half = len(pages) // 2
    texts = {
        "volume1.txt": "\n".join(pages[:half]) + "\n",
        "volume2.txt": "\n".join(pages[half:]) + "\n",
    }
    return write_corpus(
        tmp_path,
        texts,
        name="tailoring",
        min_clone_length=min_clone_length,
    )


FOOTER_FILTER_LINE = "*\tpage footer\t(?m)^Footer: .*$"
