"""Normalization: raw document text to the word stream detection searches.

Per document the pipeline is: apply exclusion filters, tokenize (maximal
runs of Unicode letters and digits, case-folded), count the surviving raw
words, drop stop words, and stem what remains.  Per-document results are
concatenated in manifest order.  Every normalized word keeps full
provenance (document, raw word index, character span) so results can be
projected back onto the original text.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator

from .corpus import Corpus, RawDocument
from .errors import CloneToolError
from .stemming import STEMMERS
from .tailor import ExclusionSpans, FilterSet, apply_filters

# Maximal runs of word characters excluding underscore, i.e. Unicode
# letters and digits.  Everything else separates words.
_WORD_RE = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class RawWord:
    """A word as written, with its position in the source document."""

    document_id: str
    raw_index: int
    char_start: int
    char_end: int
    surface: str


@dataclass(frozen=True)
class NormalizedWord:
    norm: str
    origin: RawWord


@dataclass(frozen=True)
class LanguageConfig:
    """Stop-word list and stemmer for one language."""

    language: str
    stop_words: frozenset[str]
    stemmer: Callable[[str], str]

    def __post_init__(self) -> None:
        for word in self.stop_words:
            if word != word.lower() or not _is_single_token(word):
                raise CloneToolError(
                    f"stop word {word!r} must be lowercase and punctuation-free"
                )

    @classmethod
    def for_language(cls, language: str, stop_words_path: str | Path | None = None) -> "LanguageConfig":
        if language not in STEMMERS:
            raise CloneToolError(f"unsupported language: {language!r}")
        if stop_words_path is None:
            ref = resources.files("srsclone").joinpath(f"data/stopwords_{language}.txt")
            text = ref.read_text(encoding="utf-8")
        else:
            text = Path(stop_words_path).read_text(encoding="utf-8")
        return cls(
            language=language,
            stop_words=parse_stop_words(text),
            stemmer=STEMMERS[language],
        )


def _is_single_token(word: str) -> bool:
    match = _WORD_RE.fullmatch(word)
    return match is not None


def parse_stop_words(text: str) -> frozenset[str]:
    """Parse a stop-word list: one word per line, '#' comments."""
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line)
    return frozenset(words)


@dataclass(frozen=True)
class NormalizedStream:
    """The concatenated normalized words of a corpus, with provenance.

    ``doc_boundaries`` holds the stream index at which each document
    after the first begins (the concatenation seams); ``raw_word_counts``
    holds the per-document raw word totals measured after span exclusion
    but before stop-word removal, which is the denominator the metrics
    use.
    """

    corpus: Corpus
    words: tuple[NormalizedWord, ...]
    doc_ids: tuple[str, ...]
    doc_boundaries: tuple[int, ...]
    raw_word_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.doc_ids) != len(self.raw_word_counts):
            raise CloneToolError("raw_word_counts must parallel doc_ids")
        if len(self.doc_boundaries) != max(len(self.doc_ids) - 1, 0):
            raise CloneToolError("doc_boundaries must have one entry per seam")
        previous = 0
        for boundary in self.doc_boundaries:
            if boundary < previous or boundary > len(self.words):
                raise CloneToolError("doc boundaries must be sorted and in range")
            previous = boundary
        if sum(self.raw_word_counts) < len(self.words):
            raise CloneToolError("more normalized words than raw words")

    @property
    def total_raw_words(self) -> int:
        return sum(self.raw_word_counts)

    def __len__(self) -> int:
        return len(self.words)

    def segments(self) -> Iterator[tuple[str, int, int]]:
        """Yield (document_id, start, end) stream ranges in document order."""
        starts = (0,) + self.doc_boundaries
        ends = self.doc_boundaries + (len(self.words),)
        for doc_id, start, end in zip(self.doc_ids, starts, ends):
            yield doc_id, start, end

    def segment_bounds(self, index: int) -> tuple[int, int]:
        """Stream range [start, end) of the document containing stream index."""
        seg = bisect_right(self.doc_boundaries, index)
        start = self.doc_boundaries[seg - 1] if seg > 0 else 0
        end = self.doc_boundaries[seg] if seg < len(self.doc_boundaries) else len(self.words)
        return start, end


def tokenize(document: RawDocument, excluded: ExclusionSpans | None = None) -> list[RawWord]:
    """Split document text into lowercase words with exact character spans.

    Words are maximal runs of Unicode letters and digits.  A word whose
    span intersects an excluded span is dropped entirely; offsets always
    refer to the original text.
    """
    words: list[RawWord] = []
    index = 0
    for match in _WORD_RE.finditer(document.text):
        start, end = match.start(), match.end()
        if excluded is not None and excluded.covers(start, end):
            continue
        words.append(
            RawWord(
                document_id=document.id,
                raw_index=index,
                char_start=start,
                char_end=end,
                surface=match.group().lower(),
            )
        )
        index += 1
    return words


def remove_stop_words(words: list[RawWord], config: LanguageConfig) -> list[RawWord]:
    """Drop words whose surface is a stop word; order and provenance kept."""
    return [word for word in words if word.surface not in config.stop_words]


def stem(word: str, config: LanguageConfig) -> str:
    """Stem one lowercase word with the configured language's stemmer."""
    return config.stemmer(word)


def normalize_stream(
    corpus: Corpus,
    config: LanguageConfig,
    filters: FilterSet | None = None,
) -> NormalizedStream:
    """Run the full normalization pipeline over a corpus."""
    if config.language != corpus.spec.language:
        raise CloneToolError(
            f"language config is {config.language!r} but corpus is "
            f"{corpus.spec.language!r}"
        )
    filter_set = filters if filters is not None else FilterSet()
    stem_cache: dict[str, str] = {}
    words: list[NormalizedWord] = []
    doc_ids: list[str] = []
    boundaries: list[int] = []
    raw_counts: list[int] = []

    for document in corpus.documents:
        if doc_ids:
            boundaries.append(len(words))
        doc_ids.append(document.id)
        excluded = apply_filters(document, filter_set)
        tokens = tokenize(document, excluded)
        raw_counts.append(len(tokens))
        for raw in remove_stop_words(tokens, config):
            norm = stem_cache.get(raw.surface)
            if norm is None:
                norm = config.stemmer(raw.surface)
                if not norm:
                    # empty stems keep the surface so streams stay aligned
                    norm = raw.surface
                stem_cache[raw.surface] = norm
            words.append(NormalizedWord(norm=norm, origin=raw))

    return NormalizedStream(
        corpus=corpus,
        words=tuple(words),
        doc_ids=tuple(doc_ids),
        doc_boundaries=tuple(boundaries),
        raw_word_counts=tuple(raw_counts),
    )
