"""Corpus loading: manifests plus the plain-text documents they list.

A corpus is declared by a line-oriented manifest::

    # comment
    corpus = billing-system
    language = english
    min_clone_length = 20
    filters = tailoring.filters
    doc = specs/functional.txt
    doc = specs/interfaces.txt :: latin-1

Document order is significant: downstream word streams concatenate the
documents in manifest order.  Relative paths resolve against the manifest's
directory.  Every document must decode cleanly (UTF-8 unless an explicit
``:: <encoding>`` override is given); decoding failures are load errors,
never silent replacement.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusError, ManifestError

DEFAULT_MIN_CLONE_LENGTH = 20
DEFAULT_LANGUAGE = "english"
LANGUAGES = ("english", "german")

_ENCODING_SEP = " :: "


@dataclass(frozen=True)
class RawDocument:
    """One loaded document: decoded text plus identity and provenance."""

    id: str
    path: str
    text: str
    language: str

    def sha256(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CorpusSpec:
    """Parsed manifest: what to load and how to detect."""

    name: str
    language: str = DEFAULT_LANGUAGE
    min_clone_length: int = DEFAULT_MIN_CLONE_LENGTH
    documents: tuple[str, ...] = ()
    encodings: tuple[str, ...] = ()  # parallel to documents, "" = utf-8
    filter_file: str | None = None

    def __post_init__(self) -> None:
        if self.language not in LANGUAGES:
            raise ManifestError(f"unsupported language: {self.language!r}")
        if self.min_clone_length < 2:
            raise ManifestError(
                f"min_clone_length must be >= 2, got {self.min_clone_length}"
            )
        if not self.documents:
            raise ManifestError("manifest lists no documents")
        if self.encodings and len(self.encodings) != len(self.documents):
            raise ManifestError("encodings must parallel documents")

    def encoding_for(self, index: int) -> str:
        if self.encodings and self.encodings[index]:
            return self.encodings[index]
        return "utf-8"


@dataclass(frozen=True)
class Corpus:
    """A loaded corpus: the spec plus one RawDocument per manifest entry."""

    spec: CorpusSpec
    documents: tuple[RawDocument, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.documents) != len(self.spec.documents):
            raise CorpusError("document count does not match manifest")
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise CorpusError(f"duplicate document ids: {sorted(ids)}")

    def document(self, doc_id: str) -> RawDocument:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        raise KeyError(doc_id)


def load_manifest(path: str | Path) -> CorpusSpec:
    """Parse a manifest file into a CorpusSpec.

    Unset keys default to ``min_clone_length = 20`` and
    ``language = english``; the corpus name defaults to the manifest file
    stem.  Unknown keys are an error, as are duplicate scalar keys.
    """
    manifest_path = Path(path)
    try:
        lines = manifest_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise ManifestError(f"manifest not found: {manifest_path}") from None
    except UnicodeDecodeError as exc:
        raise ManifestError(f"manifest is not valid UTF-8: {manifest_path}: {exc}") from None

    base = manifest_path.parent
    name: str | None = None
    language: str | None = None
    min_clone_length: int | None = None
    filter_file: str | None = None
    documents: list[str] = []
    encodings: list[str] = []

    def fail(lineno: int, message: str) -> ManifestError:
        return ManifestError(f"{manifest_path}:{lineno}: {message}")

    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise fail(lineno, f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "corpus":
            if name is not None:
                raise fail(lineno, "duplicate 'corpus' key")
            name = value
        elif key == "language":
            if language is not None:
                raise fail(lineno, "duplicate 'language' key")
            if value not in LANGUAGES:
                raise fail(lineno, f"unsupported language {value!r}")
            language = value
        elif key == "min_clone_length":
            if min_clone_length is not None:
                raise fail(lineno, "duplicate 'min_clone_length' key")
            try:
                min_clone_length = int(value)
            except ValueError:
                raise fail(lineno, f"min_clone_length is not an integer: {value!r}") from None
            if min_clone_length < 2:
                raise fail(lineno, f"min_clone_length must be >= 2, got {min_clone_length}")
        elif key == "filters":
            if filter_file is not None:
                raise fail(lineno, "duplicate 'filters' key")
            filter_file = str((base / value).resolve())
        elif key == "doc":
            doc_path, encoding = value, ""
            if _ENCODING_SEP in value:
                doc_path, _, encoding = value.partition(_ENCODING_SEP)
                doc_path = doc_path.strip()
                encoding = encoding.strip()
            if not doc_path:
                raise fail(lineno, "empty document path")
            documents.append(str((base / doc_path).resolve()))
            encodings.append(encoding)
        else:
            raise fail(lineno, f"unknown key {key!r}")

    if not documents:
        raise ManifestError(f"{manifest_path}: manifest lists no documents")

    return CorpusSpec(
        name=name if name is not None else manifest_path.stem,
        language=language if language is not None else DEFAULT_LANGUAGE,
        min_clone_length=(
            min_clone_length if min_clone_length is not None else DEFAULT_MIN_CLONE_LENGTH
        ),
        documents=tuple(documents),
        encodings=tuple(encodings),
        filter_file=filter_file,
    )


def _unique_id(base: str, used: set[str]) -> str:
    if base not in used:
        return base
    for ordinal in range(2, len(used) + 3):
        candidate = f"{base}#{ordinal}"
        if candidate not in used:
            return candidate
    raise CorpusError(f"cannot derive a unique id for {base!r}")


def load_corpus(spec: CorpusSpec) -> Corpus:
    """Read every document named by the spec, in manifest order.

    Document ids derive from the file names; colliding names are
    uniquified by suffixing an ordinal ("spec.txt", "spec.txt#2", ...).
    """
    documents: list[RawDocument] = []
    used_ids: set[str] = set()
    for index, doc_path in enumerate(spec.documents):
        path = Path(doc_path)
        encoding = spec.encoding_for(index)
        try:
            text = path.read_text(encoding=encoding)
        except FileNotFoundError:
            raise CorpusError(f"document not found: {path}") from None
        except IsADirectoryError:
            raise CorpusError(f"document is a directory: {path}") from None
        except LookupError:
            raise CorpusError(f"unknown encoding {encoding!r} for {path}") from None
        except UnicodeDecodeError as exc:
            raise CorpusError(f"cannot decode {path} as {encoding}: {exc}") from None
        doc_id = _unique_id(path.name, used_ids)
        used_ids.add(doc_id)
        documents.append(
            RawDocument(id=doc_id, path=str(path), text=text, language=spec.language)
        )
    return Corpus(spec=spec, documents=tuple(documents))
