"""Document ingest: tokenization, stop-word removal, keyword table and
occurrence points.

Documents are read from a directory in lexicographic file-name order, so
document IDs and keyword IDs are reproducible across file systems.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyVocabularyError, IngestError
from .relation import Dataset

ENCODING = "utf-8"

# maximal runs of letters/digits; "_" is a word char for \w but not alphanumeric
_TOKEN_RE = re.compile(r"[^\W_]+")

DEFAULT_STOP_WORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by can could did do does doing
    down during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more most
    my myself no nor not of off on once only or other our ours ourselves out
    over own same she should so some such than that the their theirs them
    themselves then there these they this those through to too under until up
    very was we were what when where which while who whom why will with would
    you your yours yourself yourselves
    """.split()
)


class StopWordSet:
    """A set of stop words with case-insensitive membership."""

    def __init__(self, words: Iterable[str] = DEFAULT_STOP_WORDS):
        self.words = frozenset(w.lower() for w in words)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def from_file(cls, path) -> "StopWordSet":
        """Load one word per line; blank lines and ``#`` comments are skipped."""
        path = Path(path)
        try:
            text = path.read_text(encoding=ENCODING)
        except UnicodeDecodeError as exc:
            raise IngestError(f"{path.name}: undecodable byte at offset {exc.start}") from exc
        except OSError as exc:
            raise IngestError(f"cannot read stop-word file {path}: {exc.strerror}") from exc
        words = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                words.append(line)
        return cls(words)


@dataclass(frozen=True)
class Document:
    doc_id: int
    name: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class KeywordTable:
    """Keyword <-> keyword ID map; IDs are 0..len-1 in first-occurrence order."""

    keywords: tuple[str, ...]
    min_df: int = 1

    def __post_init__(self):
        object.__setattr__(self, "_ids", {kw: i for i, kw in enumerate(self.keywords)})

    def __len__(self):
        return len(self.keywords)

    def __contains__(self, keyword):
        return keyword in self._ids

    @property
    def entries(self) -> list[tuple[int, str]]:
        return list(enumerate(self.keywords))

    def id_of(self, keyword: str) -> int:
        return self._ids[keyword]

    def keyword(self, keyword_id: int) -> str:
        return self.keywords[keyword_id]

    def to_json(self) -> str:
        return json.dumps([{"id": i, "keyword": kw} for i, kw in self.entries])


@dataclass(frozen=True)
class Occurrence:
    label: str
    keyword_id: int
    doc_id: int


@dataclass(frozen=True)
class OccurrenceTable:
    pairs: tuple[Occurrence, ...]

    def __len__(self):
        return len(self.pairs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "keyword_id", "doc_id"])
        for occ in self.pairs:
            writer.writerow([occ.label, occ.keyword_id, occ.doc_id])
        return buf.getvalue()


def tokenize(raw_text: str, stops: StopWordSet) -> list[str]:
    """Split text into lowercase alphanumeric runs and drop stop words."""
    return [tok for tok in _TOKEN_RE.findall(raw_text.lower()) if tok not in stops]


def decode(data: bytes, name: str) -> str:
    try:
        return data.decode(ENCODING)
    except UnicodeDecodeError as exc:
        raise IngestError(f"{name}: undecodable byte at offset {exc.start}") from exc


def read_documents(directory, stops: StopWordSet | None = None) -> list[Document]:
    """Read every regular file in ``directory`` (sorted by name) as a Document."""
    directory = Path(directory)
    if not directory.is_dir():
        raise IngestError(f"not a directory: {directory}")
    stops = stops if stops is not None else StopWordSet()
    files = sorted((p for p in directory.iterdir() if p.is_file()), key=lambda p: p.name)
    if not files:
        raise IngestError("no input documents")
    docs = []
    for doc_id, path in enumerate(files):
        text = decode(path.read_bytes(), path.name)
        docs.append(Document(doc_id, path.name, tuple(tokenize(text, stops))))
    return docs


def build_keyword_table(docs: Sequence[Document], min_df: int = 1) -> KeywordTable:
    """Keep tokens appearing in at least ``min_df`` documents.

    IDs follow first occurrence while scanning documents in doc_id order.
    """
    if min_df < 1:
        raise ValueError("min_df must be a positive integer")
    if not docs:
        raise IngestError("no input documents")
    df = Counter()
    order = {}
    for doc in sorted(docs, key=lambda d: d.doc_id):
        for tok in dict.fromkeys(doc.tokens):
            df[tok] += 1
            order.setdefault(tok, len(order))
    keywords = tuple(tok for tok in sorted(order, key=order.get) if df[tok] >= min_df)
    if not keywords:
        raise EmptyVocabularyError()
    return KeywordTable(keywords, min_df)


def occurrence_points(
    docs: Sequence[Document], table: KeywordTable
) -> tuple[OccurrenceTable, Dataset]:
    """One 2-D point per distinct (document, keyword) co-occurrence.

    Points are ordered by doc_id, then by the keyword's first position in
    the document. Each point is ``(doc_id, keyword_id)``.
    """
    pairs = []
    for doc in sorted(docs, key=lambda d: d.doc_id):
        for tok in dict.fromkeys(doc.tokens):
            if tok in table:
                pairs.append((table.id_of(tok), doc.doc_id))
    if not pairs:
        raise IngestError("no keyword occurrences")
    labels = tuple(f"x{i + 1}" for i in range(len(pairs)))
    occ = OccurrenceTable(tuple(Occurrence(lab, kw, d) for lab, (kw, d) in zip(labels, pairs)))
    points = np.array([(d, kw) for kw, d in pairs], dtype=float)
    return occ, Dataset(points, labels)


def tf_vectors(docs: Sequence[Document], table: KeywordTable) -> Dataset:
    """Raw term-count vector per document, one coordinate per keyword.

    Points are labelled with the source file names.
    """
    docs = sorted(docs, key=lambda d: d.doc_id)
    points = np.zeros((len(docs), len(table)))
    for row, doc in enumerate(docs):
        for tok in doc.tokens:
            if tok in table:
                points[row, table.id_of(tok)] += 1
    return Dataset(points, tuple(doc.name for doc in docs))
