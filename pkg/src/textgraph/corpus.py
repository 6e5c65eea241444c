"""Reference corpus: document frequencies for idf weighting.

A corpus is built once from a background document collection and then
serialized to a small text file, so repeated runs never depend on having the
background collection around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError
from .stemmer import STEMMER_ID, stem
from .textprep import Token, load_stopwords, segment

_MAGIC = "#textgraph-corpus"
_VERSION = "v1"


@dataclass(frozen=True)
class ReferenceCorpus:
    """Document count and per-stem document frequencies."""

    n: int
    df: Mapping[str, int] = field(default_factory=dict)
    stemmer_id: str = STEMMER_ID

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"corpus must contain at least one document, got n={self.n}")
        for term, count in self.df.items():
            if not term:
                raise ValueError("empty term in document frequency table")
            if not 1 <= count <= self.n:
                raise ValueError(
                    f"df[{term!r}]={count} outside valid range 1..{self.n}"
                )


def document_frequency(corpus: ReferenceCorpus, term: str) -> int:
    """df for a stemmed term; unseen terms are treated as seen once."""
    assert stem(term) == term, f"term {term!r} is not a stem"
    return corpus.df.get(term, 1)


def idf(corpus: ReferenceCorpus, term: str) -> float:
    """ln(n) - ln(df) + 1. The +1 keeps ubiquitous terms from zeroing out."""
    return math.log(corpus.n) - math.log(document_frequency(corpus, term)) + 1.0


def build_corpus(
    documents: Iterable[str | list[Token]],
    stopwords: frozenset[str] | None = None,
) -> ReferenceCorpus:
    """Count, for each stem, how many documents it occurs in.

    Stop words are excluded; they would carry df == n and add nothing.
    Accepts raw strings or pre-segmented token lists.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    df: dict[str, int] = {}
    n = 0
    for doc in documents:
        tokens = segment(doc) if isinstance(doc, str) else doc
        n += 1
        seen = {
            t.stem for t in tokens if t.surface.lower() not in stopwords
        }
        for s in seen:
            df[s] = df.get(s, 0) + 1
    if n == 0:
        raise ValueError("corpus must contain at least one document")
    return ReferenceCorpus(n=n, df=df)


def save_corpus(corpus: ReferenceCorpus, path: str | Path) -> None:
    path = Path(path)
    lines = [f"{_MAGIC} {_VERSION} n={corpus.n} stemmer={corpus.stemmer_id}\n"]
    for term in sorted(corpus.df):
        lines.append(f"{term}\t{corpus.df[term]}\n")
    path.write_text("".join(lines), encoding="utf-8")


def load_corpus(path: str | Path) -> ReferenceCorpus:
    """Parse a corpus file, rejecting anything that deviates from the format."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise FormatError(path, 1, "empty corpus file")
        parts = header.rstrip("\n").split(" ")
        if (
            len(parts) != 4
            or parts[0] != _MAGIC
            or parts[1] != _VERSION
            or not parts[2].startswith("n=")
            or not parts[3].startswith("stemmer=")
        ):
            raise FormatError(path, 1, f"bad corpus header: {header.rstrip()!r}")
        try:
            n = int(parts[2][2:])
        except ValueError:
            raise FormatError(path, 1, f"bad document count: {parts[2][2:]!r}") from None
        stemmer_id = parts[3][len("stemmer=") :]
        if not stemmer_id:
            raise FormatError(path, 1, "missing stemmer id")
        df: dict[str, int] = {}
        prev_term = ""
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                raise FormatError(path, lineno, "blank line in corpus body")
            fields = line.split("\t")
            if len(fields) != 2:
                raise FormatError(path, lineno, "expected <term>\\t<df>")
            term, raw_count = fields
            if not term:
                raise FormatError(path, lineno, "empty term")
            if term <= prev_term:
                raise FormatError(path, lineno, f"terms out of order at {term!r}")
            try:
                count = int(raw_count)
            except ValueError:
                raise FormatError(path, lineno, f"bad df value: {raw_count!r}") from None
            if not 1 <= count <= n:
                raise FormatError(
                    path, lineno, f"df {count} outside valid range 1..{n}"
                )
            df[term] = count
            prev_term = term
    try:
        return ReferenceCorpus(n=n, df=df, stemmer_id=stemmer_id)
    except ValueError as exc:
        raise FormatError(path, 1, str(exc)) from None
