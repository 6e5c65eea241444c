"""Document graph construction.

Nodes are word occurrences in position order, weighted by tf.idf against a
reference corpus. Typed edges connect adjacent tokens (ADJ), occurrences of
the same stem (SAME), phrase members (PHRASE), name-span members (NAME),
coreferential name spans (COREF), and lexicon synonyms (ALPHA).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import ReferenceCorpus, document_frequency
from .errors import EmptyDocumentError, FormatError
from .stemmer import stem
from .textprep import (
    AliasLexicon,
    NameMention,
    PosTag,
    Token,
    alias_match,
)


class EdgeType(str, Enum):
    ADJ = "ADJ"
    SAME = "SAME"
    PHRASE = "PHRASE"
    NAME = "NAME"
    COREF = "COREF"
    ALPHA = "ALPHA"


@dataclass(frozen=True, slots=True)
class Edge:
    """Undirected edge between token positions, stored with src < dst."""

    src: int
    dst: int
    type: EdgeType
    strength: float | None = None

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError("self-loops are not allowed")
        if self.src > self.dst:
            lo, hi = self.dst, self.src
            object.__setattr__(self, "src", lo)
            object.__setattr__(self, "dst", hi)
        if (self.strength is not None) != (self.type is EdgeType.ALPHA):
            raise ValueError("strength is carried by ALPHA edges and only them")
        if self.strength is not None and not 0.0 < self.strength <= 1.0:
            raise ValueError(f"ALPHA strength {self.strength} outside (0, 1]")


@dataclass(frozen=True, slots=True)
class GraphNode:
    token: Token
    weight: float

    @property
    def position(self) -> int:
        return self.token.position

    @property
    def is_stop(self) -> bool:
        return self.token.pos_tag is PosTag.STOP


@dataclass(frozen=True, slots=True)
class PhraseCandidate:
    """A matched ADJ*NOUN+ span. `content_words` excludes interior stops."""

    token_range: tuple[int, int]
    content_words: tuple[Token, ...]
    weight: float
    length_bonus: float
    theta_flags: tuple[int, ...]
    surface: str = ""

    @property
    def text(self) -> str:
        # surface keeps bridged stop words ("secretary of state")
        return self.surface or " ".join(t.surface for t in self.content_words)


@dataclass
class DocumentGraph:
    """Built once per document, then treated as read-only."""

    doc_id: str
    text: str
    nodes: list[GraphNode]
    edges: set[Edge] = field(default_factory=set)
    phrases: list[PhraseCandidate] = field(default_factory=list)
    names: list[NameMention] = field(default_factory=list)

    def node(self, position: int) -> GraphNode:
        return self.nodes[position]

    @property
    def tokens(self) -> list[Token]:
        return [n.token for n in self.nodes]

    def max_weight(self) -> float:
        return max((n.weight for n in self.nodes), default=0.0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (e.src, e.dst, e.type.value))


def tfidf_weight(tf: int, df: int, n: int) -> float:
    """tf · (ln n − ln df + 1)."""
    if tf < 0:
        raise ValueError(f"tf must be non-negative, got {tf}")
    if n < 1:
        raise ValueError(f"corpus size must be positive, got {n}")
    if not 1 <= df <= n:
        raise ValueError(f"df {df} outside valid range 1..{n}")
    return tf * (math.log(n) - math.log(df) + 1.0)


def _norm_pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SynonymLexicon:
    """Symmetric stem pairs with an association strength in (0, 1]."""

    pairs: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def strength(self, a: str, b: str) -> float | None:
        return self.pairs.get(_norm_pair(stem(a), stem(b)))

    def partners(self, term: str) -> set[str]:
        term = stem(term)
        out = set()
        for x, y in self.pairs:
            if x == term:
                out.add(y)
            elif y == term:
                out.add(x)
        return out

    @classmethod
    def load(cls, path: str | Path) -> "SynonymLexicon":
        """Lines `<word_a>\\t<word_b>\\t<strength>`; words are stemmed here,
        so the file can hold natural surface forms."""
        pairs: dict[tuple[str, str], float] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise FormatError(
                        path, lineno, "expected <word_a>\\t<word_b>\\t<strength>"
                    )
                try:
                    strength = float(parts[2])
                except ValueError:
                    raise FormatError(
                        path, lineno, f"bad strength: {parts[2]!r}"
                    ) from None
                if not 0.0 < strength <= 1.0:
                    raise FormatError(
                        path, lineno, f"strength {strength} outside (0, 1]"
                    )
                a, b = stem(parts[0].strip()), stem(parts[1].strip())
                if not parts[0].strip() or not parts[1].strip():
                    raise FormatError(path, lineno, "empty synonym term")
                if a == b:
                    raise FormatError(
                        path, lineno, f"pair stems to the same term {a!r}"
                    )
                pairs[_norm_pair(a, b)] = strength
        return cls(pairs)


EMPTY_SYNONYMS = SynonymLexicon()


def build_graph(
    tokens: Sequence[Token],
    names: Sequence[NameMention],
    corpus: ReferenceCorpus,
    synonyms: SynonymLexicon | None = None,
    *,
    aliases: AliasLexicon | None = None,
    doc_id: str = "doc",
    text: str = "",
    beta_coefficient: float = 0.05,
) -> DocumentGraph:
    """Assemble nodes, weights, and all edge types; extract phrases."""
    if not tokens:
        raise EmptyDocumentError("cannot build a graph from zero tokens")
    if synonyms is None:
        synonyms = EMPTY_SYNONYMS
    if any(t.pos_tag is None for t in tokens):
        raise ValueError("tokens must be POS-tagged before graph construction")

    tf: dict[str, int] = {}
    for tok in tokens:
        if tok.pos_tag is not PosTag.STOP:
            tf[tok.stem] = tf.get(tok.stem, 0) + 1

    nodes = []
    for tok in tokens:
        if tok.pos_tag is PosTag.STOP:
            weight = 0.0
        else:
            df = document_frequency(corpus, tok.stem)
            weight = tfidf_weight(tf[tok.stem], df, corpus.n)
        nodes.append(GraphNode(token=tok, weight=weight))

    graph = DocumentGraph(doc_id=doc_id, text=text, nodes=nodes, names=list(names))
    _add_adj_edges(graph)
    _add_same_edges(graph)
    _add_name_edges(graph)
    _add_coref_edges(graph, aliases)
    _add_alpha_edges(graph, synonyms)
    extract_phrases(graph, beta_coefficient=beta_coefficient)
    return graph


def _add_adj_edges(graph: DocumentGraph) -> None:
    for i in range(len(graph.nodes) - 1):
        graph.edges.add(Edge(i, i + 1, EdgeType.ADJ))


def _add_same_edges(graph: DocumentGraph) -> None:
    # One chain per stem over non-stop occurrences; the clique is the
    # transitive closure of the chain.
    last_seen: dict[str, int] = {}
    for node in graph.nodes:
        if node.is_stop:
            continue
        prev = last_seen.get(node.token.stem)
        if prev is not None:
            graph.edges.add(Edge(prev, node.position, EdgeType.SAME))
        last_seen[node.token.stem] = node.position


def _add_name_edges(graph: DocumentGraph) -> None:
    for mention in graph.names:
        start, end = mention.token_range
        for i in range(start, end - 1):
            graph.edges.add(Edge(i, i + 1, EdgeType.NAME))


def _add_coref_edges(graph: DocumentGraph, aliases: AliasLexicon | None) -> None:
    # Aliased mentions are joined head-to-head; NAME edges carry the rest of
    # each span.
    mentions = graph.names
    for i in range(len(mentions)):
        for j in range(i + 1, len(mentions)):
            if mentions[i].token_range == mentions[j].token_range:
                continue
            if alias_match(mentions[i], mentions[j], aliases):
                graph.edges.add(
                    Edge(
                        mentions[i].token_range[0],
                        mentions[j].token_range[0],
                        EdgeType.COREF,
                    )
                )


def _add_alpha_edges(graph: DocumentGraph, synonyms: SynonymLexicon) -> None:
    by_stem: dict[str, list[int]] = {}
    for node in graph.nodes:
        if not node.is_stop:
            by_stem.setdefault(node.token.stem, []).append(node.position)
    for (a, b), strength in synonyms.pairs.items():
        for pa in by_stem.get(a, ()):
            for pb in by_stem.get(b, ()):
                graph.edges.add(Edge(pa, pb, EdgeType.ALPHA, strength=strength))


def length_bonus(n: int, beta_coefficient: float = 0.05) -> float:
    """β(n): a small bonus proportional to phrase length."""
    return beta_coefficient * n


def extract_phrases(
    graph: DocumentGraph, beta_coefficient: float = 0.05
) -> list[PhraseCandidate]:
    """Find maximal ADJ*NOUN+ candidates and install PHRASE edges.

    Matching runs over the stop-filtered token sequence, so a candidate may
    bridge interior stop words ("secretary of state") but never punctuation,
    a sentence boundary, or a non-whitespace gap. A stem contributes its
    tf.idf weight (θ=1) only the first time any candidate uses it, in
    document order; later uses average in as θ=0.
    """
    graph.phrases.clear()
    graph.edges.difference_update(
        {e for e in graph.edges if e.type is EdgeType.PHRASE}
    )

    spans = _candidate_spans(graph)
    consumed: set[str] = set()
    for span in spans:
        content = [t for t in span if t.pos_tag is not PosTag.STOP]
        flags = []
        total = 0.0
        for tok in content:
            if tok.stem in consumed:
                flags.append(0)
            else:
                flags.append(1)
                total += graph.node(tok.position).weight
                consumed.add(tok.stem)
        n = len(content)
        bonus = length_bonus(n, beta_coefficient)
        if graph.text:
            lo, hi = span[0].char_span[0], span[-1].char_span[1]
            surface = " ".join(graph.text[lo:hi].split())
        else:
            surface = " ".join(t.surface for t in span)
        candidate = PhraseCandidate(
            token_range=(span[0].position, span[-1].position + 1),
            content_words=tuple(content),
            weight=bonus + total / n,
            length_bonus=bonus,
            theta_flags=tuple(flags),
            surface=surface,
        )
        graph.phrases.append(candidate)
        for prev, cur in zip(content, content[1:]):
            graph.edges.add(Edge(prev.position, cur.position, EdgeType.PHRASE))
    return list(graph.phrases)


def _candidate_spans(graph: DocumentGraph) -> list[list[Token]]:
    """Maximal ADJ*NOUN+ runs over stop-filtered tokens, in document order."""
    spans: list[list[Token]] = []
    run: list[Token] = []
    saw_noun = False

    def flush() -> None:
        nonlocal run, saw_noun
        if saw_noun:
            spans.append(run)
        run = []
        saw_noun = False

    tokens = graph.tokens
    for tok in tokens:
        if tok.pos_tag is PosTag.STOP:
            continue
        if run and not _joinable(graph, run[-1], tok):
            flush()
        if tok.pos_tag is PosTag.ADJ:
            if saw_noun:
                flush()
            run.append(tok)
        elif tok.pos_tag is PosTag.NOUN:
            run.append(tok)
            saw_noun = True
        else:
            flush()
    flush()
    return spans


def _joinable(graph: DocumentGraph, prev: Token, cur: Token) -> bool:
    """True when every gap between `prev` and `cur` is pure whitespace."""
    if cur.sentence_index != prev.sentence_index:
        return False
    if not graph.text:
        return cur.position == prev.position + 1
    for pos in range(prev.position, cur.position):
        end = graph.nodes[pos].token.char_span[1]
        start = graph.nodes[pos + 1].token.char_span[0]
        if graph.text[end:start].strip():
            return False
    return True


def dump(graph: DocumentGraph) -> str:
    """Deterministic text serialization: header, nodes, edges, phrases, names."""
    lines = [f"#textgraph-graph v1 doc={graph.doc_id} nodes={len(graph.nodes)}"]
    for node in graph.nodes:
        t = node.token
        lines.append(
            f"N {t.position} s{t.sentence_index} p{t.paragraph_index} "
            f"{t.pos_tag.value} {t.stem} {node.weight!r} {t.surface}"
        )
    for e in graph.sorted_edges():
        suffix = f" {e.strength!r}" if e.strength is not None else ""
        lines.append(f"E {e.src} {e.dst} {e.type.value}{suffix}")
    for p in graph.phrases:
        lines.append(
            f"P {p.token_range[0]} {p.token_range[1]} {p.weight!r} {p.text}"
        )
    for m in graph.names:
        lines.append(
            f"M {m.token_range[0]} {m.token_range[1]} "
            f"{m.name_type.value} {m.canonical}"
        )
    return "\n".join(lines) + "\n"
