"""Topic-driven spreading activation over a document graph.

Entry nodes are the occurrences matching the topic terms (by stem, or by
alias for names). Activation propagates outward with multiplicative per-hop
damping: adjacency hops decay exponentially with positional distance plus
sentence/paragraph crossing costs; typed links apply a fixed factor. A node's
activation is the best product over all arrival paths, found by expanding the
highest-activation frontier node first, so truncation by the output cap keeps
the strongest region.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .docgraph import DocumentGraph, Edge, EdgeType
from .textprep import (
    AliasLexicon,
    NameMention,
    alias_match,
    alias_strings_match,
    load_stopwords,
)

STATUS_OK = "ok"
STATUS_TOPIC_NOT_FOUND = "topic_not_found"

DEFAULT_LINK_WEIGHTS: Mapping[EdgeType, float] = {
    EdgeType.SAME: 0.9,
    EdgeType.PHRASE: 0.8,
    EdgeType.NAME: 0.9,
    EdgeType.COREF: 0.85,
}


@dataclass(frozen=True)
class SpreadParams:
    decay_rate: float = 0.5
    sentence_crossing_cost: float = 3.0
    paragraph_crossing_cost: float = 6.0
    link_weights: Mapping[EdgeType, float] = field(
        default_factory=lambda: dict(DEFAULT_LINK_WEIGHTS)
    )
    max_output_nodes: int = 200

    def __post_init__(self) -> None:
        if self.decay_rate <= 0:
            raise ValueError(f"decay_rate must be positive, got {self.decay_rate}")
        if self.sentence_crossing_cost <= 0 or self.paragraph_crossing_cost <= 0:
            raise ValueError("crossing costs must be positive")
        if not self.sentence_crossing_cost < self.paragraph_crossing_cost:
            raise ValueError(
                "crossing a sentence must cost less than crossing a paragraph"
            )
        for lt in (EdgeType.SAME, EdgeType.PHRASE, EdgeType.NAME, EdgeType.COREF):
            w = self.link_weights.get(lt)
            if w is None or not 0.0 < w <= 1.0:
                raise ValueError(f"link weight for {lt.value} must be in (0, 1]")
        if self.max_output_nodes < 1:
            raise ValueError("max_output_nodes must be positive")


@dataclass(frozen=True)
class Topic:
    """Raw topic terms; single words match stems, multiword terms match names."""

    terms: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.terms or any(not t.strip() for t in self.terms):
            raise ValueError("topic terms must be non-empty strings")

    @classmethod
    def parse(cls, spec: str) -> "Topic":
        """Comma-separated terms; each term may be a multiword name."""
        terms = tuple(t.strip() for t in spec.split(",") if t.strip())
        return cls(terms)

    def content_terms(self, stopwords: frozenset[str]) -> tuple[str, ...]:
        return tuple(t for t in self.terms if t.lower() not in stopwords)


@dataclass(frozen=True)
class ActivatedGraph:
    graph: DocumentGraph
    activation: tuple[float, ...]
    entry_positions: frozenset[int]
    reached: frozenset[int]
    topic: Topic
    status: str = STATUS_OK

    def is_reached(self, position: int) -> bool:
        return position in self.reached

    def reached_nodes(self):
        return (self.graph.nodes[p] for p in sorted(self.reached))


def entry_points(
    graph: DocumentGraph,
    topic: Topic,
    aliases: AliasLexicon | None = None,
    stopwords: frozenset[str] | None = None,
) -> set[int]:
    """Positions seeding the spread.

    A single-word term claims every non-stop position with the same stem. Any
    term also claims name spans it alias-matches, closed over mention-level
    aliasing, so "MRTA" and "Tupac Amaru" style topics seed the same family
    of mentions; single-token mentions in the closure claim their stem's
    other occurrences too (covers occurrences the name recognizer skipped).
    """
    if stopwords is None:
        stopwords = load_stopwords()
    terms = topic.content_terms(stopwords)
    if not terms:
        raise ValueError("topic contains only stop words")
    from .stemmer import stem

    positions: set[int] = set()
    stems_wanted: set[str] = set()
    for term in terms:
        if " " not in term.strip():
            stems_wanted.add(stem(term.strip()))

    matched: list[NameMention] = []
    for mention in graph.names:
        if any(alias_strings_match(t, mention.canonical, aliases) for t in terms):
            matched.append(mention)
    matched = _alias_closure(matched, graph.names, aliases)

    for mention in matched:
        for pos in mention.positions():
            positions.add(pos)
        if mention.token_range[1] - mention.token_range[0] == 1:
            stems_wanted.add(graph.nodes[mention.token_range[0]].token.stem)

    for node in graph.nodes:
        if not node.is_stop and node.token.stem in stems_wanted:
            positions.add(node.position)

    return {p for p in positions if not graph.nodes[p].is_stop}


def _alias_closure(
    matched: list[NameMention],
    mentions: Sequence[NameMention],
    aliases: AliasLexicon | None,
) -> list[NameMention]:
    out = list(matched)
    seen = {m.token_range for m in matched}
    frontier = list(matched)
    while frontier:
        cur = frontier.pop()
        for m in mentions:
            if m.token_range not in seen and alias_match(cur, m, aliases):
                seen.add(m.token_range)
                out.append(m)
                frontier.append(m)
    return out


def adj_distance(graph: DocumentGraph, a: int, b: int, params: SpreadParams) -> float:
    """Distance along the adjacency chain between positions a and b."""
    ta, tb = graph.nodes[a].token, graph.nodes[b].token
    return (
        abs(ta.position - tb.position)
        + params.sentence_crossing_cost
        * abs(ta.sentence_index - tb.sentence_index)
        + params.paragraph_crossing_cost
        * abs(ta.paragraph_index - tb.paragraph_index)
    )


def _adj_neighbors(graph: DocumentGraph) -> dict[int, list[int]]:
    """Nearest non-stop position on each side, skipping stop nodes.

    Stop nodes are never activated but still count toward adjacency
    distance, so a hop directly to the nearest content neighbor with the
    full positional gap is equivalent to walking the chain through them.
    """
    non_stop = [n.position for n in graph.nodes if not n.is_stop]
    out: dict[int, list[int]] = {}
    for i, pos in enumerate(non_stop):
        neighbors = []
        if i > 0:
            neighbors.append(non_stop[i - 1])
        if i + 1 < len(non_stop):
            neighbors.append(non_stop[i + 1])
        out[pos] = neighbors
    return out


def _typed_neighbors(graph: DocumentGraph) -> dict[int, list[Edge]]:
    out: dict[int, list[Edge]] = {}
    for edge in graph.sorted_edges():
        if edge.type is EdgeType.ADJ:
            continue
        out.setdefault(edge.src, []).append(edge)
        out.setdefault(edge.dst, []).append(edge)
    return out


def hop_factor(
    graph: DocumentGraph, edge_type: EdgeType, a: int, b: int,
    params: SpreadParams, strength: float | None = None,
) -> float:
    if edge_type is EdgeType.ADJ:
        return math.exp(-params.decay_rate * adj_distance(graph, a, b, params))
    if edge_type is EdgeType.ALPHA:
        assert strength is not None
        return strength
    return params.link_weights[edge_type]


def spread(
    graph: DocumentGraph,
    topic: Topic,
    params: SpreadParams | None = None,
    aliases: AliasLexicon | None = None,
    stopwords: frozenset[str] | None = None,
) -> ActivatedGraph:
    """Best-path-product activation from the topic's entry nodes.

    Entries start at the document's maximum node weight so they dominate
    everything they activate (every hop factor is at most 1). Expansion is
    highest-activation-first and stops once the output set reaches
    max_output_nodes or the frontier empties. Unreached nodes keep
    activation 0; their tf.idf weights in the underlying graph are untouched.
    """
    if params is None:
        params = SpreadParams()
    if stopwords is None:
        stopwords = load_stopwords()
    entries = entry_points(graph, topic, aliases, stopwords)
    n = len(graph.nodes)
    if not entries:
        return ActivatedGraph(
            graph=graph,
            activation=tuple(0.0 for _ in range(n)),
            entry_positions=frozenset(),
            reached=frozenset(),
            topic=topic,
            status=STATUS_TOPIC_NOT_FOUND,
        )

    entry_level = graph.max_weight()
    activation = [0.0] * n
    adj = _adj_neighbors(graph)
    typed = _typed_neighbors(graph)

    # Entries are settled up front: every entry is on the output stack even
    # when the cap is smaller than the entry set.
    settled: set[int] = set(entries)
    for pos in entries:
        activation[pos] = max(graph.nodes[pos].weight, entry_level)

    heap: list[tuple[float, int]] = [(-activation[p], p) for p in sorted(entries)]
    heapq.heapify(heap)
    best = {p: activation[p] for p in entries}

    while heap and len(settled) < max(params.max_output_nodes, len(entries)):
        neg, pos = heapq.heappop(heap)
        if -neg < best.get(pos, 0.0):
            continue
        if pos not in settled:
            settled.add(pos)
            activation[pos] = -neg
            if len(settled) >= max(params.max_output_nodes, len(entries)):
                break
        src_act = activation[pos]
        for nb in adj.get(pos, ()):
            if nb in settled:
                continue
            cand = src_act * hop_factor(graph, EdgeType.ADJ, pos, nb, params)
            if cand > best.get(nb, 0.0):
                best[nb] = cand
                heapq.heappush(heap, (-cand, nb))
        for edge in typed.get(pos, ()):
            nb = edge.dst if edge.src == pos else edge.src
            if nb in settled or graph.nodes[nb].is_stop:
                continue
            cand = src_act * hop_factor(
                graph, edge.type, pos, nb, params, edge.strength
            )
            if cand > best.get(nb, 0.0):
                best[nb] = cand
                heapq.heappush(heap, (-cand, nb))

    return ActivatedGraph(
        graph=graph,
        activation=tuple(activation),
        entry_positions=frozenset(entries),
        reached=frozenset(settled),
        topic=topic,
        status=STATUS_OK,
    )


def sentence_profile(activated: ActivatedGraph) -> list[tuple[int, float]]:
    """Mean activation of each sentence's non-stop nodes, in sentence order."""
    return _profile(
        activated.graph, [activated.activation[n.position] for n in activated.graph.nodes]
    )


def raw_profile(graph: DocumentGraph) -> list[tuple[int, float]]:
    """Mean tf.idf weight per sentence, before any spreading."""
    return _profile(graph, [n.weight for n in graph.nodes])


def _profile(graph: DocumentGraph, values: list[float]) -> list[tuple[int, float]]:
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for node in graph.nodes:
        idx = node.token.sentence_index
        sums.setdefault(idx, 0.0)
        counts.setdefault(idx, 0)
        if not node.is_stop:
            sums[idx] += values[node.position]
            counts[idx] += 1
    out = []
    for idx in sorted(sums):
        c = counts[idx]
        out.append((idx, sums[idx] / c if c else 0.0))
    return out


def profile_csv(profile: list[tuple[int, float]]) -> str:
    lines = ["sentence_index,mean_activation"]
    for idx, value in profile:
        lines.append(f"{idx},{value!r}")
    return "\n".join(lines) + "\n"
