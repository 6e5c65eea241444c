"""End-to-end helpers tying the stages together for callers and the CLI."""

from __future__ import annotations

from pathlib import Path

from .activation import ActivatedGraph, SpreadParams, Topic, spread
from .config import Resources
from .docgraph import DocumentGraph, build_graph
from .textprep import find_names, segment, sentence_text, tag_pos


def build_document(
    text: str,
    resources: Resources,
    *,
    doc_id: str = "doc",
    beta_coefficient: float = 0.05,
) -> DocumentGraph:
    """Raw text to document graph: segment, tag, find names, build."""
    tokens = segment(text, resources.abbreviations)
    tagged = tag_pos(tokens, resources.stopwords)
    names = find_names(tagged, resources.stopwords)
    return build_graph(
        tagged,
        names,
        resources.corpus,
        resources.synonyms,
        aliases=resources.aliases,
        doc_id=doc_id,
        text=text,
        beta_coefficient=beta_coefficient,
    )


def build_document_file(
    path: str | Path,
    resources: Resources,
    *,
    beta_coefficient: float = 0.05,
) -> DocumentGraph:
    path = Path(path)
    return build_document(
        path.read_text(encoding="utf-8"),
        resources,
        doc_id=path.name,
        beta_coefficient=beta_coefficient,
    )


def activate(
    graph: DocumentGraph,
    topic: Topic,
    resources: Resources,
    params: SpreadParams | None = None,
) -> ActivatedGraph:
    return spread(graph, topic, params, resources.aliases, resources.stopwords)


def summary_sentences(
    activated: ActivatedGraph, top_k: int
) -> list[tuple[int, float]]:
    """Top sentences by mean activation of their reached nodes.

    Only sentences containing at least one reached node are eligible, so
    every emitted sentence carries some topical content. Returned in
    document order as (sentence_index, score).
    """
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for pos in activated.reached:
        sent = activated.graph.nodes[pos].token.sentence_index
        sums[sent] = sums.get(sent, 0.0) + activated.activation[pos]
        counts[sent] = counts.get(sent, 0) + 1
    scored = [(idx, sums[idx] / counts[idx]) for idx in sums]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    chosen = scored[: max(top_k, 0)]
    chosen.sort(key=lambda pair: pair[0])
    return chosen


def render_sentence(graph: DocumentGraph, sentence_index: int) -> str:
    return sentence_text(graph.tokens, graph.text, sentence_index)
