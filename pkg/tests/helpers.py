"""Shared builders for synthetic tokens and graphs.

Only construction helpers live here. Oracles stay inside the test modules
that use them so each check remains an independent recomputation.
"""

from __future__ import annotations

from textgraph.docgraph import DocumentGraph, Edge, EdgeType, GraphNode
from textgraph.stemmer import stem
from textgraph.textprep import PosTag, Token


def make_token(
    surface: str,
    position: int,
    sentence: int = 0,
    paragraph: int = 0,
    tag: PosTag = PosTag.NOUN,
    char_start: int = 0,
) -> Token:
    return Token(
        surface=surface,
        stem=stem(surface),
        position=position,
        sentence_index=sentence,
        paragraph_index=paragraph,
        char_span=(char_start, char_start + len(surface)),
        pos_tag=tag,
    )


def make_chain_graph(
    spec: list[tuple[str, float, int, int, PosTag]],
    extra_edges: set[Edge] | None = None,
    doc_id: str = "synthetic",
) -> DocumentGraph:
    """Nodes from (surface, weight, sentence, paragraph, tag) rows plus the
    ADJ chain; weights are taken as given, no corpus involved."""
    nodes = []
    offset = 0
    for position, (surface, weight, sentence, paragraph, tag) in enumerate(spec):
        tok = make_token(surface, position, sentence, paragraph, tag, offset)
        offset += len(surface) + 1
        nodes.append(GraphNode(token=tok, weight=weight))
    edges = {
        Edge(i, i + 1, EdgeType.ADJ) for i in range(len(nodes) - 1)
    }
    if extra_edges:
        edges |= extra_edges
    text = " ".join(s for s, *_ in spec)
    return DocumentGraph(doc_id=doc_id, text=text, nodes=nodes, edges=edges)


def word_stream_text(words: list[str], sentence_len: int = 8) -> str:
    """Join words into sentences of fixed length, capitalizing heads."""
    sentences = []
    for i in range(0, len(words), sentence_len):
        chunk = words[i : i + sentence_len]
        if not chunk:
            continue
        chunk = [chunk[0].capitalize()] + chunk[1:]
        sentences.append(" ".join(chunk) + ".")
    return " ".join(sentences)
