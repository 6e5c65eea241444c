"""Rendering comparison results and summaries.

Human output groups selected sentences under COMMON and UNIQUE TO <doc>
headings, with covered terms marked in [brackets] inside the original
sentence text. Structured output is JSON with sorted keys so identical
results always serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from .compare import (
    ComparisonResult,
    Concept,
    SentenceScore,
    ThresholdReport,
)
from .docgraph import DocumentGraph
from .textprep import sentence_spans


def _marked_positions(
    concepts: Sequence[Concept], score: SentenceScore, side: int, graph: DocumentGraph
) -> set[int]:
    marked = set()
    for concept in concepts:
        if concept.key not in score.covered:
            continue
        for pos in concept.occurrences(side):
            if graph.nodes[pos].token.sentence_index == score.sentence_index:
                marked.add(pos)
    return marked


def mark_sentence(
    graph: DocumentGraph, sentence_index: int, marked: set[int]
) -> str:
    """Sentence text with [brackets] inserted around marked occurrences."""
    spans = sentence_spans(graph.tokens, graph.text)
    span = spans.get(sentence_index)
    if span is None:
        return ""
    text = graph.text
    inserts = sorted(
        (graph.nodes[p].token.char_span for p in marked), reverse=True
    )
    out = text[span[0] : span[1]]
    for start, end in inserts:
        s, e = start - span[0], end - span[0]
        out = out[:s] + "[" + out[s:e] + "]" + out[e:]
    return " ".join(out.split())


def _side_of(score: SentenceScore, result: ComparisonResult) -> int:
    return 1 if score.doc_id == result.doc_id1 else 2


def _sentence_lines(
    scores: Sequence[SentenceScore],
    concepts: Sequence[Concept],
    result: ComparisonResult,
    graphs: Mapping[int, DocumentGraph],
) -> list[str]:
    lines = []
    for s in scores:
        side = _side_of(s, result)
        graph = graphs[side]
        marked = _marked_positions(concepts, s, side, graph)
        text = mark_sentence(graph, s.sentence_index, marked)
        lines.append(f"  [{s.doc_id} s{s.sentence_index} score={s.score:.4f}] {text}")
    return lines


def _concept_head(concepts: Sequence[Concept], limit: int = 5) -> str:
    return ", ".join(c.key for c in concepts[:limit])


def human_comparison(
    result: ComparisonResult,
    graphs: Mapping[int, DocumentGraph],
    report: ThresholdReport | None = None,
) -> str:
    lines = [
        f"TOPIC: {', '.join(result.topic_terms)}",
        f"DOCUMENTS: {result.doc_id1} | {result.doc_id2}",
        "",
        f"COMMON ({len(result.common)} concepts)",
    ]
    if result.common:
        lines.append(f"  top: {_concept_head(result.common)}")
    lines.extend(_sentence_lines(result.selected_common, result.common, result, graphs))

    for side, doc_id, diffs, selected in (
        (1, result.doc_id1, result.differences_g1, result.selected_diff_g1),
        (2, result.doc_id2, result.differences_g2, result.selected_diff_g2),
    ):
        lines.append("")
        lines.append(f"UNIQUE TO {doc_id} ({len(diffs)} concepts)")
        if diffs:
            lines.append(f"  top: {_concept_head(diffs)}")
        lines.extend(_sentence_lines(selected, diffs, result, graphs))

    if report is not None:
        lines.append("")
        verdict = "passed" if report.passed else "below threshold"
        lines.append(
            f"THRESHOLDS: {verdict} "
            f"(unique_concepts={report.measured_unique_concepts}, "
            f"coverage_weight={report.measured_coverage_weight:.4f})"
        )
        for reason in report.reasons:
            lines.append(f"  - {reason}")
    return "\n".join(lines) + "\n"


def _concept_obj(c: Concept) -> dict:
    return {
        "key": c.key,
        "kind": c.kind,
        "weight_g1": c.best_weight_g1,
        "weight_g2": c.best_weight_g2,
        "keys": list(c.surface_keys),
    }


def _selection_obj(
    scores: Sequence[SentenceScore],
    result: ComparisonResult,
    graphs: Mapping[int, DocumentGraph],
) -> list[dict]:
    out = []
    for s in scores:
        graph = graphs[_side_of(s, result)]
        spans = sentence_spans(graph.tokens, graph.text)
        span = spans.get(s.sentence_index)
        text = (
            " ".join(graph.text[span[0] : span[1]].split()) if span else ""
        )
        out.append(
            {
                "doc": s.doc_id,
                "sentence": s.sentence_index,
                "score": s.score,
                "covered": sorted(s.covered),
                "text": text,
            }
        )
    return out


def structured_comparison(
    result: ComparisonResult,
    graphs: Mapping[int, DocumentGraph],
    report: ThresholdReport | None = None,
) -> str:
    obj = {
        "topic": list(result.topic_terms),
        "doc1": result.doc_id1,
        "doc2": result.doc_id2,
        "common": [_concept_obj(c) for c in result.common],
        "differences_g1": [_concept_obj(c) for c in result.differences_g1],
        "differences_g2": [_concept_obj(c) for c in result.differences_g2],
        "selected": {
            "common": _selection_obj(result.selected_common, result, graphs),
            "differences_g1": _selection_obj(
                result.selected_diff_g1, result, graphs
            ),
            "differences_g2": _selection_obj(
                result.selected_diff_g2, result, graphs
            ),
        },
    }
    if report is not None:
        obj["thresholds"] = {
            "passed": report.passed,
            "unique_concepts": report.measured_unique_concepts,
            "coverage_weight": report.measured_coverage_weight,
            "reasons": list(report.reasons),
        }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def csv_comparison(result: ComparisonResult) -> str:
    """Concept table only; selections are a human/structured concern."""
    lines = ["section,key,kind,weight_g1,weight_g2"]
    for section, concepts in (
        ("common", result.common),
        ("unique_g1", result.differences_g1),
        ("unique_g2", result.differences_g2),
    ):
        for c in concepts:
            lines.append(
                f"{section},{c.key},{c.kind},{c.best_weight_g1!r},{c.best_weight_g2!r}"
            )
    return "\n".join(lines) + "\n"


def human_summary(
    doc_id: str,
    topic_terms: Sequence[str],
    rows: Sequence[tuple[int, float]],
    graph: DocumentGraph,
) -> str:
    lines = [f"SUMMARY: {doc_id} (topic: {', '.join(topic_terms)})"]
    spans = sentence_spans(graph.tokens, graph.text)
    for sentence_index, score in rows:
        span = spans.get(sentence_index)
        text = " ".join(graph.text[span[0] : span[1]].split()) if span else ""
        lines.append(f"[s{sentence_index} score={score:.4f}] {text}")
    return "\n".join(lines) + "\n"


def structured_summary(
    doc_id: str,
    topic_terms: Sequence[str],
    rows: Sequence[tuple[int, float]],
    graph: DocumentGraph,
) -> str:
    spans = sentence_spans(graph.tokens, graph.text)
    sentences = []
    for sentence_index, score in rows:
        span = spans.get(sentence_index)
        sentences.append(
            {
                "sentence": sentence_index,
                "score": score,
                "text": " ".join(graph.text[span[0] : span[1]].split())
                if span
                else "",
            }
        )
    obj = {"doc": doc_id, "topic": list(topic_terms), "sentences": sentences}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def csv_summary(rows: Sequence[tuple[int, float]]) -> str:
    lines = ["sentence_index,score"]
    for sentence_index, score in rows:
        lines.append(f"{sentence_index},{score!r}")
    return "\n".join(lines) + "\n"
