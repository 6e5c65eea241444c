"""Find similarities and differences between two activated graphs.

The concept universe is everything the spreading reached in either graph:
word concepts keyed by stem, name concepts keyed by normalized canonical
form. Concepts that match across graphs (stem equality, synonym pair, or
name alias) merge into one; Common is the merged concepts present in both
graphs, Differences the remainder partitioned by source. Sentences are then
scored by the average activation of the target concepts they cover and
greedily selected.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .activation import ActivatedGraph
from .docgraph import DocumentGraph, SynonymLexicon, EMPTY_SYNONYMS
from .textprep import AliasLexicon, alias_strings_match, normalize_name

WORD = "word"
NAME = "name"

MODE_REDUNDANCY = "redundancy_reducing"
MODE_TOPK = "plain_topk"

STATUS_OK = "ok"
STATUS_EMPTY_TARGET = "empty_target"
STATUS_BELOW_THRESHOLD = "below_threshold"


@dataclass(frozen=True)
class Concept:
    """One merged concept; `surface_keys` lists every member key."""

    key: str
    kind: str
    best_weight_g1: float = 0.0
    best_weight_g2: float = 0.0
    occurrences_g1: tuple[int, ...] = ()
    occurrences_g2: tuple[int, ...] = ()
    surface_keys: tuple[str, ...] = ()

    @property
    def combined_weight(self) -> float:
        return self.best_weight_g1 + self.best_weight_g2

    def occurrences(self, side: int) -> tuple[int, ...]:
        return self.occurrences_g1 if side == 1 else self.occurrences_g2

    def best_weight(self, side: int) -> float:
        return self.best_weight_g1 if side == 1 else self.best_weight_g2


@dataclass(frozen=True)
class CompareParams:
    min_unique_concepts: int | None = None
    min_coverage_weight: float | None = None
    max_common_sentences: int = 5
    max_difference_sentences: int = 5
    selection_mode: str = MODE_REDUNDANCY

    def __post_init__(self) -> None:
        if self.min_unique_concepts is not None and self.min_unique_concepts < 0:
            raise ValueError("min_unique_concepts must be non-negative")
        if self.min_coverage_weight is not None and self.min_coverage_weight < 0:
            raise ValueError("min_coverage_weight must be non-negative")
        if self.max_common_sentences < 1 or self.max_difference_sentences < 1:
            raise ValueError("sentence caps must be at least 1")
        if self.selection_mode not in (MODE_REDUNDANCY, MODE_TOPK):
            raise ValueError(f"unknown selection mode {self.selection_mode!r}")


@dataclass(frozen=True)
class SentenceScore:
    """`key_weights` keeps per-concept contributions so selection can
    rescore after pool updates without going back to the graph."""

    doc_id: str
    sentence_index: int
    score: float
    covered: frozenset[str]
    key_weights: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class ThresholdReport:
    passed: bool
    measured_unique_concepts: int
    measured_coverage_weight: float
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class ComparisonResult:
    doc_id1: str
    doc_id2: str
    topic_terms: tuple[str, ...]
    common: tuple[Concept, ...]
    differences_g1: tuple[Concept, ...]
    differences_g2: tuple[Concept, ...]
    selected_common: tuple[SentenceScore, ...]
    selected_diff_g1: tuple[SentenceScore, ...]
    selected_diff_g2: tuple[SentenceScore, ...]


def _reached_word_keys(a: ActivatedGraph) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for pos in sorted(a.reached):
        out.setdefault(a.graph.nodes[pos].token.stem, []).append(pos)
    return out


def _reached_name_keys(a: ActivatedGraph) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for mention in a.graph.names:
        hit = sorted(p for p in mention.positions() if p in a.reached)
        if hit:
            out.setdefault(normalize_name(mention.canonical), []).extend(hit)
    return {k: sorted(set(v)) for k, v in out.items()}


def _keys_match(
    kind: str,
    a: str,
    b: str,
    synonyms: SynonymLexicon,
    aliases: AliasLexicon | None,
) -> bool:
    if a == b:
        return True
    if kind == WORD:
        return synonyms.strength(a, b) is not None
    return alias_strings_match(a, b, aliases)


def concept_match(
    key: str,
    activated: ActivatedGraph,
    synonyms: SynonymLexicon | None = None,
    aliases: AliasLexicon | None = None,
    kind: str = WORD,
) -> bool:
    """Does this concept key match anything the graph reached?"""
    if synonyms is None:
        synonyms = EMPTY_SYNONYMS
    if kind == WORD:
        stems = _reached_word_keys(activated)
        if key in stems:
            return True
        return any(synonyms.strength(key, s) is not None for s in stems)
    return any(
        alias_strings_match(key, name_key, aliases)
        for name_key in _reached_name_keys(activated)
    )


def find_common_and_differences(
    a1: ActivatedGraph,
    a2: ActivatedGraph,
    synonyms: SynonymLexicon | None = None,
    aliases: AliasLexicon | None = None,
) -> tuple[tuple[Concept, ...], tuple[Concept, ...], tuple[Concept, ...]]:
    """Common / unique-to-1 / unique-to-2 over the reached-concept universe.

    Matching keys are merged by connected components of the match relation
    over the union of both graphs' keys, which makes the outcome symmetric
    in the two arguments by construction.
    """
    if synonyms is None:
        synonyms = EMPTY_SYNONYMS
    sides = {
        1: (_reached_word_keys(a1), _reached_name_keys(a1)),
        2: (_reached_word_keys(a2), _reached_name_keys(a2)),
    }
    concepts: list[Concept] = []
    for kind_idx, kind in ((0, WORD), (1, NAME)):
        keys = sorted(set(sides[1][kind_idx]) | set(sides[2][kind_idx]))
        for group in _match_components(kind, keys, synonyms, aliases):
            occ1 = sorted(
                {p for k in group for p in sides[1][kind_idx].get(k, ())}
            )
            occ2 = sorted(
                {p for k in group for p in sides[2][kind_idx].get(k, ())}
            )
            concepts.append(
                Concept(
                    key=min(group),
                    kind=kind,
                    best_weight_g1=max(
                        (a1.activation[p] for p in occ1), default=0.0
                    ),
                    best_weight_g2=max(
                        (a2.activation[p] for p in occ2), default=0.0
                    ),
                    occurrences_g1=tuple(occ1),
                    occurrences_g2=tuple(occ2),
                    surface_keys=tuple(sorted(group)),
                )
            )
    common = [c for c in concepts if c.occurrences_g1 and c.occurrences_g2]
    diff1 = [c for c in concepts if c.occurrences_g1 and not c.occurrences_g2]
    diff2 = [c for c in concepts if c.occurrences_g2 and not c.occurrences_g1]
    common.sort(key=lambda c: (-c.combined_weight, c.key))
    diff1.sort(key=lambda c: (-c.best_weight_g1, c.key))
    diff2.sort(key=lambda c: (-c.best_weight_g2, c.key))
    return tuple(common), tuple(diff1), tuple(diff2)


def _match_components(
    kind: str,
    keys: list[str],
    synonyms: SynonymLexicon,
    aliases: AliasLexicon | None,
) -> list[list[str]]:
    parent = {k: k for k in keys}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx

    if kind == WORD:
        # The lexicon is tiny compared to the key set; walk its pairs.
        present = set(keys)
        for (a, b) in synonyms.pairs:
            if a in present and b in present:
                union(a, b)
    else:
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                if _keys_match(kind, keys[i], keys[j], synonyms, aliases):
                    union(keys[i], keys[j])

    groups: dict[str, list[str]] = {}
    for k in keys:
        groups.setdefault(find(k), []).append(k)
    return [sorted(g) for g in sorted(groups.values(), key=min)]


def score_sentences(
    activated: ActivatedGraph,
    concepts: Sequence[Concept],
    side: int,
) -> tuple[list[SentenceScore], str]:
    """Coverage scores for every sentence covering at least one concept.

    A sentence's score is the mean, over the distinct concept keys it
    covers, of each key's strongest in-sentence activation. Repeats of one
    concept inside a sentence therefore do not inflate the score.
    """
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")
    if not concepts:
        return [], STATUS_EMPTY_TARGET
    graph = activated.graph
    per_sentence: dict[int, dict[str, float]] = {}
    for concept in concepts:
        for pos in concept.occurrences(side):
            sent = graph.nodes[pos].token.sentence_index
            act = activated.activation[pos]
            bucket = per_sentence.setdefault(sent, {})
            if act > bucket.get(concept.key, float("-inf")):
                bucket[concept.key] = act
    scores = []
    for sent in sorted(per_sentence):
        bucket = per_sentence[sent]
        key_weights = tuple(sorted(bucket.items()))
        scores.append(
            SentenceScore(
                doc_id=graph.doc_id,
                sentence_index=sent,
                score=sum(bucket.values()) / len(bucket),
                covered=frozenset(bucket),
                key_weights=key_weights,
            )
        )
    return scores, STATUS_OK


def _rescored(s: SentenceScore, pool: set[str]) -> SentenceScore | None:
    kept = tuple((k, w) for k, w in s.key_weights if k in pool)
    if not kept:
        return None
    return replace(
        s,
        score=sum(w for _, w in kept) / len(kept),
        covered=frozenset(k for k, _ in kept),
        key_weights=kept,
    )


def select_sentences(
    scores: Sequence[SentenceScore],
    k: int,
    mode: str = MODE_REDUNDANCY,
) -> list[SentenceScore]:
    """Greedy selection of up to k sentences.

    redundancy_reducing removes each pick's covered concepts from the pool
    and rescores the rest, so later picks must earn their place on concepts
    not yet covered. plain_topk is a straight top-k by score. Ties break on
    earlier sentence_index, then doc_id.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    order = lambda s: (-s.score, s.sentence_index, s.doc_id)
    if mode == MODE_TOPK:
        return sorted(scores, key=order)[:k]
    if mode != MODE_REDUNDANCY:
        raise ValueError(f"unknown selection mode {mode!r}")

    pool = {key for s in scores for key in s.covered}
    remaining = list(scores)
    picked: list[SentenceScore] = []
    while remaining and len(picked) < k:
        best = min(remaining, key=order)
        picked.append(best)
        pool.difference_update(best.covered)
        remaining = [
            r
            for s in remaining
            if s is not best and (r := _rescored(s, pool)) is not None
        ]
    return picked


def suggest_topics(
    g1: DocumentGraph,
    g2: DocumentGraph,
    limit: int = 10,
    aliases: AliasLexicon | None = None,
) -> list[tuple[str, float]]:
    """Candidate shared topics, ranked by the weaker document's interest.

    Works on raw tf.idf weights since no topic has been chosen yet. Word
    candidates are stems present in both documents; name candidates are
    mention pairs that alias-match across documents.
    """
    best: dict[str, float] = {}

    def stem_weights(g: DocumentGraph) -> dict[str, float]:
        out: dict[str, float] = {}
        for node in g.nodes:
            if not node.is_stop and node.weight > out.get(node.token.stem, 0.0):
                out[node.token.stem] = node.weight
        return out

    w1, w2 = stem_weights(g1), stem_weights(g2)
    for term in set(w1) & set(w2):
        best[term] = min(w1[term], w2[term])

    def name_weights(g: DocumentGraph) -> dict[str, float]:
        out: dict[str, float] = {}
        for m in g.names:
            key = normalize_name(m.canonical)
            weight = max(g.nodes[p].weight for p in m.positions())
            if weight > out.get(key, 0.0):
                out[key] = weight
        return out

    n1, n2 = name_weights(g1), name_weights(g2)
    for key1, weight1 in n1.items():
        for key2, weight2 in n2.items():
            if alias_strings_match(key1, key2, aliases):
                term = min(key1, key2)
                score = min(weight1, weight2)
                if score > best.get(term, 0.0):
                    best[term] = score

    ranked = sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[: limit if limit >= 0 else 0]


def total_coverage_weight(result: ComparisonResult) -> float:
    return sum(
        s.score
        for part in (
            result.selected_common,
            result.selected_diff_g1,
            result.selected_diff_g2,
        )
        for s in part
    )


def apply_thresholds(
    result: ComparisonResult, params: CompareParams
) -> ThresholdReport:
    """Threshold gate with >= semantics: equal to the limit passes."""
    unique = len(result.differences_g1) + len(result.differences_g2)
    coverage = total_coverage_weight(result)
    reasons = []
    if params.min_unique_concepts is not None and unique < params.min_unique_concepts:
        reasons.append(
            f"unique concepts {unique} < required {params.min_unique_concepts}"
        )
    if (
        params.min_coverage_weight is not None
        and coverage < params.min_coverage_weight
    ):
        reasons.append(
            f"coverage weight {coverage:.4f} < required {params.min_coverage_weight}"
        )
    return ThresholdReport(
        passed=not reasons,
        measured_unique_concepts=unique,
        measured_coverage_weight=coverage,
        reasons=tuple(reasons),
    )


def compare_documents(
    a1: ActivatedGraph,
    a2: ActivatedGraph,
    synonyms: SynonymLexicon | None = None,
    aliases: AliasLexicon | None = None,
    params: CompareParams | None = None,
) -> ComparisonResult:
    """Full comparison: concept algebra, coverage scoring, greedy selection.

    Common sentences are drawn from both documents pooled; difference
    sentences are scored only against their own document's unique concepts.
    """
    if params is None:
        params = CompareParams()
    common, diff1, diff2 = find_common_and_differences(a1, a2, synonyms, aliases)

    common_scores_1, _ = score_sentences(a1, common, side=1)
    common_scores_2, _ = score_sentences(a2, common, side=2)
    diff_scores_1, _ = score_sentences(a1, diff1, side=1)
    diff_scores_2, _ = score_sentences(a2, diff2, side=2)

    mode = params.selection_mode
    return ComparisonResult(
        doc_id1=a1.graph.doc_id,
        doc_id2=a2.graph.doc_id,
        topic_terms=a1.topic.terms,
        common=common,
        differences_g1=diff1,
        differences_g2=diff2,
        selected_common=tuple(
            select_sentences(
                common_scores_1 + common_scores_2, params.max_common_sentences, mode
            )
        ),
        selected_diff_g1=tuple(
            select_sentences(diff_scores_1, params.max_difference_sentences, mode)
        ),
        selected_diff_g2=tuple(
            select_sentences(diff_scores_2, params.max_difference_sentences, mode)
        ),
    )
