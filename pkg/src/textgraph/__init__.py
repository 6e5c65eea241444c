"""textgraph: positional word graphs, spreading activation, and
similarity/difference summaries for pairs of documents."""

from .activation import (
    ActivatedGraph,
    SpreadParams,
    Topic,
    entry_points,
    raw_profile,
    sentence_profile,
    spread,
)
from .compare import (
    CompareParams,
    ComparisonResult,
    Concept,
    SentenceScore,
    ThresholdReport,
    apply_thresholds,
    compare_documents,
    concept_match,
    find_common_and_differences,
    score_sentences,
    select_sentences,
    suggest_topics,
)
from .config import Resources, RunConfig, load_config, load_resources
from .corpus import (
    ReferenceCorpus,
    build_corpus,
    document_frequency,
    load_corpus,
    save_corpus,
)
from .docgraph import (
    DocumentGraph,
    Edge,
    EdgeType,
    GraphNode,
    PhraseCandidate,
    SynonymLexicon,
    build_graph,
    extract_phrases,
    tfidf_weight,
)
from .errors import ConfigError, EmptyDocumentError, FormatError
from .pipeline import activate, build_document, build_document_file, summary_sentences
from .stemmer import STEMMER_ID, stem
from .textprep import (
    AliasLexicon,
    NameMention,
    PosTag,
    Token,
    alias_match,
    find_names,
    segment,
    tag_pos,
)

__version__ = "0.1.0"

__all__ = [
    "ActivatedGraph",
    "AliasLexicon",
    "CompareParams",
    "ComparisonResult",
    "Concept",
    "ConfigError",
    "DocumentGraph",
    "Edge",
    "EdgeType",
    "EmptyDocumentError",
    "FormatError",
    "GraphNode",
    "NameMention",
    "PhraseCandidate",
    "PosTag",
    "ReferenceCorpus",
    "Resources",
    "RunConfig",
    "STEMMER_ID",
    "SentenceScore",
    "SpreadParams",
    "SynonymLexicon",
    "ThresholdReport",
    "Token",
    "Topic",
    "activate",
    "alias_match",
    "apply_thresholds",
    "build_corpus",
    "build_document",
    "build_document_file",
    "build_graph",
    "compare_documents",
    "concept_match",
    "document_frequency",
    "entry_points",
    "extract_phrases",
    "find_common_and_differences",
    "find_names",
    "load_config",
    "load_corpus",
    "load_resources",
    "raw_profile",
    "save_corpus",
    "score_sentences",
    "segment",
    "select_sentences",
    "sentence_profile",
    "spread",
    "stem",
    "suggest_topics",
    "summary_sentences",
    "tag_pos",
    "tfidf_weight",
]
