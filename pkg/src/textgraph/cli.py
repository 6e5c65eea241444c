"""Command-line frontend.

Exit codes: 0 success, 2 usage, 3 configuration error, 4 unreadable or
malformed input, 5 topic not found, 6 comparison below thresholds.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .activation import (
    STATUS_TOPIC_NOT_FOUND,
    Topic,
    profile_csv,
    raw_profile,
    sentence_profile,
)
from .compare import (
    MODE_REDUNDANCY,
    MODE_TOPK,
    apply_thresholds,
    compare_documents,
    suggest_topics,
)
from .config import (
    ENV_CONFIG,
    FORMAT_CSV,
    FORMAT_HUMAN,
    FORMAT_STRUCTURED,
    RunConfig,
    apply_overrides,
    config_from_environment,
    load_config,
    load_resources,
)
from .corpus import build_corpus, save_corpus
from .errors import ConfigError, EmptyDocumentError, FormatError
from .pipeline import activate, build_document_file, summary_sentences
from .render import (
    csv_comparison,
    csv_summary,
    human_comparison,
    human_summary,
    structured_comparison,
    structured_summary,
)
from .textprep import load_abbreviations, load_stopwords, segment

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_FORMAT = 4
EXIT_TOPIC_NOT_FOUND = 5
EXIT_BELOW_THRESHOLD = 6


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help=f"JSON config file (default: ${ENV_CONFIG})")
    g.add_argument("--corpus", help="reference corpus file (default: bundled sample)")
    g.add_argument("--stopwords", help="stop-word file, one word per line")
    g.add_argument("--abbreviations", help="abbreviation file, trailing periods")
    g.add_argument("--synonyms", help="synonym lexicon: word_a<TAB>word_b<TAB>strength")
    g.add_argument("--aliases", help="alias lexicon: canonical<TAB>alias")
    g.add_argument(
        "--format",
        choices=[FORMAT_HUMAN, FORMAT_STRUCTURED, FORMAT_CSV],
        help="output format (default: human)",
    )
    g.add_argument(
        "--beta", type=float, help="phrase length bonus coefficient (default: 0.05)"
    )
    s = common.add_argument_group("spreading")
    s.add_argument("--decay-rate", type=float, help="adjacency decay rate (default: 0.5)")
    s.add_argument(
        "--sentence-cost",
        type=float,
        help="distance added per sentence boundary (default: 3.0)",
    )
    s.add_argument(
        "--paragraph-cost",
        type=float,
        help="distance added per paragraph boundary (default: 6.0)",
    )
    s.add_argument(
        "--max-nodes", type=int, help="output node cap for spreading (default: 200)"
    )
    c = common.add_argument_group("comparison")
    c.add_argument(
        "--max-common", type=int, help="sentence cap for the COMMON section (default: 5)"
    )
    c.add_argument(
        "--max-diff", type=int, help="sentence cap per UNIQUE section (default: 5)"
    )
    c.add_argument(
        "--selection-mode",
        choices=[MODE_REDUNDANCY, MODE_TOPK],
        help=f"greedy selection mode (default: {MODE_REDUNDANCY})",
    )
    c.add_argument(
        "--min-unique-concepts",
        type=int,
        help="reject comparisons with fewer unique concepts (default: off)",
    )
    c.add_argument(
        "--min-coverage-weight",
        type=float,
        help="reject comparisons with lower selected coverage weight (default: off)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textgraph",
        description=(
            "Build positional word graphs from text, reweight them with "
            "topic-driven spreading activation, and compare two documents "
            "for similarities and differences."
        ),
    )
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "build-corpus",
        parents=[common],
        help="build a reference corpus from a directory of .txt files",
    )
    p.add_argument("input_dir", help="directory of .txt documents")
    p.add_argument("out_path", help="where to write the corpus file")

    p = sub.add_parser(
        "summarize", parents=[common], help="topic-focused extract of one document"
    )
    p.add_argument("doc", help="document file")
    p.add_argument("--topic", required=True, help="comma-separated topic terms")
    p.add_argument(
        "--top-k", type=int, default=5, help="maximum sentences to emit (default: 5)"
    )

    p = sub.add_parser(
        "compare",
        parents=[common],
        help="similarities and differences of two documents under a topic",
    )
    p.add_argument("doc_a", help="first document file")
    p.add_argument("doc_b", help="second document file")
    p.add_argument("--topic", required=True, help="comma-separated topic terms")

    p = sub.add_parser(
        "profile",
        parents=[common],
        help="per-sentence mean weight profile as CSV",
    )
    p.add_argument("doc", help="document file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--topic", help="profile after spreading on this topic")
    mode.add_argument(
        "--raw", action="store_true", help="profile of raw tf.idf weights"
    )

    p = sub.add_parser(
        "suggest-topics",
        parents=[common],
        help="ranked candidate topics shared by two documents",
    )
    p.add_argument("doc_a", help="first document file")
    p.add_argument("doc_b", help="second document file")
    p.add_argument(
        "--limit", type=int, default=10, help="maximum suggestions (default: 10)"
    )
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else config_from_environment()

    spread_overrides = {
        key: value
        for key, value in (
            ("decay_rate", args.decay_rate),
            ("sentence_crossing_cost", args.sentence_cost),
            ("paragraph_crossing_cost", args.paragraph_cost),
            ("max_output_nodes", args.max_nodes),
        )
        if value is not None
    }
    compare_overrides = {
        key: value
        for key, value in (
            ("max_common_sentences", args.max_common),
            ("max_difference_sentences", args.max_diff),
            ("selection_mode", args.selection_mode),
            ("min_unique_concepts", args.min_unique_concepts),
            ("min_coverage_weight", args.min_coverage_weight),
        )
        if value is not None
    }

    def rebuilt(params, overrides):
        if not overrides:
            return None
        try:
            return replace(params, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def path_of(value: str | None) -> Path | None:
        return Path(value) if value is not None else None

    return apply_overrides(
        cfg,
        corpus_path=path_of(args.corpus),
        stopword_path=path_of(args.stopwords),
        abbreviation_path=path_of(args.abbreviations),
        synonym_lexicon_path=path_of(args.synonyms),
        alias_lexicon_path=path_of(args.aliases),
        output_format=args.format,
        beta_coefficient=args.beta,
        spread=rebuilt(cfg.spread, spread_overrides),
        compare=rebuilt(cfg.compare, compare_overrides),
    )


def _parse_topic(spec: str) -> Topic:
    try:
        return Topic.parse(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _print_suggestions(g1, g2, resources) -> None:
    found = suggest_topics(g1, g2, limit=10, aliases=resources.aliases)
    if found:
        print("candidate topics:", file=sys.stderr)
        for term, weight in found:
            print(f"  {term}\t{weight:.4f}", file=sys.stderr)


def _cmd_build_corpus(args: argparse.Namespace, cfg: RunConfig) -> int:
    input_dir = Path(args.input_dir)
    if not input_dir.is_dir():
        raise ConfigError(f"not a directory: {input_dir}")
    stopwords = load_stopwords(cfg.stopword_path)
    abbreviations = load_abbreviations(cfg.abbreviation_path)
    files = sorted(input_dir.glob("*.txt"))
    if not files:
        raise ConfigError(f"no .txt files in {input_dir}")
    unreadable = []
    token_docs = []
    for f in files:
        try:
            text = f.read_text(encoding="utf-8")
        except OSError as exc:
            unreadable.append(f"{f}: {exc.strerror or exc}")
            continue
        try:
            token_docs.append(segment(text, abbreviations))
        except EmptyDocumentError:
            print(f"warning: skipping empty document {f}", file=sys.stderr)
    if unreadable:
        for line in unreadable:
            print(f"error: cannot read {line}", file=sys.stderr)
        return EXIT_FORMAT
    if not token_docs:
        raise ConfigError(f"no non-empty documents in {input_dir}")
    corpus = build_corpus(token_docs, stopwords)
    save_corpus(corpus, args.out_path)
    print(f"built corpus: n={corpus.n} vocabulary={len(corpus.df)}")
    return EXIT_OK


def _cmd_summarize(args: argparse.Namespace, cfg: RunConfig) -> int:
    resources = load_resources(cfg)
    graph = build_document_file(
        args.doc, resources, beta_coefficient=cfg.beta_coefficient
    )
    topic = _parse_topic(args.topic)
    activated = activate(graph, topic, resources, cfg.spread)
    if activated.status == STATUS_TOPIC_NOT_FOUND:
        print(
            f"topic not found in {graph.doc_id}: {', '.join(topic.terms)}",
            file=sys.stderr,
        )
        _print_suggestions(graph, graph, resources)
        return EXIT_TOPIC_NOT_FOUND
    rows = summary_sentences(activated, args.top_k)
    if cfg.output_format == FORMAT_HUMAN:
        out = human_summary(graph.doc_id, topic.terms, rows, graph)
    elif cfg.output_format == FORMAT_STRUCTURED:
        out = structured_summary(graph.doc_id, topic.terms, rows, graph)
    else:
        out = csv_summary(rows)
    sys.stdout.write(out)
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace, cfg: RunConfig) -> int:
    resources = load_resources(cfg)
    g1 = build_document_file(
        args.doc_a, resources, beta_coefficient=cfg.beta_coefficient
    )
    g2 = build_document_file(
        args.doc_b, resources, beta_coefficient=cfg.beta_coefficient
    )
    topic = _parse_topic(args.topic)
    a1 = activate(g1, topic, resources, cfg.spread)
    a2 = activate(g2, topic, resources, cfg.spread)
    missing = [a.graph.doc_id for a in (a1, a2) if a.status == STATUS_TOPIC_NOT_FOUND]
    if missing:
        for doc_id in missing:
            print(
                f"topic not found in {doc_id}: {', '.join(topic.terms)}",
                file=sys.stderr,
            )
        _print_suggestions(g1, g2, resources)
        return EXIT_TOPIC_NOT_FOUND
    result = compare_documents(
        a1, a2, resources.synonyms, resources.aliases, cfg.compare
    )
    report = apply_thresholds(result, cfg.compare)
    graphs = {1: g1, 2: g2}
    if cfg.output_format == FORMAT_HUMAN:
        out = human_comparison(result, graphs, report)
    elif cfg.output_format == FORMAT_STRUCTURED:
        out = structured_comparison(result, graphs, report)
    else:
        out = csv_comparison(result)
    sys.stdout.write(out)
    return EXIT_OK if report.passed else EXIT_BELOW_THRESHOLD


def _cmd_profile(args: argparse.Namespace, cfg: RunConfig) -> int:
    resources = load_resources(cfg)
    graph = build_document_file(
        args.doc, resources, beta_coefficient=cfg.beta_coefficient
    )
    if args.raw:
        profile = raw_profile(graph)
    else:
        topic = _parse_topic(args.topic)
        activated = activate(graph, topic, resources, cfg.spread)
        if activated.status == STATUS_TOPIC_NOT_FOUND:
            print(
                f"topic not found in {graph.doc_id}: {', '.join(topic.terms)}",
                file=sys.stderr,
            )
            _print_suggestions(graph, graph, resources)
            return EXIT_TOPIC_NOT_FOUND
        profile = sentence_profile(activated)
    sys.stdout.write(profile_csv(profile))
    return EXIT_OK


def _cmd_suggest_topics(args: argparse.Namespace, cfg: RunConfig) -> int:
    resources = load_resources(cfg)
    g1 = build_document_file(
        args.doc_a, resources, beta_coefficient=cfg.beta_coefficient
    )
    g2 = build_document_file(
        args.doc_b, resources, beta_coefficient=cfg.beta_coefficient
    )
    for term, weight in suggest_topics(g1, g2, args.limit, resources.aliases):
        print(f"{term}\t{weight:.4f}")
    return EXIT_OK


_HANDLERS = {
    "build-corpus": _cmd_build_corpus,
    "summarize": _cmd_summarize,
    "compare": _cmd_compare,
    "profile": _cmd_profile,
    "suggest-topics": _cmd_suggest_topics,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _resolve_config(args)
        return _HANDLERS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FormatError, EmptyDocumentError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
