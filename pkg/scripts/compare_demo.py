#!/usr/bin/env python3
"""Compare the two bundled sample articles on a topic and print the report.

Also lists topic suggestions for each side, which is handy when you do not
yet know what the documents disagree about.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from textgraph.activation import Topic
from textgraph.compare import apply_thresholds, compare_documents, suggest_topics
from textgraph.config import load_config, load_resources
from textgraph.pipeline import activate, build_document_file
from textgraph.render import human_comparison


def sample_path(*parts: str) -> Path:
    return Path(str(resources.files("textgraph").joinpath("data", "sample", *parts)))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--doc1", default=str(sample_path("karuna_a.txt")),
        help="first text file (default: bundled sample a)",
    )
    parser.add_argument(
        "--doc2", default=str(sample_path("karuna_b.txt")),
        help="second text file (default: bundled sample b)",
    )
    parser.add_argument(
        "--topic", default="KLF",
        help='topic terms, comma separated (default: "KLF")',
    )
    parser.add_argument(
        "--suggest", type=int, default=5, metavar="N",
        help="also print the top N suggested follow-up topics per side",
    )
    args = parser.parse_args(argv)

    config = load_config(sample_path("config.json"))
    res = load_resources(config)
    topic = Topic.parse(args.topic)

    g1 = build_document_file(args.doc1, res)
    g2 = build_document_file(args.doc2, res)
    a1 = activate(g1, topic, res, config.spread)
    a2 = activate(g2, topic, res, config.spread)

    result = compare_documents(a1, a2, res.synonyms, res.aliases, config.compare)
    report = apply_thresholds(result, config.compare)
    sys.stdout.write(human_comparison(result, {1: g1, 2: g2}, report))

    if args.suggest > 0:
        picks = suggest_topics(g1, g2, limit=args.suggest, aliases=res.aliases)
        terms = ", ".join(term for term, _ in picks)
        print(f"\nsuggested follow-up topics: {terms}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
