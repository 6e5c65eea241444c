#!/usr/bin/env python3
"""Show what spreading does to a sentence profile.

Builds the bundled sample article, activates it on a topic, and prints
the raw tf.idf profile next to the spread profile with ascii bars, so
you can watch weight migrate toward the sentences that talk about the
topic without repeating it verbatim.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from textgraph.activation import Topic, raw_profile, sentence_profile
from textgraph.config import load_config, load_resources
from textgraph.pipeline import activate, build_document_file, render_sentence


def sample_path(*parts: str) -> Path:
    return Path(str(resources.files("textgraph").joinpath("data", "sample", *parts)))


def bar(value: float, peak: float, width: int = 30) -> str:
    if peak <= 0:
        return ""
    return "#" * max(1, round(width * value / peak)) if value > 0 else ""


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--doc",
        default=str(sample_path("karuna_a.txt")),
        help="text file to profile (default: bundled sample)",
    )
    parser.add_argument(
        "--topic",
        default="Karuna Liberation Front",
        help='topic terms, comma separated (default: "Karuna Liberation Front")',
    )
    args = parser.parse_args(argv)

    config = load_config(sample_path("config.json"))
    res = load_resources(config)

    graph = build_document_file(args.doc, res)
    activated = activate(graph, Topic.parse(args.topic), res)

    raw = dict(raw_profile(graph))
    spr = dict(sentence_profile(activated))
    indices = sorted(raw)
    peak_raw = max(raw.values(), default=0.0)
    peak_spr = max(spr.values(), default=0.0)

    print(f"document: {graph.doc_id}   topic: {', '.join(activated.topic.terms)}")
    print(f"entry points: {len(activated.entry_positions)}   "
          f"reached nodes: {len(activated.reached)}")
    print()
    print(f"{'sent':>4}  {'raw':>8} {'':30}  {'spread':>8}")
    for idx in indices:
        r = raw.get(idx, 0.0)
        s = spr.get(idx, 0.0)
        print(f"{idx:>4}  {r:>8.3f} {bar(r, peak_raw):30}  {s:>8.3f} {bar(s, peak_spr)}")

    best_raw = max(indices, key=lambda i: raw.get(i, 0.0))
    best_spr = max(indices, key=lambda i: spr.get(i, 0.0))
    print()
    print(f"raw peak    [s{best_raw}] {render_sentence(graph, best_raw)}")
    print(f"spread peak [s{best_spr}] {render_sentence(graph, best_spr)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
