"""Run configuration: JSON file, environment default, flag overrides.

Paths inside a config file are resolved relative to the file itself, so a
config can ship next to its data. Every referenced file must exist and parse
before any document is touched.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .activation import SpreadParams
from .compare import CompareParams
from .corpus import ReferenceCorpus, load_corpus
from .docgraph import EMPTY_SYNONYMS, EdgeType, SynonymLexicon
from .errors import ConfigError
from .textprep import (
    EMPTY_ALIASES,
    AliasLexicon,
    load_abbreviations,
    load_stopwords,
)

ENV_CONFIG = "TEXTGRAPH_CONFIG"

FORMAT_HUMAN = "human"
FORMAT_STRUCTURED = "structured"
FORMAT_CSV = "csv"
_FORMATS = (FORMAT_HUMAN, FORMAT_STRUCTURED, FORMAT_CSV)


def _sample_path(*parts: str) -> Path:
    from importlib import resources

    return Path(str(resources.files("textgraph").joinpath("data", "sample", *parts)))


def default_corpus_path() -> Path:
    return _sample_path("background", "corpus.txt")


@dataclass(frozen=True)
class RunConfig:
    corpus_path: Path = field(default_factory=default_corpus_path)
    stopword_path: Path | None = None
    abbreviation_path: Path | None = None
    synonym_lexicon_path: Path | None = None
    alias_lexicon_path: Path | None = None
    spread: SpreadParams = field(default_factory=SpreadParams)
    compare: CompareParams = field(default_factory=CompareParams)
    beta_coefficient: float = 0.05
    output_format: str = FORMAT_HUMAN

    def __post_init__(self) -> None:
        if self.output_format not in _FORMATS:
            raise ConfigError(
                f"output_format must be one of {', '.join(_FORMATS)}, "
                f"got {self.output_format!r}"
            )
        if self.beta_coefficient < 0:
            raise ConfigError("beta_coefficient must be non-negative")


@dataclass(frozen=True)
class Resources:
    """Everything a pipeline run needs, loaded and validated."""

    corpus: ReferenceCorpus
    stopwords: frozenset[str]
    abbreviations: frozenset[str]
    synonyms: SynonymLexicon
    aliases: AliasLexicon


_SPREAD_KEYS = {
    "decay_rate",
    "sentence_crossing_cost",
    "paragraph_crossing_cost",
    "link_weights",
    "max_output_nodes",
}
_COMPARE_KEYS = {
    "min_unique_concepts",
    "min_coverage_weight",
    "max_common_sentences",
    "max_difference_sentences",
    "selection_mode",
}
_TOP_KEYS = {
    "corpus",
    "stopwords",
    "abbreviations",
    "synonyms",
    "aliases",
    "spread",
    "compare",
    "beta_coefficient",
    "output_format",
}


def _check_keys(mapping: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {', '.join(sorted(unknown))}")


def _parse_spread(raw: Mapping[str, Any]) -> SpreadParams:
    _check_keys(raw, _SPREAD_KEYS, "spread")
    kwargs: dict[str, Any] = {k: v for k, v in raw.items() if k != "link_weights"}
    if "link_weights" in raw:
        weights = dict(SpreadParams().link_weights)
        for name, value in raw["link_weights"].items():
            try:
                lt = EdgeType(name)
            except ValueError:
                raise ConfigError(f"unknown link type {name!r}") from None
            if lt not in (EdgeType.SAME, EdgeType.PHRASE, EdgeType.NAME, EdgeType.COREF):
                raise ConfigError(f"link weight not configurable for {name}")
            weights[lt] = value
        kwargs["link_weights"] = weights
    try:
        return SpreadParams(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid spread parameters: {exc}") from None


def _parse_compare(raw: Mapping[str, Any]) -> CompareParams:
    _check_keys(raw, _COMPARE_KEYS, "compare")
    try:
        return CompareParams(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid compare parameters: {exc}") from None


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be an object: {path}")
    _check_keys(raw, _TOP_KEYS, "config")

    base = path.parent

    def resolve(key: str) -> Path | None:
        value = raw.get(key)
        if value is None:
            return None
        return (base / str(value)).resolve()

    kwargs: dict[str, Any] = {}
    if "corpus" in raw:
        kwargs["corpus_path"] = resolve("corpus")
    kwargs["stopword_path"] = resolve("stopwords")
    kwargs["abbreviation_path"] = resolve("abbreviations")
    kwargs["synonym_lexicon_path"] = resolve("synonyms")
    kwargs["alias_lexicon_path"] = resolve("aliases")
    kwargs["spread"] = _parse_spread(raw.get("spread", {}))
    kwargs["compare"] = _parse_compare(raw.get("compare", {}))
    if "beta_coefficient" in raw:
        kwargs["beta_coefficient"] = raw["beta_coefficient"]
    if "output_format" in raw:
        kwargs["output_format"] = raw["output_format"]
    return RunConfig(**kwargs)


def config_from_environment() -> RunConfig:
    """The config named by TEXTGRAPH_CONFIG, or all defaults."""
    env = os.environ.get(ENV_CONFIG)
    if env:
        return load_config(env)
    return RunConfig()


def load_resources(config: RunConfig) -> Resources:
    """Open and parse every referenced file up front."""

    def missing(kind: str, p: Path) -> ConfigError:
        return ConfigError(f"{kind} file not found: {p}")

    if not Path(config.corpus_path).is_file():
        raise missing("corpus", config.corpus_path)
    try:
        corpus = load_corpus(config.corpus_path)
        stopwords = load_stopwords(config.stopword_path)
        abbreviations = load_abbreviations(config.abbreviation_path)
        if config.synonym_lexicon_path is not None:
            if not config.synonym_lexicon_path.is_file():
                raise missing("synonym lexicon", config.synonym_lexicon_path)
            synonyms = SynonymLexicon.load(config.synonym_lexicon_path)
        else:
            synonyms = EMPTY_SYNONYMS
        if config.alias_lexicon_path is not None:
            if not config.alias_lexicon_path.is_file():
                raise missing("alias lexicon", config.alias_lexicon_path)
            aliases = AliasLexicon.load(config.alias_lexicon_path)
        else:
            aliases = EMPTY_ALIASES
    except FileNotFoundError as exc:
        raise ConfigError(f"resource file not found: {exc.filename}") from None
    return Resources(
        corpus=corpus,
        stopwords=stopwords,
        abbreviations=abbreviations,
        synonyms=synonyms,
        aliases=aliases,
    )


def apply_overrides(config: RunConfig, **overrides: Any) -> RunConfig:
    """Replace fields from non-None keyword overrides (CLI flags win)."""
    provided = {k: v for k, v in overrides.items() if v is not None}
    if not provided:
        return config
    valid = {f.name for f in fields(RunConfig)}
    unknown = set(provided) - valid
    if unknown:
        raise ConfigError(f"unknown config overrides: {', '.join(sorted(unknown))}")
    try:
        return replace(config, **provided)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
