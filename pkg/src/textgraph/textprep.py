"""Deterministic text preprocessing.

Tokenization, sentence and paragraph segmentation, stop-word handling,
heuristic part-of-speech tagging, capitalization-based name recognition and
alias matching. Everything here is a pure function of its inputs; the same
text always yields the same token sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyDocumentError, FormatError
from .stemmer import stem


class PosTag(str, Enum):
    NOUN = "NOUN"
    ADJ = "ADJ"
    VERB = "VERB"
    OTHER = "OTHER"
    STOP = "STOP"


class NameType(str, Enum):
    PERSON = "PERSON"
    ORG = "ORG"
    PLACE = "PLACE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True, slots=True)
class Token:
    """One word occurrence. `char_span` slices the source back to `surface`."""

    surface: str
    stem: str
    position: int
    sentence_index: int
    paragraph_index: int
    char_span: tuple[int, int]
    pos_tag: PosTag | None = None


@dataclass(frozen=True, slots=True)
class NameMention:
    """A run of capitalized tokens; `token_range` is a half-open span."""

    token_range: tuple[int, int]
    canonical: str
    name_type: NameType = NameType.UNKNOWN

    def positions(self) -> range:
        return range(*self.token_range)


# Words with optional internal apostrophes/hyphens, or numbers with
# decimal/thousands separators.
_WORD_RE = re.compile(
    r"[^\W\d_][^\W_]*(?:['’\-][^\W_]+)*|\d+(?:[.,]\d+)*"
)
_BLANK_LINE_RE = re.compile(r"\n[ \t\r]*\n")
_SENT_END_RE = re.compile(r"([.!?])['\"’”)\]]*\s")
_TRAILING_PUNCT = ".!?,;:'\"’”)]"


def _data_path(name: str) -> Path:
    return Path(str(resources.files("textgraph").joinpath("data", name)))


def _read_lines(path: str | Path) -> list[tuple[int, str]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line and not line.startswith("#"):
                out.append((lineno, line))
    return out


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Stop-word file: one lowercase word per line."""
    path = path or _data_path("stopwords.txt")
    return frozenset(line.lower() for _, line in _read_lines(path))


def load_abbreviations(path: str | Path | None = None) -> frozenset[str]:
    """Abbreviation file: one token per line, trailing period included."""
    path = path or _data_path("abbreviations.txt")
    abbrevs = set()
    for lineno, line in _read_lines(path):
        if not line.endswith("."):
            raise FormatError(path, lineno, "abbreviation must end with a period")
        abbrevs.add(line[:-1].lower())
    return frozenset(abbrevs)


_LEADING_ARTICLES = ("the", "a", "an")


def normalize_name(text: str) -> str:
    """Casefold, collapse whitespace, drop a leading article.

    Capitalized runs often swallow a sentence-initial "The", so "The KLF"
    and "KLF" must normalize to the same key."""
    words = text.casefold().split()
    if len(words) > 1 and words[0] in _LEADING_ARTICLES:
        words = words[1:]
    return " ".join(words)


_norm_name = normalize_name


@dataclass(frozen=True)
class AliasLexicon:
    """Unordered canonical/alias pairs, normalized to casefolded strings."""

    pairs: frozenset[frozenset[str]] = frozenset()

    def has_pair(self, a: str, b: str) -> bool:
        return frozenset((_norm_name(a), _norm_name(b))) in self.pairs

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "AliasLexicon":
        out = set()
        for a, b in pairs:
            na, nb = _norm_name(a), _norm_name(b)
            if na == nb:
                raise ValueError(f"alias pair must differ: {a!r} / {b!r}")
            out.add(frozenset((na, nb)))
        return cls(frozenset(out))

    @classmethod
    def load(cls, path: str | Path) -> "AliasLexicon":
        pairs = set()
        for lineno, line in _read_lines(path):
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise FormatError(path, lineno, "expected <canonical>\\t<alias>")
            a, b = _norm_name(parts[0]), _norm_name(parts[1])
            if a == b:
                raise FormatError(path, lineno, "alias pair must differ")
            pairs.add(frozenset((a, b)))
        return cls(frozenset(pairs))


EMPTY_ALIASES = AliasLexicon()


def segment(text: str, abbreviations: frozenset[str] | None = None) -> list[Token]:
    """Tokenize and assign sentence/paragraph indices.

    A sentence ends at . ! or ? followed by optional closing quotes/brackets,
    whitespace, and a capitalized token, unless the preceding token is a
    known abbreviation or a single capital letter (initials, acronym parts).
    A blank line always starts a new paragraph and sentence.
    """
    if abbreviations is None:
        abbreviations = load_abbreviations()
    matches = list(_WORD_RE.finditer(text))
    if not matches:
        raise EmptyDocumentError("document contains no tokens")

    tokens: list[Token] = []
    sent = para = 0
    prev_end = 0
    prev_surface = ""
    for i, m in enumerate(matches):
        surface = m.group()
        if i > 0:
            gap = text[prev_end : m.start()]
            if _BLANK_LINE_RE.search(gap):
                para += 1
                sent += 1
            elif _breaks_sentence(gap, prev_surface, surface, abbreviations):
                sent += 1
        tokens.append(
            Token(
                surface=surface,
                stem=stem(surface),
                position=i,
                sentence_index=sent,
                paragraph_index=para,
                char_span=(m.start(), m.end()),
            )
        )
        prev_end = m.end()
        prev_surface = surface
    return tokens


def _breaks_sentence(
    gap: str, prev_surface: str, next_surface: str, abbreviations: frozenset[str]
) -> bool:
    m = _SENT_END_RE.search(gap)
    if m is None:
        return False
    if not next_surface[0].isupper():
        return False
    if m.group(1) == ".":
        if prev_surface.lower() in abbreviations:
            return False
        if len(prev_surface) == 1 and prev_surface.isupper():
            return False
    return True


# Closed lexicon consulted before the suffix rules. Mostly adjectives with no
# distinguishing suffix, -al nouns the ADJ suffix rule would mis-tag, -ing/-ed
# nouns, and irregular past-tense verbs that would otherwise default to NOUN.
TAG_LEXICON: dict[str, PosTag] = {}
TAG_LEXICON.update(
    dict.fromkeys(
        [
            "armed", "foreign", "former", "senior", "junior", "key", "main",
            "major", "minor", "top", "big", "small", "good", "bad", "new",
            "old", "young", "high", "low", "long", "short", "early", "late",
            "red", "blue", "green", "black", "white", "dead", "free", "full",
            "empty", "hard", "soft", "hot", "cold", "strong", "weak", "rich",
            "poor", "safe", "heavy", "light", "deep", "clear", "close",
            "daily", "weekly", "severe", "grim", "tense", "calm", "brief",
        ],
        PosTag.ADJ,
    )
)
TAG_LEXICON.update(
    dict.fromkeys(
        [
            "disposal", "proposal", "arrival", "approval", "refusal",
            "denial", "burial", "trial", "animal", "hospital", "capital",
            "signal", "metal", "journal", "festival", "rental", "removal",
            "survival", "revival", "withdrawal", "canal", "material",
            "building", "meeting", "morning", "evening", "wedding",
            "shooting", "uprising", "chief", "release",
        ],
        PosTag.NOUN,
    )
)
TAG_LEXICON.update(
    dict.fromkeys(
        [
            "said", "told", "held", "took", "gave", "made", "went", "came",
            "got", "saw", "left", "freed", "kept", "met", "sent", "put",
            "began", "broke", "brought", "led", "lost", "found", "spoke",
            "stood", "threw", "drove", "rang", "fled", "sought", "won",
            "say", "tell", "hold", "take", "give", "make", "go", "come",
            "get", "see", "leave", "keep", "meet", "send", "begin", "break",
            "bring", "lead", "lose", "find", "speak", "stand", "throw",
            "drive", "flee", "seek", "win", "know", "knew", "become",
            "became", "remain", "remained", "refuse", "refused",
        ],
        PosTag.VERB,
    )
)

_ADJ_SUFFIXES = ("ous", "ive", "able", "al")
_NOUN_SUFFIXES = ("tion", "ment", "ness", "ity")
_VERB_SUFFIXES = ("ize", "ed", "ing")


def tag_pos(
    tokens: Sequence[Token],
    stopwords: frozenset[str] | None = None,
    lexicon: dict[str, PosTag] | None = None,
) -> list[Token]:
    """Return a copy of `tokens` with `pos_tag` filled.

    Rule order: stop list, closed lexicon, suffix rules, then NOUN for
    anything else (capitalized or unknown content words).
    """
    if stopwords is None:
        stopwords = load_stopwords()
    if lexicon is None:
        lexicon = TAG_LEXICON
    out = []
    for tok in tokens:
        low = tok.surface.lower()
        if low in stopwords:
            tag = PosTag.STOP
        elif not any(c.isalpha() for c in tok.surface):
            tag = PosTag.OTHER
        elif low in lexicon:
            tag = lexicon[low]
        else:
            tag = _suffix_tag(low) or PosTag.NOUN
        out.append(replace(tok, pos_tag=tag))
    return out


def _suffix_tag(word: str) -> PosTag | None:
    for suffixes, tag in (
        (_ADJ_SUFFIXES, PosTag.ADJ),
        (_NOUN_SUFFIXES, PosTag.NOUN),
        (_VERB_SUFFIXES, PosTag.VERB),
    ):
        for suffix in suffixes:
            if word.endswith(suffix) and len(word) >= len(suffix) + 2:
                return tag
    return None


_ORG_MARKERS = frozenset(
    [
        "movement", "front", "party", "organization", "group", "army",
        "committee", "corporation", "company", "agency", "ministry",
        "council", "union", "league", "association", "brigade",
    ]
)
_PERSON_TITLES = frozenset(
    ["mr", "mrs", "ms", "dr", "gen", "col", "sgt", "lt", "capt", "president",
     "minister", "senator", "ambassador"]
)


def find_names(
    tokens: Sequence[Token], stopwords: frozenset[str] | None = None
) -> list[NameMention]:
    """Maximal same-sentence runs of capitalized tokens.

    A sentence-initial capitalized token joins a run only when the next token
    is capitalized too, so ordinary sentence-starting words are skipped;
    all-caps acronyms are kept even there. Single-token runs whose surface
    is a stop word are dropped.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    mentions = []
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if not tok.surface[0].isupper():
            i += 1
            continue
        start = i
        j = i + 1
        while (
            j < n
            and tokens[j].surface[0].isupper()
            and tokens[j].sentence_index == tok.sentence_index
            and tokens[j].position == tokens[j - 1].position + 1
        ):
            j += 1
        sentence_initial = start == 0 or (
            tokens[start - 1].sentence_index != tok.sentence_index
        )
        acronym = len(tok.surface) > 1 and tok.surface.isupper()
        if sentence_initial and j - start < 2 and not acronym:
            i = j
            continue
        if j - start == 1 and tok.surface.lower() in stopwords:
            i = j
            continue
        span = tokens[start:j]
        canonical = " ".join(t.surface for t in span)
        mentions.append(
            NameMention(
                token_range=(span[0].position, span[-1].position + 1),
                canonical=canonical,
                name_type=_classify_name(span, tokens, start),
            )
        )
        i = j
    return mentions


def _classify_name(
    span: Sequence[Token], tokens: Sequence[Token], start: int
) -> NameType:
    if span[-1].surface.lower() in _ORG_MARKERS:
        return NameType.ORG
    # A capitalized title joins the run itself; otherwise look right before it.
    if len(span) > 1 and span[0].surface.lower().rstrip(".") in _PERSON_TITLES:
        return NameType.PERSON
    if start > 0 and tokens[start - 1].surface.lower().rstrip(".") in _PERSON_TITLES:
        return NameType.PERSON
    return NameType.UNKNOWN


def alias_match(
    a: NameMention, b: NameMention, lexicon: AliasLexicon | None = None
) -> bool:
    """True when two mentions plausibly name the same entity."""
    return alias_strings_match(a.canonical, b.canonical, lexicon)


def alias_strings_match(
    a: str, b: str, lexicon: AliasLexicon | None = None
) -> bool:
    """Equality, contiguous token subsequence, or an alias-lexicon pair."""
    at = _norm_name(a).split()
    bt = _norm_name(b).split()
    if not at or not bt:
        return False
    if at == bt:
        return True
    if _contiguous_subsequence(at, bt) or _contiguous_subsequence(bt, at):
        return True
    if lexicon is not None and lexicon.has_pair(a, b):
        return True
    return False


def _contiguous_subsequence(small: list[str], big: list[str]) -> bool:
    if len(small) > len(big):
        return False
    return any(
        big[i : i + len(small)] == small
        for i in range(len(big) - len(small) + 1)
    )


def sentence_spans(tokens: Sequence[Token], text: str) -> dict[int, tuple[int, int]]:
    """Character span of each sentence, extended over trailing punctuation."""
    spans: dict[int, tuple[int, int]] = {}
    for tok in tokens:
        start, end = tok.char_span
        if tok.sentence_index not in spans:
            spans[tok.sentence_index] = (start, end)
        else:
            s, _ = spans[tok.sentence_index]
            spans[tok.sentence_index] = (s, end)
    for idx, (s, e) in spans.items():
        while e < len(text) and text[e] in _TRAILING_PUNCT:
            e += 1
        spans[idx] = (s, e)
    return spans


def sentence_text(tokens: Sequence[Token], text: str, sentence_index: int) -> str:
    span = sentence_spans(tokens, text).get(sentence_index)
    if span is None:
        return ""
    return " ".join(text[span[0] : span[1]].split())


def content_stems(
    tokens: Iterable[Token], stopwords: frozenset[str]
) -> list[str]:
    """Stems of tokens whose surface is not a stop word."""
    return [t.stem for t in tokens if t.surface.lower() not in stopwords]
