import pytest
from hypothesis import given
from hypothesis import strategies as st

from textgraph.errors import EmptyDocumentError, FormatError
from textgraph.textprep import (
    AliasLexicon,
    NameMention,
    NameType,
    PosTag,
    alias_match,
    alias_strings_match,
    find_names,
    load_abbreviations,
    load_stopwords,
    normalize_name,
    segment,
    sentence_spans,
    sentence_text,
    tag_pos,
)


def test_two_plain_sentences():
    toks = segment("Dogs bark. Cats purr.")
    assert [t.surface for t in toks] == ["Dogs", "bark", "Cats", "purr"]
    assert [t.sentence_index for t in toks] == [0, 0, 1, 1]
    assert [t.paragraph_index for t in toks] == [0, 0, 0, 0]


def test_abbreviation_does_not_end_sentence():
    toks = segment("Dr. Smith left.")
    assert {t.sentence_index for t in toks} == {0}


def test_single_capital_does_not_end_sentence():
    toks = segment("J. Smith arrived.")
    assert {t.sentence_index for t in toks} == {0}


def test_break_requires_capital_follower():
    toks = segment("It cost 3.5 million. the rest was lost.")
    # lowercase "the" after the period: no break
    assert {t.sentence_index for t in toks} == {0}


def test_question_and_exclamation_break():
    toks = segment("Really? Yes! Fine.")
    assert [t.sentence_index for t in toks] == [0, 1, 2]


def test_blank_line_starts_new_paragraph():
    toks = segment("A.\n\nB.")
    assert [t.paragraph_index for t in toks] == [0, 1]
    assert toks[0].sentence_index != toks[1].sentence_index


def test_empty_document_rejected():
    with pytest.raises(EmptyDocumentError):
        segment("... --- ...")


def test_positions_and_spans():
    text = "Hostages were freed near the palace gate."
    toks = segment(text)
    for i, tok in enumerate(toks):
        assert tok.position == i
        start, end = tok.char_span
        assert text[start:end] == tok.surface


def test_quote_after_period_still_breaks():
    toks = segment('He said "stop." Then he left.')
    assert toks[-1].sentence_index == 1


def test_tag_stop_words():
    toks = tag_pos(segment("The rebels left."))
    assert toks[0].pos_tag is PosTag.STOP
    assert toks[1].pos_tag is PosTag.NOUN
    assert toks[2].pos_tag is PosTag.VERB


def test_tag_adjective_suffix_and_al_noun_exception():
    toks = tag_pos(segment("illegal disposal"))
    assert [t.pos_tag for t in toks] == [PosTag.ADJ, PosTag.NOUN]


def test_tag_defaults_unknown_to_noun():
    toks = tag_pos(segment("zorgon"))
    assert toks[0].pos_tag is PosTag.NOUN


def test_tag_suffix_rules():
    toks = tag_pos(segment("famous movement organize"))
    assert [t.pos_tag for t in toks] == [PosTag.ADJ, PosTag.NOUN, PosTag.VERB]


def test_numbers_tagged_other():
    toks = tag_pos(segment("The 25 rebels"))
    assert toks[1].pos_tag is PosTag.OTHER


def test_find_names_simple():
    toks = tag_pos(segment("They met Victor Polay in Lima."))
    names = find_names(toks)
    assert [m.canonical for m in names] == ["Victor Polay", "Lima"]
    assert names[0].token_range == (2, 4)


def test_sentence_initial_article_alone_is_not_a_name():
    toks = tag_pos(segment("The dog barked."))
    assert find_names(toks) == []


def test_sentence_initial_run_kept_when_followed_by_capital():
    toks = tag_pos(segment("Elena Madrigal spoke."))
    names = find_names(toks)
    assert [m.canonical for m in names] == ["Elena Madrigal"]


def test_four_token_mention():
    toks = tag_pos(segment("Members of the Tupac Amaru Revolutionary Movement escaped."))
    names = find_names(toks)
    assert len(names) == 1
    assert names[0].canonical == "Tupac Amaru Revolutionary Movement"
    assert names[0].token_range[1] - names[0].token_range[0] == 4
    assert names[0].name_type is NameType.ORG


def test_person_title_classification():
    toks = tag_pos(segment("A statement by Mr. Arkady followed."))
    names = find_names(toks)
    assert any(
        m.canonical.endswith("Arkady") and m.name_type is NameType.PERSON
        for m in names
    )


def test_name_spans_never_cross_sentences():
    text = "Rebels freed Elena Madrigal. Arkady Tomas stayed inside."
    toks = tag_pos(segment(text))
    for m in find_names(toks):
        sentences = {toks[p].sentence_index for p in m.positions()}
        assert len(sentences) == 1


def test_alias_subsequence():
    a = NameMention((0, 2), "Victor Polay")
    b = NameMention((5, 6), "Polay")
    assert alias_match(a, b)
    assert alias_match(b, a)


def test_alias_no_overlap():
    a = NameMention((0, 2), "Victor Polay")
    b = NameMention((5, 6), "Fujimori")
    assert not alias_match(a, b)


def test_alias_via_lexicon(tmp_path):
    p = tmp_path / "aliases.tsv"
    p.write_text("Tupac Amaru Revolutionary Movement\tMRTA\n", encoding="utf-8")
    lex = AliasLexicon.load(p)
    a = NameMention((0, 4), "Tupac Amaru Revolutionary Movement")
    b = NameMention((9, 10), "MRTA")
    assert alias_match(a, b, lex)
    assert not alias_match(a, b)


def test_alias_lexicon_rejects_bad_lines(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("one-column-only\n", encoding="utf-8")
    with pytest.raises(FormatError):
        AliasLexicon.load(p)
    p.write_text("Same\tsame\n", encoding="utf-8")
    with pytest.raises(FormatError):
        AliasLexicon.load(p)


def test_normalize_name_strips_leading_article():
    assert normalize_name("The KLF") == "klf"
    assert normalize_name("KLF") == "klf"
    assert normalize_name("A Red Crescent") == "red crescent"
    # a bare article is left alone
    assert normalize_name("The") == "the"


def test_sentence_spans_cover_trailing_punctuation():
    text = "Rebels fled. Troops stayed!"
    toks = segment(text)
    spans = sentence_spans(toks, text)
    assert text[slice(*spans[0])] == "Rebels fled."
    assert text[slice(*spans[1])] == "Troops stayed!"
    assert sentence_text(toks, text, 1) == "Troops stayed!"


def test_stopword_and_abbreviation_loaders():
    stops = load_stopwords()
    assert "the" in stops and "don't" in stops
    abbrevs = load_abbreviations()
    assert "dr" in abbrevs and "gen" in abbrevs


def test_bad_abbreviation_file_rejected(tmp_path):
    p = tmp_path / "ab.txt"
    p.write_text("dr.\nmissingperiod\n", encoding="utf-8")
    with pytest.raises(FormatError):
        load_abbreviations(p)


texts = st.text(
    alphabet=st.characters(
        codec="ascii", categories=("Lu", "Ll", "Nd", "Po", "Zs"), include_characters="\n"
    ),
    min_size=0,
    max_size=300,
)


@given(texts)
def test_segments_deterministically_with_valid_invariants(text):
    try:
        first = segment(text)
    except EmptyDocumentError:
        return
    second = segment(text)
    assert first == second
    for i, tok in enumerate(first):
        assert tok.position == i
        start, end = tok.char_span
        assert text[start:end] == tok.surface
        if i:
            prev = first[i - 1]
            assert tok.sentence_index >= prev.sentence_index
            assert tok.paragraph_index >= prev.paragraph_index


@given(texts)
def test_stop_surface_means_stop_tag(text):
    try:
        toks = tag_pos(segment(text))
    except EmptyDocumentError:
        return
    stops = load_stopwords()
    for tok in toks:
        assert (tok.pos_tag is PosTag.STOP) == (tok.surface.lower() in stops)


names_st = st.lists(
    st.text(alphabet="ABCDEFGabcdefg", min_size=1, max_size=6), min_size=1, max_size=4
).map(" ".join)


@given(names_st, names_st)
def test_alias_match_symmetric(a, b):
    assert alias_strings_match(a, b) == alias_strings_match(b, a)


@given(names_st)
def test_alias_match_reflexive(a):
    assert alias_strings_match(a, a)
