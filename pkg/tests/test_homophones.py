import pytest
from hypothesis import given, settings

from punforge.errors import ParseError
from punforge.homophones import (
    HomophoneBase,
    HomophonePair,
    homophones_of,
    lint_base,
    lint_pair,
    parse_homophone_base,
    serialize_homophone_base,
)
from punforge.lexicon import parse_lexicon
from strategies import knowledge_bases


def test_worked_pair(worked_base):
    assert len(worked_base) == 1
    assert list(worked_base)[0] == HomophonePair("jumper_1", "jumper_2", "alternate")


def test_lookup_both_ways(worked_base):
    assert homophones_of("jumper_1", worked_base) == [("jumper_2", "alternate")]
    assert homophones_of("jumper_2", worked_base) == [("jumper_1", "alternate")]
    assert homophones_of("woolly", worked_base) == []


def test_empty_document(worked_lexicon):
    assert len(parse_homophone_base("", worked_lexicon)) == 0


@pytest.mark.parametrize("text, needle", [
    ("pair homonym jumper_1 jumper_2", "identical written forms"),
    ("pair alternate sheep kangaroo", "different written forms"),
    ("pair alternate jumper_1 nobody", "unknown lexeme"),
    ("pair alternate jumper_1 jumper_1", "itself"),
    ("pair alternate jumper_1 jumper_2\npair alternate jumper_2 jumper_1", "duplicate"),
    ("pair rhyme sheep kangaroo", "unknown pair kind"),
    ("twin sheep kangaroo", "syntax"),
])
def test_parse_errors(worked_lexicon, text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_homophone_base(text, worked_lexicon)


def test_worked_pair_lints_clean(worked_lexicon, worked_base):
    assert lint_base(worked_base, worked_lexicon) == []


LINT_LEX = """
lexeme run_1
category verb
written_form "run"

lexeme run_2
category verb
written_form "run"

lexeme bat_1
category noun
written_form "bat"
vowel_start no
countable yes
class thing

lexeme bat_2
category noun
written_form "bat"
vowel_start no
countable yes
class thing

lexeme thing
category noun
written_form "thing"
vowel_start no
countable yes

lexeme idea
category noun
written_form "idea"
vowel_start yes
countable yes
abstract yes

lexeme eyed_ear
category noun
written_form "eyed ear"
vowel_start yes
countable yes

lexeme colour
category noun
written_form "colour"
vowel_start no
countable yes

lexeme color
category noun
written_form "color"
vowel_start no
countable yes
"""


@pytest.fixture(scope="module")
def lint_lex():
    return parse_lexicon(LINT_LEX)


def test_verbs_are_flagged(lint_lex):
    out = lint_pair(HomophonePair("run_1", "run_2", "alternate"), lint_lex)
    assert len(out) == 1 and "nouns or adjectives" in out[0].message and not out[0].is_error


def test_shared_class_breaks_alternate(lint_lex):
    out = lint_pair(HomophonePair("bat_1", "bat_2", "alternate"), lint_lex)
    assert [v.is_error for v in out] == [True]
    assert "class=thing" in out[0].message


def test_abstract_member(lint_lex):
    out = lint_pair(HomophonePair("idea", "eyed_ear", "homonym"), lint_lex)
    assert any("abstract" in v.message for v in out)


def test_spelling_variants(lint_lex):
    out = lint_pair(HomophonePair("colour", "color", "homonym"), lint_lex)
    assert any("identical" in v.message for v in out)


def test_base_rejects_duplicates_directly():
    with pytest.raises(ValueError):
        HomophoneBase([HomophonePair("a", "b", "homonym"), HomophonePair("b", "a", "homonym")])
    with pytest.raises(ValueError):
        HomophoneBase([HomophonePair("a", "a", "homonym")])


@settings(max_examples=1000, deadline=None)
@given(knowledge_bases())
def test_symmetric_and_irreflexive(kb):
    lexicon, base = kb
    for x in lexicon.ids():
        partners = homophones_of(x, base)
        assert all(y != x for y, _ in partners)
        for y, kind in partners:
            assert (x, kind) in homophones_of(y, base)


@settings(max_examples=200, deadline=None)
@given(knowledge_bases())
def test_serialize_round_trip(kb):
    lexicon, base = kb
    again = parse_homophone_base(serialize_homophone_base(base), lexicon)
    assert set(again) == set(base)


@settings(max_examples=300, deadline=None)
@given(knowledge_bases())
def test_alternate_sharing_a_value_never_passes(kb):
    lexicon, base = kb
    for pair in base:
        if pair.kind != "alternate":
            continue
        a, b = lexicon[pair.a], lexicon[pair.b]
        shared = any(set(a.values(s)) & set(b.values(s)) for s in a.semantic)
        errors = [v for v in lint_pair(pair, lexicon) if v.is_error]
        assert bool(errors) == shared
