import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from punforge.errors import ParseError, RealizationError
from punforge.lexicon import Chunk, LexicalEntry, Lexicon
from punforge.pipeline import data_path
from punforge.templates import (
    NearSurfaceForm,
    determiner,
    fill,
    parse_templates,
    realize_fragment,
    to_surface,
)

RATED_TEMPLATES = ["syn_syn", "syn_verb", "syn_verb_rev", "use_syn", "use_syn_rev", "class_verb",
                  "class_verb_rev", "class_has", "class_has_rev", "adj_syn", "adj_syn_rev"]


@pytest.fixture(scope="module")
def shipped():
    return parse_templates(data_path("templates.txt").read_text())


def test_shipped_names(shipped):
    assert sorted(shipped) == sorted(RATED_TEMPLATES)


def test_syn_syn(shipped):
    t = shipped["syn_syn"]
    assert [s.allow for s in t.slots] == [("spec_is_class", "describes_all", "synonym")] * 2
    assert t.question == tuple("what do you get when you cross {1} with {2} ?".split())
    assert t.provenance == "paper"


def test_syn_verb(shipped):
    t = shipped["syn_verb"]
    assert t.slots[1].allow == ("act_verb",) and t.slots[1].role == "verb_can"


@pytest.mark.parametrize("body, needle", [
    ('slot 1 allow class\nslot 1 role bare\nquestion "{1} {2} ?"\n', "placeholder"),
    ('slot 1 allow class\nslot 1 role bare\nquestion "{1} ?"\nanswer "x ."\n', "punchline"),
    ('slot 1 allow colour\nslot 1 role bare\nquestion "{1} ?"\n', "unknown relation"),
    ('slot 1 allow class\nslot 1 role shout\nquestion "{1} ?"\n', "unknown role"),
    ('slot 1 allow class\nslot 1 role bare\nquestion "{1} !"\n', "must end"),
    ('slot 1 allow class\nslot 1 role modifier\nquestion "{1} ?"\n', "modifier"),
])
def test_template_errors(body, needle):
    with pytest.raises(ParseError, match=needle):
        parse_templates("template t\nschemata jumper\n" + body)


def test_fragments(worked_lexicon):
    assert realize_fragment(("sheep",), "entity", worked_lexicon) == ["a", "sheep"]
    assert realize_fragment(("leap",), "verb_can", worked_lexicon) == ["that", "can", "leap"]
    assert realize_fragment(("warm", "clothing"), "entity", worked_lexicon) == ["warm", "clothing"]
    assert realize_fragment(("wear",), "verb_you", worked_lexicon) == ["you", "wear"]
    assert realize_fragment(Chunk.of("in the jungle"), "chunk", worked_lexicon) == ["in", "the", "jungle"]
    assert realize_fragment(("clothing",), "bare", worked_lexicon) == ["clothing"]


def test_modifier_decides_determiner():
    lex = Lexicon([
        LexicalEntry("odd", "adj", Chunk.of("odd"), vowel_start=True),
        LexicalEntry("number", "noun", Chunk.of("number"), vowel_start=False, countable=True),
    ])
    assert realize_fragment(("number",), "entity", lex, modifier=("odd",)) == ["an", "odd", "number"]


def test_realization_errors(worked_lexicon):
    with pytest.raises(RealizationError):
        realize_fragment(("fuzzy",), "entity", worked_lexicon)  # adjective cannot head
    with pytest.raises(RealizationError):
        realize_fragment(("sheep",), "verb_can", worked_lexicon)
    with pytest.raises(RealizationError):
        realize_fragment(("sheep",), "chunk", worked_lexicon)
    no_vowel = Lexicon([LexicalEntry("x", "noun", Chunk.of("x"), countable=True)])
    with pytest.raises(RealizationError, match="vowel_start"):
        realize_fragment(("x",), "entity", no_vowel)
    no_second = Lexicon([LexicalEntry("go", "verb", Chunk.of("go"))])
    with pytest.raises(RealizationError, match="second"):
        realize_fragment(("go",), "verb_you", no_second)


def _worked_inst(kb, template):
    from punforge.schemata import enumerate_instantiations
    return next(enumerate_instantiations(kb.schemata["jumper"], kb.templates[template], kb.lexicon, kb.homophones))


def test_fill_syn_syn(worked_kb):
    nsf = fill(worked_kb.templates["syn_syn"], _worked_inst(worked_kb, "syn_syn"), worked_kb.lexicon)
    assert " ".join(nsf.question) == "what do you get when you cross a sheep with a kangaroo ?"
    assert " ".join(nsf.answer) == "a woolly jumper ."


def test_fill_syn_verb(worked_kb):
    nsf = fill(worked_kb.templates["syn_verb"], _worked_inst(worked_kb, "syn_verb"), worked_kb.lexicon)
    assert " ".join(nsf.question) == "what do you call a sheep that can leap ?"
    assert " ".join(nsf.answer) == "a woolly jumper ."


def test_fill_is_pure_and_leaves_no_placeholder(worked_kb):
    inst = _worked_inst(worked_kb, "syn_syn")
    t = worked_kb.templates["syn_syn"]
    a, b = fill(t, inst, worked_kb.lexicon), fill(t, inst, worked_kb.lexicon)
    assert a == b
    assert not any("{" in tok for tok in a.question + a.answer)


def test_fill_wrong_template(worked_kb):
    with pytest.raises(ValueError):
        fill(worked_kb.templates["syn_verb"], _worked_inst(worked_kb, "syn_syn"), worked_kb.lexicon)


def test_uncountable_punchline_has_no_determiner(demo_kb):
    from punforge.pipeline import GenerationConfig, generate
    # "fur coat" punchline: head coat is countable; build one with uncountable head
    lex = demo_kb.lexicon
    assert determiner(lex["grain"], lex["grain"]) == []
    riddles = generate(demo_kb, GenerationConfig(np_filter="fur_coat"))
    assert riddles and all(r.nsf.answer[0] == "a" for r in riddles)


def test_to_surface():
    assert to_surface(NearSurfaceForm(("x", "?"), ("y", "."))) == "X? Y."
    with pytest.raises(TypeError):
        to_surface((("x", "?"), ("y", ".")))


def test_near_surface_invariants():
    with pytest.raises(ValueError):
        NearSurfaceForm(("X", "?"), ("y", "."))
    with pytest.raises(ValueError):
        NearSurfaceForm(("x",), ("y", "."))
    with pytest.raises(ValueError):
        NearSurfaceForm(("x", "?"), ("y",))


@settings(max_examples=1000, deadline=None)
@given(st.booleans(), st.one_of(st.none(), st.booleans()), st.booleans(), st.booleans())
def test_determiner_agreement(first_vowel, head_countable, use_modifier, mod_vowel):
    entries = [
        LexicalEntry("head", "noun", Chunk.of("head"), vowel_start=first_vowel, countable=head_countable),
        LexicalEntry("mod", "adj", Chunk.of("mod"), vowel_start=mod_vowel),
    ]
    lex = Lexicon(entries)
    modifier = ("mod",) if use_modifier else None
    if head_countable is None:
        with pytest.raises(RealizationError):
            realize_fragment(("head",), "entity", lex, modifier=modifier)
        return
    out = realize_fragment(("head",), "entity", lex, modifier=modifier)
    leading_vowel = mod_vowel if use_modifier else first_vowel
    if not head_countable:
        assert out[0] in ("mod", "head")
    else:
        assert out[0] == ("an" if leading_vowel else "a")
