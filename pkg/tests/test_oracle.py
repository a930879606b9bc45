from hypothesis import given, settings

from punforge.homophones import HomophoneBase
from punforge.lexicon import Lexicon
from punforge.oracle import brute_force_instantiations
from punforge.schemata import enumerate_instantiations
from strategies import knowledge_bases


def _engine(schema, template, lexicon, base):
    if not template.accepts(schema):
        return set()
    return set(enumerate_instantiations(schema, template, lexicon, base))


def test_worked_jumper_syn_syn(worked_kb):
    s, t = worked_kb.schemata["jumper"], worked_kb.templates["syn_syn"]
    oracle = brute_force_instantiations(s, t, worked_kb.lexicon, worked_kb.homophones)
    assert oracle == _engine(s, t, worked_kb.lexicon, worked_kb.homophones)
    assert len(oracle) == 2


def test_empty_lexicon(worked_kb):
    s, t = worked_kb.schemata["jumper"], worked_kb.templates["syn_syn"]
    assert brute_force_instantiations(s, t, Lexicon(), HomophoneBase()) == set()


def test_no_pairs_no_instantiations(worked_kb):
    for s in worked_kb.schemata.values():
        for t in worked_kb.templates.values():
            assert brute_force_instantiations(s, t, worked_kb.lexicon, HomophoneBase()) == set()


def test_incompatible_template(worked_kb):
    s, t = worked_kb.schemata["ginger"], worked_kb.templates["syn_syn"]
    assert brute_force_instantiations(s, t, worked_kb.lexicon, worked_kb.homophones) == set()


def test_per_np_matches(demo_kb):
    s, t = demo_kb.schemata["elan"], demo_kb.templates["class_verb"]
    for np in demo_kb.lexicon.noun_phrases():
        engine = set(enumerate_instantiations(s, t, demo_kb.lexicon, demo_kb.homophones, np=np))
        assert brute_force_instantiations(s, t, demo_kb.lexicon, demo_kb.homophones, np=np) == engine


def test_sound_instantiations(demo_kb):
    from punforge.lexicon import relation_values
    for s in demo_kb.schemata.values():
        for t in demo_kb.templates.values():
            for inst in _engine(s, t, demo_kb.lexicon, demo_kb.homophones):
                b = inst.as_dict
                np, *words = s.constituents.endpoints
                assert demo_kb.lexicon[b[np][0]].comp_lex == tuple(b[w][0] for w in words)
                for link in s.links_of("homophone"):
                    x, y = link.endpoints
                    assert demo_kb.homophones.kind_of(b[x][0], b[y][0])
                for var, rel in inst.relations:
                    assert b[var] in relation_values(b[s.char_source(var)][0], rel, demo_kb.lexicon)


@settings(max_examples=40, deadline=None)
@given(knowledge_bases(max_words=6))
def test_random_lexicons(worked_kb, kb):
    lexicon, base = kb
    for s in worked_kb.schemata.values():
        for t in worked_kb.templates.values():
            assert brute_force_instantiations(s, t, lexicon, base) == _engine(s, t, lexicon, base)
