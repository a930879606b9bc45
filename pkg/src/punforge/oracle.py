"""Reference enumerator used to cross-check the generator.

It knows nothing about how the generator propagates bindings.  Every
variable ranges over a naive domain (any lexeme for key variables; any
one- or two-lexeme sequence or any text chunk for characteristic ones) and a
depth-first search keeps the assignments that satisfy every link, with each
link tested directly against the lexicon.  Slow, but obviously right.
"""

from __future__ import annotations

import itertools
from typing import Optional

from punforge.homophones import HomophoneBase
from punforge.lexicon import CHUNK_SLOTS, Chunk, Lexicon
from punforge.schemata import Instantiation, Schema
from punforge.templates import Template


def _holds(lexicon: Lexicon, source: str, relation: str, value) -> bool:
    entry = lexicon[source]
    if relation == "spec_is_class":
        return (not isinstance(value, Chunk) and len(value) == 2
                and value[0] in entry.values("spec_is") and value[1] in entry.values("class"))
    if relation in CHUNK_SLOTS:
        return isinstance(value, Chunk) and value in entry.values(relation)
    return not isinstance(value, Chunk) and len(value) == 1 and value[0] in entry.values(relation)


def _char_domain(lexicon: Lexicon) -> list:
    ids = lexicon.ids()
    chunks = sorted({v for e in lexicon for slot in CHUNK_SLOTS for v in e.values(slot)}, key=str)
    return [(i,) for i in ids] + list(itertools.product(ids, repeat=2)) + chunks


def brute_force_instantiations(schema: Schema, template: Template, lexicon: Lexicon,
                               base: HomophoneBase, np: Optional[str] = None) -> set[Instantiation]:
    if not template.accepts(schema):
        return set()
    relation_choices = dict(zip(schema.question_slots, (s.allow for s in template.slots)))
    constituents = schema.constituents.endpoints
    np_var, words = constituents[0], constituents[1:]
    key_domain = [(i,) for i in lexicon.ids()]
    char_domain = _char_domain(lexicon)
    order = [v for v, _ in schema.variables]
    kinds = dict(schema.variables)

    def consistent(b: dict, var: str) -> bool:
        # constituents, tested piecewise as soon as its pieces are bound
        if np_var in b:
            entry = lexicon[b[np_var][0]]
            if entry.category != "np" or entry.comp_lex is None or len(entry.comp_lex) != len(words):
                return False
            if np is not None and b[np_var][0] != np:
                return False
            for i, w in enumerate(words):
                if w in b and b[w] != (entry.comp_lex[i],):
                    return False
        for link in schema.links_of("homophone", "identity"):
            x, y = link.endpoints
            if var not in (x, y) or x not in b or y not in b:
                continue
            if link.kind == "identity" and b[x] != b[y]:
                return False
            if link.kind == "homophone" and base.kind_of(b[x][0], b[y][0]) is None:
                return False
        return True

    found: set[Instantiation] = set()

    def search(i: int, b: dict) -> None:
        if i == len(order):
            rel_options = []
            for var in schema.question_slots:
                src = b[schema.char_source(var)][0]
                rels = [r for r in relation_choices[var] if _holds(lexicon, src, r, b[var])]
                rel_options.append([(var, r) for r in rels])
            for combo in itertools.product(*rel_options):
                found.add(Instantiation(schema, tuple(sorted(b.items())), tuple(sorted(combo)), template.name))
            return
        var = order[i]
        if kinds[var] == "key":
            for value in key_domain:
                b[var] = value
                if consistent(b, var):
                    search(i + 1, b)
                del b[var]
        else:
            src_var = schema.char_source(var)
            for value in char_domain:
                if src_var in b:
                    src = b[src_var][0]
                    if not any(_holds(lexicon, src, r, value) for r in relation_choices[var]):
                        continue
                b[var] = value
                search(i + 1, b)
                del b[var]

    search(0, {})
    return found
