"""Schemata: variable graphs that say how a fake phrase is glued together
and where its meaning comes from.

A schema declares key variables (the noun phrase, its constituent words and
anything reachable from them through homophone or identity links) and
characteristic variables, each hanging off one key variable by an unlabelled
characteristic link.  A template later picks the relation for each
characteristic link.

Definitions file::

    schema jumper
    provenance paper
    var NP key
    var W1 key
    var W2 key
    var H key
    var C1 char
    var C2 char
    constituents NP -> W1 W2
    link homophone W2 H
    char C1 from W1
    char C2 from H
    punchline W1 H
    question_slots C1 C2
"""

from __future__ import annotations

import itertools
import shlex
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Optional

from punforge.errors import ParseError, TemplateMismatch
from punforge.homophones import HomophoneBase, homophones_of
from punforge.lexicon import Binding, Lexicon, relation_values

if TYPE_CHECKING:
    from punforge.templates import Template

LINK_KINDS = ("homophone", "identity", "constituents", "characteristic")
PROVENANCES = ("paper", "extrapolated")


@dataclass(frozen=True)
class Link:
    kind: str
    endpoints: tuple[str, ...]
    relation: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "constituents":
            return f"constituents {self.endpoints[0]} -> {' '.join(self.endpoints[1:])}"
        if self.kind == "characteristic":
            rel = f" [{self.relation}]" if self.relation else ""
            return f"char {self.endpoints[1]} from {self.endpoints[0]}{rel}"
        return f"{self.kind} {self.endpoints[0]} {self.endpoints[1]}"


@dataclass(frozen=True)
class Schema:
    name: str
    variables: tuple[tuple[str, str], ...]
    links: tuple[Link, ...]
    punchline: tuple[str, ...]
    question_slots: tuple[str, ...]
    provenance: str = "paper"

    @property
    def kinds(self) -> dict[str, str]:
        return dict(self.variables)

    @property
    def key_vars(self) -> tuple[str, ...]:
        return tuple(v for v, k in self.variables if k == "key")

    @property
    def char_vars(self) -> tuple[str, ...]:
        return tuple(v for v, k in self.variables if k == "char")

    @property
    def constituents(self) -> Link:
        return next(link for link in self.links if link.kind == "constituents")

    @property
    def np_var(self) -> str:
        return self.constituents.endpoints[0]

    @property
    def word_vars(self) -> tuple[str, ...]:
        return self.constituents.endpoints[1:]

    def char_source(self, var: str) -> str:
        for link in self.links:
            if link.kind == "characteristic" and link.endpoints[1] == var:
                return link.endpoints[0]
        raise KeyError(var)

    def links_of(self, *kinds: str) -> list[Link]:
        return [link for link in self.links if link.kind in kinds]


# ---------------------------------------------------------------- parsing


def _check_schema(name, variables, links, punchline, slots, line) -> None:
    kinds = dict(variables)

    def known(var, what):
        if var not in kinds:
            raise ParseError(f"schema {name}: dangling variable {var!r} in {what}", line)

    constituents = [link for link in links if link.kind == "constituents"]
    if len(constituents) != 1:
        raise ParseError(f"schema {name}: needs exactly one constituents line", line)
    for link in links:
        for var in link.endpoints:
            known(var, link.kind)
    for var in punchline:
        known(var, "punchline")
    for var in slots:
        known(var, "question_slots")

    for link in links:
        if link.kind == "characteristic":
            src, dst = link.endpoints
            if kinds[src] != "key" or kinds[dst] != "char":
                raise ParseError(f"schema {name}: 'char {dst} from {src}' must run from a key to a char variable", line)
        elif any(kinds[v] != "key" for v in link.endpoints):
            raise ParseError(f"schema {name}: {link.kind} link may only join key variables", line)

    for var, kind in variables:
        if kind != "char":
            continue
        count = sum(1 for link in links if link.kind == "characteristic" and link.endpoints[1] == var)
        if count != 1:
            raise ParseError(f"schema {name}: characteristic variable {var} has {count} characteristic links (need 1)", line)

    # key variables must be reachable from the noun phrase without characteristic links
    reached = {constituents[0].endpoints[0], *constituents[0].endpoints[1:]}
    grew = True
    while grew:
        grew = False
        for link in links:
            if link.kind in ("homophone", "identity"):
                a, b = link.endpoints
                if (a in reached) != (b in reached):
                    reached |= {a, b}
                    grew = True
    stranded = [v for v, k in variables if k == "key" and v not in reached]
    if stranded:
        raise ParseError(f"schema {name}: key variable(s) {', '.join(stranded)} not reachable from the noun phrase", line)

    if not punchline:
        raise ParseError(f"schema {name}: empty punchline", line)
    if any(kinds[v] != "key" for v in punchline):
        raise ParseError(f"schema {name}: punchline may only use key variables", line)
    chars = [v for v, k in variables if k == "char"]
    if sorted(slots) != sorted(chars):
        raise ParseError(f"schema {name}: question_slots must list each characteristic variable once", line)


def parse_schemata(text: str, source: Optional[str] = None) -> dict[str, Schema]:
    schemata: dict[str, Schema] = {}
    current: Optional[dict] = None

    def finish():
        if current is None:
            return
        _check_schema(current["name"], current["vars"], current["links"], current["punchline"], current["slots"], current["line"])
        schemata[current["name"]] = Schema(
            name=current["name"],
            variables=tuple(current["vars"]),
            links=tuple(current["links"]),
            punchline=tuple(current["punchline"]),
            question_slots=tuple(current["slots"]),
            provenance=current["provenance"],
        )

    try:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            try:
                words = shlex.split(raw, comments=True)
            except ValueError as exc:
                raise ParseError(f"syntax error: {exc}", lineno) from None
            if not words:
                continue
            head, args = words[0], words[1:]
            if head == "schema":
                finish()
                if len(args) != 1:
                    raise ParseError("syntax error: expected 'schema <name>'", lineno)
                if args[0] in schemata:
                    raise ParseError(f"duplicate schema {args[0]!r}", lineno)
                current = {"name": args[0], "vars": [], "links": [], "punchline": [], "slots": [],
                           "provenance": "paper", "line": lineno}
                continue
            if current is None:
                raise ParseError(f"syntax error: {head!r} outside a schema record", lineno)
            if head == "var":
                if len(args) != 2 or args[1] not in ("key", "char"):
                    raise ParseError("syntax error: expected 'var <name> key|char'", lineno)
                if args[0] in dict(current["vars"]):
                    raise ParseError(f"variable {args[0]} declared twice", lineno)
                current["vars"].append((args[0], args[1]))
            elif head == "constituents":
                if len(args) < 4 or args[1] != "->":
                    raise ParseError("syntax error: expected 'constituents <np> -> <w1> <w2> ...'", lineno)
                current["links"].append(Link("constituents", (args[0], *args[2:])))
            elif head == "link":
                if len(args) != 3 or args[0] not in ("homophone", "identity"):
                    raise ParseError("syntax error: expected 'link homophone|identity <v> <v>'", lineno)
                if args[1] == args[2]:
                    raise ParseError("a link must join two different variables", lineno)
                current["links"].append(Link(args[0], (args[1], args[2])))
            elif head == "char":
                if len(args) != 3 or args[1] != "from":
                    raise ParseError("syntax error: expected 'char <charvar> from <keyvar>'", lineno)
                current["links"].append(Link("characteristic", (args[2], args[0])))
            elif head == "punchline":
                current["punchline"] = list(args)
            elif head == "question_slots":
                current["slots"] = list(args)
            elif head == "provenance":
                if len(args) != 1 or args[0] not in PROVENANCES:
                    raise ParseError("syntax error: expected 'provenance paper|extrapolated'", lineno)
                current["provenance"] = args[0]
            else:
                raise ParseError(f"syntax error: unknown keyword {head!r}", lineno)
        finish()
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, source) from None
    return schemata


# ---------------------------------------------------------------- instantiation


def _freeze(bindings: dict) -> tuple:
    return tuple(sorted(bindings.items()))


@dataclass(frozen=True)
class PartialInstantiation:
    """A schema with the noun phrase and all key variables bound."""

    schema: Schema
    bindings: tuple

    @property
    def as_dict(self) -> dict[str, Binding]:
        return dict(self.bindings)


@dataclass(frozen=True)
class Instantiation:
    schema: Schema
    bindings: tuple  # sorted (variable, binding) pairs
    relations: tuple  # sorted (characteristic variable, relation label) pairs
    template: str

    @property
    def as_dict(self) -> dict[str, Binding]:
        return dict(self.bindings)

    @property
    def relation_map(self) -> dict[str, str]:
        return dict(self.relations)

    def binding(self, var: str) -> Binding:
        return self.as_dict[var]

    @property
    def np(self) -> str:
        return self.binding(self.schema.np_var)[0]

    def punchline_lexemes(self) -> tuple[str, ...]:
        out: list[str] = []
        for var in self.schema.punchline:
            out.extend(self.binding(var))
        return tuple(out)

    def punchline_tokens(self, lexicon: Lexicon) -> tuple[str, ...]:
        tokens: list[str] = []
        for lexeme in self.punchline_lexemes():
            tokens.extend(lexicon.written(lexeme))
        return tuple(tokens)


def _propagate(bindings: dict, links: list[Link], base: HomophoneBase) -> list[dict]:
    for link in links:
        a, b = link.endpoints
        if (a in bindings) == (b in bindings):
            continue
        known, free = (a, b) if a in bindings else (b, a)
        if link.kind == "identity":
            options = [bindings[known]]
        else:
            options = [(other,) for other, _kind in homophones_of(bindings[known][0], base)]
        results = []
        for option in options:
            results.extend(_propagate({**bindings, free: option}, links, base))
        return results

    for link in links:
        a, b = link.endpoints
        if link.kind == "identity" and bindings[a] != bindings[b]:
            return []
        if link.kind == "homophone" and base.kind_of(bindings[a][0], bindings[b][0]) is None:
            return []
    return [bindings]


def fit_np(schema: Schema, np: str, lexicon: Lexicon, base: HomophoneBase) -> list[PartialInstantiation]:
    """Bind the noun phrase, its constituents and every key variable that
    follows from them; one result per choice of homophone."""
    entry = lexicon[np]
    if entry.category != "np":
        raise ValueError(f"{np} is not a noun phrase")
    words = schema.word_vars
    if entry.comp_lex is None or len(entry.comp_lex) != len(words):
        have = 0 if entry.comp_lex is None else len(entry.comp_lex)
        raise ValueError(f"arity mismatch: {np} has {have} constituents, schema {schema.name} expects {len(words)}")

    bindings = {schema.np_var: (np,)}
    for var, lexeme in zip(words, entry.comp_lex):
        if var in bindings and bindings[var] != (lexeme,):
            return []
        bindings[var] = (lexeme,)
    links = schema.links_of("homophone", "identity")
    return [PartialInstantiation(schema, _freeze(b)) for b in _propagate(bindings, links, base)]


def fits(schema: Schema, np: str, lexicon: Lexicon) -> bool:
    comp = lexicon[np].comp_lex
    return comp is not None and len(comp) == len(schema.word_vars)


def specialize_and_complete(partial: PartialInstantiation, template: "Template", lexicon: Lexicon) -> list[Instantiation]:
    """Label each characteristic link with a relation the template allows and
    bind the characteristic variables to every value that relation reaches.
    """
    schema = partial.schema
    if not template.accepts(schema):
        raise TemplateMismatch(f"template {template.name} does not apply to schema {schema.name}")
    bound = partial.as_dict

    per_slot = []
    for var, spec in zip(schema.question_slots, template.slots):
        source = bound[schema.char_source(var)][0]
        options = [
            (rel, value)
            for rel in sorted(spec.allow)
            for value in relation_values(source, rel, lexicon)
        ]
        if not options:
            return []
        per_slot.append([(var, rel, value) for rel, value in options])

    results = []
    for combo in itertools.product(*per_slot):
        bindings = dict(bound)
        relations = {}
        for var, rel, value in combo:
            bindings[var] = value
            relations[var] = rel
        results.append(Instantiation(schema, _freeze(bindings), _freeze(relations), template.name))
    return results


def enumerate_instantiations(schema: Schema, template: "Template", lexicon: Lexicon,
                             base: HomophoneBase, np: Optional[str] = None) -> Iterator[Instantiation]:
    """All complete instantiations of one schema/template pairing, ordered by
    noun phrase, homophone choice, then relation label and value."""
    nps = [np] if np is not None else lexicon.noun_phrases()
    for phrase in nps:
        if not fits(schema, phrase, lexicon):
            continue
        for partial in fit_np(schema, phrase, lexicon, base):
            yield from specialize_and_complete(partial, template, lexicon)
