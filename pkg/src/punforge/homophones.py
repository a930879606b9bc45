"""Pairs of phonologically identical lexemes.

Two kinds are kept apart in the data although generation treats them alike:
homonyms (different spelling, ``serial``/``cereal``) and alternate meanings
(same spelling, ``jumper_1``/``jumper_2``).  File format, one pair per line::

    pair alternate jumper_1 jumper_2
    pair homonym serial cereal
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass
from typing import Iterable, Optional

from punforge.errors import ParseError, Violation
from punforge.lexicon import SEMANTIC_SLOTS, Lexicon

KINDS = ("homonym", "alternate")


@dataclass(frozen=True)
class HomophonePair:
    a: str
    b: str
    kind: str

    def key(self) -> frozenset:
        return frozenset((self.a, self.b))


class HomophoneBase:
    def __init__(self, pairs: Iterable[HomophonePair] = ()):
        self.pairs: tuple[HomophonePair, ...] = ()
        index: dict[str, list[tuple[str, str]]] = {}
        seen: set[frozenset] = set()
        collected = []
        for pair in pairs:
            if pair.a == pair.b:
                raise ValueError(f"{pair.a} cannot be its own homophone")
            if pair.key() in seen:
                raise ValueError(f"pair {pair.a}/{pair.b} listed twice")
            seen.add(pair.key())
            collected.append(pair)
            index.setdefault(pair.a, []).append((pair.b, pair.kind))
            index.setdefault(pair.b, []).append((pair.a, pair.kind))
        self.pairs = tuple(collected)
        self.index = {k: sorted(v) for k, v in index.items()}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def kind_of(self, a: str, b: str) -> Optional[str]:
        for other, kind in self.index.get(a, ()):
            if other == b:
                return kind
        return None


def parse_homophone_base(text: str, lexicon: Lexicon, source: Optional[str] = None) -> HomophoneBase:
    pairs: list[HomophonePair] = []
    seen: dict[frozenset, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        try:
            words = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(f"syntax error: {exc}", lineno, source) from None
        if not words:
            continue
        if words[0] != "pair" or len(words) != 4:
            raise ParseError("syntax error: expected 'pair <homonym|alternate> <lexeme> <lexeme>'", lineno, source)
        _, kind, a, b = words
        if kind not in KINDS:
            raise ParseError(f"unknown pair kind {kind!r}", lineno, source)
        for lexeme in (a, b):
            if lexeme not in lexicon:
                raise ParseError(f"unknown lexeme {lexeme!r}", lineno, source)
        if a == b:
            raise ParseError(f"{a} paired with itself", lineno, source)
        same_spelling = lexicon.written(a) == lexicon.written(b)
        if kind == "homonym" and same_spelling:
            raise ParseError(f"homonym pair {a}/{b} has identical written forms; use 'alternate'", lineno, source)
        if kind == "alternate" and not same_spelling:
            raise ParseError(f"alternate pair {a}/{b} has different written forms; use 'homonym'", lineno, source)
        pair = HomophonePair(a, b, kind)
        if pair.key() in seen:
            raise ParseError(f"duplicate pair {a}/{b} (first on line {seen[pair.key()]})", lineno, source)
        seen[pair.key()] = lineno
        pairs.append(pair)
    return HomophoneBase(pairs)


def serialize_homophone_base(base: HomophoneBase) -> str:
    return "".join(f"pair {p.kind} {p.a} {p.b}\n" for p in base)


def homophones_of(lexeme: str, base: HomophoneBase) -> list[tuple[str, str]]:
    return list(base.index.get(lexeme, ()))


def _shared_semantics(a, b) -> list[str]:
    shared = []
    for slot in SEMANTIC_SLOTS:
        common = set(a.values(slot)) & set(b.values(slot))
        if common:
            shown = ", ".join(sorted(str(v) for v in common))
            shared.append(f"{slot}={shown}")
    return shared


def lint_pair(pair: HomophonePair, lexicon: Lexicon) -> list[Violation]:
    """Curation rules for the homophone list.

    Only the "completely different" rule for alternate meanings is an error;
    the rest are advice about pairs that tend to make weak jokes.
    """
    subject = f"{pair.a}/{pair.b}"
    out: list[Violation] = []
    a, b = lexicon[pair.a], lexicon[pair.b]

    if any(e.category not in ("noun", "adj") for e in (a, b)):
        cats = f"{a.category}/{b.category}"
        out.append(Violation(subject, f"members should be nouns or adjectives, got {cats}", "warning"))
    abstract = [e.lexeme for e in (a, b) if e.abstract]
    if abstract:
        out.append(Violation(subject, f"abstract member(s): {', '.join(abstract)}", "warning"))

    shared = _shared_semantics(a, b)
    if pair.kind == "alternate" and shared:
        out.append(Violation(subject, "alternate meanings must have completely different entries; shared " + "; ".join(shared)))
    if pair.kind == "homonym" and a.category == b.category and a.semantic == b.semantic:
        out.append(Violation(subject, "entries are identical (spelling variants are not homonyms)", "warning"))
    return out


def lint_base(base: HomophoneBase, lexicon: Lexicon) -> list[Violation]:
    out: list[Violation] = []
    for pair in base:
        out.extend(lint_pair(pair, lexicon))
    return out
