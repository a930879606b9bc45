"""The humour-independent lexicon.

Each lexeme has one entry holding syntactic slots (category, written form,
agreement information) and semantic slots that point at other lexemes or at
short chunks of near-surface text.  Entries are read from a block-record text
format::

    lexeme woolly_jumper
    category np
    written_form "woolly jumper"
    comp_lex woolly jumper_1
    vowel_start no
    countable yes
    class sweater
    inact_verb wear

Records are separated by blank lines; ``#`` starts a comment.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from punforge.errors import ParseError, Violation

CATEGORIES = ("np", "noun", "adj", "verb")

SEMANTIC_SLOTS = (
    "class",
    "spec_is",
    "is",
    "has",
    "act_verb",
    "act_obj",
    "inact_verb",
    "location",
    "used_to",
    "used_to_obj",
    "synonym",
    "describes_all",
)
CHUNK_SLOTS = frozenset({"has", "act_obj", "location", "used_to_obj"})
VERB_VALUED_SLOTS = frozenset({"act_verb", "inact_verb", "used_to"})

# Derived relations are computed from two or more plain slots.
DERIVED_RELATIONS = ("spec_is_class",)
RELATION_LABELS = SEMANTIC_SLOTS + DERIVED_RELATIONS

USED_WITH = {
    "category": frozenset(CATEGORIES),
    "written_form": frozenset(CATEGORIES),
    "vowel_start": frozenset({"np", "noun", "adj"}),
    "second": frozenset({"verb"}),
    "third": frozenset({"verb"}),
    "comp_lex": frozenset({"np"}),
    "countable": frozenset({"np", "noun"}),
    # editorial tag consulted only by the homophone lint
    "abstract": frozenset({"np", "noun", "adj"}),
    "synonym": frozenset({"np", "noun", "adj"}),
    "describes_all": frozenset({"noun", "adj"}),
}
for _slot in SEMANTIC_SLOTS:
    USED_WITH.setdefault(_slot, frozenset({"np", "noun"}))

SYNTACTIC_SLOTS = ("category", "written_form", "vowel_start", "countable", "comp_lex", "second", "third", "abstract")
BOOLEAN_SLOTS = frozenset({"vowel_start", "countable", "abstract"})

_ID_RE = re.compile(r"^[a-z0-9][a-z0-9_'\-]*$")
_TOKEN_RE = re.compile(r"^[a-z0-9][a-z0-9'\-]*$")


@dataclass(frozen=True)
class Chunk:
    """A fragment of near-surface text: lowercase word tokens."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @classmethod
    def of(cls, text: str) -> "Chunk":
        return cls(tuple(text.split()))

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return " ".join(self.tokens)


# A characteristic variable binds either a sequence of lexeme ids or a chunk.
Binding = Union[tuple, Chunk]


def chunk_problem(tokens: Sequence[str]) -> Optional[str]:
    if not tokens:
        return "empty text"
    for tok in tokens:
        if not _TOKEN_RE.match(tok):
            return f"bad token {tok!r} (lowercase words only)"
    return None


def is_lexeme_id(text: str) -> bool:
    return bool(_ID_RE.match(text))


@dataclass(frozen=True)
class LexicalEntry:
    lexeme: str
    category: str
    written_form: Chunk
    vowel_start: Optional[bool] = None
    countable: Optional[bool] = None
    comp_lex: Optional[tuple[str, ...]] = None
    second: Optional[Chunk] = None
    third: Optional[Chunk] = None
    abstract: Optional[bool] = None
    # slot name -> values in file order; absent slots are not stored
    semantic: dict = field(default_factory=dict)

    def values(self, slot: str) -> tuple:
        return tuple(self.semantic.get(slot, ()))

    def populated_slots(self) -> list[str]:
        slots = [s for s in SYNTACTIC_SLOTS if getattr(self, s) is not None]
        return slots + [s for s in SEMANTIC_SLOTS if self.semantic.get(s)]


class Lexicon:
    """Immutable mapping from lexeme id to entry, plus an index of the
    written forms of all noun-phrase entries."""

    def __init__(self, entries: Iterable[LexicalEntry] = ()):
        self._entries: dict[str, LexicalEntry] = {}
        for entry in entries:
            if entry.lexeme in self._entries:
                raise ValueError(f"duplicate lexeme {entry.lexeme!r}")
            self._entries[entry.lexeme] = entry
        self.np_index = frozenset(
            e.written_form.tokens for e in self._entries.values() if e.category == "np"
        )

    def __contains__(self, lexeme) -> bool:
        return lexeme in self._entries

    def __getitem__(self, lexeme: str) -> LexicalEntry:
        try:
            return self._entries[lexeme]
        except KeyError:
            raise KeyError(f"unknown lexeme {lexeme!r}") from None

    def get(self, lexeme: str) -> Optional[LexicalEntry]:
        return self._entries.get(lexeme)

    def __iter__(self) -> Iterator[LexicalEntry]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self._entries == other._entries

    @property
    def entries(self) -> dict[str, LexicalEntry]:
        return dict(self._entries)

    def ids(self) -> list[str]:
        return sorted(self._entries)

    def noun_phrases(self) -> list[str]:
        return sorted(k for k, e in self._entries.items() if e.category == "np")

    def written(self, lexeme: str) -> tuple[str, ...]:
        return self[lexeme].written_form.tokens


# ---------------------------------------------------------------- parsing


def _records(text: str) -> Iterator[list[tuple[int, list[str]]]]:
    record: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            if record:
                yield record
                record = []
            continue
        try:
            words = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(f"syntax error: {exc}", lineno) from None
        if not words:
            continue
        if words[0] == "lexeme" and record:
            yield record
            record = []
        record.append((lineno, words))
    if record:
        yield record


def _parse_bool(value: str, slot: str, lineno: int) -> bool:
    if value == "yes":
        return True
    if value == "no":
        return False
    raise ParseError(f"slot {slot} takes yes/no, got {value!r}", lineno)


def _parse_record(lines: list[tuple[int, list[str]]]) -> tuple[LexicalEntry, dict[str, int]]:
    head_line, head = lines[0]
    if head[0] != "lexeme":
        raise ParseError(f"syntax error: record must start with 'lexeme <id>', got {head[0]!r}", head_line)
    if len(head) != 2 or not is_lexeme_id(head[1]):
        raise ParseError("syntax error: expected 'lexeme <id>'", head_line)
    lexeme = head[1]

    syntactic: dict = {}
    semantic: dict[str, list] = {}
    seen_at: dict[str, int] = {}
    for lineno, words in lines[1:]:
        slot, args = words[0], words[1:]
        if slot == "lexeme":
            raise ParseError("syntax error: nested lexeme line", lineno)
        if slot not in USED_WITH:
            raise ParseError(f"unknown slot name {slot!r} in entry {lexeme}", lineno)
        seen_at.setdefault(slot, lineno)
        if not args:
            raise ParseError(f"syntax error: slot {slot} has no value", lineno)

        if slot == "comp_lex":
            value = tuple(args)
            bad = [a for a in value if not is_lexeme_id(a)]
            if bad:
                raise ParseError(f"syntax error: bad lexeme id {bad[0]!r} in comp_lex", lineno)
        elif len(args) != 1:
            raise ParseError(f"syntax error: slot {slot} takes one value (quote text chunks)", lineno)
        elif slot in BOOLEAN_SLOTS:
            value = _parse_bool(args[0], slot, lineno)
        elif slot in CHUNK_SLOTS or slot in ("written_form", "second", "third"):
            value = Chunk.of(args[0])
            problem = chunk_problem(value.tokens)
            if problem:
                raise ParseError(f"syntax error in {slot}: {problem}", lineno)
        elif slot == "category":
            value = args[0]
        else:
            value = args[0]
            if not is_lexeme_id(value):
                raise ParseError(f"syntax error: slot {slot} takes a lexeme id, got {value!r}", lineno)

        if slot in SEMANTIC_SLOTS:
            semantic.setdefault(slot, []).append(value)
        elif slot in syntactic:
            raise ParseError(f"syntax error: slot {slot} given twice in entry {lexeme}", lineno)
        else:
            syntactic[slot] = value

    category = syntactic.get("category")
    if category is None:
        raise ParseError(f"entry {lexeme} has no category", head_line)
    if category not in CATEGORIES:
        raise ParseError(f"entry {lexeme}: unknown category {category!r}", seen_at["category"])
    if "written_form" not in syntactic:
        raise ParseError(f"entry {lexeme} has no written_form", head_line)
    for slot, lineno in seen_at.items():
        if category not in USED_WITH[slot]:
            raise ParseError(f"slot {slot} is not allowed for category {category} (entry {lexeme})", lineno)

    entry = LexicalEntry(
        lexeme=lexeme,
        category=category,
        written_form=syntactic["written_form"],
        vowel_start=syntactic.get("vowel_start"),
        countable=syntactic.get("countable"),
        comp_lex=syntactic.get("comp_lex"),
        second=syntactic.get("second"),
        third=syntactic.get("third"),
        abstract=syntactic.get("abstract"),
        semantic={k: tuple(v) for k, v in semantic.items()},
    )
    return entry, {**seen_at, "lexeme": head_line}


def parse_lexicon(text: str, source: Optional[str] = None) -> Lexicon:
    """Parse a lexicon document and check referential closure.

    Raises ParseError on syntax errors, unknown slots, slot/category
    mismatches, duplicate lexemes and references to lexemes that have no
    entry of their own.
    """
    entries: dict[str, LexicalEntry] = {}
    where: dict[str, dict[str, int]] = {}
    try:
        for record in _records(text):
            entry, lines = _parse_record(record)
            if entry.lexeme in entries:
                raise ParseError(f"duplicate lexeme {entry.lexeme!r}", lines["lexeme"])
            entries[entry.lexeme] = entry
            where[entry.lexeme] = lines

        for entry in entries.values():
            for slot, ref in _references(entry):
                if ref not in entries:
                    raise ParseError(
                        f"dangling reference: {entry.lexeme}.{slot} names {ref!r}, which has no entry",
                        where[entry.lexeme].get(slot),
                    )
    except ParseError as exc:
        if source is not None and exc.source is None:
            raise ParseError(exc.message, exc.line, source) from None
        raise
    return Lexicon(entries.values())


def _references(entry: LexicalEntry) -> Iterator[tuple[str, str]]:
    for ref in entry.comp_lex or ():
        yield "comp_lex", ref
    for slot in SEMANTIC_SLOTS:
        if slot in CHUNK_SLOTS:
            continue
        for value in entry.values(slot):
            if isinstance(value, str):
                yield slot, value


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def serialize_entry(entry: LexicalEntry) -> str:
    lines = [f"lexeme {entry.lexeme}", f"category {entry.category}", f'written_form "{entry.written_form}"']
    if entry.vowel_start is not None:
        lines.append(f"vowel_start {_yes_no(entry.vowel_start)}")
    if entry.countable is not None:
        lines.append(f"countable {_yes_no(entry.countable)}")
    if entry.comp_lex is not None:
        lines.append("comp_lex " + " ".join(entry.comp_lex))
    if entry.second is not None:
        lines.append(f'second "{entry.second}"')
    if entry.third is not None:
        lines.append(f'third "{entry.third}"')
    if entry.abstract is not None:
        lines.append(f"abstract {_yes_no(entry.abstract)}")
    for slot in SEMANTIC_SLOTS:
        for value in entry.values(slot):
            lines.append(f'{slot} "{value}"' if isinstance(value, Chunk) else f"{slot} {value}")
    return "\n".join(lines)


def serialize_lexicon(lexicon: Lexicon) -> str:
    return "\n\n".join(serialize_entry(e) for e in lexicon) + ("\n" if len(lexicon) else "")


# ---------------------------------------------------------------- checks


def validate_entry(entry: LexicalEntry, lexicon: Lexicon) -> list[Violation]:
    """Check an entry against the slot table and the lexicon it lives in.

    Errors break an invariant; warnings are curation advice (an entry with
    only warnings is still usable).
    """
    out: list[Violation] = []
    lex = entry.lexeme

    def error(msg, slot=None):
        out.append(Violation(lex, msg, "error", slot))

    def warn(msg, slot=None):
        out.append(Violation(lex, msg, "warning", slot))

    if entry.category not in CATEGORIES:
        error(f"unknown category {entry.category!r}", "category")
        return out
    if not entry.written_form.tokens or chunk_problem(entry.written_form.tokens):
        error("written_form must be non-empty lowercase text", "written_form")

    for slot in entry.populated_slots():
        if entry.category not in USED_WITH[slot]:
            error(f"slot {slot} is not used with category {entry.category}", slot)

    for slot in SEMANTIC_SLOTS:
        for value in entry.values(slot):
            if slot in CHUNK_SLOTS:
                if not isinstance(value, Chunk):
                    error(f"slot {slot} holds text, not a lexeme", slot)
                continue
            if not isinstance(value, str):
                error(f"slot {slot} holds a lexeme id, not text", slot)
            elif value not in lexicon:
                error(f"references unknown lexeme {value!r}", slot)
            elif slot in VERB_VALUED_SLOTS and lexicon[value].category != "verb":
                warn(f"{value} is not a verb", slot)

    if entry.category == "np":
        if entry.comp_lex is None:
            error("noun phrase needs comp_lex", "comp_lex")
        elif len(entry.comp_lex) < 2:
            error("comp_lex needs at least two lexemes", "comp_lex")
        else:
            for ref in entry.comp_lex:
                if ref not in lexicon:
                    error(f"references unknown lexeme {ref!r}", "comp_lex")
        if entry.countable is None:
            error("noun phrase needs countable", "countable")
        if entry.vowel_start is None:
            error("noun phrase needs vowel_start", "vowel_start")
    elif entry.category in ("noun", "adj") and entry.vowel_start is None:
        warn("no vowel_start; a determiner cannot be chosen", "vowel_start")

    if entry.category == "verb" and (entry.second is None or entry.third is None):
        warn("verb lacks second/third person forms", "second" if entry.second is None else "third")

    for other in entry.values("synonym"):
        target = lexicon.get(other) if isinstance(other, str) else None
        if target is None:
            continue
        if lex not in target.values("synonym"):
            error(f"synonym {other} does not list {lex} back", "synonym")
        if target.category != entry.category:
            warn(f"synonym {other} has category {target.category}", "synonym")
    return out


def validate_lexicon(lexicon: Lexicon) -> list[Violation]:
    out: list[Violation] = []
    for entry in lexicon:
        out.extend(validate_entry(entry, lexicon))
    return out


def relation_values(lexeme: str, relation: str, lexicon: Lexicon) -> list:
    """Values a characteristic link labelled ``relation`` can reach from
    ``lexeme``.

    Lexeme-valued slots give one-element id tuples, text slots give Chunks,
    and ``spec_is_class`` pairs every spec_is value with every class value.
    """
    if relation not in RELATION_LABELS:
        raise ValueError(f"unknown relation label {relation!r}")
    entry = lexicon[lexeme]
    if relation == "spec_is_class":
        return [(s, c) for s in entry.values("spec_is") for c in entry.values("class")]
    if relation in CHUNK_SLOTS:
        return list(entry.values(relation))
    return [(v,) for v in entry.values(relation)]


def is_genuine_np(tokens: Union[Chunk, Sequence[str]], lexicon: Lexicon) -> bool:
    return tuple(tokens) in lexicon.np_index
