"""Templates turn an instantiated schema into a question/answer pair.

A template names the relations each characteristic link may take and holds a
fixed question skeleton with numbered blanks.  Each blank is filled with a
fragment realized from the bound lexemes according to the slot's role::

    template syn_verb
    schemata elan jumper lotus woolly double
    slot 1 allow spec_is_class|describes_all|synonym
    slot 1 role entity
    slot 2 allow act_verb
    slot 2 role verb_can
    question "what do you call {1} {2} ?"
    answer "{punchline}"

Roles:

``entity``    noun group with a determiner chosen by countability and vowel_start
``bare``      written forms only, no determiner
``modifier``  adjective folded into the entity blank that directly follows
``verb_can``  ``that can`` + infinitive
``verb_you``  ``you`` + second-person form
``chunk``     a text chunk passed through unchanged
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from punforge.errors import ParseError, RealizationError
from punforge.lexicon import RELATION_LABELS, Chunk, Lexicon

if TYPE_CHECKING:
    from punforge.schemata import Instantiation, Schema

ROLES = ("entity", "bare", "modifier", "verb_can", "verb_you", "chunk")
PUNCTUATION = ("?", ".", ",", "!")
PUNCHLINE = "{punchline}"

_SLOT_RE = re.compile(r"^\{(\d+)\}$")
_WORD_RE = re.compile(r"^[a-z0-9][a-z0-9'\-]*$")


@dataclass(frozen=True)
class SlotSpec:
    allow: tuple[str, ...]
    role: str


@dataclass(frozen=True)
class Template:
    name: str
    schemata: frozenset
    slots: tuple[SlotSpec, ...]
    question: tuple[str, ...]
    answer: tuple[str, ...] = (PUNCHLINE,)
    provenance: str = "paper"

    def accepts(self, schema: "Schema") -> bool:
        return schema.name in self.schemata and len(schema.question_slots) == len(self.slots)


@dataclass(frozen=True)
class NearSurfaceForm:
    question: tuple[str, ...]
    answer: tuple[str, ...]

    def __post_init__(self):
        for part in (self.question, self.answer):
            if any(tok != tok.lower() for tok in part):
                raise ValueError("near-surface tokens are lowercase")
        if not self.question or self.question[-1] != "?":
            raise ValueError("question must end with '?'")
        if not self.answer or self.answer[-1] != ".":
            raise ValueError("answer must end with '.'")


def slot_number(token: str) -> Optional[int]:
    m = _SLOT_RE.match(token)
    return int(m.group(1)) if m else None


# ---------------------------------------------------------------- parsing


def _check_template(t: dict, line: int) -> Template:
    name = t["name"]
    if not t["schemata"]:
        raise ParseError(f"template {name}: no schemata listed", line)
    if t["question"] is None:
        raise ParseError(f"template {name}: no question skeleton", line)
    numbers = sorted(t["allow"].keys() | t["role"].keys())
    if numbers != list(range(1, len(numbers) + 1)):
        raise ParseError(f"template {name}: slots must be numbered 1..n", line)
    for n in numbers:
        if n not in t["allow"] or n not in t["role"]:
            raise ParseError(f"template {name}: slot {n} needs both 'allow' and 'role'", line)

    question = t["question"]
    used = [slot_number(tok) for tok in question if slot_number(tok) is not None]
    if sorted(used) != numbers:
        raise ParseError(
            f"template {name}: question has {len(used)} placeholder(s) for {len(numbers)} slot(s)", line)
    for tok in question:
        if slot_number(tok) is None and tok not in PUNCTUATION and not _WORD_RE.match(tok):
            raise ParseError(f"template {name}: bad question token {tok!r}", line)
    if question[-1] != "?":
        raise ParseError(f"template {name}: question must end with '?'", line)
    for i, tok in enumerate(question):
        n = slot_number(tok)
        if n is not None and t["role"][n] == "modifier":
            nxt = slot_number(question[i + 1]) if i + 1 < len(question) else None
            if nxt is None or t["role"][nxt] != "entity":
                raise ParseError(f"template {name}: modifier slot {n} must directly precede an entity slot", line)

    answer = t["answer"] or (PUNCHLINE,)
    if answer.count(PUNCHLINE) != 1:
        raise ParseError(f"template {name}: answer needs exactly one {PUNCHLINE}", line)

    slots = tuple(SlotSpec(t["allow"][n], t["role"][n]) for n in numbers)
    return Template(name, frozenset(t["schemata"]), slots, question, answer, t["provenance"])


def parse_templates(text: str, source: Optional[str] = None) -> dict[str, Template]:
    templates: dict[str, Template] = {}
    current: Optional[dict] = None

    def finish():
        if current is not None:
            templates[current["name"]] = _check_template(current, current["line"])

    try:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            try:
                words = shlex.split(raw, comments=True)
            except ValueError as exc:
                raise ParseError(f"syntax error: {exc}", lineno) from None
            if not words:
                continue
            head, args = words[0], words[1:]
            if head == "template":
                finish()
                if len(args) != 1:
                    raise ParseError("syntax error: expected 'template <name>'", lineno)
                if args[0] in templates:
                    raise ParseError(f"duplicate template {args[0]!r}", lineno)
                current = {"name": args[0], "schemata": [], "allow": {}, "role": {},
                           "question": None, "answer": None, "provenance": "paper", "line": lineno}
                continue
            if current is None:
                raise ParseError(f"syntax error: {head!r} outside a template record", lineno)
            if head == "schemata":
                current["schemata"].extend(args)
            elif head == "slot":
                if len(args) != 3 or not args[0].isdigit() or args[1] not in ("allow", "role"):
                    raise ParseError("syntax error: expected 'slot <n> allow <rel>|...' or 'slot <n> role <role>'", lineno)
                n = int(args[0])
                if args[1] == "allow":
                    rels = tuple(args[2].split("|"))
                    bad = [r for r in rels if r not in RELATION_LABELS]
                    if bad:
                        raise ParseError(f"unknown relation {bad[0]!r}", lineno)
                    current["allow"][n] = rels
                else:
                    if args[2] not in ROLES:
                        raise ParseError(f"unknown role {args[2]!r}", lineno)
                    current["role"][n] = args[2]
            elif head == "question":
                if len(args) != 1:
                    raise ParseError("syntax error: quote the question skeleton", lineno)
                current["question"] = tuple(args[0].split())
            elif head == "answer":
                if len(args) != 1:
                    raise ParseError("syntax error: quote the answer skeleton", lineno)
                current["answer"] = tuple(args[0].split())
            elif head == "provenance":
                if args not in (["paper"], ["extrapolated"]):
                    raise ParseError("syntax error: expected 'provenance paper|extrapolated'", lineno)
                current["provenance"] = args[0]
            else:
                raise ParseError(f"syntax error: unknown keyword {head!r}", lineno)
        finish()
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, source) from None
    return templates


# ---------------------------------------------------------------- realization


def _entries(binding, lexicon: Lexicon):
    if isinstance(binding, Chunk):
        raise RealizationError(f"text chunk {str(binding)!r} cannot stand in a lexeme slot")
    if not binding:
        raise RealizationError("empty binding")
    return [lexicon[lexeme] for lexeme in binding]


def _words(entries) -> list[str]:
    out: list[str] = []
    for e in entries:
        out.extend(e.written_form.tokens)
    return out


def determiner(first, head) -> list[str]:
    """``a``/``an``/nothing for a noun group starting with ``first`` and
    headed by ``head``."""
    if head.countable is None:
        raise RealizationError(f"{head.lexeme} has no countable value")
    if not head.countable:
        return []
    if first.vowel_start is None:
        raise RealizationError(f"{first.lexeme} has no vowel_start value")
    return ["an" if first.vowel_start else "a"]


def realize_fragment(binding, role: str, lexicon: Lexicon, modifier=None) -> list[str]:
    """Render one characteristic binding as near-surface tokens."""
    if role == "chunk":
        if not isinstance(binding, Chunk):
            raise RealizationError(f"{'/'.join(binding)} is a lexeme, the slot wants a text chunk")
        return list(binding.tokens)

    if role == "bare":
        if isinstance(binding, Chunk):
            return list(binding.tokens)
        return _words(_entries(binding, lexicon))

    entries = _entries(binding, lexicon)

    if role in ("verb_can", "verb_you"):
        if len(entries) != 1 or entries[0].category != "verb":
            raise RealizationError(f"{'/'.join(binding)} is not a single verb")
        verb = entries[0]
        if role == "verb_can":
            return ["that", "can", *verb.written_form.tokens]
        if verb.second is None:
            raise RealizationError(f"{verb.lexeme} has no second-person form")
        return ["you", *verb.second.tokens]

    if role == "modifier":
        if any(e.category != "adj" for e in entries):
            raise RealizationError(f"{'/'.join(binding)} is not an adjective")
        return _words(entries)

    if role != "entity":
        raise ValueError(f"unknown role {role!r}")
    head = entries[-1]
    if head.category not in ("noun", "np"):
        raise RealizationError(f"{head.lexeme} ({head.category}) cannot head a noun group")
    for e in entries[:-1]:
        if e.category not in ("adj", "noun"):
            raise RealizationError(f"{e.lexeme} ({e.category}) cannot pre-modify a noun")
    pre = []
    first = entries[0]
    if modifier is not None:
        mod_entries = _entries(modifier, lexicon)
        pre = realize_fragment(modifier, "modifier", lexicon)
        first = mod_entries[0]
    return determiner(first, head) + pre + _words(entries)


def answer_tokens(inst: "Instantiation", lexicon: Lexicon) -> list[str]:
    """Determiner plus the punchline phrase.

    The determiner agrees with the first substituted word and with the head's
    countability, falling back to the original noun phrase when the head
    says nothing.
    """
    lexemes = inst.punchline_lexemes()
    first, head = lexicon[lexemes[0]], lexicon[lexemes[-1]]
    if head.countable is None:
        head = lexicon[inst.np]
    return determiner(first, head) + list(inst.punchline_tokens(lexicon))


def fill(template: Template, inst: "Instantiation", lexicon: Lexicon) -> NearSurfaceForm:
    if inst.template != template.name:
        raise ValueError(f"instantiation was specialized for {inst.template}, not {template.name}")
    schema = inst.schema
    relations = inst.relation_map
    bindings = inst.as_dict
    for var, spec in zip(schema.question_slots, template.slots):
        if relations.get(var) not in spec.allow:
            raise ValueError(f"relation {relations.get(var)} for {var} not allowed by {template.name}")

    def slot_binding(n):
        return bindings[schema.question_slots[n - 1]]

    question: list[str] = []
    skeleton = template.question
    i = 0
    while i < len(skeleton):
        n = slot_number(skeleton[i])
        if n is None:
            question.append(skeleton[i])
            i += 1
            continue
        role = template.slots[n - 1].role
        if role == "modifier":
            m = slot_number(skeleton[i + 1])
            question.extend(realize_fragment(slot_binding(m), "entity", lexicon, modifier=slot_binding(n)))
            i += 2
            continue
        question.extend(realize_fragment(slot_binding(n), role, lexicon))
        i += 1

    answer: list[str] = []
    for tok in template.answer:
        answer.extend(answer_tokens(inst, lexicon) if tok == PUNCHLINE else [tok])
    if answer[-1] != ".":
        answer.append(".")
    return NearSurfaceForm(tuple(question), tuple(answer))


def _finish(tokens: tuple[str, ...]) -> str:
    text = ""
    for tok in tokens:
        if tok in PUNCTUATION or not text:
            text += tok
        else:
            text += " " + tok
    return text[:1].upper() + text[1:]


def to_surface(nsf: NearSurfaceForm) -> str:
    if not isinstance(nsf, NearSurfaceForm):
        raise TypeError("to_surface takes a NearSurfaceForm")
    return f"{_finish(nsf.question)} {_finish(nsf.answer)}"
