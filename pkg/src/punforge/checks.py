"""Post-production checks and ranking heuristics.

Two checks reject a candidate outright: accidental identity between the
lexemes of an instantiation, and a punchline that is simply a genuine noun
phrase.  The heuristic score only orders the survivors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from punforge.lexicon import Chunk, Lexicon, is_genuine_np

if TYPE_CHECKING:
    from punforge.schemata import Instantiation

FUNNY_LETTERS = frozenset("kqvwz")


@dataclass(frozen=True)
class CheckVerdict:
    identity_ok: bool
    sensible_ok: bool
    reasons: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.identity_ok and self.sensible_ok


def _identity_pairs(inst: "Instantiation") -> set[frozenset]:
    """Pairs of variables joined, directly or transitively, by identity links."""
    groups = {v: {v} for v, _ in inst.schema.variables}
    for link in inst.schema.links_of("identity"):
        a, b = link.endpoints
        merged = groups[a] | groups[b]
        for v in merged:
            groups[v] = merged
    return {frozenset((a, b)) for g in groups.values() for a in g for b in g if a != b}


def identity_clashes(inst: "Instantiation") -> list[tuple[str, str]]:
    allowed = _identity_pairs(inst)
    items = [(var, b) for var, b in inst.bindings if not isinstance(b, Chunk)]
    clashes = []
    for i, (va, ba) in enumerate(items):
        for vb, bb in items[i + 1:]:
            if ba == bb and frozenset((va, vb)) not in allowed:
                clashes.append((va, vb))
    return clashes


def check_identity(inst: "Instantiation") -> bool:
    """True unless two variables bind the same lexeme(s) without an identity
    link between them."""
    return not identity_clashes(inst)


def check_sensible(inst: "Instantiation", lexicon: Lexicon) -> bool:
    """True unless the punchline lexemes make up a genuine noun phrase.

    Matching text alone is not enough to reject: a phrase rebuilt from an
    alternate meaning reads the same as the real phrase but is built from
    different lexemes.
    """
    tokens = inst.punchline_tokens(lexicon)
    if not is_genuine_np(tokens, lexicon):
        return True
    lexemes = inst.punchline_lexemes()
    for entry in lexicon:
        if entry.category == "np" and entry.written_form.tokens == tokens and entry.comp_lex == lexemes:
            return False
    return True


def run_checks(inst: "Instantiation", lexicon: Lexicon) -> CheckVerdict:
    reasons = []
    clashes = identity_clashes(inst)
    for a, b in clashes:
        shown = "/".join(inst.binding(a))
        reasons.append(f"identity: {a} and {b} both bind {shown} with no identity link")
    sensible = check_sensible(inst, lexicon)
    if not sensible:
        phrase = " ".join(inst.punchline_tokens(lexicon))
        reasons.append(f"sensible: punchline '{phrase}' is a genuine noun phrase built from the same lexemes")
    return CheckVerdict(not clashes, sensible, tuple(reasons))


# ---------------------------------------------------------------- scoring


@dataclass(frozen=True)
class ScoreWeights:
    alliteration: float = 1.0
    rhyme: float = 1.0
    funny_letters: float = 0.5
    question_length: float = 0.25
    min_question_words: int = 6
    max_question_words: int = 14

    def __post_init__(self):
        for name in ("alliteration", "rhyme", "funny_letters", "question_length"):
            if getattr(self, name) < 0:
                raise ValueError(f"weight {name} must be non-negative")
        if self.min_question_words > self.max_question_words:
            raise ValueError("min_question_words exceeds max_question_words")


@dataclass(frozen=True)
class ScoreRecord:
    question_length_penalty: int
    alliteration: float
    rhyme: bool
    funny_letters: int
    total: float = field(default=0.0)


def _words(tokens: Sequence[str]) -> list[str]:
    return [t for t in tokens if t not in ("?", ".", ",", "!")]


def alliteration(words: Sequence[str]) -> float:
    if not words:
        return 0.0
    initials = Counter(w[0] for w in words)
    return max(initials.values()) / len(words)


def rhymes(words: Sequence[str]) -> bool:
    if len(words) < 2:
        return False
    a, b = words[-2], words[-1]
    return len(a) >= 2 and len(b) >= 2 and a[-2:] == b[-2:]


def funny_letter_count(words: Sequence[str]) -> int:
    return sum(1 for w in words for ch in w if ch in FUNNY_LETTERS)


def score_parts(question: Sequence[str], punchline: Sequence[str], weights: ScoreWeights) -> ScoreRecord:
    n = len(_words(question))
    penalty = max(0, n - weights.max_question_words) + max(0, weights.min_question_words - n)
    words = _words(punchline)
    allit = alliteration(words)
    rhyme = rhymes(words)
    funny = funny_letter_count(words)
    total = (
        weights.alliteration * allit
        + weights.rhyme * (1 if rhyme else 0)
        + weights.funny_letters * funny
        - weights.question_length * penalty
    )
    return ScoreRecord(penalty, allit, rhyme, funny, total)


def score(riddle, weights: ScoreWeights = ScoreWeights()) -> ScoreRecord:
    """Heuristic quality of a realized riddle.  The punchline is the answer
    phrase without its determiner and full stop."""
    return score_parts(riddle.nsf.question, riddle.punchline, weights)


def rank(riddles: list) -> list:
    """Stable sort by descending total; equal totals keep generation order."""
    return sorted(riddles, key=lambda r: -r.scores.total)
