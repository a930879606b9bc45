"""Aggregate judges' ratings into per-aspect tables and simulate trimming.

Ratings file, one joke per line::

    j001 woolly syn_syn serial_killer 3,2

Scores are integers 0..5, one per judge.  A joke's score is the mean over its
judges; a group's score is the mean over its jokes, so every joke weighs the
same whatever its number of judges.
"""

from __future__ import annotations

import shlex
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from punforge.errors import ParseError

GROUPINGS = ("schema", "template", "pair", "phrase")


@dataclass(frozen=True)
class RatingRecord:
    joke_id: str
    schema: str
    template: str
    phrase: str
    scores: tuple[int, ...]

    def __post_init__(self):
        if not self.scores:
            raise ValueError(f"{self.joke_id}: no scores")
        for s in self.scores:
            if not isinstance(s, int) or not 0 <= s <= 5:
                raise ValueError(f"{self.joke_id}: score {s!r} outside 0..5")

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(self.scores), len(self.scores))

    def key(self, grouping: str) -> str:
        if grouping == "pair":
            return f"{self.schema} + {self.template}"
        if grouping not in GROUPINGS:
            raise ValueError(f"unknown grouping {grouping!r}")
        return getattr(self, grouping)


def parse_ratings(text: str, source: Optional[str] = None) -> list[RatingRecord]:
    records = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = shlex.split(raw, comments=True)
        if not words:
            continue
        if len(words) != 5:
            raise ParseError("expected '<joke_id> <schema> <template> <phrase> <score>[,<score>...]'", lineno, source)
        jid, schema, template, phrase, scores = words
        if jid in seen:
            raise ParseError(f"duplicate joke id {jid!r}", lineno, source)
        seen.add(jid)
        try:
            values = tuple(int(s) for s in scores.split(","))
            records.append(RatingRecord(jid, schema, template, phrase, values))
        except ValueError as exc:
            raise ParseError(f"bad scores {scores!r}: {exc}", lineno, source) from None
    return records


def round1(x: Fraction) -> Decimal:
    """One decimal place, halves rounded up."""
    return (Decimal(x.numerator) / Decimal(x.denominator)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def mean_of_jokes(records: Sequence[RatingRecord]) -> Optional[Fraction]:
    if not records:
        return None
    return sum((r.mean for r in records), Fraction(0)) / len(records)


@dataclass(frozen=True)
class ReportRow:
    key: str
    joke_count: int
    mean: Optional[Fraction]

    @property
    def rounded(self) -> Decimal:
        return round1(self.mean) if self.mean is not None else Decimal(0)


@dataclass(frozen=True)
class ReportTable:
    grouping: str
    rows: tuple[ReportRow, ...]
    total: ReportRow = field(default=ReportRow("Total", 0, None))

    def row(self, key: str) -> ReportRow:
        for r in self.rows:
            if r.key == key:
                return r
        raise KeyError(key)

    def format(self) -> str:
        """Aligned columns: aspect, number of jokes, average score."""
        header = ("Aspect", "Number of Jokes", "Average Score")
        body = [(r.key, str(r.joke_count), str(r.rounded)) for r in (*self.rows, self.total)]
        widths = [max(len(row[i]) for row in (header, *body)) for i in range(3)]
        lines = []
        for i, row in enumerate((header, *body)):
            if i == len(body):
                lines.append("-" * (sum(widths) + 4))
            lines.append(f"{row[0]:<{widths[0]}}  {row[1]:>{widths[1]}}  {row[2]:>{widths[2]}}".rstrip())
        lines.insert(1, "=" * (sum(widths) + 4))
        return "\n".join(lines) + "\n"


def aggregate(records: Iterable[RatingRecord], grouping: str, keys: Optional[Sequence[str]] = None) -> ReportTable:
    """Group by ``grouping``.  ``keys`` fixes the row order and adds rows for
    aspects that got no jokes; otherwise rows come out sorted."""
    if grouping not in GROUPINGS:
        raise ValueError(f"unknown grouping {grouping!r}; choose from {', '.join(GROUPINGS)}")
    records = list(records)
    groups: dict[str, list[RatingRecord]] = defaultdict(list)
    for r in records:
        groups[r.key(grouping)].append(r)
    order = list(keys) if keys is not None else sorted(groups)
    order += [k for k in sorted(groups) if k not in order]
    if not records and keys is None:
        return ReportTable(grouping, ())
    rows = tuple(ReportRow(k, len(groups.get(k, ())), mean_of_jokes(groups.get(k, ()))) for k in order)
    return ReportTable(grouping, rows, ReportRow("Total", len(records), mean_of_jokes(records)))


# ---------------------------------------------------------------- trimming


@dataclass(frozen=True)
class TrimRules:
    schemata: frozenset = frozenset()
    templates: frozenset = frozenset()
    pairs: frozenset = frozenset()  # (schema, template) tuples

    def drops(self, r: RatingRecord) -> bool:
        return r.schema in self.schemata or r.template in self.templates or (r.schema, r.template) in self.pairs

    def check(self, schemata: Iterable[str], templates: Iterable[str]) -> None:
        schemata, templates = set(schemata), set(templates)
        for s in sorted(self.schemata | {p[0] for p in self.pairs}):
            if s not in schemata:
                raise ValueError(f"trim rules name unknown schema {s!r}")
        for t in sorted(self.templates | {p[1] for p in self.pairs}):
            if t not in templates:
                raise ValueError(f"trim rules name unknown template {t!r}")


def parse_trim_rules(text: str, source: Optional[str] = None) -> TrimRules:
    """Lines of ``schema <name>``, ``template <name>`` or ``pair <schema> <template>``."""
    schemata, templates, pairs = set(), set(), set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = shlex.split(raw, comments=True)
        if not words:
            continue
        if words[0] == "schema" and len(words) == 2:
            schemata.add(words[1])
        elif words[0] == "template" and len(words) == 2:
            templates.add(words[1])
        elif words[0] == "pair" and len(words) == 3:
            pairs.add((words[1], words[2]))
        else:
            raise ParseError("expected 'schema <name>', 'template <name>' or 'pair <schema> <template>'", lineno, source)
    return TrimRules(frozenset(schemata), frozenset(templates), frozenset(pairs))


@dataclass(frozen=True)
class TrimResult:
    survivors: tuple[RatingRecord, ...]
    before: Optional[Fraction]
    after: Optional[Fraction]  # None when nothing survives


def apply_trim(records: Sequence[RatingRecord], rules: TrimRules,
               schemata: Optional[Iterable[str]] = None, templates: Optional[Iterable[str]] = None) -> TrimResult:
    """Drop every record a rule matches.  Names are checked against the
    given schema and template names, or against those seen in the records."""
    records = list(records)
    rules.check(schemata if schemata is not None else {r.schema for r in records},
                templates if templates is not None else {r.template for r in records})
    survivors = tuple(r for r in records if not rules.drops(r))
    return TrimResult(survivors, mean_of_jokes(records), mean_of_jokes(survivors))
