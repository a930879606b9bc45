"""End-to-end generation.

For every noun phrase (in id order), every schema it fits and every template
that applies to the schema: fit the phrase, bind the key lexemes, specialize
the characteristic links, realize the riddle and run the two rejection
checks.  Survivors are scored and ranked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from punforge.checks import CheckVerdict, ScoreRecord, ScoreWeights, rank, run_checks, score_parts
from punforge.errors import RealizationError, Violation
from punforge.homophones import HomophoneBase, lint_base, parse_homophone_base
from punforge.lexicon import Chunk, Lexicon, parse_lexicon, validate_lexicon
from punforge.schemata import Instantiation, enumerate_instantiations, parse_schemata
from punforge.templates import NearSurfaceForm, fill, parse_templates, to_surface


class KnowledgeBaseError(Exception):
    """Knowledge bases parsed but failed validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("\n".join(str(v) for v in violations))


def data_path(name: str) -> Path:
    return Path(str(resources.files("punforge") / "data" / name))


@dataclass(frozen=True)
class KnowledgeBase:
    lexicon: Lexicon
    homophones: HomophoneBase
    schemata: dict
    templates: dict

    @classmethod
    def load(cls, lexicon: Path, homophones: Path, schemata: Optional[Path] = None,
             templates: Optional[Path] = None) -> "KnowledgeBase":
        schemata = schemata or data_path("schemata.txt")
        templates = templates or data_path("templates.txt")
        lex = parse_lexicon(Path(lexicon).read_text(encoding="utf-8"), source=str(lexicon))
        base = parse_homophone_base(Path(homophones).read_text(encoding="utf-8"), lex, source=str(homophones))
        schem = parse_schemata(Path(schemata).read_text(encoding="utf-8"), source=str(schemata))
        temps = parse_templates(Path(templates).read_text(encoding="utf-8"), source=str(templates))
        kb = cls(lex, base, schem, temps)
        kb.check()
        return kb

    def violations(self) -> list[Violation]:
        out = validate_lexicon(self.lexicon) + lint_base(self.homophones, self.lexicon)
        for t in self.templates.values():
            for name in sorted(t.schemata):
                if name not in self.schemata:
                    out.append(Violation(t.name, f"names unknown schema {name!r}"))
        return out

    def check(self) -> None:
        errors = [v for v in self.violations() if v.is_error]
        if errors:
            raise KnowledgeBaseError(errors)


@dataclass
class GenerationConfig:
    np_filter: Optional[str] = None
    schema_filter: Optional[str] = None
    template_filter: Optional[str] = None
    seed: int = 0
    sample: bool = False
    max_riddles: Optional[int] = None
    score_threshold: Optional[float] = None
    weights: ScoreWeights = field(default_factory=ScoreWeights)

    def check(self, kb: KnowledgeBase) -> None:
        if self.np_filter is not None:
            if self.np_filter not in kb.lexicon or kb.lexicon[self.np_filter].category != "np":
                raise ValueError(f"no noun phrase {self.np_filter!r} in the lexicon")
        if self.schema_filter is not None and self.schema_filter not in kb.schemata:
            raise ValueError(f"no schema {self.schema_filter!r}")
        if self.template_filter is not None and self.template_filter not in kb.templates:
            raise ValueError(f"no template {self.template_filter!r}")
        if self.max_riddles is not None and self.max_riddles < 1:
            raise ValueError("max_riddles must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class Riddle:
    instantiation: Instantiation
    nsf: NearSurfaceForm
    surface: str
    verdict: CheckVerdict
    scores: ScoreRecord
    punchline: tuple[str, ...]
    order: int
    template_provenance: str = "paper"

    @property
    def provenance(self) -> str:
        if "extrapolated" in (self.instantiation.schema.provenance, self.template_provenance):
            return "extrapolated"
        return "paper"


@dataclass(frozen=True)
class Rejection:
    instantiation: Instantiation
    reasons: tuple[str, ...]
    surface: Optional[str] = None
    order: int = 0


@dataclass
class GenerationResult:
    riddles: list[Riddle]
    rejected: list[Rejection]


def _selected(names, wanted):
    return [n for n in sorted(names) if wanted is None or n == wanted]


def candidates(kb: KnowledgeBase, config: GenerationConfig):
    """Instantiations in generation order."""
    nps = [config.np_filter] if config.np_filter else kb.lexicon.noun_phrases()
    for np in nps:
        for sname in _selected(kb.schemata, config.schema_filter):
            schema = kb.schemata[sname]
            for tname in _selected(kb.templates, config.template_filter):
                template = kb.templates[tname]
                if not template.accepts(schema):
                    continue
                yield from enumerate_instantiations(schema, template, kb.lexicon, kb.homophones, np=np)


def realize(inst: Instantiation, kb: KnowledgeBase, weights: ScoreWeights, order: int):
    """A Riddle, or a Rejection naming why the candidate failed."""
    template = kb.templates[inst.template]
    try:
        nsf = fill(template, inst, kb.lexicon)
    except RealizationError as exc:
        return Rejection(inst, (f"unrealizable: {exc}",), None, order)
    surface = to_surface(nsf)
    verdict = run_checks(inst, kb.lexicon)
    if not verdict.passed:
        return Rejection(inst, verdict.reasons, surface, order)
    punchline = tuple(inst.punchline_tokens(kb.lexicon))
    scores = score_parts(nsf.question, punchline, weights)
    return Riddle(inst, nsf, surface, verdict, scores, punchline, order, template.provenance)


def generate_all(kb: KnowledgeBase, config: GenerationConfig) -> GenerationResult:
    config.check(kb)
    riddles: list[Riddle] = []
    rejected: list[Rejection] = []
    for order, inst in enumerate(candidates(kb, config)):
        out = realize(inst, kb, config.weights, order)
        (riddles if isinstance(out, Riddle) else rejected).append(out)

    riddles = rank(riddles)
    if config.score_threshold is not None:
        riddles = [r for r in riddles if r.scores.total >= config.score_threshold]
    if config.sample:
        k = min(len(riddles), config.max_riddles or 1)
        riddles = random.Random(config.seed).sample(riddles, k)
    elif config.max_riddles is not None:
        riddles = riddles[: config.max_riddles]
    return GenerationResult(riddles, rejected)


def generate(kb: KnowledgeBase, config: GenerationConfig) -> list[Riddle]:
    return generate_all(kb, config).riddles


# ---------------------------------------------------------------- output


def _show(binding) -> object:
    if isinstance(binding, Chunk):
        return str(binding)
    return list(binding) if len(binding) > 1 else binding[0]


def link_checks(inst: Instantiation, kb: KnowledgeBase) -> list[str]:
    """Human-readable account of every link the bindings satisfy."""
    b = inst.as_dict
    rel = inst.relation_map
    out = []
    for link in inst.schema.links:
        if link.kind == "constituents":
            np, *words = link.endpoints
            shown = " ".join(f"{w}={b[w][0]}" for w in words)
            out.append(f"constituents {np}={b[np][0]} -> {shown}")
        elif link.kind == "homophone":
            x, y = link.endpoints
            kind = kb.homophones.kind_of(b[x][0], b[y][0])
            out.append(f"homophone {x}={b[x][0]} ~ {y}={b[y][0]} ({kind})")
        elif link.kind == "identity":
            x, y = link.endpoints
            out.append(f"identity {x}={b[x][0]} = {y}={b[y][0]}")
        else:
            src, var = link.endpoints
            out.append(f"characteristic {var}={_show(b[var])} is {rel[var]} of {src}={b[src][0]}")
    return out


def record(item, kb: KnowledgeBase, index: Optional[int] = None) -> dict:
    """JSON-ready description of a riddle or a rejected candidate."""
    inst = item.instantiation
    template = kb.templates[inst.template]
    out = {
        "schema": inst.schema.name,
        "template": inst.template,
        "np": inst.np,
        "bindings": {var: _show(b) for var, b in inst.bindings},
        "relations": dict(inst.relations),
        "provenance": {"schema": inst.schema.provenance, "template": template.provenance},
        "homophone_kinds": {
            f"{link.endpoints[0]}~{link.endpoints[1]}": kb.homophones.kind_of(
                inst.binding(link.endpoints[0])[0], inst.binding(link.endpoints[1])[0])
            for link in inst.schema.links_of("homophone")
        },
    }
    if index is not None:
        out["index"] = index
    if isinstance(item, Riddle):
        out.update(
            status="accepted",
            surface=item.surface,
            question=list(item.nsf.question),
            answer=list(item.nsf.answer),
            scores={
                "question_length_penalty": item.scores.question_length_penalty,
                "alliteration": item.scores.alliteration,
                "rhyme": item.scores.rhyme,
                "funny_letters": item.scores.funny_letters,
                "total": item.scores.total,
            },
        )
    else:
        out.update(status="rejected", surface=item.surface, reasons=list(item.reasons))
    return out


def explain(item, kb: KnowledgeBase) -> dict:
    """Trace of how a riddle (or rejected candidate) was put together."""
    trace = record(item, kb)
    trace["links"] = link_checks(item.instantiation, kb)
    if isinstance(item, Riddle):
        trace["checks"] = ["identity: passed", "sensible: passed"]
    else:
        trace["checks"] = list(item.reasons)
    return trace
