"""Command-line front end: ``punforge gen|validate|explain|report``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from punforge.checks import ScoreWeights
from punforge.errors import ParseError, Violation
from punforge.homophones import lint_base, parse_homophone_base
from punforge.lexicon import parse_lexicon, validate_lexicon
from punforge.pipeline import (
    GenerationConfig,
    KnowledgeBase,
    KnowledgeBaseError,
    Riddle,
    data_path,
    explain,
    generate_all,
    record,
)
from punforge.report import GROUPINGS, TrimRules, aggregate, apply_trim, parse_ratings, parse_trim_rules, round1
from punforge.schemata import parse_schemata
from punforge.templates import parse_templates

EXIT_CAP = 125


def _weights(text: Optional[str]) -> ScoreWeights:
    if not text:
        return ScoreWeights()
    values = {}
    for item in text.split(","):
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in ("alliteration", "rhyme", "funny_letters", "question_length"):
            raise argparse.ArgumentTypeError(f"unknown weight {name!r}")
        values[name] = float(value)
    return ScoreWeights(**values)


def _kb_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lexicon", type=Path, default=None, help="lexicon file (default: shipped demo)")
    p.add_argument("--homophones", type=Path, default=None, help="homophone file (default: shipped demo)")
    p.add_argument("--schemata", type=Path, default=None)
    p.add_argument("--templates", type=Path, default=None)
    p.add_argument("--np", dest="np_filter")
    p.add_argument("--schema", dest="schema_filter")
    p.add_argument("--template", dest="template_filter")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", action="store_true", help="draw riddles at random instead of listing all")
    p.add_argument("--max", dest="max_riddles", type=int)
    p.add_argument("--threshold", type=float)
    p.add_argument("--weights", help="e.g. alliteration=1,rhyme=1,funny_letters=0.5,question_length=0.25")
    p.add_argument("--show-rejected", action="store_true")


def _load(args) -> KnowledgeBase:
    return KnowledgeBase.load(
        args.lexicon or data_path("demo.lex"),
        args.homophones or data_path("demo.hom"),
        args.schemata,
        args.templates,
    )


def _run(args):
    kb = _load(args)
    config = GenerationConfig(
        np_filter=args.np_filter,
        schema_filter=args.schema_filter,
        template_filter=args.template_filter,
        seed=args.seed,
        sample=args.sample,
        max_riddles=args.max_riddles,
        score_threshold=args.threshold,
        weights=_weights(args.weights),
    )
    result = generate_all(kb, config)
    items = list(result.riddles)
    if args.show_rejected:
        items += result.rejected
    return kb, items


def cmd_gen(args) -> int:
    kb, items = _run(args)
    out = sys.stdout
    for i, item in enumerate(items, start=1):
        if args.format == "records":
            out.write(json.dumps(record(item, kb, i), sort_keys=True) + "\n")
        elif isinstance(item, Riddle):
            out.write(f"{i}. {item.surface}\n")
        else:
            shown = item.surface or "(not realized)"
            out.write(f"{i}. [rejected: {'; '.join(item.reasons)}] {shown}\n")
    return 0


def cmd_explain(args) -> int:
    kb, items = _run(args)
    if not 1 <= args.id <= len(items):
        print(f"punforge: no riddle number {args.id} (this run has {len(items)})", file=sys.stderr)
        return 2
    print(json.dumps(explain(items[args.id - 1], kb), indent=2, sort_keys=True))
    return 0


def _first_keyword(text: str) -> Optional[str]:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    return None


def cmd_validate(args) -> int:
    files = {}
    problems: list[str] = []
    for path in args.paths:
        text = Path(path).read_text(encoding="utf-8")
        kind = {"lexeme": "lexicon", "pair": "homophones", "schema": "schemata", "template": "templates"}.get(
            _first_keyword(text) or "")
        if kind is None:
            problems.append(f"{path}: cannot tell what kind of file this is")
            continue
        if kind in files:
            problems.append(f"{path}: a second {kind} file; validate one knowledge base at a time")
            continue
        files[kind] = (path, text)

    def parse(kind, fn, *extra):
        if kind not in files:
            return None
        path, text = files[kind]
        try:
            return fn(text, *extra, source=str(path))
        except ParseError as exc:
            problems.append(str(exc))
            return None

    lexicon = parse("lexicon", parse_lexicon)
    violations: list[Violation] = []
    if lexicon is not None:
        violations += validate_lexicon(lexicon)
    if "homophones" in files:
        if lexicon is None:
            problems.append(f"{files['homophones'][0]}: homophones need a valid lexicon alongside")
        else:
            base = parse("homophones", parse_homophone_base, lexicon)
            if base is not None:
                violations += lint_base(base, lexicon)
    schemata = parse("schemata", parse_schemata)
    templates = parse("templates", parse_templates)
    if templates and schemata is not None:
        for t in templates.values():
            for name in sorted(t.schemata - schemata.keys()):
                violations.append(Violation(t.name, f"names unknown schema {name!r}"))

    for v in violations:
        problems.append(str(v)) if v.is_error else print(f"warning: {v}")
    for p in problems:
        print(p)
    errors = len(problems)
    print(f"{errors} violation(s)", file=sys.stderr)
    return min(errors, EXIT_CAP)


def cmd_report(args) -> int:
    records = parse_ratings(args.ratings.read_text(encoding="utf-8"), source=str(args.ratings))
    schema_names = list(parse_schemata((args.schemata or data_path("schemata.txt")).read_text(encoding="utf-8")))
    template_names = list(parse_templates((args.templates or data_path("templates.txt")).read_text(encoding="utf-8")))
    keys = {"schema": schema_names, "template": template_names}.get(args.by)
    rules = TrimRules()
    if args.trim:
        rules = parse_trim_rules(args.trim.read_text(encoding="utf-8"), source=str(args.trim))
        result = apply_trim(records, rules, schema_names, template_names)
        records = list(result.survivors)
    table = aggregate(records, args.by, keys=keys)
    sys.stdout.write(table.format())
    if args.trim:
        before = round1(result.before) if result.before is not None else "n/a"
        after = round1(result.after) if result.after is not None else "n/a (no jokes left)"
        print(f"\nmean before trimming: {before}\nmean after trimming: {after}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="punforge", description="Generate punning riddles from a lexicon.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate riddles")
    _kb_options(gen)
    gen.add_argument("--format", choices=("text", "records"), default="text")
    gen.set_defaults(func=cmd_gen)

    ex = sub.add_parser("explain", help="trace how one riddle was built")
    _kb_options(ex)
    ex.add_argument("--id", type=int, required=True, help="1-based number as printed by gen")
    ex.set_defaults(func=cmd_explain)

    val = sub.add_parser("validate", help="parse and lint knowledge-base files")
    val.add_argument("paths", nargs="+", type=Path)
    val.set_defaults(func=cmd_validate)

    rep = sub.add_parser("report", help="aggregate judges' ratings")
    rep.add_argument("--ratings", type=Path, required=True)
    rep.add_argument("--by", choices=GROUPINGS, required=True)
    rep.add_argument("--trim", type=Path)
    rep.add_argument("--schemata", type=Path, help="names for zero-joke rows (default: shipped)")
    rep.add_argument("--templates", type=Path)
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, KnowledgeBaseError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"punforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
