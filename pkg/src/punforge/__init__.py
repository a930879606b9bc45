"""Punning-riddle generator built from a humour-neutral lexicon.

A riddle is produced by fitting a common noun phrase into a schema (a small
constraint graph over lexemes), choosing a template that fixes the
underspecified relations, and realizing the result as a question/answer pair.
"""

from punforge.errors import ParseError, RealizationError, Violation
from punforge.lexicon import Chunk, LexicalEntry, Lexicon, parse_lexicon
from punforge.homophones import HomophoneBase, HomophonePair, parse_homophone_base
from punforge.schemata import Instantiation, Schema, parse_schemata
from punforge.templates import NearSurfaceForm, Template, parse_templates, to_surface
from punforge.pipeline import GenerationConfig, Riddle, generate

__all__ = [
    "Chunk",
    "GenerationConfig",
    "HomophoneBase",
    "HomophonePair",
    "Instantiation",
    "LexicalEntry",
    "Lexicon",
    "NearSurfaceForm",
    "ParseError",
    "RealizationError",
    "Riddle",
    "Schema",
    "Template",
    "Violation",
    "generate",
    "parse_homophone_base",
    "parse_lexicon",
    "parse_schemata",
    "parse_templates",
    "to_surface",
]

__version__ = "0.1.0"
