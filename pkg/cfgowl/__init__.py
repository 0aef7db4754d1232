"""Context-free grammars as OWL ontologies, and sequence classification with them."""

from .abox import parse_tree_to_axioms, segment_parse, sequence_to_abox
from .bench import GrowthConfig, run_bench
from .cfg2owl import DEFAULT_CONFIG, ConversionConfig, convert, make_rule
from .grammar import (
    GrammarError,
    InvariantError,
    enumerate_language,
    format_grammar,
    is_cnf,
    parse_grammar,
    to_cnf,
    validate,
)
from .materializer import classify_dl, classify_hybrid, materialize
from .owl import UnsupportedAxiomError, read_turtle, serialize_manchester, serialize_turtle
from .parser import NotInLanguageError, SequenceError, cyk_recognize, parse, recognize
from .pipeline import run

__all__ = [
    "ConversionConfig",
    "DEFAULT_CONFIG",
    "GrammarError",
    "GrowthConfig",
    "InvariantError",
    "NotInLanguageError",
    "SequenceError",
    "UnsupportedAxiomError",
    "classify_dl",
    "classify_hybrid",
    "convert",
    "cyk_recognize",
    "enumerate_language",
    "format_grammar",
    "is_cnf",
    "make_rule",
    "materialize",
    "parse",
    "parse_grammar",
    "parse_tree_to_axioms",
    "read_turtle",
    "recognize",
    "run",
    "run_bench",
    "segment_parse",
    "sequence_to_abox",
    "serialize_manchester",
    "serialize_turtle",
    "to_cnf",
    "validate",
]
try:
    from .version import version as __version__  # noqa: F401
except ImportError:
    pass  # running from a source checkout
