"""Bidirectional two-level morphological analyzer/generator.

A compiler from two-level phonological rules and continuation-class
lexicons to parallel finite-state constraint automata, with a complete
Turkish description bundled under twolevel.turkish.
"""

from .engine import Analysis, analyze, generate, generate_from_gloss, trace
from .rules import parse_rules_file, expand_where, rule_holds, compile_rule, run_all
from .lexicon import parse_lexicon_file, enumerate_paths
from .symbols import derive_feasible_pairs

__version__ = "0.1.0"

__all__ = [
    "Analysis", "analyze", "generate", "generate_from_gloss", "trace",
    "parse_rules_file", "expand_where", "rule_holds", "compile_rule", "run_all",
    "parse_lexicon_file", "enumerate_paths", "derive_feasible_pairs",
    "__version__",
]
