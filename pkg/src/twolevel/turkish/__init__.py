"""The bundled Turkish description: rules, lexicon, corpus, utilities."""

from importlib import resources

from .. import engine, rules as rulemod
from ..lexicon import Lexicon, parse_lexicon_file
from ..symbols import derive_feasible_pairs
from .corpus import GoldenCase, golden_suite, run_case, run_suite
from .syllabify import SyllabifyError, syllabify_first

_cached = None


def _data(name):
    return resources.files("twolevel.turkish.data").joinpath(name).read_text("utf-8")


def load_description(rules_text, lexicon_texts):
    """Compile a description from rules-file text and lexicon file texts."""
    decls, rules = rulemod.parse_rules_file(rules_text)
    ground = []
    for r in rules:
        ground.extend(rulemod.expand_where(r))
    alphabet = derive_feasible_pairs(decls, ground)
    _check_declared(decls, alphabet)
    lexicon = Lexicon(table=decls.table)
    for text in lexicon_texts:
        parse_lexicon_file(text, lexicon)
    desc = engine.compile_description(decls, ground, lexicon, alphabet)
    return desc


def _check_declared(decls, alphabet):
    """Transcription completeness: every pair a rule correspondence denotes
    must be declared in the ALPHABET (identities included)."""
    declared = set()
    for s in decls.identity:
        declared.add((s.name, s.name))
    for lex, surf in decls.declared_pairs:
        declared.add((lex.name, surf.name))
    extra = [
        "%s:%s" % (lex.name, surf.name)
        for lex, surf in alphabet.pairs
        if (lex.name, surf.name) not in declared
    ]
    if extra:
        raise engine.DescriptionError(
            "rule correspondences use undeclared pairs: %s" % ", ".join(sorted(extra))
        )


def load_turkish(refresh=False):
    """The compiled bundled description (built once, shared read-only)."""
    global _cached
    if _cached is None or refresh:
        _cached = load_description(
            _data("rules.twol"),
            [_data("roots.lex"), _data("suffix_grammar.lex")],
        )
    return _cached
