import pytest

from twolevel.turkish import load_turkish


@pytest.fixture(scope="session")
def turkish():
    return load_turkish()


def make_description(rules_text, lexicon_text=None):
    """Small ad-hoc description for unit tests."""
    from twolevel import engine
    from twolevel.lexicon import Lexicon, parse_lexicon_file
    from twolevel.rules import expand_where, parse_rules_file
    from twolevel.symbols import derive_feasible_pairs

    decls, rules = parse_rules_file(rules_text)
    ground = [g for r in rules for g in expand_where(r)]
    alphabet = derive_feasible_pairs(decls, ground)
    lexicon = Lexicon(table=decls.table)
    if lexicon_text:
        parse_lexicon_file(lexicon_text, lexicon)
    else:
        lexicon.sublexicons["Root"] = []
        lexicon.order.append("Root")
        lexicon.roots = ["Root"]
    return engine.compile_description(decls, ground, lexicon, alphabet)
