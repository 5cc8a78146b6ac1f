import random

import pytest

from twolevel import dfa as dfalib
from twolevel import pair_regex as rx
from twolevel.symbols import derive_feasible_pairs, parse_declarations

DECLS_TEXT = """ALPHABET
a b c %-:0 %(:0 %):0 D:d A:a A:0 y:0 ;
SETS
Vbk = a ;
CsV = b c ;
DEFINITIONS
MB = %-:0 ;
"""


@pytest.fixture(scope="module")
def env():
    decls, _ = parse_declarations(DECLS_TEXT)
    rx.resolve_definitions(decls)
    alpha = derive_feasible_pairs(decls)
    return decls, alpha


def ids(alpha, *pairs):
    out = []
    for p in pairs:
        l, _, s = p.partition(":")
        out.append(alpha.id_of(l, s or l))
    return out


def test_parse_surface_set_atom(env):
    decls, alpha = env
    node = rx.parse_pair_regex(":Vbk", decls)
    assert isinstance(node, rx.Atom) and node.surf == "Vbk" and node.lex is None
    den = rx.denote_atom(node, alpha, decls)
    assert alpha.id_of("A", "a") in den and alpha.id_of("a", "a") in den


def test_parse_bare_symbol_is_identity(env):
    decls, alpha = env
    node = rx.parse_pair_regex("a", decls)
    assert rx.denote_atom(node, alpha, decls) == frozenset([alpha.id_of("a", "a")])


def test_parse_not_pair_lexical_set(env):
    decls, alpha = env
    node = rx.parse_pair_regex("\\[CsV:]", decls)
    den = rx.denote_atom(node, alpha, decls)
    assert alpha.id_of("b", "b") not in den
    assert alpha.id_of("a", "a") in den
    assert alpha.frame_id in den


def test_whitespace_sensitive_colon(env):
    decls, _ = env
    two = rx.parse_pair_regex("D: a", decls)
    assert isinstance(two, rx.Concat) and len(two.items) == 2
    one = rx.parse_pair_regex("D:d", decls)
    assert isinstance(one, rx.Atom) and one.surf == "d"


def test_unbalanced_brackets(env):
    decls, _ = env
    with pytest.raises(rx.ParseError):
        rx.parse_pair_regex("[a b", decls)
    with pytest.raises(rx.ParseError):
        rx.parse_pair_regex("a )", decls)


def test_unknown_macro_is_symbol_and_empty(env):
    decls, alpha = env
    node = rx.parse_pair_regex("NotDeclared", decls)
    with pytest.raises(rx.EmptyAtom):
        rx.denote_atom(node, alpha, decls)


def test_compile_abstar(env):
    decls, alpha = env
    node = rx.parse_pair_regex("a b* a", decls)
    d = dfalib.compile_regex(node, alpha, decls)
    assert d.accepts(ids(alpha, "a", "a"))
    assert d.accepts(ids(alpha, "a", "b", "a"))
    assert d.accepts(ids(alpha, "a", "b", "b", "a"))
    assert not d.accepts(ids(alpha, "a"))
    assert not d.accepts(ids(alpha, "a", "b"))


def test_compile_epsilon(env):
    decls, alpha = env
    d = dfalib.compile_regex(rx.parse_pair_regex("[ ]", decls), alpha, decls)
    assert d.accepts([])
    assert not d.accepts(ids(alpha, "a"))


def test_compile_single_pair_macro(env):
    decls, alpha = env
    d = dfalib.compile_regex(rx.parse_pair_regex("MB", decls), alpha, decls)
    assert d.accepts(ids(alpha, "-:0"))
    assert not d.accepts([])
    assert d.n_states == 2


def test_optional_parens_and_difference(env):
    decls, alpha = env
    node = rx.parse_pair_regex("(CsV - b) c", decls)
    d = dfalib.compile_regex(node, alpha, decls)
    assert d.accepts(ids(alpha, "c"))
    assert d.accepts(ids(alpha, "c", "c"))
    assert not d.accepts(ids(alpha, "b", "c"))


def _random_regex(rng, symbols, depth):
    if depth == 0 or rng.random() < 0.3:
        return rx.Atom(rng.choice(symbols), None) if rng.random() < 0.2 \
            else rx.Atom(rng.choice(symbols), rng.choice(symbols))
    kind = rng.choice(["cat", "alt", "star", "opt", "diff", "plus"])
    if kind == "cat":
        return rx.Concat([_random_regex(rng, symbols, depth - 1) for _ in range(2)])
    if kind == "alt":
        return rx.Union([_random_regex(rng, symbols, depth - 1) for _ in range(2)])
    if kind == "star":
        return rx.Star(_random_regex(rng, symbols, depth - 1))
    if kind == "plus":
        return rx.Plus(_random_regex(rng, symbols, depth - 1))
    if kind == "opt":
        return rx.Opt(_random_regex(rng, symbols, depth - 1))
    return rx.Diff(_random_regex(rng, symbols, depth - 1),
                   _random_regex(rng, symbols, depth - 1))


def test_random_regex_dfa_matches_recursive_matcher():
    # alphabet of three identity pairs, depth <= 4, all strings of length <= 6
    decls, _ = parse_declarations("ALPHABET\na b c ;\n")
    alpha = derive_feasible_pairs(decls)
    rng = random.Random(20240811)
    symbols = ["a", "b", "c"]
    pids = list(alpha.all_ids())
    words = [()]
    frontier = [()]
    for _ in range(6):
        frontier = [w + (p,) for w in frontier for p in pids]
        words.extend(frontier)
    for trial in range(60):
        node = _random_regex(rng, symbols, 4)
        d = dfalib.compile_regex(node, alpha, decls, allow_empty=True)
        for w in words:
            assert d.accepts(w) == rx.match(node, w, alpha, decls), (trial, w, node)
