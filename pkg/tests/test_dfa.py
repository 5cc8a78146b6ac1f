import itertools
import random

import pytest

from twolevel import dfa as dfalib
from twolevel import pair_regex as rx
from twolevel.symbols import derive_feasible_pairs, parse_declarations


@pytest.fixture(scope="module")
def env():
    decls, _ = parse_declarations("ALPHABET\na b c ;\n")
    alpha = derive_feasible_pairs(decls)
    return decls, alpha


def compile_(env, text):
    decls, alpha = env
    return dfalib.compile_regex(rx.parse_pair_regex(text, decls), alpha, decls)


def ids(alpha, text):
    return [alpha.id_of(ch, ch) for ch in text]


def test_intersect_matches_bruteforce(env):
    decls, alpha = env
    a = compile_(env, "a*")
    b = compile_(env, "a a a")
    inter = dfalib.product(a, b, "intersect")
    # brute-force membership over all strings of length <= 5
    for L in range(6):
        for w in itertools.product(list(alpha.all_ids()), repeat=L):
            want = a.accepts(w) and b.accepts(w)
            assert inter.accepts(w) == want


def test_minimize_idempotent(env):
    a = compile_(env, "[a | b] [a | b] c*")
    m = dfalib.minimize(a)
    assert dfalib.minimize(m).n_states == m.n_states


def test_complement_involution(env):
    a = compile_(env, "a [b c]* (a)")
    assert dfalib.equivalent(dfalib.complement(dfalib.complement(a)), a)


def test_union_difference(env):
    decls, alpha = env
    a = compile_(env, "a b")
    b = compile_(env, "a c")
    u = dfalib.product(a, b, "union")
    assert u.accepts(ids(alpha, "ab")) and u.accepts(ids(alpha, "ac"))
    d = dfalib.product(u, a, "difference")
    assert d.accepts(ids(alpha, "ac")) and not d.accepts(ids(alpha, "ab"))


def test_alphabet_mismatch_rejected(env):
    decls, alpha = env
    other_decls, _ = parse_declarations("ALPHABET\na b ;\n")
    other = derive_feasible_pairs(other_decls)
    a = compile_(env, "a")
    b = dfalib.compile_regex(rx.parse_pair_regex("a", other_decls), other, other_decls)
    with pytest.raises(dfalib.AlphabetError):
        dfalib.product(a, b, "intersect")


def _random_dfa(rng, alpha, n_states=5):
    n = rng.randint(1, n_states)
    delta = []
    for _ in range(n):
        row = {}
        for c in range(len(alpha.pairs)):
            if rng.random() < 0.7:
                row[c] = rng.randrange(n)
        delta.append(row)
    finals = {s for s in range(n) if rng.random() < 0.4}
    class_of = list(range(len(alpha.pairs))) + [len(alpha.pairs)]
    return dfalib.PairDfa(alpha, class_of, len(alpha.pairs) + 1, delta, 0, finals)


def test_random_dfa_properties(env):
    decls, alpha = env
    rng = random.Random(7)
    words = []
    pids = list(alpha.all_ids())
    for L in range(5):
        words.extend(itertools.product(pids, repeat=L))
    for _ in range(80):
        a = _random_dfa(rng, alpha)
        b = _random_dfa(rng, alpha)
        m = dfalib.minimize(a)
        assert dfalib.equivalent(a, m)
        assert dfalib.minimize(m).n_states == m.n_states
        lhs = dfalib.complement(dfalib.product(a, b, "union"))
        rhs = dfalib.product(dfalib.complement(a), dfalib.complement(b), "intersect")
        assert dfalib.equivalent(lhs, rhs)
        for w in rng.sample(words, 25):
            assert m.accepts(w) == a.accepts(w)


def test_dump_is_stable(env):
    a = compile_(env, "a b")
    d1 = a.dump()
    d2 = a.dump()
    assert d1 == d2
    assert "state\t0" in d1 and "a:a" in d1
