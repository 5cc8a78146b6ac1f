import pytest

from twolevel.lexicon import (
    ACCEPT,
    LexiconSyntaxError,
    LinkError,
    enumerate_paths,
    parse_lexicon_file,
    start_states,
    walk,
)

SMALL = """
LEXICON Root
:0 Nouns ;

LEXICON Nouns
[ROOT=ev]:ev^ Infl ;
[ROOT=gök]:göK^ Infl ;
[ROOT=hukuk]:hu^kuq Infl ;

LEXICON Infl
:0 # ;
+PLU:-lAr Poss ;
:0 Poss ;

LEXICON Poss
:0 # ;
+POSS1s:-m # ;
+ABL:-DAn # ;
"""


@pytest.fixture()
def small():
    return parse_lexicon_file(SMALL)


def test_parse_entries_and_meta_phonemes(small):
    nouns = small.sublexicons["Nouns"]
    gok = [e for e in nouns if e.gloss == "[ROOT=gök]"][0]
    assert gok.form_text() == "göK^"
    assert "K" in [s.name for s in gok.form]
    huk = [e for e in nouns if e.gloss == "[ROOT=hukuk]"][0]
    assert huk.form_text() == "hu^kuq"
    small.validate()


def test_empty_section_is_valid():
    lx = parse_lexicon_file("LEXICON Root\n")
    assert lx.sublexicons["Root"] == []


def test_dangling_continuation():
    lx = parse_lexicon_file("LEXICON Root\nev Nowhere ;\n")
    with pytest.raises(LinkError):
        lx.validate()


def test_entry_needs_semicolon():
    with pytest.raises(LexiconSyntaxError):
        parse_lexicon_file("LEXICON Root\nev Root\n")


def test_walk_through_entry_and_fanout(small):
    starts = [st for st, gloss in start_states(small) if st is not ACCEPT]
    ev = [st for st in starts if st.entry.gloss == "[ROOT=ev]"]
    assert len(ev) == 1
    st = ev[0]
    for sym in "ev^":
        succ = walk(small, st, sym)
        assert succ, sym
        st = succ[0][0]
    # the entry is complete; fans into Infl's entries (via the empty links)
    succ = walk(small, st, "-")
    assert {s.entry.gloss for s, _ in succ} == {"+PLU", "+POSS1s", "+ABL"}


def test_walk_terminal_state_has_no_successors(small):
    assert walk(small, ACCEPT, "e") == []


def test_enumerate_paths_counts_match_dfs_oracle(small):
    got = enumerate_paths(small, 3)

    # brute-force DFS over the sublexicon graph, counting entries with forms
    def dfs(sub, lexical, gloss, left, acc):
        if sub == "#":
            acc.add((lexical, gloss))
            return
        for e in small.sublexicons[sub]:
            cost = 1 if e.form else 0
            if cost > left:
                continue
            dfs(e.continuation, lexical + e.form_text(), gloss + e.gloss, left - cost, acc)

    acc = set()
    dfs("Root", "", "", 3, acc)
    assert set(got) == acc
    assert len(got) == len(acc)


def test_enumerate_paths_orderings(small):
    one = enumerate_paths(small, 1)
    assert ("ev^", "[ROOT=ev]") in one
    assert all(gl.count("+") == 0 for _, gl in one)


def test_enumerate_paths_rejects_zero():
    with pytest.raises(ValueError):
        enumerate_paths(parse_lexicon_file("LEXICON Root\n"), 0)


def test_enumerate_paths_prefix_closed(small):
    # raising the morpheme budget only ever adds paths
    assert set(enumerate_paths(small, 1)) <= set(enumerate_paths(small, 2))
    assert set(enumerate_paths(small, 2)) <= set(enumerate_paths(small, 3))


def test_turkish_paths_exist(turkish):
    lx = turkish.lexicon
    paths = set(enumerate_paths(lx, 3))
    assert ("ev^-lAr-(H)m", "[ROOT=ev]+PLU+POSS1s") in paths
    # the plural suffix never follows a case suffix (the same string does
    # exist with -lAr read as the third person plural of predication)
    glosses = {g for lx_, g in paths if lx_ == "ev^-DAn-lAr"}
    assert "[ROOT=ev]+ABL+PLU" not in glosses


def test_turkish_reachability(turkish):
    assert turkish.lexicon.unreachable() == []
