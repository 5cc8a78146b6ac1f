"""Continuation-class lexicons: a morphotactic graph of sublexicons.

File format, one or more files concatenated:

    LEXICON Name
    gloss:form CONT ;      ! explicit gloss
    form CONT ;            ! gloss = form
    :0 CONT ;              ! empty-form link entry (lexc-style "0" = nothing)

"#" as continuation marks acceptance.  Entries keep file order; duplicate
entries are allowed (homographs).
"""

from dataclasses import dataclass

from .symbols import SymbolTable, unescape


class LexiconSyntaxError(ValueError):
    pass


class LinkError(ValueError):
    """A continuation class that no LEXICON section defines."""


TERMINAL = "#"


@dataclass
class LexEntry:
    gloss: str
    form: tuple            # tuple of Symbol
    continuation: str
    sublexicon: str = ""
    line: int = 0

    def form_text(self):
        return "".join(s.name for s in self.form)


class Lexicon:
    def __init__(self, table=None):
        self.table = table or SymbolTable()
        self.sublexicons = {}   # name -> [LexEntry]
        self.order = []
        self.roots = []

    def add_entry(self, sublexicon, entry):
        if sublexicon not in self.sublexicons:
            self.sublexicons[sublexicon] = []
            self.order.append(sublexicon)
        entry.sublexicon = sublexicon
        self.sublexicons[sublexicon].append(entry)

    def validate(self):
        for name, entries in self.sublexicons.items():
            for e in entries:
                if e.continuation != TERMINAL and e.continuation not in self.sublexicons:
                    raise LinkError(
                        "entry %r in LEXICON %s continues to undefined %r"
                        % (e.gloss or e.form_text(), name, e.continuation)
                    )
        for root in self.roots:
            if root not in self.sublexicons:
                raise LinkError("entry-point LEXICON %r missing" % root)

    def unreachable(self):
        """Sublexicons not reachable from any root (lint, not an error)."""
        seen = set()
        work = [r for r in self.roots if r in self.sublexicons]
        while work:
            cur = work.pop()
            if cur in seen:
                continue
            seen.add(cur)
            for e in self.sublexicons[cur]:
                if e.continuation != TERMINAL and e.continuation not in seen:
                    work.append(e.continuation)
        return [n for n in self.order if n not in seen]


def parse_lexicon_file(text, lexicon=None, roots=("Root",)):
    """Parse one lexicon file, adding to an existing Lexicon if given."""
    lx = lexicon or Lexicon()
    if not lx.roots:
        lx.roots = list(roots)
    current = None
    for n, raw in enumerate(text.split("\n"), 1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("LEXICON"):
            parts = line.split()
            if len(parts) != 2:
                raise LexiconSyntaxError("line %d: bad LEXICON header" % n)
            current = parts[1]
            if current not in lx.sublexicons:
                lx.sublexicons[current] = []
                lx.order.append(current)
            continue
        if current is None:
            raise LexiconSyntaxError("line %d: entry before any LEXICON header" % n)
        if not line.endswith(";"):
            raise LexiconSyntaxError("line %d: entry must end with ';'" % n)
        body = line[:-1].split()
        if len(body) != 2:
            raise LexiconSyntaxError("line %d: expected 'form CONT ;'" % n)
        head, cont = body
        if ":" in head:
            gloss, _, formtext = head.rpartition(":")
        else:
            gloss, formtext = head, head
        form = _intern_form(formtext, lx.table, n)
        lx.add_entry(current, LexEntry(gloss, form, cont, current, n))
    return lx


def _intern_form(text, table, line):
    if text == "0":
        return ()
    syms = []
    for kind, ch in unescape(text):
        syms.append(table.intern(ch))
    return tuple(syms)


# ---------------------------------------------------------------------------
# Traversal

class LexState:
    """A position inside an entry: (entry, offset).  Offsets run over the
    entry's form; offset == len(form) means the entry is complete."""

    __slots__ = ("entry", "offset")

    def __init__(self, entry, offset=0):
        self.entry = entry
        self.offset = offset

    def at_end(self):
        return self.offset >= len(self.entry.form)

    def __eq__(self, other):
        return self.entry is other.entry and self.offset == other.offset

    def __hash__(self):
        return hash((id(self.entry), self.offset))

    def __repr__(self):
        return "<%s/%s@%d>" % (self.entry.sublexicon, self.entry.gloss, self.offset)


ACCEPT = "ACCEPT"


def start_states(lexicon):
    """Entry positions reachable before consuming any symbol, with the gloss
    prefix each carries (link entries contribute their glosses eagerly)."""
    out = []
    for root in lexicon.roots:
        _expand(lexicon, root, "", out, set())
    return out


def _expand(lexicon, subname, gloss, out, guard):
    if subname == TERMINAL:
        out.append((ACCEPT, gloss))
        return
    if (subname, gloss) in guard:
        return
    guard.add((subname, gloss))
    for e in lexicon.sublexicons[subname]:
        if e.form:
            out.append((LexState(e, 0), gloss + e.gloss))
        else:
            _expand(lexicon, e.continuation, gloss + e.gloss, out, guard)


def walk(lexicon, state, symbol):
    """Successor (state, gloss suffix) pairs after consuming one lexical
    symbol name; fanning out through entry ends and empty link entries."""
    if state is ACCEPT:
        return []
    out = []
    if not state.at_end():
        if state.entry.form[state.offset].name == symbol:
            out.append((LexState(state.entry, state.offset + 1), ""))
        return out
    nexts = []
    _expand(lexicon, state.entry.continuation, "", nexts, set())
    for st, gloss in nexts:
        if st is ACCEPT:
            continue
        if st.entry.form[0].name == symbol:
            out.append((LexState(st.entry, 1), gloss))
    return out


def can_accept(lexicon, state):
    if state is ACCEPT:
        return True
    if not state.at_end():
        return False
    nexts = []
    _expand(lexicon, state.entry.continuation, "", nexts, set())
    return any(st is ACCEPT for st, _ in nexts)


def enumerate_paths(lexicon, max_morphemes):
    """All root-to-# paths with at most max_morphemes non-empty entries.

    Returns deduplicated (lexical string, gloss string) pairs, in a
    deterministic order.  Link entries do not count as morphemes.
    """
    if max_morphemes < 1:
        raise ValueError("max_morphemes must be >= 1")
    seen = set()
    out = []

    def rec(subname, lexical, gloss, used):
        if subname == TERMINAL:
            key = (lexical, gloss)
            if key not in seen:
                seen.add(key)
                out.append(key)
            return
        for e in lexicon.sublexicons[subname]:
            cost = 1 if e.form else 0
            if used + cost > max_morphemes:
                continue
            rec(e.continuation, lexical + e.form_text(), gloss + e.gloss, used + cost)

    for root in lexicon.roots:
        rec(root, "", "", 0)
    out.sort()
    return out
