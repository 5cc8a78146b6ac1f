"""Bidirectional runtime: analyze surface words, generate surface forms.

The analyzer walks the lexicon trie and all rule automata in parallel over
feasible pairs.  The description admits deletion pairs (x:0) but no
insertion pairs (0:y) -- a load-time lint enforces this -- so every search
step advances the lexicon and the search is bounded.
"""

import threading
from dataclasses import dataclass, field

from . import rules as rulemod
from .lexicon import TERMINAL
from .symbols import NULL


class TokenError(ValueError):
    pass


class MorphotacticsError(ValueError):
    def __init__(self, message, tag=None):
        super().__init__(message)
        self.tag = tag


class DescriptionError(ValueError):
    pass


@dataclass
class Analysis:
    lexical: str
    gloss: str
    pairs: tuple    # pair ids, unframed

    def surface(self, alphabet):
        out = []
        for pid in self.pairs:
            s = alphabet.pairs[pid][1].name
            if s != NULL:
                out.append(s)
        return "".join(out)


@dataclass
class TraceStep:
    position: int
    pair: str
    died: list      # rule names whose automaton rejected here


@dataclass
class TraceReport:
    steps: list
    outcome: object          # Verdict
    layer: str = "lexicon"   # which layer stopped the word: lexicon | rules

    def blocking_rules(self):
        names = []
        for name, _, _ in self.outcome.blockers:
            if name not in names:
                names.append(name)
        return names


@dataclass
class Description:
    declarations: object
    alphabet: object
    rule_automata: list      # effective parallel constraint set
    ground_rules: list       # where-expanded source rules
    lexicon: object
    _runtime: object = field(default=None, repr=False)


def compile_description(decls, ground_rules, lexicon, alphabet):
    """Build a Description, running the load-time lints."""
    for lex, surf in alphabet.pairs:
        if lex.name == NULL:
            raise DescriptionError(
                "insertion pair 0:%s is unsupported (deletion-only search)" % surf.name
            )
    lexicon.validate()
    for sym in _lexicon_symbols(lexicon):
        if sym.name not in alphabet.by_lex:
            raise DescriptionError(
                "lexicon symbol %r has no feasible pair" % sym.name
            )
    automata = rulemod.compile_check_set(ground_rules, alphabet, decls)
    return Description(decls, alphabet, automata, ground_rules, lexicon)


def _lexicon_symbols(lexicon):
    seen = {}
    for entries in lexicon.sublexicons.values():
        for e in entries:
            for s in e.form:
                seen[s.name] = s
    return seen.values()


# ---------------------------------------------------------------------------
# Runtime structures

class _Trie:
    __slots__ = ("arcs", "complete")

    def __init__(self):
        self.arcs = {}
        self.complete = []   # (gloss, continuation)


class _Runtime:
    def __init__(self, desc):
        alphabet = desc.alphabet
        self.alphabet = alphabet
        self.n_rules = len(desc.rule_automata)
        self.dfas = [ra.dfa for ra in desc.rule_automata]
        self.surf = [p[1].name for p in alphabet.pairs]
        self.is_null = [s == NULL for s in self.surf]
        self.pairs_by_lex = {k: tuple(v) for k, v in alphabet.by_lex.items()}

        self._lock = threading.Lock()
        self.vecs = {}
        self.vec_list = []
        self.vec_trans = []
        start = tuple(d.start for d in self.dfas)
        self.start_vec = self._intern(start)
        self.frame_id = alphabet.frame_id
        self.init_vec = self.step_vec(self.start_vec, self.frame_id)

        self.tries = {}
        for name, entries in desc.lexicon.sublexicons.items():
            root = _Trie()
            for e in entries:
                node = root
                for sym in e.form:
                    nxt = node.arcs.get(sym.name)
                    if nxt is None:
                        nxt = _Trie()
                        node.arcs[sym.name] = nxt
                    node = nxt
                node.complete.append((e.gloss, e.continuation))
            self.tries[name] = root
        self.lexicon = desc.lexicon

        finals = []
        for d in self.dfas:
            finals.append(d.finals)
        self.finals = finals

    def _intern(self, vec):
        vid = self.vecs.get(vec)
        if vid is None:
            with self._lock:
                vid = self.vecs.get(vec)
                if vid is None:
                    vid = len(self.vec_list)
                    self.vec_list.append(vec)
                    self.vec_trans.append({})
                    self.vecs[vec] = vid
        return vid

    def step_vec(self, vid, pid):
        """Step all rule automata; None when any of them dies."""
        if vid is None:
            return None
        cached = self.vec_trans[vid].get(pid, False)
        if cached is not False:
            return cached
        vec = self.vec_list[vid]
        out = []
        dead = False
        for k, d in enumerate(self.dfas):
            s = d.delta[vec[k]].get(d.class_of[pid])
            if s is None:
                dead = True
                break
            out.append(s)
        res = None if dead else self._intern(tuple(out))
        self.vec_trans[vid][pid] = res
        return res

    def vec_accepts(self, vid):
        end = self.step_vec(vid, self.frame_id)
        if end is None:
            return False
        vec = self.vec_list[end]
        return all(vec[k] in self.finals[k] for k in range(self.n_rules))


def runtime(desc):
    if desc._runtime is None:
        desc._runtime = _Runtime(desc)
    return desc._runtime


# ---------------------------------------------------------------------------
# Analysis

def analyze(surface, desc):
    """All analyses of a surface word: lexicon path + all rules + exact
    surface match.  Deterministic order, duplicates merged."""
    rt = runtime(desc)
    if rt.init_vec is None:
        return []
    n = len(surface)
    limit = 4 * n + 24
    results = {}
    lex_acc = []
    pid_acc = []
    gloss_acc = []

    pairs_by_lex = rt.pairs_by_lex
    surf_names = rt.surf
    is_null = rt.is_null
    step_vec = rt.step_vec
    tries = rt.tries

    def finalize():
        key = ("".join(lex_acc), "".join(gloss_acc))
        if key not in results:
            results[key] = tuple(pid_acc)

    def rec(node, vid, i, jumps):
        if len(lex_acc) > limit:
            return
        for gloss, cont in node.complete:
            if cont == TERMINAL:
                if i == n and rt.vec_accepts(vid):
                    gloss_acc.append(gloss)
                    finalize()
                    gloss_acc.pop()
            else:
                if jumps < 32:
                    gloss_acc.append(gloss)
                    rec(tries[cont], vid, i, jumps + 1)
                    gloss_acc.pop()
        for sym, child in node.arcs.items():
            pids = pairs_by_lex.get(sym)
            if not pids:
                continue
            for pid in pids:
                if is_null[pid]:
                    nvid = step_vec(vid, pid)
                    if nvid is not None:
                        lex_acc.append(sym)
                        pid_acc.append(pid)
                        rec(child, nvid, i, 0)
                        lex_acc.pop()
                        pid_acc.pop()
                elif i < n and surf_names[pid] == surface[i]:
                    nvid = step_vec(vid, pid)
                    if nvid is not None:
                        lex_acc.append(sym)
                        pid_acc.append(pid)
                        rec(child, nvid, i + 1, 0)
                        lex_acc.pop()
                        pid_acc.pop()

    for root in desc.lexicon.roots:
        rec(tries[root], rt.init_vec, 0, 0)
    out = [Analysis(lex, gloss, pids) for (lex, gloss), pids in results.items()]
    out.sort(key=lambda a: (a.lexical, a.gloss))
    return out


# ---------------------------------------------------------------------------
# Generation

def tokenize_lexical(text, alphabet):
    syms = []
    for ch in text:
        if ch not in alphabet.by_lex:
            raise TokenError("unknown lexical symbol %r" % ch)
        syms.append(ch)
    return syms


def generate(lexical, desc, validate_morphotactics=False):
    """All surface realizations of a lexical string; 0-erasure applied,
    duplicates removed, sorted."""
    rt = runtime(desc)
    syms = tokenize_lexical(lexical, desc.alphabet)
    if validate_morphotactics and not is_lexicon_path(lexical, desc):
        return []
    if rt.init_vec is None:
        return []
    out = set()
    surf_acc = []

    def rec(k, vid):
        if k == len(syms):
            if rt.vec_accepts(vid):
                out.add("".join(surf_acc))
            return
        for pid in rt.pairs_by_lex[syms[k]]:
            nvid = rt.step_vec(vid, pid)
            if nvid is None:
                continue
            if rt.is_null[pid]:
                rec(k + 1, nvid)
            else:
                surf_acc.append(rt.surf[pid])
                rec(k + 1, nvid)
                surf_acc.pop()

    rec(0, rt.init_vec)
    return sorted(out)


def is_lexicon_path(lexical, desc):
    """True when the lexical symbol string spells a root-to-# lexicon path."""
    rt = runtime(desc)
    lexicon = desc.lexicon
    n = len(lexical)

    def rec(node, i, jumps):
        if i == n:
            for gloss, cont in node.complete:
                if cont == TERMINAL:
                    return True
                if jumps < 32 and rec(rt.tries[cont], i, jumps + 1):
                    return True
            return False
        for gloss, cont in node.complete:
            if cont != TERMINAL and jumps < 32 and rec(rt.tries[cont], i, jumps + 1):
                return True
        child = node.arcs.get(lexical[i])
        if child is not None and rec(child, i + 1, 0):
            return True
        return False

    return any(rec(rt.tries[root], 0, 0) for root in lexicon.roots)


def gloss_paths(root, tags, desc):
    """Lexical strings whose gloss path is [ROOT=root] followed by the tags.

    Raises MorphotacticsError naming the first tag that cannot be placed.
    """
    rt = runtime(desc)
    lexicon = desc.lexicon
    want = "[ROOT=%s]" % root
    starts = []
    for name, entries in lexicon.sublexicons.items():
        for e in entries:
            if e.gloss == want:
                starts.append(e)
    if not starts:
        raise MorphotacticsError("unknown root %r" % root, tag=None)

    best = [-1]
    found = []

    def rec(subname, k, lexical, depth):
        if depth > 48:
            return
        if subname == TERMINAL:
            if k == len(tags):
                found.append(lexical)
            return
        for e in lexicon.sublexicons[subname]:
            if e.gloss:
                if k < len(tags) and e.gloss == "+" + tags[k]:
                    if k > best[0]:
                        best[0] = k
                    rec(e.continuation, k + 1, lexical + e.form_text(), depth + 1)
            else:
                rec(e.continuation, k, lexical + e.form_text(), depth + 1)

    for e in starts:
        rec(e.continuation, 0, e.form_text(), 0)
    if not found:
        bad = tags[best[0] + 1] if best[0] + 1 < len(tags) else (tags[0] if tags else "#")
        raise MorphotacticsError(
            "no morphotactic path for %s + %s (stuck at %r)" % (root, "+".join(tags), bad),
            tag=bad,
        )
    return sorted(set(found))


def generate_from_gloss(root, tags, desc):
    out = set()
    for lexical in gloss_paths(root, tags, desc):
        out.update(generate(lexical, desc, validate_morphotactics=True))
    return sorted(out)


# ---------------------------------------------------------------------------
# Tracing

def lexicon_covers(surface, desc):
    """True when some lexicon path covers the surface with feasible pairs,
    rules ignored.  Separates the blocking layer in traces."""
    rt = runtime(desc)
    n = len(surface)
    seen = set()

    def rec(node, i):
        key = (id(node), i)
        if key in seen:
            return False
        seen.add(key)
        for gloss, cont in node.complete:
            if cont == TERMINAL:
                if i == n:
                    return True
            elif rec(rt.tries[cont], i):
                return True
        for sym, child in node.arcs.items():
            for pid in rt.pairs_by_lex.get(sym, ()):
                if rt.is_null[pid]:
                    if rec(child, i):
                        return True
                elif i < n and rt.surf[pid] == surface[i]:
                    if rec(child, i + 1):
                        return True
        return False

    return any(rec(rt.tries[root], 0) for root in desc.lexicon.roots)


def trace(word, direction, desc):
    """Search trace: per step, which rule automata died.

    On total failure the layer is decided by a rules-free search: when some
    lexicon path covers the word, only the rules can have blocked it; the
    named blockers come from the deepest failing frontier.
    """
    if direction not in ("analyze", "generate"):
        raise ValueError("direction must be analyze or generate")
    rt = runtime(desc)
    automata = desc.rule_automata
    steps = []
    best = {"depth": -1, "layer": "lexicon", "rules": [], "pair": None}
    accepted = [False]

    def step_rules(svec, pid):
        died = []
        out = []
        for k, ra in enumerate(automata):
            d = ra.dfa
            s = d.delta[svec[k]].get(d.class_of[pid]) if svec[k] is not None else None
            if s is None:
                died.append(ra.name)
            out.append(s)
        return out, died

    def note(depth, pid, died):
        steps.append(TraceStep(depth, rt.alphabet.name_of(pid), died))
        if not died:
            return
        if depth > best["depth"]:
            best.update(depth=depth, layer="rules", rules=list(died),
                        pair=rt.alphabet.name_of(pid))
        elif depth == best["depth"] and best["layer"] == "rules":
            for name in died:
                if name not in best["rules"]:
                    best["rules"].append(name)

    def note_lexicon(depth):
        if depth >= best["depth"]:
            best.update(depth=depth, layer="lexicon", rules=[], pair=None)

    start, _ = step_rules([d.dfa.start for d in automata], rt.frame_id)

    def finals_ok(svec):
        end, died = step_rules(svec, rt.frame_id)
        bad = [ra.name for k, ra in enumerate(automata)
               if end[k] is None or end[k] not in ra.dfa.finals]
        return (not bad), bad

    if direction == "generate":
        syms = tokenize_lexical(word, desc.alphabet)

        def rec(k, svec):
            if k == len(syms):
                ok, bad = finals_ok(svec)
                if ok:
                    accepted[0] = True
                elif k >= best["depth"]:
                    best.update(depth=k, layer="rules", rules=bad, pair="#:#")
                return
            moved = False
            for pid in rt.pairs_by_lex[syms[k]]:
                nvec, died = step_rules(svec, pid)
                if died:
                    note(k, pid, died)
                    continue
                moved = True
                rec(k + 1, nvec)
            if not moved:
                pass

        rec(0, start)
    else:
        n = len(word)

        def reca(node, svec, i, jumps, depth):
            if depth > 4 * n + 24:
                return
            progressed = False
            for gloss, cont in node.complete:
                if cont == TERMINAL:
                    if i == n:
                        ok, bad = finals_ok(svec)
                        if ok:
                            accepted[0] = True
                        elif i >= best["depth"]:
                            best.update(depth=i, layer="rules", rules=bad, pair="#:#")
                else:
                    if jumps < 32:
                        reca(rt.tries[cont], svec, i, jumps + 1, depth)
            for sym, child in node.arcs.items():
                for pid in rt.pairs_by_lex.get(sym, ()):
                    null = rt.is_null[pid]
                    if not null and (i >= n or rt.surf[pid] != word[i]):
                        continue
                    nvec, died = step_rules(svec, pid)
                    if died:
                        # a consuming pair covers surface position i
                        note(i if null else i + 1, pid, died)
                        continue
                    progressed = True
                    reca(child, nvec, i + (0 if null else 1), 0, depth + 1)
            if not progressed and i < n:
                note_lexicon(i)

        for root in desc.lexicon.roots:
            reca(rt.tries[root], start, 0, 0, 0)

    if accepted[0]:
        verdict = rulemod.Verdict(True, [])
        layer = "none"
    else:
        if direction == "analyze":
            covered = lexicon_covers(word, desc)
        else:
            covered = is_lexicon_path(word, desc)
        layer = "rules" if covered else "lexicon"
        blockers = best["rules"] if best["layer"] == "rules" else []
        verdict = rulemod.Verdict(
            False, [(name, best["depth"], best["pair"] or "") for name in blockers]
        )
    return TraceReport(steps, verdict, layer)
