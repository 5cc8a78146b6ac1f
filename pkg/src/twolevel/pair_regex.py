"""Regular expressions over feasible pairs.

Grammar (loosest to tightest): union "|", difference "-", concatenation,
postfix "*"/"+".  "( )" is optionality, "[ ]" and "{ }" group, "\\X" is any
single feasible pair not matching X, "#" the word boundary.  Atoms are
"x", "x:y", "x:", ":y" where either side may be a symbol or a set name;
whitespace around ":" matters ("H: y" is two atoms, "H:y" one pair).
"""

from .symbols import BOUNDARY


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        if pos is not None:
            message = "%s (at token %d)" % (message, pos)
        super().__init__(message)
        self.pos = pos


class EmptyAtom(ValueError):
    """An atom that denotes no feasible pair (compile-time diagnostic)."""


# ---------------------------------------------------------------------------
# AST

class Node:
    def atom_name_pairs(self, decls):
        """(lexical names, surface names) contributed by pair atoms, for
        feasible-pair derivation from rule correspondences."""
        out = []
        for child in self.children():
            out.extend(child.atom_name_pairs(decls))
        return out

    def children(self):
        return ()


class Epsilon(Node):
    def __repr__(self):
        return "Eps"


class Boundary(Node):
    def __repr__(self):
        return "#"


class Atom(Node):
    """lex/surf are symbol-or-set names; None means wildcard side."""

    def __init__(self, lex, surf):
        self.lex = lex
        self.surf = surf

    def __repr__(self):
        return "%s:%s" % (self.lex or "", self.surf or "")

    def side_names(self, name, decls):
        if name is None:
            return None
        if decls.is_set(name):
            return [s.name for s in decls.set_members(name)]
        return [name]

    def atom_name_pairs(self, decls):
        lexnames = self.side_names(self.lex, decls)
        surfnames = self.side_names(self.surf, decls)
        if lexnames is None or surfnames is None:
            return []  # wildcard sides never introduce new pairs
        return [(lexnames, surfnames)]


class Concat(Node):
    def __init__(self, items):
        self.items = items

    def children(self):
        return self.items

    def __repr__(self):
        return "(%s)" % " ".join(map(repr, self.items))


class Union(Node):
    def __init__(self, items):
        self.items = items

    def children(self):
        return self.items

    def __repr__(self):
        return "[%s]" % " | ".join(map(repr, self.items))


class Diff(Node):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return "[%r - %r]" % (self.left, self.right)


class Star(Node):
    def __init__(self, item):
        self.item = item

    def children(self):
        return (self.item,)

    def __repr__(self):
        return "%r*" % (self.item,)


class Plus(Node):
    def __init__(self, item):
        self.item = item

    def children(self):
        return (self.item,)

    def __repr__(self):
        return "%r+" % (self.item,)


class Opt(Node):
    def __init__(self, item):
        self.item = item

    def children(self):
        return (self.item,)

    def __repr__(self):
        return "(%r)" % (self.item,)


class NotPair(Node):
    """Any single feasible pair (or the boundary pair) not matching item.

    Restricted to single-pair denotations; anything else is flagged when the
    regex is compiled or matched.
    """

    def __init__(self, item):
        self.item = item

    def children(self):
        return (self.item,)

    def __repr__(self):
        return "\\%r" % (self.item,)


class MacroRef(Node):
    def __init__(self, name, target=None):
        self.name = name
        self.target = target  # resolved definition AST

    def children(self):
        return (self.target,) if self.target is not None else ()

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# Tokenizer

PUNCT = set("()[]{}|*+-\\_;")
QUOTE = '"'


def read_ident(text, j):
    """Read an identifier at offset j; '%' escapes the next character."""
    n = len(text)
    out = []
    while j < n:
        c = text[j]
        if c == "%":
            if j + 1 >= n:
                raise ParseError("dangling % escape")
            out.append(text[j + 1])
            j += 2
            continue
        if c.isspace() or c in PUNCT or c == ":" or c == "!" or c == QUOTE:
            break
        out.append(c)
        j += 1
    return "".join(out), j


def tokenize(text, extra_ops=(), with_lines=False):
    """Whitespace-aware tokens: ('atom', lex, surf) / ('name', n) / ('op', c).

    An identifier immediately followed by ':' forms the left side of a pair
    atom; ':' immediately followed by an identifier opens a surface-only
    atom.  '%' escapes the next character into an identifier.  Rule files
    pass extra_ops for the arrow operators and get quoted rule names.
    """
    toks = []
    i = 0
    n = len(text)
    line = 1

    def emit(tok):
        toks.append(tok + (line,) if with_lines else tok)

    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c.isspace():
            i += 1
            continue
        if c == "!":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == QUOTE:
            j = text.find(QUOTE, i + 1)
            if j < 0:
                raise ParseError("unterminated quoted name")
            emit(("rulename", " ".join(text[i + 1 : j].split())))
            line += text.count("\n", i, j)
            i = j + 1
            continue
        matched_op = None
        for op in extra_ops:
            if text.startswith(op, i):
                matched_op = op
                break
        if matched_op:
            emit(("op2", matched_op))
            i += len(matched_op)
            continue
        if c in PUNCT:
            emit(("op", c))
            i += 1
            continue
        if c == ":":
            # surface-only atom ":y"
            name, j = read_ident(text, i + 1)
            if not name:
                raise ParseError("':' not followed by a name")
            emit(("atom", None, name))
            i = j
            continue
        name, j = read_ident(text, i)
        if not name:
            raise ParseError("unexpected character %r" % c)
        if j < n and text[j] == ":":
            name2, k = read_ident(text, j + 1)
            if name2:
                emit(("atom", name, name2))
                i = k
            else:
                emit(("atom", name, None))
                i = j + 1
        else:
            emit(("name", name))
            i = j
    return toks


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, toks, decls):
        self.toks = toks
        self.pos = 0
        self.decls = decls

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.pos)
        self.pos += 1
        return t

    def expect_op(self, c):
        t = self.next()
        if t != ("op", c):
            raise ParseError("expected %r, got %r" % (c, t), self.pos)

    def parse_expr(self):
        items = [self.parse_diff()]
        while self.peek() == ("op", "|"):
            self.next()
            items.append(self.parse_diff())
        return items[0] if len(items) == 1 else Union(items)

    def parse_diff(self):
        node = self.parse_concat()
        while self.peek() == ("op", "-"):
            self.next()
            node = Diff(node, self.parse_concat())
        return node

    def _starts_primary(self, t):
        if t is None:
            return False
        if t[0] in ("atom", "name"):
            return True
        return t in (("op", "("), ("op", "["), ("op", "{"), ("op", "\\"))

    def parse_concat(self):
        items = []
        while self._starts_primary(self.peek()):
            items.append(self.parse_postfix())
        if not items:
            return Epsilon()
        return items[0] if len(items) == 1 else Concat(items)

    def parse_postfix(self):
        node = self.parse_primary()
        while self.peek() in (("op", "*"), ("op", "+")):
            op = self.next()[1]
            node = Star(node) if op == "*" else Plus(node)
        return node

    def parse_primary(self):
        t = self.next()
        if t == ("op", "("):
            inner = self.parse_expr()
            self.expect_op(")")
            return Opt(inner)
        if t == ("op", "[") or t == ("op", "{"):
            closing = "]" if t[1] == "[" else "}"
            inner = self.parse_expr()
            self.expect_op(closing)
            return inner
        if t == ("op", "\\"):
            return NotPair(self.parse_primary())
        if t[0] == "atom":
            return Atom(t[1], t[2])
        if t[0] == "name":
            name = t[1]
            if name == BOUNDARY:
                return Boundary()
            if self.decls is not None and self.decls.is_definition(name):
                return MacroRef(name, self.decls.definitions[name])
            # bare set name S: all feasible (x,y) with x in S and y in S;
            # bare symbol x: the identity pair (x,x)
            return Atom(name, name)
        raise ParseError("unexpected token %r" % (t,), self.pos)


def parse_pair_regex(source, decls):
    """Parse a pair regex from text or a token list."""
    toks = tokenize(source) if isinstance(source, str) else list(source)
    p = _Parser(toks, decls)
    node = p.parse_expr()
    if p.peek() is not None:
        raise ParseError("trailing input %r" % (p.peek(),), p.pos)
    return node


def resolve_definitions(decls):
    """Compile raw DEFINITIONS bodies into PairRegex macros, in order."""
    for name in decls.definition_order:
        body, line = decls.raw_definitions[name]
        try:
            decls.definitions[name] = parse_pair_regex(body, decls)
        except ParseError as e:
            raise ParseError("in definition %s (line %d): %s" % (name, line, e))


# ---------------------------------------------------------------------------
# Denotation and the reference matcher

def denote_atom(node, alphabet, decls, with_frame=True, allow_empty=False):
    """The set of pair ids an Atom / NotPair / Boundary node matches."""
    # the cache entry pins the node: id() keys stay valid only while the
    # node is alive
    key = (id(node), with_frame)
    cached = alphabet.denotation_cache.get(key)
    if cached is not None and cached[0] is node:
        out = cached[1]
    else:
        out = _denote_atom_uncached(node, alphabet, decls, with_frame)
        alphabet.denotation_cache[key] = (node, out)
    if not out and not allow_empty:
        raise EmptyAtom("atom %r matches no feasible pair" % node)
    return out


def _denote_atom_uncached(node, alphabet, decls, with_frame):
    if isinstance(node, Boundary):
        return frozenset([alphabet.frame_id]) if with_frame else frozenset()
    if isinstance(node, NotPair):
        inner = node.item
        if isinstance(inner, MacroRef):
            inner = inner.target
        if not isinstance(inner, (Atom, Boundary, Union)):
            raise ParseError("\\ applies to single-pair denotations only, got %r" % inner)
        ids = denote_atom(inner, alphabet, decls, with_frame=False, allow_empty=True) \
            if isinstance(inner, Atom) else _denote_union_pairs(inner, alphabet, decls)
        full = set(alphabet.all_ids())
        if with_frame:
            full.add(alphabet.frame_id)
        return frozenset(full - set(ids))
    if not isinstance(node, Atom):
        raise TypeError("not an atomic node: %r" % node)
    return _denote_plain_atom(node, alphabet, decls, with_frame)


def _denote_plain_atom(node, alphabet, decls, with_frame):

    def side(name):
        if name is None:
            return None
        if decls.is_set(name):
            return set(s.name for s in decls.set_members(name))
        return {name}

    lexnames = side(node.lex)
    surfnames = side(node.surf)
    out = set()
    for i, (lex, surf) in enumerate(alphabet.pairs):
        if lexnames is not None and lex.name not in lexnames:
            continue
        if surfnames is not None and sur_name(surf) not in surfnames:
            continue
        out.add(i)
    # the full wildcard spans anything, the boundary pair included
    if with_frame and lexnames is None and surfnames is None:
        out.add(alphabet.frame_id)
    return frozenset(out)


def sur_name(sym):
    return sym.name


def _denote_union_pairs(node, alphabet, decls):
    out = set()
    for item in node.items:
        if isinstance(item, MacroRef):
            item = item.target
        if not isinstance(item, (Atom, Boundary)):
            raise ParseError("\\ applies to single-pair denotations only")
        out |= denote_atom(item, alphabet, decls, with_frame=False, allow_empty=True)
    return out


def match_ends(node, pairs, start, alphabet, decls, memo):
    """All end offsets j such that pairs[start:j] is in L(node).

    This is the reference matcher the compiled automata are checked against;
    it works directly on the AST and stays independent of any DFA machinery.
    """
    key = (id(node), start)
    got = memo.get(key)
    if got is not None:
        return got
    memo[key] = frozenset()  # cycle guard for degenerate star nesting

    if isinstance(node, MacroRef):
        res = match_ends(node.target, pairs, start, alphabet, decls, memo)
    elif isinstance(node, Epsilon):
        res = frozenset([start])
    elif isinstance(node, (Atom, Boundary, NotPair)):
        ids = denote_atom(node, alphabet, decls, allow_empty=True)
        if start < len(pairs) and pairs[start] in ids:
            res = frozenset([start + 1])
        else:
            res = frozenset()
    elif isinstance(node, Opt):
        res = frozenset([start]) | match_ends(node.item, pairs, start, alphabet, decls, memo)
    elif isinstance(node, Union):
        res = frozenset().union(
            *(match_ends(it, pairs, start, alphabet, decls, memo) for it in node.items)
        )
    elif isinstance(node, Diff):
        res = match_ends(node.left, pairs, start, alphabet, decls, memo) - match_ends(
            node.right, pairs, start, alphabet, decls, memo
        )
    elif isinstance(node, Concat):
        starts = {start}
        for item in node.items:
            nxt = set()
            for s in starts:
                nxt |= match_ends(item, pairs, s, alphabet, decls, memo)
            starts = nxt
            if not starts:
                break
        res = frozenset(starts)
    elif isinstance(node, (Star, Plus)):
        seen = set()
        frontier = {start}
        while frontier:
            nxt = set()
            for s in frontier:
                for e in match_ends(node.item, pairs, s, alphabet, decls, memo):
                    if e not in seen:
                        seen.add(e)
                        nxt.add(e)
            frontier = nxt
        if isinstance(node, Star):
            seen.add(start)
        res = frozenset(seen)
    else:
        raise TypeError("unknown node %r" % node)
    memo[key] = res
    return res


def match(node, pairs, alphabet, decls):
    """True iff the whole pair-id sequence is in L(node)."""
    memo = {}
    return len(pairs) in match_ends(node, tuple(pairs), 0, alphabet, decls, memo)
