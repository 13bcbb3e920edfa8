"""A small language for composite linear maps.

Grammar::

    expr    := term ('.' term)*            composition, right to left
    term    := postfix ('ox' postfix)*     tensor product
    postfix := atom ('^{' digits [':' spaces] '}')*
    atom    := NAME ['{' spaces [';' ints] '}'] | '(' expr ')'
    spaces  := NAME (',' NAME)*

Every map carries the list of tensor factors (space names) of its domain
and codomain.  Space names on their own denote identities; ``tw{X,Y}``
is the flip X⊗Y -> Y⊗X (bare ``tw`` means ``tw{A,A}``); ``perm{X,Y,Z;3,1,2}``
reorders factors so that output factor k is input factor ints[k];
``f^{13}`` lets f act on factors 1 and 3, filling unlisted positions with
A unless the full domain is given as ``f^{13:V,W,A}``.
"""

import re
from math import prod

from .linalg import compose, tensor, identity, permutation, leg, DimensionMismatch
from .report import Check, compare


class ParseError(ValueError):
    def __init__(self, msg, line=None, column=None):
        loc = ""
        if line is not None:
            loc = "line %d, column %d: " % (line, column) if column is not None else "line %d: " % line
        elif column is not None:
            loc = "column %d: " % column
        super().__init__(loc + msg)
        self.line = line
        self.column = column


class TypeMismatch(ValueError):
    pass


class Typed:
    """A LinMap with named tensor factors on both sides."""

    __slots__ = ("map", "dom", "cod")

    def __init__(self, m, dom, cod):
        self.map = m
        self.dom = tuple(dom)
        self.cod = tuple(cod)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>\d+)|(?P<sym>\^\{|[.(){};:,}]))")


def tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError("unexpected character %r" % text[col - 1], column=col)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class Env:
    """Named maps (values or zero-argument thunks) and space dimensions."""

    def __init__(self, field, spaces, maps=None):
        self.field = field
        self.spaces = dict(spaces)
        self.spaces.setdefault("k", 1)
        self._maps = dict(maps or {})
        self._done = {}
        self.families = {}
        self.labels = {}

    def define(self, name, value):
        self._maps[name] = value
        self._done.pop(name, None)

    def family(self, name, fn):
        """``fn(spaces)`` builds the map for ``name{spaces}``."""
        self.families[name] = fn

    def has(self, name):
        return name in self._maps or name in self.spaces

    def get(self, name):
        if name in self._done:
            return self._done[name]
        if name not in self._maps:
            raise KeyError(name)
        v = self._maps[name]
        if callable(v) and not isinstance(v, Typed):
            v = v()
        self._done[name] = v
        return v

    def dims(self, spaces):
        try:
            return [self.spaces[s] for s in spaces]
        except KeyError as e:
            raise TypeMismatch("unknown space %s" % e) from None


class Parser:
    def __init__(self, text, env):
        self.toks = tokenize(text)
        self.i = 0
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            got = t[1] if t[0] != "end" else "end of input"
            raise ParseError("expected %s, found %s" % (want, got), column=t[2])
        self.i += 1
        return t

    def parse(self):
        e = self.expr()
        self.take("end")
        return e

    def expr(self):
        parts = [self.term()]
        while self.peek()[1] == ".":
            self.take()
            parts.append(self.term())
        out = parts[-1]
        for g in reversed(parts[:-1]):
            out = _compose(g, out)
        return out

    def term(self):
        out = self.postfix()
        while self.peek() == ("name", "ox", self.peek()[2]):
            self.take()
            out = _tensor(out, self.postfix(), self.env)
        return out

    def postfix(self):
        col = self.peek()[2]
        out = self.atom()
        while self.peek()[1] == "^{":
            self.take()
            digits = self.take("int")[1]
            ambient = None
            if self.peek()[1] == ":":
                self.take()
                ambient = self.spacelist()
            self.take("sym", "}")
            try:
                out = _leg(out, digits, ambient, self.env)
            except (DimensionMismatch, TypeMismatch, ValueError) as e:
                raise ParseError(str(e), column=col) from None
        return out

    def spacelist(self):
        out = [self.take("name")[1]]
        while self.peek()[1] == ",":
            self.take()
            out.append(self.take("name")[1])
        return out

    def atom(self):
        t = self.peek()
        if t[1] == "(":
            self.take()
            e = self.expr()
            self.take("sym", ")")
            return e
        if t[0] != "name" or t[1] == "ox":
            raise ParseError("expected a map name, found %s" % (t[1] or "end of input"), column=t[2])
        self.take()
        name = t[1]
        args, ints = None, None
        if self.peek()[1] == "{":
            self.take()
            args = self.spacelist()
            if self.peek()[1] == ";":
                self.take()
                ints = [int(self.take("int")[1])]
                while self.peek()[1] == ",":
                    self.take()
                    ints.append(int(self.take("int")[1]))
            self.take("sym", "}")
        try:
            return self.builtin(name, args, ints)
        except (TypeMismatch, KeyError, DimensionMismatch) as e:
            raise ParseError("bad atom %s: %s" % (name, e), column=t[2]) from None

    def builtin(self, name, args, ints):
        env = self.env
        F = env.field
        if name == "tw":
            args = args or ["A", "A"]
            if len(args) != 2:
                raise TypeMismatch("tw takes two spaces")
            d = env.dims(args)
            return Typed(permutation(d, [1, 0], F), args, args[::-1])
        if name == "perm":
            if not args or ints is None or sorted(ints) != list(range(1, len(args) + 1)):
                raise TypeMismatch("perm needs spaces and a permutation of 1..n")
            order = [k - 1 for k in ints]
            return Typed(permutation(env.dims(args), order, F), args, [args[k] for k in order])
        if name == "id":
            args = args or []
            return Typed(identity(prod(env.dims(args)), F), args, args)
        if name in env.families:
            return env.families[name](args or [])
        if args is not None:
            raise TypeMismatch("%s takes no arguments" % name)
        if name in env._maps:
            return env.get(name)
        if name in env.spaces:
            return Typed(identity(env.spaces[name], F), [name] if name != "k" else [], [name] if name != "k" else [])
        raise KeyError("unknown name %s" % name)


def _strip(spaces):
    return tuple(s for s in spaces if s != "k")


def _compose(g, f):
    if _strip(g.dom) != _strip(f.cod):
        raise TypeMismatch("cannot compose %s -> %s after %s -> %s" % (
            "⊗".join(g.dom) or "k", "⊗".join(g.cod) or "k", "⊗".join(f.dom) or "k", "⊗".join(f.cod) or "k"))
    return Typed(compose(g.map, f.map), f.dom, g.cod)


def _tensor(f, g, env):
    return Typed(tensor(f.map, g.map), f.dom + g.dom, f.cod + g.cod)


def _leg(f, digits, ambient, env):
    pattern = [int(c) for c in digits]
    k = len(pattern)
    if len(_strip(f.dom)) != k or len(_strip(f.cod)) != k:
        raise TypeMismatch("leg pattern %s needs a map on %d factors" % (digits, k))
    fd, fc = _strip(f.dom), _strip(f.cod)
    size = max(pattern) if ambient is None else len(ambient)
    if ambient is None:
        ambient = ["A"] * size
    else:
        ambient = list(ambient)
    for p, s in zip(pattern, fd):
        if p > size:
            raise TypeMismatch("leg position %d exceeds ambient size" % p)
        ambient[p - 1] = s
    cod = list(ambient)
    for p, s in zip(pattern, fc):
        cod[p - 1] = s
    m = leg(f.map, pattern, env.dims(ambient), env.dims(fc))
    return Typed(m, ambient, cod)


def evaluate(text, env):
    """Parse and evaluate an expression to a Typed map."""
    return Parser(text, env).parse()


def space_labels(env, spaces):
    return [env.labels.get(s) or [str(i) for i in range(env.spaces[s])] for s in _strip(spaces)]


def compare_exprs(env, name, lhs, rhs):
    """Check the equality lhs == rhs of two expressions exactly."""
    f = evaluate(lhs, env) if isinstance(lhs, str) else lhs
    g = evaluate(rhs, env) if isinstance(rhs, str) else rhs
    if _strip(f.dom) != _strip(g.dom) or _strip(f.cod) != _strip(g.cod):
        return Check(name, False, detail="sides have different types")
    return compare(name, f.map, g.map, space_labels(env, f.dom))
