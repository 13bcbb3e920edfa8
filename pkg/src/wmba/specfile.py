"""A line-oriented text format for fixtures, and JSON reports.

Two kinds of file are understood.  A groupoid file::

    [groupoid]
    obj x y
    mor 1_x : x -> x
    mor f : x -> y
    ...
    comp f 1_x = f          # f∘1_x = f
    inv f = f'
    id x = 1_x              # optional; otherwise the idempotent loop at x

and an algebra file with explicit structure constants::

    [algebra] dim=2
    labels a b
    mul a a = a             # e_a e_a = e_a
    c 1 1 1 = 1/2           # coefficient of e_1 in e_1 e_1 (indices or labels)
    [map T1]
    a a -> a a = 1          # coefficient of the output tuple in the image
    [map eps]
    a -> = 1

Maps E1, E2, T1, T2 and eps are required in an algebra file; T3, T4 and S
are optional.  ``#`` starts a comment.  Scalars are exact: ``p`` or ``p/q``.
"""

import json
import re

from .algebra import FiniteAlgebra
from .core import Wmb
from .expr import ParseError
from .field import QQ, FieldError
from .fixtures import GroupoidSpec, InvalidGroupoid, groupoid_wmb
from .linalg import LinMap

REQUIRED = ("E1", "E2", "T1", "T2", "eps")
OPTIONAL = ("T3", "T4", "S")
_ARITY = {"E1": (2, 2), "E2": (2, 2), "T1": (2, 2), "T2": (2, 2), "T3": (2, 2), "T4": (2, 2),
          "eps": (1, 0), "S": (1, 1)}
_TOKEN = re.compile(r"\S+")
_HEADER = re.compile(r"^\[\s*(\w+)(?:\s+(\w+))?\s*\](.*)$")


class _Line:
    def __init__(self, number, text):
        self.number = number
        self.text = text
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]

    def error(self, msg, k=None):
        col = self.tokens[k][1] if k is not None and k < len(self.tokens) else 1
        return ParseError(msg, self.number, col)

    def words(self):
        return [t for t, _ in self.tokens]


def _strip_comment(text):
    i = text.find("#")
    return text if i < 0 else text[:i]


def _sections(text):
    """[(kind, arg, header line, [lines])] in file order."""
    out = []
    for number, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw).rstrip()
        if not body.strip():
            continue
        m = _HEADER.match(body.strip())
        if m:
            line = _Line(number, body)
            out.append([m.group(1).lower(), m.group(2), line, []])
            rest = m.group(3).strip()
            if rest:
                out[-1][3].append(_Line(number, " " * (body.index(rest)) + rest))
            continue
        if not out:
            raise ParseError("content before the first section header", number, len(raw) - len(raw.lstrip()) + 1)
        out[-1][3].append(_Line(number, body))
    return out


def _scalar(line, k, field):
    text = line.tokens[k][0]
    try:
        return field.parse(text)
    except ZeroDivisionError:
        raise line.error("zero denominator in %r" % text, k) from None
    except FieldError:
        raise line.error("not an exact scalar: %r" % text, k) from None


# groupoids ---------------------------------------------------------------------------

def _parse_groupoid(lines):
    objects, morphisms, comp, inv, ids = [], {}, {}, {}, {}
    for line in lines:
        w = line.words()
        key = w[0]
        if key == "obj":
            for k, o in enumerate(w[1:], 1):
                if o in objects:
                    raise line.error("duplicate object %r" % o, k)
                objects.append(o)
        elif key == "mor":
            _check_mor_line(line)
            if w[1] in morphisms:
                raise line.error("duplicate morphism %r" % w[1], 1)
            for k in (3, 5):
                if w[k] not in objects:
                    raise line.error("unknown object %r" % w[k], k)
            morphisms[w[1]] = (w[3], w[5])
        elif key == "comp":
            if len(w) != 5 or w[3] != "=":
                raise line.error("expected 'comp g h = k'")
            for k in (1, 2, 4):
                if w[k] not in morphisms:
                    raise line.error("unknown morphism %r" % w[k], k)
            comp[(w[1], w[2])] = w[4]
        elif key == "inv":
            if len(w) != 4 or w[2] != "=":
                raise line.error("expected 'inv g = h'")
            for k in (1, 3):
                if w[k] not in morphisms:
                    raise line.error("unknown morphism %r" % w[k], k)
            inv[w[1]] = w[3]
        elif key == "id":
            if len(w) != 4 or w[2] != "=":
                raise line.error("expected 'id x = e'")
            if w[1] not in objects:
                raise line.error("unknown object %r" % w[1], 1)
            if w[3] not in morphisms:
                raise line.error("unknown morphism %r" % w[3], 3)
            ids[w[1]] = w[3]
        else:
            raise line.error("unknown groupoid directive %r" % key, 0)
    for x in objects:
        if x not in ids:
            loops = [g for g, st in morphisms.items() if st == (x, x) and comp.get((g, g)) == g]
            if len(loops) == 1:
                ids[x] = loops[0]
    return GroupoidSpec(objects, morphisms, comp, inv, ids)


def _check_mor_line(line):
    w = line.words()
    if len(w) != 6 or w[2] != ":" or w[4] != "->":
        raise line.error("expected 'mor g : x -> y'")


# algebras ----------------------------------------------------------------------------

def _index(line, k, labels):
    t = line.tokens[k][0]
    if t in labels:
        return labels.index(t)
    if t.isdigit() and int(t) < len(labels):
        return int(t)
    raise line.error("unknown basis element %r" % t, k)


def _parse_algebra(header_arg, lines, field):
    dim = None
    labels = None
    table = {}
    for line in lines:
        w = line.words()
        if w[0].startswith("dim"):
            text = " ".join(w).replace(" ", "")
            m = re.match(r"^dim=(\d+)$", text)
            if not m:
                raise line.error("expected 'dim=N'", 0)
            dim = int(m.group(1))
            continue
        if dim is None:
            raise line.error("'dim=N' must come first", 0)
        if labels is None:
            labels = ["e%d" % i for i in range(dim)]
        if w[0] == "labels":
            if len(w) - 1 != dim:
                raise line.error("expected %d labels" % dim, 0)
            if len(set(w[1:])) != dim:
                raise line.error("duplicate label", 0)
            labels = w[1:]
        elif w[0] == "mul":
            # mul a b = [p/q] c
            if len(w) not in (5, 6) or w[3] != "=":
                raise line.error("expected 'mul a b = [p/q] c'")
            i, j = _index(line, 1, labels), _index(line, 2, labels)
            x = _scalar(line, 4, field) if len(w) == 6 else field.one
            k = _index(line, len(w) - 1, labels)
            _add(table.setdefault((i, j), {}), k, x)
        elif w[0] == "c":
            if len(w) != 6 or w[4] != "=":
                raise line.error("expected 'c i j k = p/q'")
            i, j, k = (_index(line, t, labels) for t in (1, 2, 3))
            _add(table.setdefault((i, j), {}), k, _scalar(line, 5, field))
        else:
            raise line.error("unknown algebra directive %r" % w[0], 0)
    if dim is None:
        dim = 0
    if labels is None:
        labels = ["e%d" % i for i in range(dim)]
    return FiniteAlgebra.from_table(dim, table, labels, field)


def _add(col, k, x):
    v = col.get(k, 0) + x
    if v:
        col[k] = v
    else:
        col.pop(k, None)


def _parse_map(name, lines, labels, field, header):
    if name not in _ARITY:
        raise header.error("unknown map %r" % name, 0)
    ins, outs = _ARITY[name]
    n = len(labels)
    cols = [dict() for _ in range(n ** ins)]
    for line in lines:
        w = line.words()
        if "->" not in w or "=" not in w:
            raise line.error("expected 'inputs -> outputs = p/q'", 0)
        arrow, eq = w.index("->"), w.index("=")
        if arrow != ins or eq != arrow + outs + 1 or len(w) != eq + 2:
            raise line.error("map %s takes %d inputs and %d outputs" % (name, ins, outs), 0)
        src = 0
        for k in range(ins):
            src = src * n + _index(line, k, labels)
        dst = 0
        for k in range(arrow + 1, eq):
            dst = dst * n + _index(line, k, labels)
        _add(cols[src], dst, _scalar(line, eq + 1, field))
    return LinMap(n ** ins, n ** outs, cols, field)


# loading -----------------------------------------------------------------------------

def loads(text, field=QQ, name="spec"):
    """Parse fixture text into a Wmb."""
    secs = _sections(text)
    meta = {}
    for kind, arg, header, lines in secs:
        if kind == "meta":
            for line in lines:
                w = line.words()
                if len(w) != 3 or w[1] != "=":
                    raise line.error("expected 'key = value'")
                meta[w[0]] = w[2]
    name = meta.get("name", name)
    kinds = [s[0] for s in secs if s[0] != "meta"]
    if "groupoid" in kinds:
        if set(kinds) != {"groupoid"} or kinds.count("groupoid") != 1:
            bad = next(s for s in secs if s[0] not in ("groupoid", "meta"))
            raise bad[2].error("a groupoid file has a single [groupoid] section", 0)
        sec = next(s for s in secs if s[0] == "groupoid")
        G = _parse_groupoid(sec[3])
        try:
            G.validate()
        except InvalidGroupoid as e:
            raise ParseError("invalid groupoid: %s" % e, sec[2].number, 1) from None
        return groupoid_wmb(G, field, name)
    alg = None
    maps = {}
    for kind, arg, header, lines in secs:
        if kind == "algebra":
            if alg is not None:
                raise header.error("duplicate [algebra] section", 0)
            alg = _parse_algebra(arg, lines, field)
        elif kind == "map":
            if alg is None:
                raise header.error("[map] before [algebra]", 0)
            if arg is None:
                raise header.error("map section needs a name", 0)
            if arg in maps:
                raise header.error("duplicate map %s" % arg, 0)
            maps[arg] = _parse_map(arg, lines, alg.labels, field, header)
        elif kind != "meta":
            raise header.error("unknown section %r" % kind, 0)
    if alg is None:
        alg = FiniteAlgebra(LinMap(0, 0, [], field), [])
    n = alg.dim
    for m in REQUIRED:
        if m not in maps:
            if n == 0:
                ins, outs = _ARITY[m]
                maps[m] = LinMap(0, 0 if outs else 1, [], field)
            else:
                raise ParseError("missing [map %s]" % m, None, None)
    W = Wmb(alg, maps["E1"], maps["E2"], maps["T1"], maps["T2"], maps["eps"],
            maps.get("T3"), maps.get("T4"), name=name, S=maps.get("S"))
    return W


def load_spec(path, field=QQ):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = re.sub(r"\.[^.]*$", "", path.replace("\\", "/").rsplit("/", 1)[-1])
    return loads(text, field, stem or "spec")


# saving ------------------------------------------------------------------------------

def _fmt(field, x):
    return field.format(x)


def dumps(W):
    """Serialize a Wmb; groupoid fixtures are written in groupoid form."""
    lines = ["[meta]", "name = %s" % W.name]
    G = getattr(W, "groupoid", None)
    if G is not None:
        lines.append("[groupoid]")
        lines.append("obj " + " ".join(G.objects))
        for g, (s, t) in G.morphisms.items():
            lines.append("mor %s : %s -> %s" % (g, s, t))
        for x in G.objects:
            lines.append("id %s = %s" % (x, G.ids[x]))
        for (g, h), k in G.comp.items():
            lines.append("comp %s %s = %s" % (g, h, k))
        for g, h in G.inv.items():
            lines.append("inv %s = %s" % (g, h))
        return "\n".join(lines) + "\n"
    F = W.field
    n = W.n
    labels = W.labels
    lines.append("[algebra] dim=%d" % n)
    if n:
        lines.append("labels " + " ".join(labels))
    for j, col in enumerate(W.mu.cols):
        a, b = divmod(j, n)
        for k in sorted(col):
            lines.append("c %s %s %s = %s" % (labels[a], labels[b], labels[k], _fmt(F, col[k])))
    for name in REQUIRED + OPTIONAL:
        m = W.S_override if name == "S" else getattr(W, name)
        if m is None:
            continue
        ins, outs = _ARITY[name]
        lines.append("[map %s]" % name)
        for j, col in enumerate(m.cols):
            src = _split(j, n, ins)
            for k in sorted(col):
                dst = _split(k, n, outs)
                lines.append("%s -> %s = %s" % (" ".join(labels[i] for i in src),
                                                " ".join(labels[i] for i in dst), _fmt(F, col[k])))
                lines[-1] = lines[-1].replace("->  =", "-> =")
    return "\n".join(lines) + "\n"


def _split(index, n, k):
    out = []
    for _ in range(k):
        index, r = divmod(index, n)
        out.append(r)
    return list(reversed(out))


def save_spec(W, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(W))


def same_structure(V, W):
    """Equal labels, multiplication and structure maps."""
    if V.n != W.n or V.field != W.field or list(V.labels) != list(W.labels):
        return False
    if V.mu != W.mu:
        return False
    for name in REQUIRED + ("T3", "T4"):
        a, b = getattr(V, name), getattr(W, name)
        if (a is None) != (b is None) or (a is not None and a != b):
            return False
    return True


def report_json(data):
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_report(data, path):
    """Write a report dictionary (see :func:`wmba.suites.full_report`) as JSON."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_json(data))
