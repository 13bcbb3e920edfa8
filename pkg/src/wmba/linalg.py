"""Exact linear maps between finite-dimensional coordinate spaces.

A LinMap stores its matrix column by column; each column is a dict
``row -> nonzero scalar``.  Tensor products use row-major ordering with
the left factor slowest, so ``tensor(f, g)`` is the Kronecker product.
"""

from itertools import product
from math import prod

from .field import QQ


class LinAlgError(ValueError):
    pass


class DimensionMismatch(LinAlgError):
    pass


class Unsolvable(LinAlgError):
    pass


class NotIdempotent(LinAlgError):
    pass


class UnsupportedPattern(LinAlgError):
    pass


class LinMap:
    __slots__ = ("dom", "cod", "cols", "field")

    def __init__(self, dom, cod, cols, field=QQ):
        if len(cols) != dom:
            raise DimensionMismatch("expected %d columns, got %d" % (dom, len(cols)))
        self.dom = dom
        self.cod = cod
        self.cols = tuple(cols)
        self.field = field

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows, dom=None, field=QQ):
        cod = len(rows)
        if dom is None:
            dom = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(dom)]
        for i, row in enumerate(rows):
            if len(row) != dom:
                raise DimensionMismatch("ragged matrix")
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    cols[j][i] = x
        return cls(dom, cod, cols, field)

    @classmethod
    def from_columns(cls, cod, columns, field=QQ):
        """Columns given as dicts (or sequences of length cod)."""
        cols = []
        for c in columns:
            if isinstance(c, dict):
                cols.append({i: field(x) for i, x in c.items() if x})
            else:
                if len(c) != cod:
                    raise DimensionMismatch("column of length %d, expected %d" % (len(c), cod))
                cols.append({i: field(x) for i, x in enumerate(c) if x})
        for c in cols:
            for i in c:
                if not 0 <= i < cod:
                    raise DimensionMismatch("row index %d out of range" % i)
        return cls(len(cols), cod, cols, field)

    @classmethod
    def from_function(cls, dom, cod, fn, field=QQ):
        """``fn(j)`` returns the image of basis vector j as a dict."""
        return cls.from_columns(cod, [fn(j) for j in range(dom)], field)

    # access -----------------------------------------------------------
    def entry(self, i, j):
        return self.cols[j].get(i, self.field.zero)

    def to_rows(self):
        z = self.field.zero
        rows = [[z] * self.dom for _ in range(self.cod)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def column(self, j):
        return dict(self.cols[j])

    def apply(self, vec):
        """Image of a coordinate vector given as a dict or a sequence."""
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        out = {}
        for j, x in items:
            if not x:
                continue
            for i, y in self.cols[j].items():
                v = out.get(i)
                v = x * y if v is None else v + x * y
                if v:
                    out[i] = v
                else:
                    del out[i]
        return out

    @property
    def shape(self):
        return (self.cod, self.dom)

    # algebra ----------------------------------------------------------
    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        _same_shape(self, other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                v = c.get(i)
                v = x if v is None else v + x
                if v:
                    c[i] = v
                else:
                    del c[i]
            cols.append(c)
        return LinMap(self.dom, self.cod, cols, self.field)

    def __neg__(self):
        return LinMap(self.dom, self.cod, [{i: -x for i, x in c.items()} for c in self.cols], self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = self.field(s)
        if not s:
            return zero(self.dom, self.cod, self.field)
        return LinMap(self.dom, self.cod, [{i: s * x for i, x in c.items()} for c in self.cols], self.field)

    def transpose(self):
        cols = [dict() for _ in range(self.cod)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                cols[i][j] = x
        return LinMap(self.cod, self.dom, cols, self.field)

    T = property(transpose)

    def is_zero(self):
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.cols == other.cols

    __hash__ = None

    def witness(self, other):
        """First (row, column) where the two maps differ, or None."""
        _same_shape(self, other)
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                rows = sorted(set(a) | set(b))
                for i in rows:
                    if a.get(i, 0) != b.get(i, 0):
                        return (i, j)
        return None

    def rank(self):
        return len(_rref(self.cols))

    def image_basis(self):
        """Reduced basis of the column span (a cod x r map)."""
        return span_basis([c for c in self.cols], self.cod, self.field)

    def kernel(self):
        """Basis of the null space as the columns of a dom x k map."""
        return nullspace(self)

    def __repr__(self):
        return "LinMap(%d->%d, nnz=%d)" % (self.dom, self.cod, sum(len(c) for c in self.cols))


def _same_shape(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise DimensionMismatch("shapes %s and %s differ" % (f.shape, g.shape))


def identity(n, field=QQ):
    return LinMap(n, n, [{i: field.one} for i in range(n)], field)


def zero(dom, cod, field=QQ):
    return LinMap(dom, cod, [{} for _ in range(dom)], field)


def compose(g, f):
    """The composite g∘f (apply f first)."""
    if f.cod != g.dom:
        raise DimensionMismatch("cannot compose %s after %s" % (g.shape, f.shape))
    gcols = g.cols
    cols = []
    for c in f.cols:
        out = {}
        for j, x in c.items():
            for i, y in gcols[j].items():
                v = out.get(i)
                v = x * y if v is None else v + x * y
                if v:
                    out[i] = v
                else:
                    del out[i]
        cols.append(out)
    return LinMap(f.dom, g.cod, cols, f.field)


def compose_all(*maps):
    """compose_all(h, g, f) == h∘g∘f."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def tensor(*maps):
    if not maps:
        return identity(1)
    out = maps[0]
    for g in maps[1:]:
        out = _kron(out, g)
    return out


def _kron(f, g):
    cols = []
    gd, gc = g.dom, g.cod
    for cf in f.cols:
        for cg in g.cols:
            cols.append({r1 * gc + r2: x * y for r1, x in cf.items() for r2, y in cg.items()})
    return LinMap(f.dom * gd, f.cod * gc, cols, f.field)


def permutation(dims, perm, field=QQ):
    """Reorder tensor factors: output factor k is input factor perm[k]."""
    dims = list(dims)
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise UnsupportedPattern("not a permutation: %r" % (perm,))
    out_dims = [dims[p] for p in perm]
    strides = [prod(out_dims[k + 1:]) for k in range(n)]
    pos = [0] * n
    for k, p in enumerate(perm):
        pos[p] = k
    cols = []
    one = field.one
    for idx in product(*[range(d) for d in dims]):
        r = 0
        for p, i in enumerate(idx):
            r += i * strides[pos[p]]
        cols.append({r: one})
    return LinMap(prod(dims), prod(dims), cols, field)


def flip(m, n, field=QQ):
    """The flip V⊗W -> W⊗V for dim V = m, dim W = n."""
    return permutation([m, n], [1, 0], field)


def leg(f, pattern, ambient, f_cod=None):
    """Let f act on the ambient factors listed in ``pattern``.

    ``pattern`` gives, for each tensor factor of f (in order), its
    1-based position in the ambient product, e.g. "13" or "31".
    ``ambient`` lists the dimensions of all ambient factors; ``f_cod``
    the output dimensions of f's factors (default: unchanged).
    """
    if isinstance(pattern, str):
        pattern = [int(ch) for ch in pattern]
    pattern = [p - 1 for p in pattern]
    ambient = list(ambient)
    n = len(ambient)
    if len(set(pattern)) != len(pattern) or any(not 0 <= p < n for p in pattern):
        raise UnsupportedPattern("bad leg pattern %r for %d factors" % (pattern, n))
    f_dom = [ambient[p] for p in pattern]
    if prod(f_dom) != f.dom:
        raise DimensionMismatch("f has domain %d, legs give %d" % (f.dom, prod(f_dom)))
    f_cod = list(f_cod) if f_cod is not None else f_dom
    if len(f_cod) != len(pattern) or prod(f_cod) != f.cod:
        raise DimensionMismatch("bad codomain factors for leg")
    rest = [p for p in range(n) if p not in pattern]
    order = pattern + rest
    field = f.field
    pre = permutation(ambient, order, field)
    mid = tensor(f, identity(prod(ambient[p] for p in rest), field))
    mid_dims = f_cod + [ambient[p] for p in rest]
    back = [0] * n
    for k, p in enumerate(order):
        back[p] = k
    post = permutation(mid_dims, back, field)
    return compose(post, compose(mid, pre))


# elimination --------------------------------------------------------------

def _rref(rows, limit=None):
    """Reduced row echelon form of sparse rows.

    Returns a dict pivot_col -> normalised row.  Pivots are leftmost
    nonzero columns; when ``limit`` is given, only columns < limit may
    carry pivots and a row whose leading entry lies at or beyond it is
    reported through the key ``None`` (an inconsistency).
    """
    piv = {}
    bad = None
    for r in rows:
        if not r:
            continue
        row = dict(r)
        for c in [c for c in row if c in piv]:
            x = row.get(c)
            if not x:
                continue
            for k, y in piv[c].items():
                v = row.get(k)
                v = -x * y if v is None else v - x * y
                if v:
                    row[k] = v
                else:
                    del row[k]
        if not row:
            continue
        p = min(row)
        if limit is not None and p >= limit:
            bad = row
            continue
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for c, prow in piv.items():
            x = prow.get(p)
            if x:
                for k, y in row.items():
                    v = prow.get(k)
                    v = -x * y if v is None else v - x * y
                    if v:
                        prow[k] = v
                    else:
                        del prow[k]
        piv[p] = row
    if bad is not None:
        piv[None] = bad
    return piv


def span_basis(vectors, dim, field=QQ):
    """Reduced column echelon basis of the span of ``vectors``.

    Vectors are dicts or sequences of length ``dim``; the result is a
    dim x r LinMap whose columns are the basis, ordered by pivot.
    """
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            rows.append({i: x for i, x in v.items() if x})
        else:
            rows.append({i: field(x) for i, x in enumerate(v) if x})
    piv = _rref(rows)
    cols = [piv[p] for p in sorted(piv)]
    return LinMap(len(cols), dim, cols, field)


def rank_of(vectors, dim, field=QQ):
    return span_basis(vectors, dim, field).dom


def nullspace(m):
    piv = _rref(m.transpose().cols)  # rows of m
    free = [j for j in range(m.dom) if j not in piv]
    one = m.field.one
    cols = []
    for f in free:
        v = {f: one}
        for p, row in piv.items():
            x = row.get(f)
            if x:
                v[p] = -x
        cols.append(v)
    return LinMap(len(cols), m.dom, cols, m.field)


def solve_factor(a, b, side="right"):
    """Solve a∘x = b (side='right') or x∘a = b (side='left') exactly.

    Free variables are set to zero.  Raises Unsolvable when inconsistent.
    """
    if side == "left":
        return solve_factor(a.transpose(), b.transpose(), "right").transpose()
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")
    if a.cod != b.cod:
        raise DimensionMismatch("a.cod=%d but b.cod=%d" % (a.cod, b.cod))
    n = a.dom
    rows = [dict() for _ in range(a.cod)]
    for j, c in enumerate(a.cols):
        for i, x in c.items():
            rows[i][j] = x
    for j, c in enumerate(b.cols):
        for i, x in c.items():
            rows[i][n + j] = x
    piv = _rref(rows, limit=n)
    if None in piv:
        raise Unsolvable("inconsistent linear system")
    cols = [dict() for _ in range(b.dom)]
    for p, row in piv.items():
        for k, x in row.items():
            if k >= n:
                cols[k - n][p] = x
    return LinMap(b.dom, n, cols, a.field)


def split_idempotent(e):
    """Factor an idempotent e = incl∘proj with proj∘incl = id."""
    if e.dom != e.cod:
        raise DimensionMismatch("idempotent must be square")
    if compose(e, e) != e:
        raise NotIdempotent("e∘e != e")
    incl = e.image_basis()
    proj = solve_factor(incl, e, "right")
    return proj, incl


def hstack(*maps):
    """Block row [f | g | ...]: maps sharing a codomain, domains summed."""
    cod = maps[0].cod
    cols = []
    for m in maps:
        if m.cod != cod:
            raise DimensionMismatch("hstack needs a common codomain")
        cols.extend(m.cols)
    return LinMap(len(cols), cod, cols, maps[0].field)


def vstack(*maps):
    """Block column: maps sharing a domain, codomains stacked."""
    return hstack(*[m.transpose() for m in maps]).transpose()


def vec(m):
    """Flatten a LinMap (column-major) into a coordinate dict."""
    out = {}
    for j, c in enumerate(m.cols):
        for i, x in c.items():
            out[j * m.cod + i] = x
    return out


def unvec(v, dom, cod, field=QQ):
    cols = [dict() for _ in range(dom)]
    for k, x in v.items():
        if x:
            cols[k // cod][k % cod] = x
    return LinMap(dom, cod, cols, field)


def solution_space(dom, cod, constraint, field=QQ):
    """All X: dom -> cod with constraint(X) == 0, for a linear constraint.

    ``constraint`` maps a LinMap to a LinMap (or a list of them).  The
    result is a list of basis LinMaps.
    """
    if dom * cod == 0:
        return []
    images = []
    for j in range(dom):
        for i in range(cod):
            x = LinMap(dom, cod, [{i: field.one} if k == j else {} for k in range(dom)], field)
            out = constraint(x)
            if isinstance(out, LinMap):
                out = [out]
            flat = {}
            off = 0
            for o in out:
                for k, y in vec(o).items():
                    flat[off + k] = y
                off += o.dom * o.cod
            images.append(flat)
    m = LinMap(dom * cod, off, images, field)
    ker = nullspace(m)
    return [unvec(c, dom, cod, field) for c in ker.cols]


def basis_vector(i, n, field=QQ):
    """The map k -> k^n picking out e_i."""
    return LinMap(1, n, [{i: field.one}], field)


def solve_slot(P, L, x_dom, x_cod, before=1, after=1, unique=False):
    """Solve P∘(I_before ⊗ X ⊗ I_after) = L for X: x_dom -> x_cod."""
    field = P.field
    if P.dom != before * x_cod * after or L.dom != before * x_dom * after:
        raise DimensionMismatch("slot dimensions do not match")
    if P.cod != L.cod:
        raise DimensionMismatch("codomains differ")
    lhs, rhs = [], []
    for u in range(before):
        for w in range(after):
            eu, ew = basis_vector(u, before, field), basis_vector(w, after, field)
            lhs.append(compose(P, tensor(eu, identity(x_cod, field), ew)))
            rhs.append(compose(L, tensor(eu, identity(x_dom, field), ew)))
    if not lhs:
        return zero(x_dom, x_cod, field)
    M, B = vstack(*lhs), vstack(*rhs)
    X = solve_factor(M, B, "right")
    if unique and M.rank() != x_cod:
        raise Unsolvable("solution is not unique")
    return X


def decode(index, dims):
    """Split a flat tensor index into per-factor indices."""
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))
