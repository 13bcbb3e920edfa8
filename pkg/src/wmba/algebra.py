"""Finite-dimensional, possibly non-unital algebras and their multipliers."""

from .field import QQ
from .linalg import (
    LinMap, compose, tensor, identity, permutation, flip, solve_factor,
    span_basis, nullspace, hstack, vstack, zero, vec, Unsolvable, LinAlgError,
)


class AlgebraError(ValueError):
    pass


class NotAMultiplier(AlgebraError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class PreconditionFailed(AlgebraError):
    pass


class SpanConditionFailed(AlgebraError):
    pass


class Inconsistent(AlgebraError):
    pass


class FiniteAlgebra:
    """An associative algebra given by its multiplication A⊗A -> A."""

    def __init__(self, mult, labels=None):
        n = mult.cod
        if mult.dom != n * n:
            raise AlgebraError("multiplication must be A⊗A -> A")
        self.dim = n
        self.mult = mult
        self.field = mult.field
        self.labels = list(labels) if labels is not None else ["e%d" % i for i in range(n)]
        self._cache = {}

    @classmethod
    def from_table(cls, n, table, labels=None, field=QQ):
        """``table[(i, j)]`` is a dict k -> coefficient of e_k in e_i e_j."""
        cols = []
        for i in range(n):
            for j in range(n):
                cols.append(table.get((i, j), {}))
        return cls(LinMap.from_columns(n, cols, field), labels)

    def id(self):
        return identity(self.dim, self.field)

    def mul(self, a, b):
        """Product of two coordinate vectors (dicts)."""
        out = {}
        n = self.dim
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.mult.cols[i * n + j].items():
                    v = out.get(k, 0) + x * y * z
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def left_mult(self, a):
        """The map x -> a x."""
        n = self.dim
        return LinMap.from_function(n, n, lambda j: self.mul(a, {j: self.field.one}), self.field)

    def right_mult(self, b):
        """The map x -> x b."""
        n = self.dim
        return LinMap.from_function(n, n, lambda j: self.mul({j: self.field.one}, b), self.field)

    def is_associative(self):
        I = self.id()
        return compose(self.mult, tensor(self.mult, I)) == compose(self.mult, tensor(I, self.mult))

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self.mult == other.mult

    __hash__ = None

    def __repr__(self):
        return "FiniteAlgebra(dim=%d, field=%s)" % (self.dim, self.field.name)


def check_idempotent(A):
    return A.mult.rank() == A.dim


def _left_annihilator_map(A):
    # a -> (a e_b)_b ; injective iff (ab = 0 for all b => a = 0)
    n = A.dim
    blocks = [compose(A.mult, tensor(A.id(), LinMap(1, n, [{b: A.field.one}], A.field))) for b in range(n)]
    return vstack(*blocks) if blocks else zero(0, 0, A.field)


def _right_annihilator_map(A):
    n = A.dim
    blocks = [compose(A.mult, tensor(LinMap(1, n, [{b: A.field.one}], A.field), A.id())) for b in range(n)]
    return vstack(*blocks) if blocks else zero(0, 0, A.field)


def check_nondegenerate(A):
    if A.dim == 0:
        return True
    return _left_annihilator_map(A).rank() == A.dim and _right_annihilator_map(A).rank() == A.dim


def require_good(A):
    key = "good"
    if key not in A._cache:
        A._cache[key] = check_idempotent(A) and check_nondegenerate(A)
    if not A._cache[key]:
        raise PreconditionFailed("algebra must be idempotent and non-degenerate")


class Multiplier:
    """A pair (lam, rho) with a lam(b) = rho(a) b; lam is m·-, rho is -·m."""

    __slots__ = ("lam", "rho", "parent")

    def __init__(self, lam, rho, parent):
        self.lam = lam
        self.rho = rho
        self.parent = parent

    def __mul__(self, other):
        return Multiplier(compose(self.lam, other.lam), compose(other.rho, self.rho), self.parent)

    def __add__(self, other):
        return Multiplier(self.lam + other.lam, self.rho + other.rho, self.parent)

    def __sub__(self, other):
        return Multiplier(self.lam - other.lam, self.rho - other.rho, self.parent)

    def scale(self, s):
        return Multiplier(self.lam.scale(s), self.rho.scale(s), self.parent)

    def __eq__(self, other):
        return isinstance(other, Multiplier) and self.lam == other.lam and self.rho == other.rho

    __hash__ = None

    def left(self, a):
        """m · a"""
        return self.lam.apply(a)

    def right(self, a):
        """a · m"""
        return self.rho.apply(a)

    def vector(self):
        n = self.lam.dom
        v = vec(self.lam)
        off = n * n
        for k, x in vec(self.rho).items():
            v[off + k] = x
        return v

    def is_zero(self):
        return self.lam.is_zero() and self.rho.is_zero()

    def __repr__(self):
        return "Multiplier(dim=%d)" % self.lam.dom


def mp_residual(A, lam, rho):
    """Return (lhs, rhs) of a·lam(b) = rho(a)·b as maps A⊗A -> A."""
    I = A.id()
    return compose(A.mult, tensor(I, lam)), compose(A.mult, tensor(rho, I))


def make_multiplier(A, lam, rho):
    lhs, rhs = mp_residual(A, lam, rho)
    w = lhs.witness(rhs)
    if w is not None:
        a, b = divmod(w[1], A.dim)
        raise NotAMultiplier("a·lam(b) != rho(a)·b at (a, b) = (%s, %s)" % (A.labels[a], A.labels[b]), (a, b))
    return Multiplier(lam, rho, A)


def embed(A, a):
    if isinstance(a, int):
        a = {a: A.field.one}
    return Multiplier(A.left_mult(a), A.right_mult(a), A)


def unit_multiplier(A):
    return Multiplier(A.id(), A.id(), A)


def multiplier_from_left(A, lam):
    """The multiplier with left action lam (rho is forced by non-degeneracy)."""
    n = A.dim
    I = A.id()
    # rho(a) is the x with x b = a lam(b) for every b
    blocks_a, blocks_b = [], []
    for b in range(n):
        eb = LinMap(1, n, [{b: A.field.one}], A.field)
        blocks_a.append(compose(A.mult, tensor(I, eb)))
        blocks_b.append(compose(A.mult, tensor(I, compose(lam, eb))))
    try:
        rho = solve_factor(vstack(*blocks_a), vstack(*blocks_b), "right")
    except Unsolvable:
        raise NotAMultiplier("no right action matches the given left action") from None
    return make_multiplier(A, lam, rho)


def multiplier_from_right(A, rho):
    n = A.dim
    I = A.id()
    blocks_a, blocks_b = [], []
    for a in range(n):
        ea = LinMap(1, n, [{a: A.field.one}], A.field)
        blocks_a.append(compose(A.mult, tensor(ea, I)))
        blocks_b.append(compose(A.mult, tensor(compose(rho, ea), I)))
    try:
        lam = solve_factor(vstack(*blocks_a), vstack(*blocks_b), "right")
    except Unsolvable:
        raise NotAMultiplier("no left action matches the given right action") from None
    return make_multiplier(A, lam, rho)


class MultiplierAlgebra:
    """The finite model of M(A): the solution space of the multiplier equation."""

    def __init__(self, A):
        require_good(A)
        self.alg = A
        n = A.dim
        F = A.field
        # unknowns: vec(lam) then vec(rho); equations a lam(b) - rho(a) b = 0
        cols = []
        mult = A.mult
        for half in (0, 1):
            for j in range(n):          # column (input b or a)
                for i in range(n):      # row (output coordinate)
                    col = {}
                    for other in range(n):
                        if half == 0:
                            # lam(e_j) = e_i contributes e_other * e_i at eq (other, j)
                            terms = mult.cols[other * n + i]
                            base = (other * n + j) * n
                            sign = 1
                        else:
                            # rho(e_j) = e_i contributes -e_i * e_other at eq (j, other)
                            terms = mult.cols[i * n + other]
                            base = (j * n + other) * n
                            sign = -1
                        for k, x in terms.items():
                            col[base + k] = x if sign == 1 else -x
                    cols.append(col)
        system = LinMap(2 * n * n, n * n * n, cols, F)
        ker = nullspace(system)
        basis_vecs = span_basis(ker.cols, 2 * n * n, F)
        self.basis = []
        for c in basis_vecs.cols:
            lcols = [dict() for _ in range(n)]
            rcols = [dict() for _ in range(n)]
            for k, x in c.items():
                if k < n * n:
                    lcols[k // n][k % n] = x
                else:
                    k -= n * n
                    rcols[k // n][k % n] = x
            self.basis.append(Multiplier(LinMap(n, n, lcols, F), LinMap(n, n, rcols, F), A))
        self._matrix = basis_vecs

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, m):
        """Coordinates of a multiplier in ``basis`` (dict)."""
        target = LinMap(1, self._matrix.cod, [m.vector()], self.alg.field)
        try:
            x = solve_factor(self._matrix, target, "right")
        except Unsolvable:
            raise NotAMultiplier("not in the multiplier algebra") from None
        return x.cols[0]

    def element(self, coords):
        A = self.alg
        n = A.dim
        out = Multiplier(zero(n, n, A.field), zero(n, n, A.field), A)
        for k, x in coords.items():
            out = out + self.basis[k].scale(x)
        return out

    def map_matrix(self, mults):
        """Matrix (dim M(A) x len(mults)) of coordinates of a list of multipliers."""
        return LinMap(len(mults), self.dim, [self.coords(m) for m in mults], self.alg.field)


def multiplier_algebra(A):
    if "M" not in A._cache:
        A._cache["M"] = MultiplierAlgebra(A)
    return A._cache["M"]


def multiplier_basis(A):
    return multiplier_algebra(A).basis


def opposite(A):
    n = A.dim
    return FiniteAlgebra(compose(A.mult, flip(n, n, A.field)), A.labels)


def tensor_alg(A, B):
    a, b = A.dim, B.dim
    mult = compose(tensor(A.mult, B.mult), permutation([a, b, a, b], [0, 2, 1, 3], A.field))
    labels = ["%s⊗%s" % (x, y) for x in A.labels for y in B.labels]
    return FiniteAlgebra(mult, labels)


def ground_algebra(field=QQ):
    return FiniteAlgebra(LinMap(1, 1, [{0: field.one}], field), ["1"])


def extend_map(A, B, phi_left, phi_right, e):
    """Extend phi: A -> M(B) to M(A) -> M(B).

    phi is given by its actions ``phi_left``: A⊗B -> B (a⊗b -> phi(a)b)
    and ``phi_right``: B⊗A -> B (b⊗a -> b phi(a)); ``e`` is the
    idempotent multiplier on B that phi-bar(1) must equal.  Returns a
    function taking a Multiplier on A.
    """
    Ib = B.id()
    el, er = e.lam, e.rho
    if span_basis(phi_left.cols, B.dim, B.field) != span_basis(el.cols, B.dim, B.field):
        raise SpanConditionFailed("<phi(a)b> != <eb>")
    if span_basis(phi_right.cols, B.dim, B.field) != span_basis(er.cols, B.dim, B.field):
        raise SpanConditionFailed("<b phi(a)> != <be>")
    # multiplicativity of phi: phi(ab)c = phi(a)(phi(b)c)
    Ia = A.id()
    if compose(phi_left, tensor(A.mult, Ib)) != compose(phi_left, tensor(Ia, phi_left)):
        raise Inconsistent("phi is not multiplicative")
    left_sys = hstack(phi_left, Ib - el)
    right_sys = hstack(phi_right, Ib - er)
    zl = zero(B.dim, B.dim, B.field)

    def bar(m):
        try:
            L = solve_factor(left_sys, hstack(compose(phi_left, tensor(m.lam, Ib)), zl), "left")
            R = solve_factor(right_sys, hstack(compose(phi_right, tensor(Ib, m.rho)), zl), "left")
        except Unsolvable:
            raise Inconsistent("extension is not well defined") from None
        return make_multiplier(B, L, R)

    return bar
