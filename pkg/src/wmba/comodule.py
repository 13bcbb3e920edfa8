"""Right and left comodules, fullness, morphisms and the R-bimodule structure."""

from .core import WmbError, NotFull, IllDefined, InternalInconsistency, base_R, fullness, T3
from .envs import wmb_env, _t
from .expr import compare_exprs
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, permutation, solve_factor, solve_slot,
    span_basis, rank_of, basis_vector, solution_space, Unsolvable,
)
from .report import Check, Report, compare


class ComoduleError(WmbError):
    pass


class RightComodule:
    """(V, λ, ϱ) with λ, ϱ : V⊗A -> V⊗A."""

    def __init__(self, W, dim, lam, rho, labels=None, name="V"):
        n = W.n
        if lam.dom != dim * n or lam.cod != dim * n or rho.shape != lam.shape:
            raise ComoduleError("coactions must be maps V⊗A -> V⊗A")
        self.W = W
        self.dim = dim
        self.lam = lam
        self.rho = rho
        self.labels = list(labels) if labels else ["v%d" % i for i in range(dim)]
        self.name = name
        self._cache = {}

    @property
    def field(self):
        return self.W.field

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def replace(self, lam=None, rho=None):
        return RightComodule(self.W, self.dim, lam if lam is not None else self.lam,
                             rho if rho is not None else self.rho, self.labels, self.name)

    def __repr__(self):
        return "RightComodule(%s, dim=%d)" % (self.name, self.dim)


class LeftComodule:
    """(V, λ, ϱ) with λ, ϱ : A⊗V -> A⊗V."""

    def __init__(self, W, dim, lam, rho, labels=None, name="V"):
        n = W.n
        if lam.dom != dim * n or lam.cod != dim * n or rho.shape != lam.shape:
            raise ComoduleError("coactions must be maps A⊗V -> A⊗V")
        self.W = W
        self.dim = dim
        self.lam = lam
        self.rho = rho
        self.labels = list(labels) if labels else ["v%d" % i for i in range(dim)]
        self.name = name

    @property
    def field(self):
        return self.W.field

    def __repr__(self):
        return "LeftComodule(%s, dim=%d)" % (self.name, self.dim)


# environments ---------------------------------------------------------------------

def add_comodule(env, C, space="V", suffix=""):
    """Bind lam, rho and the derived maps of C under ``suffix``."""
    env.spaces[space] = C.dim
    env.labels[space] = C.labels
    sp = space
    d = env.define
    d("lam" + suffix, _t(C.lam, sp + " A", sp + " A"))
    d("rho" + suffix, _t(C.rho, sp + " A", sp + " A"))
    d("actRA" + suffix, lambda: _t(act_right_A(C), sp + " A", sp))
    d("actLA" + suffix, lambda: _t(act_left_A(C), "A " + sp, sp))
    d("actR" + suffix, lambda: _t(r_bimodule(C).right_act, sp + " R", sp))
    d("actL" + suffix, lambda: _t(r_bimodule(C).left_act, "R " + sp, sp))
    d("E1" + sp, lambda: _t(E1_general(C), sp + " A", sp + " A"))
    d("E2" + sp, lambda: _t(E2_general(C), sp + " A", sp + " A"))
    return env


def comodule_env(C):
    env = C.cached("env", lambda: add_comodule(wmb_env(C.W), C))
    return env


# definition checks ---------------------------------------------------------------------

_P = "perm{V,A,A;1,3,2}"

DEFINING = [
    ("comp", "(V ox mu).%s.(lam ox A).%s" % (_P, _P), "(V ox mu).(rho ox A)"),
    ("l-i-norm", "(lam ox A).lam^{13}.(V ox E1)", "(lam ox A).lam^{13}"),
    ("l-coass", "(lam ox A).lam^{13}.(V ox T1)", "(V ox T1).(lam ox A)"),
    ("r-i-norm", "(rho ox A).rho^{13}.(V ox E2)", "(rho ox A).rho^{13}"),
    ("r-coass", "(rho ox A).rho^{13}.(V ox T3)", "(V ox T3).(rho ox A)"),
]

CONSEQUENCES = [
    ("lam right A-linear", "lam.(V ox mu)", "(V ox mu).(lam ox A)"),
    ("rho left A-linear", "rho.(V ox mu)", "(V ox mu).%s.(rho ox A).%s" % (_P, _P)),
    ("prep 2.a", "(V ox E1).(lam ox A).lam^{13}", "(lam ox A).lam^{13}"),
    ("prep 2.b", "(rho ox A).rho^{13}.(V ox E2)", "(rho ox A).rho^{13}"),
    ("prep 3.b", "(V ox E2).(rho ox A).rho^{13}", "(rho ox A).rho^{13}"),
    ("prep 4.b", "(lam ox A).lam^{13}.(V ox T4)", "(V ox T4).lam^{13}"),
    ("prep 4.c", "(lam ox A).(V ox T3).rho^{13}", "(V ox T3).(lam ox A)"),
    ("prep 4.e", "(rho ox A).rho^{13}.(V ox T2)", "(V ox T2).rho^{13}"),
    ("prep 4.f", "(rho ox A).(V ox T1).lam^{13}", "(V ox T1).(rho ox A)"),
]


def check_right_comodule(C):
    """Compatibility, normalisation and coassociativity on both sides."""
    env = comodule_env(C)
    rep = Report("right comodule %s" % C.name)
    for name, l, r in DEFINING + CONSEQUENCES:
        rep.add(compare_exprs(env, name, l, r))
    if rep["comp"].ok:
        lside = rep["l-i-norm"].ok and rep["l-coass"].ok
        rside = rep["r-i-norm"].ok and rep["r-coass"].ok
        rep.add(Check("lam and rho sides agree", lside == rside,
                      detail="" if lside == rside else "lam side %s, rho side %s" % (lside, rside)))
    return rep


def is_comodule(C):
    rep = check_right_comodule(C)
    return all(rep[k].ok for k in ("comp", "l-i-norm", "l-coass"))


def check_left_comodule(C):
    W = C.W
    env = add_left(wmb_env(W), C)
    rep = Report("left comodule %s" % C.name)
    # (a⊗1)λ(b⊗v) = ϱ(a⊗v)(b⊗1)
    rep.add(compare_exprs(env, "left_comp", "(mu ox V).(A ox lamL)", "(mu ox V).perm{A,V,A;1,3,2}.(rhoL ox A).perm{A,A,V;1,3,2}"))
    rep.add(compare_exprs(env, "left_norm", "(A ox lamL).lamL^{13}.(E1 ox V)", "(A ox lamL).lamL^{13}"))
    rep.add(compare_exprs(env, "left_coass", "(A ox lamL).lamL^{13}.(T1 ox V)", "(T1 ox V).lamL^{13}"))
    return rep


def add_left(env, C, space="V"):
    env.spaces[space] = C.dim
    env.labels[space] = C.labels
    env.define("lamL", _t(C.lam, "A " + space, "A " + space))
    env.define("rhoL", _t(C.rho, "A " + space, "A " + space))
    return env


# fullness -------------------------------------------------------------------------------

def _leg_vectors(m, vdim, n):
    """The V-legs (V⊗ω)m(x) for all inputs x and coordinate functionals ω."""
    vecs = []
    for col in m.cols:
        by_a = {}
        for idx, c in col.items():
            v, a = divmod(idx, n)
            by_a.setdefault(a, {})[v] = c
        vecs.extend(by_a.values())
    return vecs


def leg_spans(C):
    n, F = C.W.n, C.field
    ls = span_basis(_leg_vectors(C.lam, C.dim, n), C.dim, F)
    rs = span_basis(_leg_vectors(C.rho, C.dim, n), C.dim, F)
    return ls, rs


def is_full(C):
    """Whether the V-legs of λ (equivalently of ϱ) span V."""
    def go():
        ls, rs = leg_spans(C)
        n, F = C.W.n, C.field
        both = rank_of(ls.cols + rs.cols, C.dim, F)
        if both != ls.dom or both != rs.dom:
            raise InternalInconsistency("λ-leg span and ϱ-leg span differ")
        return ls.dom == C.dim
    return C.cached("full", go)


def require_full(C):
    if not is_full(C):
        raise NotFull("comodule %s is not full" % C.name)


# canonical comodules ---------------------------------------------------------------------

def regular_comodule(W):
    """(A, T1, T3)."""
    return RightComodule(W, W.n, W.T1, T3(W), W.labels, "A")


def _expand_E(W):
    """K1, K2 : A -> R⊗A with E(1⊗a) = K1(a) and (1⊗a)E = K2(a)."""
    def go():
        B = base_R(W)
        n, F, r = W.n, W.field, B.dim
        I = W.I
        rA, Ar = B.act_left(), B.act_right()
        # P1(r⊗a'⊗c⊗b) = rc ⊗ a'b ; L1(a⊗c⊗b) = E1(c⊗ab)
        P1 = compose(tensor(rA, W.mu), permutation([r, n, n, n], [0, 2, 1, 3], F))
        L1 = compose_all(W.E1, tensor(I, W.mu), permutation([n, n, n], [1, 0, 2], F))
        P2 = compose(tensor(Ar, W.mu), permutation([r, n, n, n], [2, 0, 3, 1], F))
        L2 = compose_all(W.E2, tensor(I, compose(W.mu, W.tw)), permutation([n, n, n], [1, 0, 2], F))
        try:
            K1 = solve_slot(P1, L1, n, r * n, before=1, after=n * n, unique=True)
            K2 = solve_slot(P2, L2, n, r * n, before=1, after=n * n, unique=True)
        except Unsolvable as e:
            raise IllDefined("E(1⊗a) or (1⊗a)E does not lie in R⊗A: %s" % e) from None
        return K1, K2
    return W.cached("E_in_RA", go)


def base_comodule(W):
    """R with λ(r⊗a) = E(1⊗ra) and ϱ(r⊗a) = (1⊗ar)E."""
    def go():
        B = base_R(W)
        K1, K2 = _expand_E(W)
        F, r, n = W.field, B.dim, W.n
        lam = compose(K1, B.act_left())
        rho = compose_all(K2, B.act_right(), permutation([r, n], [1, 0], F))
        return RightComodule(W, r, lam, rho, list(B.alg.labels), "R")
    return W.cached("base_comodule", go)


def trivial_comodule(W, dim=1):
    """k^dim with zero coactions; a comodule that is never full for dim > 0."""
    z = LinMap(dim * W.n, dim * W.n, [{} for _ in range(dim * W.n)], W.field)
    return RightComodule(W, dim, z, z, name="zero")


# morphisms -------------------------------------------------------------------------------

def is_morphism(f, C, D):
    """Whether f : V -> V' intertwines λ (equivalently ϱ)."""
    if f.dom != C.dim or f.cod != D.dim:
        raise ComoduleError("map has the wrong shape")
    I = C.W.I
    fa = tensor(f, I)
    a = compose(D.lam, fa) == compose(fa, C.lam)
    b = compose(D.rho, fa) == compose(fa, C.rho)
    if a != b:
        raise InternalInconsistency("the λ and ϱ morphism conditions disagree")
    return a


def hom_space(C, D):
    """A basis of the comodule morphisms C -> D."""
    I = C.W.I

    def residual(f):
        fa = tensor(f, I)
        return [compose(D.lam, fa) - compose(fa, C.lam), compose(D.rho, fa) - compose(fa, C.rho)]
    return solution_space(C.dim, D.dim, residual, C.field)


# the R-bimodule structure ----------------------------------------------------------------

def act_right_A(C):
    """v⊗a -> v Π̄^R(a) = (V⊗ε)λ(v⊗a)."""
    return compose(tensor(identity(C.dim, C.field), C.W.eps), C.lam)


def act_left_A(C):
    """a⊗v -> Π^R(a) v = (V⊗ε)ϱ(v⊗a)."""
    F = C.field
    return compose_all(tensor(identity(C.dim, F), C.W.eps), C.rho, permutation([C.W.n, C.dim], [1, 0], F))


class RBimodule:
    def __init__(self, right_act, left_act):
        self.right_act = right_act      # V⊗R -> V
        self.left_act = left_act        # R⊗V -> V


def r_bimodule(C):
    def go():
        require_full(C)
        W = C.W
        B = base_R(W)
        F = C.field
        Iv = identity(C.dim, F)
        fR, gA = act_right_A(C), act_left_A(C)
        try:
            right = solve_factor(tensor(Iv, B.from_pibar), fR, "left")
            left = solve_factor(tensor(B.from_pi, Iv), gA, "left")
        except Unsolvable:
            raise IllDefined("R-actions on %s are not well defined" % C.name) from None
        if compose(right, tensor(Iv, B.from_pibar)) != fR:
            raise IllDefined("right R-action on %s depends on the preimage" % C.name)
        if compose(left, tensor(B.from_pi, Iv)) != gA:
            raise IllDefined("left R-action on %s depends on the preimage" % C.name)
        return RBimodule(right, left)
    return C.cached("rbim", go)


def bimodule_checks(C):
    M = r_bimodule(C)
    B = base_R(C.W)
    F = C.field
    Iv, Ir = identity(C.dim, F), identity(B.dim, F)
    rt, lt = M.right_act, M.left_act
    lab = [C.labels, B.alg.labels, B.alg.labels]
    out = [
        compare("right associative", compose(rt, tensor(rt, Ir)), compose(rt, tensor(Iv, B.mult)), lab),
        compare("left associative", compose(lt, tensor(Ir, lt)), compose(lt, tensor(B.mult, Iv))),
        compare("actions commute", compose(rt, tensor(lt, Ir)), compose(lt, tensor(Ir, rt))),
        Check("right action surjective", rt.rank() == C.dim),
        Check("left action surjective", lt.rank() == C.dim),
    ]
    return out


def check_morphism_bilinear(f, C, D):
    """f(v r) = f(v) r and f(r v) = r f(v)."""
    MC, MD = r_bimodule(C), r_bimodule(D)
    F = C.field
    Ir = identity(base_R(C.W).dim, F)
    return [
        compare("right R-linear", compose(f, MC.right_act), compose(MD.right_act, tensor(f, Ir))),
        compare("left R-linear", compose(f, MC.left_act), compose(MD.left_act, tensor(Ir, f))),
    ]


def E1_general(C):
    """v⊗a -> E(v⊗a), expanding E(1⊗a) in R⊗A and letting R act on v."""
    def go():
        W = C.W
        K1, _ = _expand_E(W)
        r, n, F = base_R(W).dim, W.n, C.field
        lt = r_bimodule(C).left_act
        m = compose_all(tensor(lt, W.I), permutation([C.dim, r, n], [1, 0, 2], F), tensor(identity(C.dim, F), K1))
        return m
    return C.cached("E1", go)


def E2_general(C):
    def go():
        W = C.W
        _, K2 = _expand_E(W)
        rt = r_bimodule(C).right_act
        return compose(tensor(rt, W.I), tensor(identity(C.dim, C.field), K2))
    return C.cached("E2", go)


# the unital case ---------------------------------------------------------------------------

def unit_of(A):
    """The unit of A as a coordinate dict, or None."""
    n, F = A.dim, A.field
    if n == 0:
        return {}
    lhs, rhs = [], []
    I = identity(n, F)
    for b in range(n):
        eb = basis_vector(b, n, F)
        lhs.append(compose(A.mult, tensor(I, eb)))
        lhs.append(compose(A.mult, tensor(eb, I)))
        rhs.extend([eb, eb])
    from .linalg import vstack
    try:
        return solve_factor(vstack(*lhs), vstack(*rhs), "right").cols[0]
    except Unsolvable:
        return None


def counital_check(C):
    """For unital A: (V⊗ε)τ = V with τ = λ(-⊗1); returns (counital, full)."""
    W = C.W
    u = unit_of(W.alg)
    if u is None:
        raise ComoduleError("the algebra has no unit")
    F = C.field
    uv = LinMap(1, W.n, [dict(u)], F)
    Iv = identity(C.dim, F)
    tau = compose(C.lam, tensor(Iv, uv))
    tau2 = compose(C.rho, tensor(Iv, uv))
    if tau != tau2:
        raise InternalInconsistency("λ(-⊗1) != ϱ(-⊗1)")
    counital = compose(tensor(Iv, W.eps), tau) == Iv
    return counital, is_full(C)
