"""Right integrals, the harpoon action and integrals as comodule maps A -> R."""

from .algebra import make_multiplier, extend_map, NotAMultiplier, Multiplier
from .antipode import G1
from .comodule import regular_comodule, base_comodule, is_morphism, hom_space
from .core import WmbError, T3, F_maps, pi_actions, base_R, delta_maps, regular
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, basis_vector, solve_factor, nullspace,
    span_basis, vec, solution_space, zero, Unsolvable,
)
from .report import Check, compare


class MultiplierMismatch(WmbError):
    pass


class EquivalenceBroken(WmbError):
    pass


class NotFirm(WmbError):
    pass


def functional(W, values):
    """The functional A -> k with the given values on the basis."""
    F = W.field
    return LinMap(W.n, 1, [{0: F(v)} if v else {} for v in values], F)


def dual_basis(W):
    return [functional(W, [1 if i == j else 0 for i in range(W.n)]) for j in range(W.n)]


# the harpoon ------------------------------------------------------------------------------

def harpoon_maps(W, psi):
    """(l, r) with l(a⊗b) = (a⇀ψ)b and r(a⊗b) = b(a⇀ψ)."""
    regular(W)
    pI = tensor(psi, W.I)
    return compose(pI, W.T1), compose(pI, T3(W))


def harpoon(W, psi, a):
    """The multiplier a⇀ψ; ``a`` is a basis index or a coordinate dict."""
    l, r = harpoon_maps(W, psi)
    n, F = W.n, W.field
    v = LinMap(1, n, [a if isinstance(a, dict) else {a: F.one}], F)
    try:
        return make_multiplier(W.alg, compose(l, tensor(v, W.I)), compose(r, tensor(v, W.I)))
    except NotAMultiplier as e:
        raise MultiplierMismatch(str(e)) from None


def _delta_bar(W):
    """Δ̄ : M(A) -> M(A⊗A) extending Δ, with Δ̄(1) = E."""
    def go():
        from .algebra import tensor_alg
        AA = tensor_alg(W.alg, W.alg)
        DL, DR = delta_maps(W)
        return extend_map(W.alg, AA, DL, DR, make_multiplier(AA, W.E1, W.E2))
    return W.cached("delta_bar", go)


# the four conditions ----------------------------------------------------------------------

def condition_a(W, psi):
    pI = tensor(psi, W.I)
    return compose(pI, W.T1) == compose(pI, G1(W))


def condition_b(W, psi):
    pI = tensor(psi, W.I)
    return compose(pI, T3(W)) == compose(pI, F_maps(W)[1])


def condition_c(W, psi):
    I = W.I
    bar = _delta_bar(W)
    for a in range(W.n):
        m = harpoon(W, psi, a)
        d = bar(m)
        if d.lam != compose(tensor(I, m.lam), W.E1) or d.rho != compose(W.E2, tensor(I, m.rho)):
            return False
    return True


def _pi_r_span(W):
    def go():
        l = pi_actions(W)["piR"][0]
        n, F = W.n, W.field
        vs = [vec(compose(l, tensor(basis_vector(x, n, F), W.I))) for x in range(n)]
        return span_basis(vs, n * n, F)
    return W.cached("piR_span", go)


def condition_d(W, psi):
    l, _ = harpoon_maps(W, psi)
    n, F = W.n, W.field
    span = _pi_r_span(W)
    for a in range(n):
        v = vec(compose(l, tensor(basis_vector(a, n, F), W.I)))
        if span_basis(list(span.cols) + [v], n * n, F).dom != span.dom:
            return False
    return True


def integral_conditions(W, psi):
    return {
        "a": condition_a(W, psi),
        "b": condition_b(W, psi),
        "c": condition_c(W, psi),
        "d": condition_d(W, psi),
    }


def is_right_integral(W, psi):
    """Evaluate the four characterizations; they must agree."""
    conds = integral_conditions(W, psi)
    vals = set(conds.values())
    if len(vals) != 1:
        raise EquivalenceBroken("integral conditions disagree: %s" % conds)
    return vals.pop()


def integral_basis(W):
    """A basis of {ψ : (ψ⊗A)T1 = (ψ⊗A)G1}."""
    n, F = W.n, W.field
    if n == 0:
        return []
    D = W.T1 - G1(W)
    cols = []
    for a in range(n):
        cols.append(vec(compose(D.transpose(), tensor(basis_vector(a, n, F), W.I)).transpose()))
    K = LinMap(n, n * n * n * n, cols, F)
    return [LinMap(n, 1, [{0: c[i]} if c.get(i) else {} for i in range(n)], F)
            for c in nullspace(K).cols]


# k-duals and R-duals ----------------------------------------------------------------------

class RightRModule:
    """A finite-dimensional right module over the base algebra R."""

    def __init__(self, W, dim, act, labels=None, name="M"):
        self.W, self.dim, self.act = W, dim, act
        self.labels = labels or ["m%d" % i for i in range(dim)]
        self.name = name
        B = base_R(W)
        if act.dom != dim * B.dim or act.cod != dim:
            raise ValueError("action must be M⊗R -> M")


def module_R(W):
    B = base_R(W)
    return RightRModule(W, B.dim, B.mult, B.alg.labels if hasattr(B, "alg") else None, "R")


def module_A(W):
    return RightRModule(W, W.n, base_R(W).act_right(), W.labels, "A")


class LinDualIso:
    def __init__(self, M):
        self.M = M
        B = base_R(M.W)
        self.B = B
        if M.act.rank() != M.dim:
            raise NotFirm("the R-action on %s is not surjective" % M.name)
        Im = identity(M.dim, M.W.field)
        self._prep = compose(tensor(M.act, B.identity()), tensor(Im, B.delta))

    def to_lin(self, Psi):
        return compose(self.B.counit, Psi)

    def to_hom(self, psi):
        """m r -> (ψ⊗R)((m⊗1)δ(r)), factored through the action."""
        phi = compose(tensor(psi, self.B.identity()), self._prep)
        try:
            Psi = solve_factor(self.M.act, phi, "left")
        except Unsolvable:
            raise NotFirm("the induced map is not well defined") from None
        if compose(Psi, self.M.act) != phi:
            raise NotFirm("the induced map is not well defined")
        return Psi

    def is_module_map(self, Psi):
        M, B = self.M, self.B
        return compose(Psi, M.act) == compose(B.mult, tensor(Psi, B.identity()))

    def hom_basis(self):
        M, B = self.M, self.B
        return solution_space(M.dim, B.dim, lambda X: compose(X, M.act) - compose(B.mult, tensor(X, B.identity())), M.W.field)


def lin_dual_iso(M):
    """(to_hom, to_lin) between Lin(M, k) and Hom_R(M, R)."""
    iso = LinDualIso(M)
    return iso.to_hom, iso.to_lin


# integrals versus comodule maps ----------------------------------------------------------

def _psi_via_F(W, psi):
    """a -> (ψ⊗R)((a⊗1)F), read off from F(1⊗bc) = (Π̄^R⊗A)tw T4(c⊗b)."""
    from .core import T4
    n, F = W.n, W.field
    I = W.I
    B = base_R(W)
    pbR_r = pi_actions(W)["pibarR"][1]
    # (a, b, c) -> (ψ⊗A)(a Π̄^R(y) ⊗ x) where tw T4(c⊗b) = y⊗x
    phi = compose_all(tensor(psi, I), tensor(pbR_r, I), tensor(I, compose(W.tw, T4(W))), W.perm([0, 2, 1]))
    rA = B.act_left()
    carrier = LinMap(B.dim, n * n, [vec(compose(rA, tensor(basis_vector(r, B.dim, F), I))) for r in range(B.dim)], F)
    cols = []
    for a in range(n):
        left = compose(phi, tensor(basis_vector(a, n, F), I, I))
        La = solve_factor(W.mu, left, "left")
        if compose(La, W.mu) != left:
            raise EquivalenceBroken("(a⊗1)F is not well defined")
        try:
            r = solve_factor(carrier, LinMap(1, n * n, [vec(La)], F), "right")
        except Unsolvable:
            raise EquivalenceBroken("(ψ⊗R)((a⊗1)F) does not lie in R") from None
        cols.append(r.cols[0])
    return LinMap(n, B.dim, cols, F)


class IntegralHomBijection:
    def __init__(self, W):
        self.W = W
        self.B = base_R(W)
        self.source = regular_comodule(W)
        self.target = base_comodule(W)

    def to_hom(self, psi):
        return _psi_via_F(self.W, psi)

    def to_integral(self, Psi):
        return compose(self.B.counit, Psi)

    def hom_basis(self):
        return hom_space(self.source, self.target)

    def is_comodule_map(self, Psi):
        return is_morphism(Psi, self.source, self.target)

    def is_module_map(self, Psi):
        B = self.B
        return compose(Psi, B.act_right()) == compose(B.mult, tensor(Psi, B.identity()))


def integral_hom_bijection(W):
    """(to_hom, to_integral) between right integrals and comodule maps A -> R."""
    b = IntegralHomBijection(W)
    return b.to_hom, b.to_integral


# registry checks --------------------------------------------------------------------------

def harpoon_check(W, psis=None):
    """((-)⇀ψ ⊗ A)T3(a⊗b) = (1⊗b)Δ̄(a⇀ψ), compared as left actions on A⊗A."""
    n, F = W.n, W.field
    I = W.I
    bar = _delta_bar(W)
    t3 = T3(W)
    psis = dual_basis(W) if psis is None else psis
    # (b, u, v) -> (1⊗b)(p⊗q) with (p⊗q) the image of u⊗v
    mult_b = compose(tensor(I, W.mu), W.perm([1, 0, 2]))
    for k, psi in enumerate(psis):
        l, _ = harpoon_maps(W, psi)
        lhs_all = compose_all(tensor(l, W.mu), W.perm([0, 2, 1, 3]))
        for a in range(n):
            ea = basis_vector(a, n, F)
            lhs = compose_all(lhs_all, tensor(compose(t3, tensor(ea, I)), I, I))
            m = harpoon(W, psi, a)
            rhs = compose(mult_b, tensor(I, bar(m).lam))
            c = compare("harpoon", lhs, rhs, [W.labels] * 3)
            if not c.ok:
                c.detail = "psi #%d, a = %s: %s" % (k, W.labels[a], c.detail)
                return c
    return Check("harpoon", True)


def _spanning_functionals(W):
    fs = dual_basis(W) + integral_basis(W)
    if fs:
        total = fs[0]
        for f in fs[1:]:
            total = total + f
        fs.append(total)
    return fs


def int_def_check(W):
    for k, psi in enumerate(_spanning_functionals(W)):
        conds = integral_conditions(W, psi)
        if len(set(conds.values())) != 1:
            return Check("int_def", False, detail="functional #%d: %s" % (k, conds))
    return Check("int_def", True)


def roundtrip_check(W):
    b = IntegralHomBijection(W)
    ints = integral_basis(W)
    homs = b.hom_basis()
    if len(ints) != len(homs):
        return Check("int_roundtrip", False, detail="%d integrals, %d comodule maps" % (len(ints), len(homs)))
    for psi in ints:
        Psi = b.to_hom(psi)
        if not (b.is_comodule_map(Psi) and b.is_module_map(Psi)):
            return Check("int_roundtrip", False, detail="to_hom(psi) is not a comodule and module map")
        if b.to_integral(Psi) != psi:
            return Check("int_roundtrip", False, detail="to_integral(to_hom(psi)) != psi")
    for Psi in homs:
        psi = b.to_integral(Psi)
        if not condition_a(W, psi):
            return Check("int_roundtrip", False, detail="eps_R Psi is not a right integral")
        if b.to_hom(psi) != Psi:
            return Check("int_roundtrip", False, detail="to_hom(to_integral(Psi)) != Psi")
    return Check("int_roundtrip", True)
