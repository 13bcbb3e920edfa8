"""The monoidal category of full comodules: V⊗_R W as the image of G1."""

from .comodule import (
    RightComodule, ComoduleError, is_full, require_full, r_bimodule, is_morphism,
    act_left_A, act_right_A, regular_comodule, base_comodule, add_comodule,
    check_right_comodule,
)
from .core import WmbError, IllDefined, base_R
from .envs import wmb_env, _t
from .expr import compare_exprs
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, permutation, leg, solve_factor,
    split_idempotent, Unsolvable,
)
from .report import Check, Report, compare


class ParentMismatch(WmbError):
    pass


class FormulaMismatch(WmbError):
    pass


def _same_parent(V, W):
    if V.W is not W.W:
        raise ParentMismatch("comodules over different weak multiplier bialgebras")


def plain_tensor(V, W):
    """V⊗W with λ = λ_V^{13}(V⊗λ_W) and ϱ = (V⊗ϱ_W)ϱ_V^{13}."""
    _same_parent(V, W)
    A = V.W
    n, F = A.n, A.field
    amb = [V.dim, W.dim, n]
    Iv = identity(V.dim, F)
    lamV13 = leg(V.lam, [1, 3], amb)
    rhoV13 = leg(V.rho, [1, 3], amb)
    lam = compose(lamV13, tensor(Iv, W.lam))
    rho = compose(tensor(Iv, W.rho), rhoV13)
    labels = ["%s⊗%s" % (x, y) for x in V.labels for y in W.labels]
    return RightComodule(A, V.dim * W.dim, lam, rho, labels, "%s⊗%s" % (V.name, W.name))


def g1_pair(V, W):
    """The idempotent on V⊗W whose image is V⊗_R W, by two formulas.

    Θ(v r ⊗ w) = (v⊗1)δ(r)(1⊗w), and
    G1(Π^R(a)v ⊗ wΠ̄^R(b)) = v^ϱ ⊗ w^λ ε(a^ϱ b^λ).
    """
    _same_parent(V, W)
    key = ("g1", id(W))
    if key in V._cache:
        return V._cache[key]
    require_full(V)
    require_full(W)
    A = V.W
    B = base_R(A)
    n, F, r = A.n, A.field, B.dim
    dv, dw = V.dim, W.dim
    Iv, Iw = identity(dv, F), identity(dw, F)
    rtV = r_bimodule(V).right_act
    ltW = r_bimodule(W).left_act
    lhs1 = tensor(rtV, Iw)
    rhs1 = compose(tensor(rtV, ltW), tensor(Iv, B.delta, Iw))
    # inputs (v, a, w, b)
    lhs2 = compose(tensor(act_left_A(V), act_right_A(W)), permutation([dv, n, dw, n], [1, 0, 2, 3], F))
    eps_mu = compose(A.eps, A.mu)
    rhs2 = compose_all(tensor(Iv, Iw, eps_mu), permutation([dv, n, dw, n], [0, 2, 1, 3], F), tensor(V.rho, W.lam))
    try:
        th1 = solve_factor(lhs1, rhs1, "left")
        th2 = solve_factor(lhs2, rhs2, "left")
    except Unsolvable:
        raise FormulaMismatch("G1 on %s⊗%s is not well defined" % (V.name, W.name)) from None
    if compose(th1, lhs1) != rhs1 or compose(th2, lhs2) != rhs2:
        raise FormulaMismatch("G1 on %s⊗%s depends on the preimage" % (V.name, W.name))
    if th1 != th2:
        raise FormulaMismatch("the two formulas for G1 on %s⊗%s differ" % (V.name, W.name))
    if compose(th1, th1) != th1:
        raise FormulaMismatch("G1 is not idempotent")
    V._cache[key] = th1
    return th1


def coequalizer_dim(V, W):
    """dim V⊗_R W computed as the cokernel of the two R-actions on V⊗R⊗W."""
    F = V.field
    Iv, Iw = identity(V.dim, F), identity(W.dim, F)
    diff = tensor(r_bimodule(V).right_act, Iw) - tensor(Iv, r_bimodule(W).left_act)
    return V.dim * W.dim - diff.rank()


class ProductComodule:
    """V⊗_R W with the split (proj, incl) of G1 and the induced coactions."""

    def __init__(self, left, right, g1, proj, incl, product, plain):
        self.left, self.right = left, right
        self.g1 = g1
        self.proj, self.incl = proj, incl
        self.product = product
        self.plain = plain

    @property
    def dim(self):
        return self.product.dim


def tensor_over_R(V, W):
    key = ("otimesR", id(W))
    if key in V._cache:
        return V._cache[key]
    g = g1_pair(V, W)
    proj, incl = split_idempotent(g)
    plain = plain_tensor(V, W)
    I = V.W.I
    pa, ia = tensor(proj, I), tensor(incl, I)
    lam = compose_all(pa, plain.lam, ia)
    rho = compose_all(pa, plain.rho, ia)
    labels = ["%s⊗%s#%d" % (V.name, W.name, i) for i in range(proj.cod)]
    P = RightComodule(V.W, proj.cod, lam, rho, labels, "(%s⊗R%s)" % (V.name, W.name))
    out = ProductComodule(V, W, g, proj, incl, P, plain)
    V._cache[key] = out
    return out


def product_checks(PC):
    """Checks on a ⊗_R product: comodule, fullness, π colinear, R-actions."""
    V, W, P = PC.left, PC.right, PC.product
    F = V.field
    I = V.W.I
    out = []
    out.append(Check("G1 idempotent", compose(PC.g1, PC.g1) == PC.g1))
    out.append(Check("incl proj = G1", compose(PC.incl, PC.proj) == PC.g1))
    out.append(Check("proj incl = id", compose(PC.proj, PC.incl) == identity(P.dim, F)))
    out.append(Check("dimension = coequalizer", P.dim == coequalizer_dim(V, W)))
    out.append(Check("G1 colinear on V⊗W", is_morphism(PC.g1, PC.plain, PC.plain)))
    out.append(Check("pi colinear", is_morphism(PC.proj, PC.plain, P)))
    pa = tensor(PC.proj, I)
    # uniqueness: the induced coaction is forced by colinearity of π
    out.append(compare("coaction forced by pi", compose(P.lam, pa), compose(pa, PC.plain.lam)))
    rep = check_right_comodule(P)
    out.append(Check("product is a comodule", all(rep[k].ok for k in ("comp", "l-i-norm", "l-coass", "r-i-norm", "r-coass"))))
    out.append(Check("product is full", is_full(P)))
    B = base_R(V.W)
    Ir = identity(B.dim, F)
    MP, MV, MW = r_bimodule(P), r_bimodule(V), r_bimodule(W)
    Iv, Iw = identity(V.dim, F), identity(W.dim, F)
    right_ind = compose_all(PC.proj, tensor(Iv, MW.right_act), tensor(PC.incl, Ir))
    left_ind = compose_all(PC.proj, tensor(MV.left_act, Iw), permutation([B.dim, V.dim, W.dim], [0, 1, 2], F),
                           tensor(Ir, PC.incl))
    out.append(compare("right R-action induced", MP.right_act, right_ind))
    out.append(compare("left R-action induced", MP.left_act, left_ind))
    out.append(Check("section R-bilinear",
                     compose(PC.incl, MP.right_act) == compose(tensor(Iv, MW.right_act), tensor(PC.incl, Ir))
                     and compose(PC.incl, MP.left_act) == compose(tensor(MV.left_act, Iw), tensor(Ir, PC.incl))))
    return out


# unitors and associator -------------------------------------------------------------------

def tensor_maps(f, g, PC, PD):
    """f ⊗_R g : PC -> PD."""
    return compose_all(PD.proj, tensor(f, g), PC.incl)


def right_unitor(V):
    """r_V : V⊗_R R -> V with r_V π = right action."""
    R = base_comodule(V.W)
    PC = tensor_over_R(V, R)
    act = r_bimodule(V).right_act
    r = compose(act, PC.incl)
    if compose(r, PC.proj) != act:
        raise IllDefined("right unitor does not factor the action")
    return r


def left_unitor(V):
    R = base_comodule(V.W)
    PC = tensor_over_R(R, V)
    act = r_bimodule(V).left_act
    l = compose(act, PC.incl)
    if compose(l, PC.proj) != act:
        raise IllDefined("left unitor does not factor the action")
    return l


def associator(V, W, Z):
    """a : (V⊗_R W)⊗_R Z -> V⊗_R (W⊗_R Z)."""
    VW = tensor_over_R(V, W)
    WZ = tensor_over_R(W, Z)
    L = tensor_over_R(VW.product, Z)
    Rt = tensor_over_R(V, WZ.product)
    F = V.field
    Iv, Iz = identity(V.dim, F), identity(Z.dim, F)
    via_right = compose(Rt.proj, tensor(Iv, WZ.proj))
    a = compose_all(via_right, tensor(VW.incl, Iz), L.incl)
    if compose_all(a, L.proj, tensor(VW.proj, Iz)) != via_right:
        raise IllDefined("associator is not well defined")
    return a


def unitor_associator_checks(V, W, Z):
    R = base_comodule(V.W)
    out = []
    for name, C in (("V", V), ("W", W), ("Z", Z)):
        r, l = right_unitor(C), left_unitor(C)
        out.append(Check("r_%s morphism" % name, is_morphism(r, tensor_over_R(C, R).product, C)))
        out.append(Check("l_%s morphism" % name, is_morphism(l, tensor_over_R(R, C).product, C)))
        out.append(Check("r_%s invertible" % name, r.rank() == C.dim == r.dom))
        out.append(Check("l_%s invertible" % name, l.rank() == C.dim == l.dom))
    a = associator(V, W, Z)
    src = tensor_over_R(tensor_over_R(V, W).product, Z).product
    dst = tensor_over_R(V, tensor_over_R(W, Z).product).product
    out.append(Check("associator morphism", is_morphism(a, src, dst)))
    out.append(Check("associator invertible", a.rank() == a.dom == a.cod))
    out.append(triangle_check(V, W))
    return out


def triangle_check(V, W):
    """(V⊗_R l_W) a_{V,R,W} = r_V ⊗_R W."""
    R = base_comodule(V.W)
    F = V.field
    VR = tensor_over_R(V, R)
    RW = tensor_over_R(R, W)
    src = tensor_over_R(VR.product, W)
    tgt = tensor_over_R(V, RW.product)
    VW = tensor_over_R(V, W)
    lhs = compose(tensor_maps(identity(V.dim, F), left_unitor(W), tgt, VW), associator(V, R, W))
    rhs = tensor_maps(right_unitor(V), identity(W.dim, F), src, VW)
    return compare("triangle", lhs, rhs)


def pentagon_check(V, W, Z, U):
    F = V.field
    T = tensor_over_R
    VW, ZU, WZ = T(V, W), T(Z, U), T(W, Z)
    # a_{V,W,Z⊗U} a_{V⊗W,Z,U}
    lhs = compose(associator(V, W, ZU.product), associator(VW.product, Z, U))
    # (V⊗a_{W,Z,U}) a_{V,W⊗Z,U} (a_{V,W,Z}⊗U)
    VWZ_l = T(VW.product, Z)                 # (VW)Z
    WZ_U = T(WZ.product, U)                  # (WZ)U
    W_ZU = T(W, ZU.product)                  # W(ZU)
    V_WZ = T(V, WZ.product)                  # V(WZ)
    first = tensor_maps(associator(V, W, Z), identity(U.dim, F), T(VWZ_l.product, U), T(V_WZ.product, U))
    second = associator(V, WZ.product, U)
    third = tensor_maps(identity(V.dim, F), associator(W, Z, U), T(V, WZ_U.product), T(V, W_ZU.product))
    rhs = compose_all(third, second, first)
    return compare("pentagon", lhs, rhs)


# environment ---------------------------------------------------------------------------------

def monoidal_env(V, W):
    """Names for a pair of full comodules V, W and their product P."""
    A = V.W
    env = wmb_env(A)
    add_comodule(env, V, "V", "V")
    add_comodule(env, W, "W", "W")
    comods = {"V": V, "W": W, "A": regular_comodule(A), "R": base_comodule(A)}
    PC = tensor_over_R(V, W)
    add_comodule(env, PC.product, "P", "P")
    env.define("proj", _t(PC.proj, "V W", "P"))
    env.define("incl", _t(PC.incl, "P", "V W"))
    env.comodules = comods

    def G(spaces):
        if len(spaces) != 2 or any(s not in comods for s in spaces):
            raise KeyError("G needs two comodule spaces among %s" % ", ".join(comods))
        return _t(g1_pair(comods[spaces[0]], comods[spaces[1]]), " ".join(spaces), " ".join(spaces))
    env.family("G", G)
    env.product = PC
    return env


def mono_epi_check(V, W, f, target):
    """For π : V⊗W -> V⊗_R W and f : V⊗_R W -> target, fπ colinear iff f colinear."""
    PC = tensor_over_R(V, W)
    a = is_morphism(compose(f, PC.proj), PC.plain, target)
    b = is_morphism(f, PC.product, target)
    return Check("mono-epi", a == b, detail="f π colinear: %s, f colinear: %s" % (a, b))
