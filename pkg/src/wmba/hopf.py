"""Hopf modules, induction from L-modules, coinvariants and the Fundamental Theorem."""

import random

from .comodule import (
    RightComodule, check_right_comodule, is_full, require_full, is_morphism, add_comodule,
    act_right_A, r_bimodule, regular_comodule,
)
from .core import WmbError, IllDefined, base_L, base_R, pi_actions, fullness, T3
from .envs import wmb_env, _t
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, permutation, solve_factor, span_basis,
    split_idempotent, solution_space, basis_vector, vec, unvec, zero, Unsolvable,
)
from .report import Check, Report, compare


class NotFirm(WmbError):
    pass


class NotAMorphism(WmbError):
    pass


class HopfModule:
    """A full right comodule V with a right A-action V⊗A -> V."""

    def __init__(self, comod, act, name=None):
        if act.dom != comod.dim * comod.W.n or act.cod != comod.dim:
            raise ValueError("action must be a map V⊗A -> V")
        self.comod = comod
        self.act = act
        self.name = name or comod.name
        self._cache = {}

    @property
    def comodule(self):
        return self.comod

    @property
    def W(self):
        return self.comod.W

    @property
    def dim(self):
        return self.comod.dim

    @property
    def field(self):
        return self.comod.field

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __repr__(self):
        return "HopfModule(%s, dim=%d)" % (self.name, self.dim)


def regular_hopf_module(W):
    """(A, μ, T1, T3)."""
    return HopfModule(regular_comodule(W), W.mu, "A")


def zero_hopf_module(W):
    z = LinMap(0, 0, [], W.field)
    C = RightComodule(W, 0, z, z, [], "0")
    return HopfModule(C, LinMap(0, 0, [], W.field), "0")


def _hr_maps(H):
    C, W = H.comod, H.W
    d, n, F = H.dim, W.n, H.field
    I = W.I
    Iv = identity(d, F)
    actA = tensor(H.act, I)
    p = permutation([d, n, n], [0, 2, 1], F)
    rho13 = compose_all(p, tensor(C.rho, I), p)
    lam13 = compose_all(p, tensor(C.lam, I), p)
    hr = (compose(C.rho, actA), compose_all(actA, tensor(Iv, T3(W)), rho13))
    hl = (compose(C.lam, actA), compose_all(actA, lam13, tensor(Iv, W.T1)))
    return hr, hl


def _action_table(H):
    """V -> V⊗A*, v -> (a -> v·a), as a dim x (n·dim) matrix."""
    d, n, F = H.dim, H.W.n, H.field
    cols = []
    for v in range(d):
        out = {}
        for a in range(n):
            for w, x in H.act.cols[v * n + a].items():
                out[a * d + w] = x
        cols.append(out)
    return LinMap(d, n * d, cols, F)


def check_hopf(H):
    W = H.W
    rep = Report("hopf module %s" % H.name)
    d, n, F = H.dim, W.n, H.field
    lab = [H.comod.labels, W.labels, W.labels]
    I = W.I
    Iv = identity(d, F)
    rep.add(compare("associative", compose(H.act, tensor(H.act, I)), compose(H.act, tensor(Iv, W.mu)), lab))
    rep.add(Check("surjective", H.act.rank() == d))
    rep.add(Check("non-degenerate", _action_table(H).rank() == d))
    crep = check_right_comodule(H.comod)
    rep.add(Check("comodule", crep.ok, detail="" if crep.ok else ", ".join(c.name for c in crep.failures())))
    rep.add(Check("full", is_full(H.comod)))
    (r1, r2), (l1, l2) = _hr_maps(H)
    hr = compare("Hr", r1, r2, lab)
    hl = compare("Hl", l1, l2, lab)
    rep.add(hr)
    rep.add(hl)
    rep.add(Check("Hr<=>Hl", hr.ok == hl.ok, detail="" if hr.ok == hl.ok else "Hr %s, Hl %s" % (hr.ok, hl.ok)))
    return rep


def is_hopf_module(H):
    return check_hopf(H).ok


# firm right L-modules -------------------------------------------------------------------

class RightLModule:
    """A right module over the base algebra L, act : P⊗L -> P."""

    def __init__(self, W, dim, act, labels=None, name="P"):
        B = base_L(W)
        if act.dom != dim * B.dim or act.cod != dim:
            raise ValueError("action must be a map P⊗L -> P")
        self.W, self.dim, self.act = W, dim, act
        self.labels = list(labels) if labels else ["p%d" % i for i in range(dim)]
        self.name = name

    @property
    def field(self):
        return self.W.field

    def is_firm(self):
        return self.act.rank() == self.dim

    def is_associative(self):
        B = base_L(self.W)
        Ip = identity(self.dim, self.field)
        return compose(self.act, tensor(self.act, B.identity())) == compose(self.act, tensor(Ip, B.mult))


def module_L(W):
    B = base_L(W)
    return RightLModule(W, B.dim, B.mult, B.alg.labels, "L")


def zero_module(W):
    return RightLModule(W, 0, LinMap(0, 0, [], W.field), [], "0")


def ideal_module(W, e, name="eL"):
    """The right ideal eL of L for coordinates ``e`` of an element of L."""
    B = base_L(W)
    r, F = B.dim, W.field
    ev = LinMap(1, r, [dict(e)], F)
    left = compose(B.mult, tensor(ev, B.identity()))        # l -> e l
    carrier = left.image_basis()
    cols = []
    for k in range(carrier.dom):
        for l in range(r):
            x = LinMap(1, r, [carrier.cols[k]], F)
            y = compose(B.mult, tensor(x, basis_vector(l, r, F)))
            cols.append(solve_factor(carrier, y, "right").cols[0])
    return RightLModule(W, carrier.dom, LinMap(carrier.dom * r, carrier.dom, cols, F), None, name)


def l_module_maps(P, Q):
    """A basis of the L-linear maps P -> Q."""
    B = base_L(P.W)

    def residual(X):
        return compose(X, P.act) - compose(Q.act, tensor(X, B.identity()))
    return solution_space(P.dim, Q.dim, residual, P.field)


# induction ------------------------------------------------------------------------------

class Induced:
    """P⊗_L A with the split (proj, incl) of the balancing idempotent."""

    def __init__(self, P, theta, proj, incl, hopf):
        self.P, self.theta = P, theta
        self.proj, self.incl = proj, incl
        self.hopf = hopf


def balancing_idempotent(P):
    """θ on P⊗A with θ(pl⊗a) = (p⊗1)δ(l)(1⊗a); its image is P⊗_L A."""
    W = P.W
    B = base_L(W)
    F, I = W.field, W.I
    Ip = identity(P.dim, F)
    if not P.is_firm():
        raise NotFirm("the L-action on %s is not surjective" % P.name)
    lhs = tensor(P.act, I)
    rhs = compose(tensor(P.act, B.act_left()), tensor(Ip, B.delta, I))
    try:
        th = solve_factor(lhs, rhs, "left")
    except Unsolvable:
        raise NotFirm("the balancing map on %s⊗A is not well defined" % P.name) from None
    if compose(th, lhs) != rhs:
        raise NotFirm("the balancing map on %s⊗A is not well defined" % P.name)
    return th


def coequalizer_dim_L(P):
    """dim P⊗_L A as the cokernel of pl⊗a - p⊗la."""
    W = P.W
    B = base_L(W)
    F = W.field
    diff = tensor(P.act, W.I) - tensor(identity(P.dim, F), B.act_left())
    return P.dim * W.n - diff.rank()


def induce(P):
    """The Hopf module P⊗_L A."""
    W = P.W
    right, left = fullness(W)
    if not (right and left):
        raise IllDefined("induction needs a left and right full comultiplication")
    F, I = W.field, W.I
    Ip = identity(P.dim, F)
    n = W.n
    if P.dim == 0:
        th = zero(0, 0, F)
        proj = incl = th
    else:
        th = balancing_idempotent(P)
        proj, incl = split_idempotent(th)
    # μ, T1 and T3 are left L-linear in the first leg
    thA = tensor(th, I)
    for name, m in (("μ", W.mu), ("T1", W.T1), ("T3", T3(W))):
        if P.dim and compose(th if m is W.mu else thA, tensor(Ip, m)) != compose(tensor(Ip, m), thA):
            raise IllDefined("%s is not compatible with ⊗_L" % name)
    d = proj.cod
    act = compose_all(proj, tensor(Ip, W.mu), tensor(incl, I))
    pa, ia = tensor(proj, I), tensor(incl, I)
    lam = compose_all(pa, tensor(Ip, W.T1), ia)
    rho = compose_all(pa, tensor(Ip, T3(W)), ia)
    labels = ["%s⊗A#%d" % (P.name, i) for i in range(d)]
    C = RightComodule(W, d, lam, rho, labels, "%s⊗LA" % P.name)
    return Induced(P, th, proj, incl, HopfModule(C, act, C.name))


def induce_morphism(f, P, Q):
    """f⊗_L A for an L-linear f : P -> Q."""
    B = base_L(P.W)
    if compose(f, P.act) != compose(Q.act, tensor(f, B.identity())):
        raise NotAMorphism("the map is not L-linear")
    IP, IQ = induce(P), induce(Q)
    return compose_all(IQ.proj, tensor(f, P.W.I), IP.incl)


# Hopf module morphisms ------------------------------------------------------------------

def is_hopf_morphism(f, H, K):
    if f.dom != H.dim or f.cod != K.dim:
        return False
    I = H.W.I
    module = compose(f, H.act) == compose(K.act, tensor(f, I))
    return module and is_morphism(f, H.comod, K.comod)


def hopf_hom_space(H, K):
    """A basis of the Hopf module morphisms H -> K."""
    I = H.W.I

    def residual(f):
        fa = tensor(f, I)
        return [compose(f, H.act) - compose(K.act, fa),
                compose(K.comod.lam, fa) - compose(fa, H.comod.lam),
                compose(K.comod.rho, fa) - compose(fa, H.comod.rho)]
    return solution_space(H.dim, K.dim, residual, H.field)


def _invertible_combination(basis, dim, field, tries=20):
    if dim == 0:
        return zero(0, 0, field)
    rng = random.Random(0)
    for t in range(tries):
        acc = zero(dim, dim, field)
        for b in basis:
            acc = acc + b.scale(field(rng.randint(1, 97) if t else 1))
        if acc.rank() == dim:
            return acc
    return None


def find_isomorphism(H, K):
    """An invertible Hopf module morphism H -> K, or None."""
    if H.dim != K.dim:
        return None
    return _invertible_combination(hopf_hom_space(H, K), H.dim, H.field)


def find_l_isomorphism(P, Q):
    if P.dim != Q.dim:
        return None
    return _invertible_combination(l_module_maps(P, Q), P.dim, P.field)


# ϖ and the coinvariants -----------------------------------------------------------------

def _require_hopf_setting(W):
    right, left = fullness(W)
    if not (right and left):
        raise IllDefined("the comultiplication must be left and right full")
    from .antipode import antipode
    antipode(W)


def omega_map(H):
    """Ω : V⊗A -> V with Ω(v⊗a) = ϖ_V(v)(a) = ·λ^{S21}(v⊗a)."""
    def go():
        from .duality import lambda_s21
        _require_hopf_setting(H.W)
        if H.dim == 0:
            return zero(0, 0, H.field)
        require_full(H.comod)
        return compose(H.act, lambda_s21(H.comod))
    return H.cached("omega", go)


def omega(H, v):
    """ϖ_V(v) : A -> V; ``v`` is a basis index or a coordinate dict."""
    d, n, F = H.dim, H.W.n, H.field
    ev = LinMap(1, d, [v if isinstance(v, dict) else {v: F.one}], F)
    return compose(omega_map(H), tensor(ev, H.W.I))


def _l_left(W):
    """l -> (a -> l a) as maps A -> A, one per basis element of L."""
    B = base_L(W)
    n, F = W.n, W.field
    return [compose(B.act_left(), tensor(basis_vector(l, B.dim, F), W.I)) for l in range(B.dim)]


class Coinvariants:
    """V^c as matrices A -> V, with its right L-action f l = f(l -)."""

    def __init__(self, H, basis, coords, act):
        self.H = H
        self.basis = basis          # LinMaps A -> V
        self.coords = coords        # V -> V^c, v -> ϖ_V(v)
        self.act = act              # V^c⊗L -> V^c
        self.dim = len(basis)

    def module(self):
        return RightLModule(self.H.W, self.dim, self.act, ["w%d" % i for i in range(self.dim)], "%s^c" % self.H.name)

    def element(self, coords):
        W, H = self.H.W, self.H
        out = zero(W.n, H.dim, H.field)
        for k, x in coords.items():
            out = out + self.basis[k].scale(x)
        return out


def coinvariants(H):
    def go():
        W = H.W
        _require_hopf_setting(W)
        d, n, F = H.dim, W.n, H.field
        B = base_L(W)
        r = B.dim
        if d == 0:
            return Coinvariants(H, [], zero(0, 0, F), zero(0, 0, F))
        om = [omega(H, v) for v in range(d)]
        span = span_basis([vec(m) for m in om], n * d, F)
        basis = [unvec(c, n, d, F) for c in span.cols]
        c = len(basis)
        coords = solve_factor(span, LinMap(d, n * d, [vec(m) for m in om], F), "right")
        lefts = _l_left(W)
        cols = []
        for k in range(c):
            for l in range(r):
                img = LinMap(1, n * d, [vec(compose(basis[k], lefts[l]))], F)
                try:
                    x = solve_factor(span, img, "right")
                except Unsolvable:
                    raise IllDefined("V^c is not closed under the L-action") from None
                if compose(span, x) != img:
                    raise IllDefined("V^c is not closed under the L-action")
                cols.append(x.cols[0])
        return Coinvariants(H, basis, coords, LinMap(c * r, c, cols, F))
    return H.cached("coinv", go)


def hopf_morphisms_from_A(H):
    return hopf_hom_space(regular_hopf_module(H.W), H)


def _in_span(maps, m):
    F = m.field
    if not maps:
        return m.is_zero()
    n = m.dom * m.cod
    return span_basis([vec(x) for x in maps], n, F).dom == span_basis([vec(x) for x in maps] + [vec(m)], n, F).dom


def coinvariant_checks(H):
    """Members are Hopf morphisms A -> V, the L_act identity holds, and the L-action is firm."""
    W = H.W
    out = []
    Vc = coinvariants(H)
    A = regular_hopf_module(W)
    out.append(Check("members are Hopf morphisms", all(is_hopf_morphism(f, A, H) for f in Vc.basis)))
    out.append(_l_act_check(H))
    out.append(Check("firm", Vc.act.rank() == Vc.dim))
    out.append(Check("associative", Vc.module().is_associative()))
    return out


def _l_act_check(H):
    """ϖ(v)Π^L(c) = ϖ(Π̄^R(c)v) on basis pairs."""
    W = H.W
    d, n, F = H.dim, W.n, H.field
    if d == 0:
        return Check("L_act", True)
    I = W.I
    Om = omega_map(H)
    piL_l = pi_actions(W)["piL"][0]
    ltR = r_bimodule(H.comod).left_act
    lhs = compose(Om, tensor(identity(d, F), piL_l))
    rhs = compose_all(Om, tensor(ltR, I), tensor(base_R(W).from_pibar, identity(d, F), I),
                      permutation([d, n, n], [1, 0, 2], F))
    return compare("L_act", lhs, rhs, [H.comod.labels, W.labels, W.labels])


def morphism_coinv(f, H, K):
    """f^c : V^c -> V'^c, ϖ_V(v) -> fϖ_V(v)."""
    if not is_hopf_morphism(f, H, K):
        raise NotAMorphism("not a morphism of Hopf modules")
    Vc, Kc = coinvariants(H), coinvariants(K)
    W, F = H.W, H.field
    n = W.n
    if Kc.dim == 0 or Vc.dim == 0:
        return zero(Vc.dim, Kc.dim, F)
    span = LinMap(Kc.dim, n * K.dim, [vec(b) for b in Kc.basis], F)
    cols = []
    for b in Vc.basis:
        img = LinMap(1, n * K.dim, [vec(compose(f, b))], F)
        try:
            x = solve_factor(span, img, "right")
        except Unsolvable:
            raise IllDefined("f ϖ_V(v) does not lie in V'^c") from None
        if compose(span, x) != img:
            raise IllDefined("f ϖ_V(v) does not lie in V'^c")
        cols.append(x.cols[0])
    return LinMap(Vc.dim, Kc.dim, cols, F)


# the Fundamental Theorem ----------------------------------------------------------------

class Fundamental:
    def __init__(self, H, Vc, induced, xi, zeta):
        self.H, self.Vc, self.induced = H, Vc, induced
        self.xi, self.zeta = xi, zeta


def fundamental(H):
    """(ξ : V^c⊗_L A -> V, ζ : V -> V^c⊗_L A)."""
    def go():
        W = H.W
        Vc = coinvariants(H)
        ind = induce(Vc.module())
        d, n, F, c = H.dim, W.n, H.field, Vc.dim
        I = W.I
        if d == 0:
            return Fundamental(H, Vc, ind, zero(ind.hopf.dim, 0, F), zero(0, ind.hopf.dim, F))
        # f⊗a -> f(a)
        xi_plain = LinMap(c * n, d, [Vc.basis[k].cols[a] for k in range(c) for a in range(n)], F)
        if compose(xi_plain, ind.theta) != xi_plain:
            raise IllDefined("evaluation is not L-balanced")
        xi = compose(xi_plain, ind.incl)
        # ζ(v·a) = π(ϖ⊗A)λ(v⊗a)
        rhs = compose_all(ind.proj, tensor(Vc.coords, I), H.comod.lam)
        try:
            zeta = solve_factor(H.act, rhs, "left")
        except Unsolvable:
            raise IllDefined("ζ is not well defined") from None
        if compose(zeta, H.act) != rhs:
            raise IllDefined("ζ is not well defined")
        return Fundamental(H, Vc, ind, xi, zeta)
    return H.cached("fundamental", go)


def fundamental_checks(H):
    fd = fundamental(H)
    F = H.field
    D = fd.induced.hopf
    return [
        compare("xi zeta = id", compose(fd.xi, fd.zeta), identity(H.dim, F), [H.comod.labels]),
        compare("zeta xi = id", compose(fd.zeta, fd.xi), identity(D.dim, F), [D.comod.labels]),
        Check("xi is a Hopf morphism", is_hopf_morphism(fd.xi, D, H)),
        Check("zeta is a Hopf morphism", is_hopf_morphism(fd.zeta, H, D)),
    ]


def naturality_check(f, H, K):
    """ξ'(f^c⊗_L A) = fξ."""
    fc = morphism_coinv(f, H, K)
    fH, fK = fundamental(H), fundamental(K)
    ind = induce_morphism(fc, fH.Vc.module(), fK.Vc.module())
    return compose(fK.xi, ind) == compose(f, fH.xi)


# registry hooks -------------------------------------------------------------------------

def hopf_env(H):
    def go():
        from .duality import lambda_s21, G1_general
        C = H.comod
        env = add_comodule(wmb_env(H.W), C)
        env.define("lamS21", lambda: _t(lambda_s21(C), "V A", "V A"))
        env.define("G1V", lambda: _t(G1_general(C), "V A", "V A"))
        env.define("act", _t(H.act, "V A", "V"))
        env.define("Omega", lambda: _t(omega_map(H), "V A", "V"))
        return env
    return H.cached("env", go)


def omega_surjective_check(H):
    """V^c ⊆ Hopf morphisms A -> V, with equality when E1 is the identity."""
    W = H.W
    Vc = coinvariants(H)
    homs = hopf_morphisms_from_A(H)
    for k, f in enumerate(Vc.basis):
        if not _in_span(homs, f):
            return Check("omega_surjective", False, detail="coinvariant #%d is not a Hopf morphism" % k)
    if W.E1 == identity(W.n * W.n, W.field) and Vc.dim != len(homs):
        return Check("omega_surjective", False, detail="dim V^c = %d < %d" % (Vc.dim, len(homs)))
    return Check("omega_surjective", True)


def zeta_check(H):
    try:
        fundamental(H)
    except IllDefined as e:
        return Check("zeta", False, detail=str(e))
    return Check("zeta", True)


def fundamental_check(H):
    for c in fundamental_checks(H) + coinvariant_checks(H):
        if not c.ok:
            return Check("fund_thm", False, c.witness, "%s %s" % (c.name, c.detail))
    return Check("fund_thm", True)
