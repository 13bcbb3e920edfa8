"""Duals of finite-dimensional full comodules."""

from .antipode import antipode
from .comodule import (
    RightComodule, LeftComodule, ComoduleError, check_left_comodule, check_right_comodule, is_comodule,
    is_full, require_full, is_morphism, r_bimodule, base_comodule, comodule_env, hom_space,
)
from .core import IllDefined, base_R, T4, fullness
from .envs import _t
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, permutation, solve_factor, solution_space,
    span_basis, vec, basis_vector, Unsolvable,
)
from .monoidal import tensor_over_R, tensor_maps, left_unitor, right_unitor, associator
from .report import Check, compare


def _dual_labels(C):
    return ["%s*" % l for l in C.labels]


def _transpose_coaction(m, d, n, basis=None):
    """λ*(b⊗φ) = Σ_i a_i ⊗ (φ⊗α_i)λ(-⊗b) for a right coaction m on V⊗A."""
    F = m.field
    cols = [dict() for _ in range(n * d)]
    for k in range(d):
        for b in range(n):
            for idx, c in m.cols[k * n + b].items():
                j, i = divmod(idx, n)
                cols[b * d + j][i * d + k] = c
    out = LinMap(n * d, n * d, cols, F)
    if basis is None:
        return out
    # the same sum over the basis a_i' = P e_i with dual basis α_i' = e_i^* P^{-1}
    P = basis
    Pinv = solve_factor(P, identity(n, F), "right")
    Id = identity(d, F)
    return compose_all(tensor(P, Id), tensor(Pinv, Id), out)


def dual_left(C, basis=None):
    """The left comodule on V* = Lin(V, k).

    ``basis`` optionally gives another basis {a_i} of A as the columns of
    an invertible map; the result does not depend on it.
    """
    n, d = C.W.n, C.dim
    lam = _transpose_coaction(C.lam, d, n, basis)
    rho = _transpose_coaction(C.rho, d, n, basis)
    return LeftComodule(C.W, d, lam, rho, _dual_labels(C), "%s*" % C.name)


def leg_spans_left(C):
    """V-legs of the coactions of a left comodule on A⊗V."""
    n, d = C.W.n, C.dim
    spans = []
    for m in (C.lam, C.rho):
        vecs = []
        for col in m.cols:
            by_a = {}
            for idx, c in col.items():
                a, v = divmod(idx, d)
                by_a.setdefault(a, {})[v] = c
            vecs.extend(by_a.values())
        spans.append(span_basis(vecs, d, C.field))
    return spans


def is_full_left(C):
    return all(s.dom == C.dim for s in leg_spans_left(C))


def _require_antipode(W):
    right, left = fullness(W)
    if not (right and left):
        raise IllDefined("the comultiplication must be left and right full")
    return antipode(W)


def _factor(M, L, what):
    if M.rank() != M.cod:
        raise IllDefined("%s: the spanning elements do not span" % what)
    try:
        X = solve_factor(M, L, "left")
    except Unsolvable:
        raise IllDefined("%s is not well defined" % what) from None
    if compose(X, M) != L:
        raise IllDefined("%s is not well defined" % what)
    return X


def s_right_from_left(C):
    """Right comodule (V, λ^S, ϱ^S) from a left comodule (V, λ, ϱ)."""
    W = C.W
    D = _require_antipode(W)
    n, d, F = W.n, C.dim, C.field
    Iv, I = identity(d, F), W.I
    tw_va = permutation([d, n], [1, 0], F)
    tw_av = permutation([n, d], [1, 0], F)
    rho21 = compose_all(tw_av, C.rho, tw_va)
    lam21 = compose_all(tw_av, C.lam, tw_va)
    # v⊗S(b)a -> ((V⊗S)ϱ^{21}(v⊗b))(1⊗a)
    M1 = tensor(Iv, D.S_l)
    L1 = compose(tensor(Iv, D.S_l), tensor(rho21, I))
    # v⊗aS(b) -> (1⊗a)((V⊗S)λ^{21}(v⊗b))
    M2 = tensor(Iv, D.S_r)
    p = permutation([d, n, n], [0, 2, 1], F)
    L2 = compose_all(tensor(Iv, D.S_r), p, tensor(lam21, I), p)
    lam = _factor(M1, L1, "λ^S")
    rho = _factor(M2, L2, "ϱ^S")
    return RightComodule(W, d, lam, rho, C.labels, C.name)


def s_left_from_right(C):
    """Left comodule (V, λ^S, ϱ^S) from a right comodule (V, λ, ϱ)."""
    W = C.W
    D = _require_antipode(W)
    n, d, F = W.n, C.dim, C.field
    Iv, I = identity(d, F), W.I
    tw_va = permutation([d, n], [1, 0], F)
    tw_av = permutation([n, d], [1, 0], F)
    rho21 = compose_all(tw_va, C.rho, tw_av)     # A⊗V -> A⊗V
    lam21 = compose_all(tw_va, C.lam, tw_av)
    # S(b)a⊗v -> ((S⊗V)ϱ^{21}(b⊗v))(a⊗1)
    M1 = tensor(D.S_l, Iv)
    L1 = compose_all(tensor(D.S_l, Iv), permutation([n, d, n], [0, 2, 1], F), tensor(rho21, I),
                     permutation([n, n, d], [0, 2, 1], F))
    # aS(b)⊗v -> (a⊗1)((S⊗V)λ^{21}(b⊗v))
    M2 = tensor(D.S_r, Iv)
    L2 = compose(tensor(D.S_r, Iv), tensor(I, lam21))
    lam = _factor(M1, L1, "λ^S")
    rho = _factor(M2, L2, "ϱ^S")
    return LeftComodule(W, d, lam, rho, C.labels, C.name)


def lambda_s21(C):
    """λ^{S21} : V⊗A -> V⊗A for the left comodule s_left_from_right(C)."""
    def go():
        L = s_left_from_right(C)
        n, d, F = C.W.n, C.dim, C.field
        return compose_all(permutation([n, d], [1, 0], F), L.lam, permutation([d, n], [1, 0], F))
    return C.cached("lamS21", go)


def _F_in_RA(W):
    """K : A -> R⊗A with F(1⊗a) = K(a), from F(1⊗bc) = (Π̄^R⊗A)tw T4(c⊗b)."""
    def go():
        B = base_R(W)
        rhs = compose_all(tensor(B.from_pibar, W.I), W.tw, T4(W), W.tw)
        try:
            K = solve_factor(W.mu, rhs, "left")
        except Unsolvable:
            raise IllDefined("F(1⊗a) does not lie in R⊗A") from None
        if compose(K, W.mu) != rhs:
            raise IllDefined("F(1⊗a) is not well defined")
        return K
    return W.cached("F_in_RA", go)


def G1_general(C):
    """v⊗a -> (v⊗1)F(1⊗a)."""
    def go():
        W = C.W
        rt = r_bimodule(C).right_act
        return compose(tensor(rt, W.I), tensor(identity(C.dim, C.field), _F_in_RA(W)))
    return C.cached("G1V", go)


def dual_right(C):
    """The right comodule on V* obtained from dual_left through the antipode."""
    def go():
        require_full(C)
        return s_right_from_left(dual_left(C))
    return C.cached("dual_right", go)


def dual_right_direct(C):
    """λ^{*S}(φ⊗S(b)a) = φ(-^ϱ)⊗S(b^ϱ)a and ϱ^{*S}(φ⊗aS(b)) = φ(-^λ)⊗aS(b^λ)."""
    W = C.W
    D = _require_antipode(W)
    n, d, F = W.n, C.dim, C.field
    Id, I = identity(d, F), W.I

    def pull(m):
        # φ^j⊗e_b -> Σ φ(v_k^m-part) : coefficient of v_j⊗e_c in m(v_k⊗e_b) at φ^k⊗e_c
        cols = [dict() for _ in range(d * n)]
        for k in range(d):
            for b in range(n):
                for idx, x in m.cols[k * n + b].items():
                    j, c = divmod(idx, n)
                    cols[j * n + b][k * n + c] = x
        return LinMap(d * n, d * n, cols, F)
    L1 = compose(tensor(Id, D.S_l), tensor(pull(C.rho), I))
    p = permutation([d, n, n], [0, 2, 1], F)
    L2 = compose_all(tensor(Id, D.S_r), p, tensor(pull(C.lam), I), p)
    lam = _factor(tensor(Id, D.S_l), L1, "λ^{*S}")
    rho = _factor(tensor(Id, D.S_r), L2, "ϱ^{*S}")
    return RightComodule(W, d, lam, rho, _dual_labels(C), "%s*" % C.name)


def expected_dual_actions(C):
    """(right, left) actions on V*: φr = φ(r-) and rφ = φ(-ϑ^{-1}(r))."""
    B = base_R(C.W)
    M = r_bimodule(C)
    d, r, F = C.dim, B.dim, C.field
    theta_inv = solve_factor(B.nakayama, identity(r, F), "right")
    right_cols, left_cols = [], []
    for j in range(d):
        for s in range(r):
            # (φ^j r_s)(v_k) = φ^j(r_s v_k)
            right_cols.append({k: x for k in range(d)
                               for x in [M.left_act.cols[s * d + k].get(j)] if x})
    for s in range(r):
        for j in range(d):
            col = {}
            for k in range(d):
                tot = F.zero
                for t, y in theta_inv.cols[s].items():
                    x = M.right_act.cols[k * r + t].get(j)
                    if x:
                        tot = tot + x * y
                if tot:
                    col[k] = tot
            left_cols.append(col)
    return LinMap(d * r, d, right_cols, F), LinMap(r * d, d, left_cols, F)


def pairing(d, F):
    """V*⊗V -> k, φ^j⊗v_k -> δ_jk."""
    return LinMap(d * d, 1, [{0: F.one} if j == k else {} for j in range(d) for k in range(d)], F)


class DualData:
    def __init__(self, primal, dual_left, dual_right, ev, coev, kappa, ev_plain, coev_plain):
        self.primal = primal
        self.dual_left = dual_left
        self.dual_right = dual_right
        self.ev, self.coev, self.kappa = ev, coev, kappa
        self.ev_plain, self.coev_plain = ev_plain, coev_plain


def ev_coev(C):
    """ev : V*⊗_R V -> R and coev : R -> V⊗_R V*."""
    return dual_data(C).ev, dual_data(C).coev


def dual_data(C):
    def go():
        W = C.W
        B = base_R(W)
        Vs = dual_right(C)
        d, r, F = C.dim, B.dim, C.field
        Id, Ir = identity(d, F), identity(r, F)
        M = r_bimodule(C)
        # ev'(ψ⊗w r) = (ψ⊗R)((w⊗1)δ(r))
        target = compose_all(tensor(pairing(d, F), Ir), tensor(Id, M.right_act, Ir), tensor(Id, Id, B.delta))
        ev_plain = _factor(tensor(Id, M.right_act), target, "ev")
        ev = compose(ev_plain, tensor_over_R(Vs, C).incl)
        # coev'(r) = Σ_i r v_i ⊗ φ^i
        cols = []
        for s in range(r):
            col = {}
            for i in range(d):
                for k, x in M.left_act.cols[s * d + i].items():
                    col[k * d + i] = col.get(k * d + i, F.zero) + x
            cols.append({k: x for k, x in col.items() if x})
        coev_plain = LinMap(r, d * d, cols, F)
        coev = compose(tensor_over_R(C, Vs).proj, coev_plain)
        return DualData(C, dual_left(C), Vs, ev, coev, kappa_map(C), ev_plain, coev_plain)
    return C.cached("dual_data", go)


def kappa_plain(C):
    """V⊗V* -> End(V) (vectorised): v⊗ψ -> [w s -> (ψ⊗V)((w⊗v)δ(s))]."""
    B = base_R(C.W)
    M = r_bimodule(C)
    d, r, F = C.dim, B.dim, C.field
    Id, Ir = identity(d, F), identity(r, F)
    act = M.right_act
    # (w, s) -> w⊗δ(s) -> (w s1)⊗s2
    ws = compose(tensor(act, Ir), tensor(Id, B.delta))
    cols = []
    for v in range(d):
        ev_v = basis_vector(v, d, F)
        vs = compose(act, tensor(ev_v, Ir))           # s -> v s
        for j in range(d):
            psi = LinMap(d, 1, [{0: F.one} if k == j else {} for k in range(d)], F)
            target = compose(tensor(psi, vs), ws)      # V⊗R -> V
            K = _factor(act, target, "kappa")
            cols.append(vec(K))
    return LinMap(d * d, d * d, cols, F)


def kappa_map(C):
    Vs = dual_right(C)
    return compose(kappa_plain(C), tensor_over_R(C, Vs).incl)


def hom_R(C):
    """A basis of the right R-module endomorphisms of V."""
    B = base_R(C.W)
    act = r_bimodule(C).right_act
    Ir = identity(B.dim, C.field)
    return solution_space(C.dim, C.dim, lambda X: compose(X, act) - compose(act, tensor(X, Ir)), C.field)


def _inverse(m, what):
    if m.dom != m.cod or m.rank() != m.dom:
        raise IllDefined("%s is not invertible" % what)
    return solve_factor(m, identity(m.dom, m.field), "right")


def snake_maps(C, ev=None, coev=None):
    """The two zig-zag composites V -> V and V* -> V*."""
    data = dual_data(C)
    ev = data.ev if ev is None else ev
    coev = data.coev if coev is None else coev
    Vs = data.dual_right
    R = base_comodule(C.W)
    T = tensor_over_R
    F = C.field
    Iv, Is = identity(C.dim, F), identity(Vs.dim, F)
    VVs, VsV = T(C, Vs), T(Vs, C)
    first = compose_all(
        right_unitor(C),
        tensor_maps(Iv, ev, T(C, VsV.product), T(C, R)),
        associator(C, Vs, C),
        tensor_maps(coev, Iv, T(R, C), T(VVs.product, C)),
        _inverse(left_unitor(C), "l_V"),
    )
    second = compose_all(
        left_unitor(Vs),
        tensor_maps(ev, Is, T(VsV.product, Vs), T(R, Vs)),
        _inverse(associator(Vs, C, Vs), "associator"),
        tensor_maps(Is, coev, T(Vs, R), T(Vs, VVs.product)),
        _inverse(right_unitor(Vs), "r_V*"),
    )
    return first, second


def check_duality(C, ev=None, coev=None):
    """ev and coev are comodule maps, both snakes are identities and κ is invertible."""
    data = dual_data(C)
    ev = data.ev if ev is None else ev
    coev = data.coev if coev is None else coev
    R = base_comodule(C.W)
    Vs = data.dual_right
    if not (is_morphism(ev, tensor_over_R(Vs, C).product, R) and is_morphism(coev, R, tensor_over_R(C, Vs).product)):
        return False
    try:
        first, second = snake_maps(C, ev, coev)
    except IllDefined:
        return False
    F = C.field
    return first == identity(C.dim, F) and second == identity(C.dim, F) and kappa_invertible(C)


def kappa_invertible(C):
    k = kappa_map(C)
    homs = hom_R(C)
    if k.rank() != k.dom or len(homs) != k.dom:
        return False
    space = span_basis([vec(h) for h in homs], C.dim * C.dim, C.field)
    return span_basis(list(space.cols) + list(k.cols), C.dim * C.dim, C.field).dom == space.dom


# environment and registry checks ---------------------------------------------------------

def duality_env(C):
    def go():
        env = comodule_env(C)
        env.define("lamS21", lambda: _t(lambda_s21(C), "V A", "V A"))
        env.define("G1V", lambda: _t(G1_general(C), "V A", "V A"))
        return env
    return C.cached("dual_env", go)


def dual_left_check(C):
    L = dual_left(C)
    rep = check_left_comodule(L)
    if not rep.ok:
        return Check("dual_left", False, detail="not a left comodule: %s" % [c.name for c in rep.failures()])
    if is_full(C) and not is_full_left(L):
        return Check("dual_left", False, detail="dual of a full comodule is not full")
    n, F = C.W.n, C.field
    # a second basis: a_i' = e_0 + ... + e_i
    P = LinMap(n, n, [{k: F.one for k in range(i + 1)} for i in range(n)], F)
    L2 = dual_left(C, basis=P)
    if L2.lam != L.lam or L2.rho != L.rho:
        return Check("dual_left", False, detail="depends on the basis of A")
    return Check("dual_left", True)


def dual_right_check(C):
    Vs = dual_right(C)
    rep = check_right_comodule(Vs)
    if not rep.ok:
        return Check("dual_right", False, detail="not a comodule: %s" % [c.name for c in rep.failures()])
    if not is_full(Vs):
        return Check("dual_right", False, detail="not full")
    direct = dual_right_direct(C)
    c = compare("dual_right", Vs.lam, direct.lam)
    return c if not c.ok else compare("dual_right", Vs.rho, direct.rho)


def dual_actions_check(C):
    Vs = dual_right(C)
    M = r_bimodule(Vs)
    right, left = expected_dual_actions(C)
    c = compare("dual_actions", M.right_act, right)
    return c if not c.ok else compare("dual_actions", M.left_act, left)


def ev_coev_check(C):
    data = dual_data(C)
    R = base_comodule(C.W)
    Vs = data.dual_right
    ok_ev = is_morphism(data.ev, tensor_over_R(Vs, C).product, R)
    ok_coev = is_morphism(data.coev, R, tensor_over_R(C, Vs).product)
    if ok_ev and ok_coev:
        return Check("ev_coev", True)
    return Check("ev_coev", False, detail="ev colinear: %s, coev colinear: %s" % (ok_ev, ok_coev))


def snake_check(C):
    first, second = snake_maps(C)
    F = C.field
    c = compare("snake", first, identity(C.dim, F), [C.labels])
    return c if not c.ok else compare("snake", second, identity(C.dim, F), [_dual_labels(C)])


def kappa_check(C):
    return Check("kappa", kappa_invertible(C))
