"""The idempotents G1, G2, weak inverses of T1, T2, and the antipode."""

from .algebra import multiplier_from_left, multiplier_algebra, NotAMultiplier, tensor_alg
from .core import (
    WmbError, NotFull, IllDefined, T3, T4, pi_maps, pi_actions, F_maps, fullness, delta_maps,
)
from .linalg import (
    LinMap, compose, compose_all, tensor, identity, solve_factor, solve_slot, vstack,
    basis_vector, zero, Unsolvable,
)
from .report import Check, Report, compare


class NoAntipode(WmbError):
    pass


class Inconsistent(WmbError):
    pass


class AntipodeData:
    def __init__(self, R1, R2, S, mults, S_l, S_r):
        self.R1, self.R2 = R1, R2
        self.S = S              # A -> M(A) coordinates
        self.mults = mults      # S(e_a) as multipliers
        self.S_l = S_l          # a⊗b -> S(a)b
        self.S_r = S_r          # a⊗b -> aS(b)


def G1(W):
    def go():
        if not fullness(W)[0]:
            raise NotFull("G1 needs a right full comultiplication")
        I, mu = W.I, W.mu
        pbR_r = pi_actions(W)["pibarR"][1]
        p = W.perm([0, 2, 1])
        gamma = compose_all(tensor(pbR_r, I), p, tensor(I, T4(W)), p)
        try:
            g = solve_factor(tensor(I, mu), gamma, "left")
        except Unsolvable:
            raise IllDefined("G1 depends on the factorisation") from None
        if compose(g, tensor(I, mu)) != gamma:
            raise IllDefined("G1 depends on the factorisation")
        return g
    return W.cached("G1", go)


def G2(W):
    def go():
        if not fullness(W)[1]:
            raise NotFull("G2 needs a left full comultiplication")
        I, mu = W.I, W.mu
        pbL_l = pi_actions(W)["pibarL"][0]
        p = W.perm([1, 0, 2])
        gamma = compose_all(tensor(I, pbL_l), p, tensor(T3(W), I), p)
        try:
            g = solve_factor(tensor(mu, I), gamma, "left")
        except Unsolvable:
            raise IllDefined("G2 depends on the factorisation") from None
        if compose(g, tensor(mu, I)) != gamma:
            raise IllDefined("G2 depends on the factorisation")
        return g
    return W.cached("G2", go)


def weak_inverse(W, i):
    """R_i with R_iT_i = G_i, T_iR_i = E_i and R_iT_iR_i = R_i."""
    def go():
        T, E, G = (W.T1, W.E1, G1(W)) if i == 1 else (W.T2, W.E2, G2(W))
        try:
            Ra = solve_factor(T, G, "left")
            Rb = solve_factor(T, E, "right")
        except Unsolvable:
            raise NoAntipode("T%d is not weakly invertible" % i) from None
        R0 = compose_all(Ra, T, Rb)
        R = compose_all(R0, T, R0)
        if compose(R, T) != G or compose(T, R) != E or compose_all(R, T, R) != R:
            raise NoAntipode("T%d is not weakly invertible" % i)
        return R
    return W.cached("R%d" % i, go)


def weak_inverse_checks(W, i, R):
    T, E, G = (W.T1, W.E1, G1(W)) if i == 1 else (W.T2, W.E2, G2(W))
    lab = [W.labels] * 2
    return [
        compare("R%dT%d=G%d" % (i, i, i), compose(R, T), G, lab),
        compare("T%dR%d=E%d" % (i, i, i), compose(T, R), E, lab),
        compare("R%dT%dR%d=R%d" % (i, i, i, i), compose_all(R, T, R), R, lab),
        compare("G%d idempotent" % i, compose(G, G), G, lab),
    ]


def _data_from_left_actions(W, S_l, R1=None, R2=None):
    n, F = W.n, W.field
    A = W.alg
    mults = []
    for a in range(n):
        lam = compose(S_l, tensor(basis_vector(a, n, F), W.I))
        try:
            mults.append(multiplier_from_left(A, lam))
        except NotAMultiplier as e:
            raise Inconsistent("S(%s) is not a multiplier: %s" % (A.labels[a], e)) from None
    cols = []
    for a in range(n):
        for b in range(n):
            cols.append(mults[b].rho.cols[a])
    S_r = LinMap(n * n, n, cols, F)
    S = multiplier_algebra(A).map_matrix(mults) if n else zero(0, 0, F)
    return AntipodeData(R1, R2, S, mults, S_l, S_r)


def antipode(W, R1=None, R2=None):
    """Solve (c⊗1)R1(a⊗b) = ((A⊗S)T2(c⊗a))(1⊗b) for S."""
    def go():
        r1 = R1 if R1 is not None else weak_inverse(W, 1)
        r2 = R2 if R2 is not None else weak_inverse(W, 2)
        n = W.n
        I, mu = W.I, W.mu
        M = tensor(W.T2, I)
        B = compose(tensor(mu, I), tensor(I, r1))
        try:
            Xt = solve_slot(M.transpose(), B.transpose(), n, n * n, before=n, after=1, unique=True)
        except Unsolvable as e:
            raise Inconsistent("antipode relation: %s" % e) from None
        S_l = Xt.transpose()
        if compose(tensor(I, S_l), M) != B:
            raise Inconsistent("antipode relation is not satisfied")
        return _data_from_left_actions(W, S_l, r1, r2)
    if R1 is None and R2 is None:
        return W.cached("antipode", go)
    return go()


def antipode_from_matrix(W, S):
    """Antipode data for a user-supplied S: A -> A (values in A)."""
    n, F = W.n, W.field
    A = W.alg
    cols = []
    for a in range(n):
        sa = S.cols[a]
        for b in range(n):
            cols.append(A.mul(sa, {b: F.one}))
    return _data_from_left_actions(W, LinMap(n * n, n, cols, F))


def s_checks(W, D):
    n, F = W.n, W.field
    I, mu, tw = W.I, W.mu, W.tw
    acts = pi_actions(W)
    S_l, S_r = D.S_l, D.S_r
    lab2, lab3, lab4 = [W.labels] * 2, [W.labels] * 3, [W.labels] * 4
    out = [
        compare("S_id.1", compose(S_l, W.T1), acts["piR"][0], lab2),
        compare("S_id.2", compose(S_r, W.T2), acts["piL"][1], lab2),
        compare("S_id.3", compose(S_l, W.E1), S_l, lab2),
        compare("S_id.4", compose(S_r, W.E2), S_r, lab2),
        compare("anti-multiplicative", compose(S_l, tensor(mu, I)), compose_all(S_l, tensor(I, S_l), tensor(W.tw, I)), lab3),
    ]
    right, left = fullness(W)
    if n:
        blocks_r = [compose(S_r, tensor(I, basis_vector(b, n, F))) for b in range(n)]
        blocks_l = [compose(S_l, tensor(basis_vector(b, n, F), I)) for b in range(n)]
        out.append(Check("S_nd.1", not right or vstack(*blocks_r).rank() == n))
        out.append(Check("S_nd.2", not left or vstack(*blocks_l).rank() == n))
    perm = W.perm
    lhs = compose_all(W.T1, tensor(S_r, S_l), perm([0, 1, 3, 2]))
    rhs = compose_all(tensor(S_r, I), perm([0, 2, 1]), tensor(W.T1, I), tensor(I, S_l, I), perm([0, 1, 3, 2]),
                      tensor(I, W.T2, I), perm([0, 3, 1, 2]))
    out.append(compare("T_1_S", lhs, rhs, lab4))
    muAA = tensor_alg(W.alg, W.alg).mult
    DL, DR = delta_maps(W)
    if D.R1 is not None:
        lhs = compose(muAA, tensor(compose_all(T3(W), tw, D.R1), I, I))
        rhs = compose(tensor(S_l, I), tensor(I, DL))
        out.append(compare("T_tw_R.1", lhs, rhs, lab4))
    if D.R2 is not None:
        lhs = compose(muAA, tensor(compose_all(T4(W), tw, D.R2), I, I))
        rhs = compose_all(DL, tensor(I, I, S_l), perm([0, 2, 1, 3]))
        out.append(compare("T_tw_R.2", lhs, rhs, lab4))
    out.append(Check("span S(b)a", S_l.rank() == n))
    out.append(Check("span aS(b)", S_r.rank() == n))
    out.append(compare("counit_S", compose(W.eps, S_r), compose_all(W.eps, acts["pibarL"][1], tw), lab2))
    return out


def check_S(W, D=None):
    rep = Report("antipode")
    D = D or antipode(W)
    rep.extend(weak_inverse_checks(W, 1, weak_inverse(W, 1)))
    rep.extend(weak_inverse_checks(W, 2, weak_inverse(W, 2)))
    # G1(a⊗d)(b⊗1) = (a⊗1)F(b⊗d)
    I, mu = W.I, W.mu
    F1, _ = F_maps(W)
    p = W.perm([0, 2, 1])
    rep.add(compare("G1 via F", compose_all(tensor(mu, I), p, tensor(G1(W), I), p), compose(tensor(mu, I), tensor(I, F1)), [W.labels] * 3))
    rep.extend(s_checks(W, D))
    return rep
