import random

import pytest

from wmba.algebra import embed
from wmba.comodule import (regular_comodule, base_comodule, trivial_comodule, is_full, hom_space,
                           check_right_comodule, is_morphism, r_bimodule)
from wmba.core import base_R
from wmba.duality import (dual_left, is_full_left, s_right_from_left, s_left_from_right, lambda_s21,
                          dual_right, dual_right_direct, dual_data, ev_coev, check_duality, snake_maps,
                          kappa_invertible, dual_left_check, dual_right_check, dual_actions_check,
                          ev_coev_check, snake_check, kappa_check)
from wmba.fixtures import fixture
from wmba.linalg import identity, LinMap, compose
from wmba.registry import check_identity_dual, evaluate_entry, get_entry, perturb, run_scope
from wmba.report import Check

import oracles as O

ALL = ("interval", "z2", "z3", "z2iso")


def both(W):
    return [regular_comodule(W), base_comodule(W)]


@pytest.mark.parametrize("name", ("z2", "interval"))
def test_dual_coaction_pairing(name):
    """(A⊗ev_v)λ*(a⊗φ) = (φ⊗A)λ(v⊗a), i.e. λ*[(b,i),(a,j)] = λ[(j,b),(i,a)]."""
    W = fixture(name)
    C = regular_comodule(W)
    L = dual_left(C)
    n, d = W.n, C.dim
    for a in range(n):
        for j in range(d):
            out = L.lam.apply({a * d + j: 1})
            for b in range(n):
                for i in range(d):
                    lhs = out.get(b * d + i, 0)
                    rhs = C.lam.cols[i * n + a].get(j * n + b, 0)
                    assert lhs == rhs


@pytest.mark.parametrize("name", ALL)
def test_dual_left(name):
    W = fixture(name)
    for C in both(W):
        assert dual_left_check(C).ok
        assert is_full_left(dual_left(C))


def test_zero_comodule_dual(interval):
    Z = trivial_comodule(interval, 0)
    assert dual_left(Z).dim == 0
    assert s_left_from_right(Z).dim == 0


def test_round_trip_is_isomorphic(interval):
    A = regular_comodule(interval)
    back = s_right_from_left(s_left_from_right(A))
    assert check_right_comodule(back).ok and is_full(back)
    # an invertible intertwiner exists
    homs = hom_space(A, back)
    rng = random.Random(0)
    f = None
    for _ in range(10):
        g = LinMap(A.dim, A.dim, [{} for _ in range(A.dim)])
        for h in homs:
            g = g + h.scale(rng.randint(1, 50))
        if g.rank() == A.dim:
            f = g
            break
    assert f is not None and is_morphism(f, A, back)


@pytest.mark.parametrize("name", ALL)
def test_dual_right(name):
    W = fixture(name)
    for C in both(W):
        Vs = dual_right(C)
        assert Vs.dim == C.dim
        assert check_right_comodule(Vs).ok and is_full(Vs)
        assert dual_right_check(C).ok
        assert dual_actions_check(C).ok


def test_dual_actions_oracle(interval):
    """φ^g·1_x = [t(g) = x]φ^g and 1_x·φ^g = [s(g) = x]φ^g on A*."""
    W, G, L = interval, interval.groupoid, interval.labels
    Vs = dual_right(regular_comodule(W))
    B = base_R(W)
    M = r_bimodule(Vs)
    d, r = Vs.dim, B.dim
    for x in G.objects:
        (s, one), = B.coords_of(embed(W.alg, {L.index(O.identity_of(G, x)): 1})).items()
        for j, g in enumerate(L):
            assert M.right_act.apply({j * r + s: one}) == ({j: 1} if O.tgt(G, g) == x else {})
            assert M.left_act.apply({s * d + j: one}) == ({j: 1} if O.src(G, g) == x else {})


@pytest.mark.parametrize("name", ALL)
def test_ev_coev_and_snakes(name):
    W = fixture(name)
    for C in both(W):
        assert ev_coev_check(C).ok
        assert snake_check(C).ok
        assert kappa_check(C).ok and kappa_invertible(C)
        assert check_duality(C)


def test_coev_of_zero(interval):
    _, coev = ev_coev(regular_comodule(interval))
    assert coev.apply({}) == {}


def test_corrupted_coev(interval):
    C = regular_comodule(interval)
    ev, coev = ev_coev(C)
    bad, _ = perturb(coev, random.Random(2))
    assert not check_duality(C, coev=bad)
    assert check_duality(C, ev=ev, coev=coev)


def test_lambda_tilde(interval):
    A, R = both(interval)
    assert check_identity_dual(A, "lambda_tilde.2")
    assert check_identity_dual(R, "lambda_tilde.3")
    n = interval.n
    bad = A.replace(rho=A.rho + LinMap(n * n, n * n, [{1: interval.field.one} if j == 0 else {}
                                                      for j in range(n * n)]))
    assert not evaluate_entry(get_entry("lambda_tilde.1"), bad, check_hypotheses=False).ok


@pytest.mark.parametrize("name", ALL)
def test_registry_scope(name):
    for C in both(fixture(name)):
        rep, _ = run_scope("duality", C)
        assert rep.ok, rep.failures()


def test_dual_is_again_dualizable(interval):
    # exploratory: V* also has a dual on this instance
    Vs = dual_right(regular_comodule(interval))
    assert dual_right(Vs).dim == interval.n
    assert check_duality(Vs)
