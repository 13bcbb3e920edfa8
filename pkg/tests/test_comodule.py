import random

import pytest

from wmba.algebra import embed
from wmba.comodule import (RightComodule, check_right_comodule, is_full, leg_spans, regular_comodule,
                           base_comodule, trivial_comodule, is_morphism, hom_space, act_right_A, act_left_A,
                           r_bimodule, bimodule_checks, check_morphism_bilinear, E1_general, E2_general,
                           counital_check, check_left_comodule)
from wmba.core import base_R
from wmba.duality import dual_left
from wmba.fixtures import fixture
from wmba.linalg import LinMap, compose, identity, span_basis
from wmba.registry import (check_identity_comod, comodule_fault_injection, entries, evaluate_entry,
                           get_entry, run_scope)

import oracles as O

ALL = ("interval", "z2", "z3", "z2iso")


def mul_map(W, a, side):
    cols = []
    for v in range(W.n):
        cols.append(W.alg.mul({v: 1}, {a: 1}) if side == "right" else W.alg.mul({a: 1}, {v: 1}))
    return LinMap(W.n, W.n, cols, W.field)


def comodules(W):
    return [regular_comodule(W), base_comodule(W)]


@pytest.mark.parametrize("name", ALL)
def test_canonical_comodules_pass(name):
    W = fixture(name)
    for C in comodules(W):
        rep = check_right_comodule(C)
        assert rep.ok, rep.failures()
        assert is_full(C)


def test_T1_T1_is_not_a_comodule(interval):
    W = interval
    C = RightComodule(W, W.n, W.T1, W.T1, W.labels, "bad")
    rep = check_right_comodule(C)
    comp = rep.checks[0]
    assert not comp.ok and comp.witness is not None
    assert "f" in comp.witness or "f'" in comp.witness


def test_trivial_comodule_not_full(interval):
    T = trivial_comodule(interval)
    assert check_right_comodule(T).ok
    assert not is_full(T)
    lam_span, rho_span = leg_spans(T)
    assert lam_span == rho_span


def test_base_comodule_coaction(interval):
    W, G, L = interval, interval.groupoid, interval.labels
    C = base_comodule(W)
    R = base_R(W)
    n = W.n
    for x in G.objects:
        r = R.coords_of(embed(W.alg, {L.index(O.identity_of(G, x)): 1}))
        (k, one), = r.items()
        for b, g in enumerate(L):
            out = C.lam.apply({k * n + b: one})
            assert out == ({k * n + b: 1} if O.tgt(G, g) == x else {})


def test_non_weak_base_comodule(z2):
    C = base_comodule(z2)
    assert C.dim == 1 and C.lam == identity(z2.n)


def test_morphisms(interval):
    W = interval
    C = regular_comodule(W)
    assert is_morphism(identity(W.n), C, C)
    # right and left multiplication by identity morphisms commute with the coaction,
    # multiplication by f does not
    for a, g in enumerate(W.labels):
        is_unit = g.startswith("1_")
        assert is_morphism(mul_map(W, a, "right"), C, C) == is_unit
        assert is_morphism(mul_map(W, a, "left"), C, C) == is_unit
    swap = LinMap(W.n, W.n, [{W.labels.index(O.inverse(W.groupoid, g)): 1} for g in W.labels])
    assert not is_morphism(swap, C, C)
    assert len(hom_space(C, C)) == W.n   # the maps g ↦ c_g g


@pytest.mark.parametrize("name", ALL)
def test_bimodule_structure(name):
    W = fixture(name)
    for C in comodules(W):
        checks = bimodule_checks(C)
        assert all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_regular_bimodule_actions(interval):
    W, G, L = interval, interval.groupoid, interval.labels
    C = regular_comodule(W)
    n = W.n
    right, left = act_right_A(C), act_left_A(C)
    pi = O.pi(G)
    for v, g in enumerate(L):
        for a, h in enumerate(L):
            k = O.compose_or_none(G, g, pi["pibarR"][h])
            assert right.apply({v * n + a: 1}) == ({L.index(k): 1} if k else {})
            k = O.compose_or_none(G, pi["piR"][h], g)
            assert left.apply({a * n + v: 1}) == ({L.index(k): 1} if k else {})


def test_base_bimodule_is_multiplication(interval):
    R = base_R(interval)
    B = r_bimodule(base_comodule(interval))
    assert B.right_act == R.mult
    assert B.left_act == R.mult


@pytest.mark.parametrize("name", ("interval", "z2iso"))
def test_morphisms_are_bilinear(name):
    W = fixture(name)
    C, Rc = comodules(W)
    for src, dst in ((C, C), (C, Rc), (Rc, C)):
        for f in hom_space(src, dst):
            assert all(c.ok for c in check_morphism_bilinear(f, src, dst))


@pytest.mark.parametrize("name", ("z2", "z3"))
def test_counital_iff_full(name):
    W = fixture(name)
    for C in comodules(W) + [trivial_comodule(W)]:
        counital, full = counital_check(C)
        assert counital == full == is_full(C)


@pytest.mark.parametrize("name", ALL)
def test_general_E_idempotent(name):
    W = fixture(name)
    for C in comodules(W):
        for e in (E1_general(C), E2_general(C)):
            assert compose(e, e) == e


@pytest.mark.parametrize("name", ALL)
def test_registry_entries_hold(name):
    W = fixture(name)
    for C in comodules(W):
        rep, skipped = run_scope("comodule", C)
        assert rep.ok, rep.failures()
        assert not skipped
    assert len(entries("comodule")) >= 22


def test_named_examples(interval):
    assert check_identity_comod(base_comodule(interval), "l-r-E.1")
    assert check_identity_comod(regular_comodule(interval), "l-r-Pi_ac.1")


def test_corrupted_lambda_breaks_old_cu(interval):
    C = regular_comodule(interval)
    n = interval.n
    lam = C.lam + LinMap(n * n, n * n, [{1: interval.field.one} if j == 0 else {} for j in range(n * n)])
    c = evaluate_entry(get_entry("old_cu.1"), C.replace(lam=lam), check_hypotheses=False)
    assert not c.ok and c.witness is not None


def test_fault_injection_finds_witnesses(interval):
    for run in comodule_fault_injection(regular_comodule(interval), random.Random(3)):
        assert run.failure is not None and run.failure.witness is not None


def test_left_comodule_checks(interval):
    D = dual_left(regular_comodule(interval))
    assert check_left_comodule(D).ok
