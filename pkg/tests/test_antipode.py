import random

import pytest

from wmba.algebra import embed, unit_multiplier
from wmba.antipode import (G1, G2, weak_inverse, weak_inverse_checks, antipode, antipode_from_matrix,
                           check_S, NoAntipode, Inconsistent)
from wmba.core import pi_maps
from wmba.fixtures import fixture
from wmba.linalg import compose, identity, tensor, LinMap
from wmba.registry import perturb

import oracles as O

ALL = ("interval", "z2", "z3", "z2iso")


@pytest.mark.parametrize("name", ALL)
def test_G_idempotent_and_oracle(name):
    W = fixture(name)
    g1, g2 = G1(W), G2(W)
    assert compose(g1, g1) == g1 and compose(g2, g2) == g2
    assert g1 == O.to_linmap(O.G1(W.groupoid), W.labels, W.field)


@pytest.mark.parametrize("name", ALL)
def test_weak_inverses(name):
    W = fixture(name)
    for i in (1, 2):
        R = weak_inverse(W, i)
        assert all(c.ok for c in weak_inverse_checks(W, i, R))
    assert weak_inverse(W, 1) == O.to_linmap(O.R1(W.groupoid), W.labels, W.field)


def test_R1_of_kZ2(z2):
    # g⊗h ↦ g⊗g⁻¹h = g⊗gh
    R1 = weak_inverse(z2, 1)
    assert R1 == z2.T1


def test_not_weakly_invertible():
    W = fixture("interval").replace()
    n2 = W.n ** 2
    W.cached("G1", lambda: identity(n2, W.field))   # injected fault: G1 forced to the identity
    with pytest.raises(NoAntipode):
        weak_inverse(W, 1)


@pytest.mark.parametrize("name", ALL)
def test_antipode_is_inverse(name):
    W = fixture(name)
    D = antipode(W)
    inv = O.antipode(W.groupoid)
    for a, g in enumerate(W.labels):
        assert D.mults[a] == embed(W.alg, {W.labels.index(inv[g]): 1})
    rep = check_S(W, D)
    assert rep.ok, rep.failures()


def test_kZ2_antipode_is_identity(z2):
    D = antipode(z2)
    for a in range(z2.n):
        assert D.mults[a] == embed(z2.alg, {a: 1})


def test_corrupted_R1_inconsistent(interval):
    bad, _ = perturb(weak_inverse(interval, 1), random.Random(1))
    with pytest.raises(Inconsistent):
        antipode(interval, R1=bad)


def test_identity_as_antipode_fails_at_f(interval):
    rep = check_S(interval, antipode_from_matrix(interval, identity(interval.n)))
    anti = next(c for c in rep.checks if c.name == "anti-multiplicative")
    assert not anti.ok and "f" in anti.witness


def test_non_weak_specialisation(z3):
    assert check_S(z3).ok
    one = unit_multiplier(z3.alg)
    assert all(m == one for m in pi_maps(z3).mults["piR"])


@pytest.mark.parametrize("name", ALL)
def test_S_absorbs_E(name):
    W = fixture(name)
    D = antipode(W)
    I = W.I
    assert compose(W.mu, compose(tensor(D_S(W, D), I), W.E1)) == compose(W.mu, tensor(D_S(W, D), I))
    assert compose(W.mu, compose(tensor(I, D_S(W, D)), W.E2)) == compose(W.mu, tensor(I, D_S(W, D)))


def D_S(W, D):
    """S as a map A -> A (groupoid algebras are unital, so S(a) lies in A)."""
    cols = []
    for m in D.mults:
        # S(a) = S(a)·1 with 1 = Σ identities
        one = {i: W.field.one for i, g in enumerate(W.labels) if O.identity_of(W.groupoid, W.groupoid.morphisms[g][0]) == g}
        cols.append(m.lam.apply(one))
    return LinMap(W.n, W.n, cols, W.field)


def test_full_row_span_of_aSb(interval):
    W = interval
    S = D_S(W, antipode(W))
    assert compose(W.mu, tensor(W.I, S)).rank() == W.n
