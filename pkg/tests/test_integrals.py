from itertools import product

import pytest
from hypothesis import given, strategies as st

from wmba.algebra import embed
from wmba.core import base_R
from wmba.field import GF
from wmba.fixtures import fixture
from wmba.integrals import (functional, dual_basis, harpoon, is_right_integral, integral_conditions,
                            integral_basis, module_R, module_A, LinDualIso, lin_dual_iso,
                            IntegralHomBijection, harpoon_check, int_def_check, roundtrip_check)
from wmba.linalg import LinMap, identity, compose
from wmba.registry import check_identity_int, evaluate_entry, get_entry

import oracles as O

ALL = ("interval", "z2", "z3", "z2iso")


def psi_of(W, coeffs):
    return functional(W, [coeffs.get(g, 0) for g in W.labels])


def test_harpoon_matches_oracle(interval):
    W, G = interval, interval.groupoid
    for j, h in enumerate(W.labels):
        psi_d = {h: 1}
        for a, g in enumerate(W.labels):
            expect = O.element(W.labels, O.harpoon(G, psi_d, g), W.field)
            assert harpoon(W, psi_of(W, psi_d), a) == embed(W.alg, expect)
    assert harpoon(W, functional(W, [0] * W.n), 0).is_zero()


def test_harpoon_of_f_is_left_multiplication(interval):
    W = interval
    f = W.labels.index("f")
    m = harpoon(W, psi_of(W, {"f": 1}), f)
    assert m == embed(W.alg, {f: 1})


def test_integral_examples(interval):
    W, G = interval, interval.groupoid
    on_ids = {O.identity_of(G, x): k + 1 for k, x in enumerate(G.objects)}
    assert is_right_integral(W, psi_of(W, on_ids))
    assert not is_right_integral(W, psi_of(W, {"f": 1}))
    assert is_right_integral(W, functional(W, [0] * W.n))


@pytest.mark.parametrize("name", ("interval", "z2", "z3"))
def test_integral_dimension_brute_force(name):
    W = fixture(name)
    assert len(integral_basis(W)) == O.brute_force_integrals(W.groupoid, 5)


@pytest.mark.parametrize("name", ALL)
def test_integral_dimension_is_object_count(name):
    W = fixture(name)
    basis = integral_basis(W)
    assert len(basis) == len(W.groupoid.objects)
    assert all(is_right_integral(W, psi) for psi in basis)


@pytest.mark.parametrize("name", ALL)
def test_conditions_agree_on_spanning_set(name):
    assert int_def_check(fixture(name)).ok


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_conditions_agree_on_random_functionals(values):
    W = fixture("interval")
    conds = integral_conditions(W, functional(W, values))
    assert len(set(conds.values())) == 1


def test_kZ2_integral(z2):
    (psi,) = integral_basis(z2)
    # the Haar functional of a group algebra is the dual of the unit
    assert psi.cols[1] == {} and psi.cols[0]


def test_zero_dimensional():
    from test_core import zero_wmb
    assert integral_basis(zero_wmb()) == []


def test_lin_dual_iso_on_R(interval):
    M = module_R(interval)
    iso = LinDualIso(M)
    B = base_R(interval)
    assert len(iso.hom_basis()) == B.dim
    to_hom, to_lin = lin_dual_iso(M)
    assert to_hom(to_lin(identity(B.dim, interval.field))) == identity(B.dim, interval.field)
    assert to_lin(identity(B.dim, interval.field)) == B.counit


def test_lin_dual_iso_on_A(interval):
    iso = LinDualIso(module_A(interval))
    assert len(iso.hom_basis()) == interval.n == 4
    for psi in dual_basis(interval):
        Psi = iso.to_hom(psi)
        assert iso.is_module_map(Psi)
        assert iso.to_lin(Psi) == psi
    for Psi in iso.hom_basis():
        assert iso.to_hom(iso.to_lin(Psi)) == Psi


@pytest.mark.parametrize("name", ALL)
def test_integral_hom_bijection(name):
    W = fixture(name)
    assert roundtrip_check(W).ok
    b = IntegralHomBijection(W)
    assert len(b.hom_basis()) == len(integral_basis(W))


def test_to_hom_oracle(interval):
    W, G = interval, interval.groupoid
    b = IntegralHomBijection(W)
    B = base_R(W)
    for coeffs in ({"1_x": 1}, {"1_x": 2, "1_y": -1}, {}):
        Psi = b.to_hom(psi_of(W, coeffs))
        table = O.to_hom(G, coeffs)
        for a, g in enumerate(W.labels):
            expect = {}
            for e, c in table[g].items():
                for k, v in B.coords_of(embed(W.alg, {W.labels.index(e): 1})).items():
                    expect[k] = expect.get(k, 0) + c * v
            assert Psi.apply({a: 1}) == {k: v for k, v in expect.items() if v}
        # right R-linearity
        assert b.is_module_map(Psi)


def test_harpoon_registry(interval):
    assert check_identity_int(interval, "harpoon")
    assert harpoon_check(interval, [functional(interval, [0] * 4)]).ok


def test_harpoon_detects_corrupted_T3(interval):
    n = interval.n
    T3 = interval.T3 + LinMap(n * n, n * n, [{1: interval.field.one} if j == 0 else {} for j in range(n * n)])
    bad = interval.replace(T3=T3)
    c = evaluate_entry(get_entry("harpoon"), bad, check_hypotheses=False)
    assert not c.ok


def test_over_gf101():
    W = fixture("interval", GF(101))
    assert len(integral_basis(W)) == 2 and roundtrip_check(W).ok
