from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from wmba.field import QQ, GF
from wmba.linalg import (LinMap, compose, compose_all, tensor, identity, zero, permutation, flip, leg,
                         span_basis, rank_of, nullspace, solve_factor, split_idempotent, hstack, vstack,
                         vec, unvec, solution_space, basis_vector, solve_slot, decode,
                         DimensionMismatch, Unsolvable, NotIdempotent, UnsupportedPattern)

F7 = GF(7)
small_int = st.integers(min_value=-3, max_value=3)


def matrices(rows=None, cols=None, field=QQ):
    r = st.integers(0, 4) if rows is None else st.just(rows)
    c = st.integers(0, 4) if cols is None else st.just(cols)
    return st.tuples(r, c).flatmap(
        lambda rc: st.lists(st.lists(small_int, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
        .map(lambda rows, rc=rc: LinMap.from_rows(rows, dom=rc[1], field=field)))


def dense(m):
    return [[m.entry(i, j) for j in range(m.dom)] for i in range(m.cod)]


def dense_mul(a, b, n):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(n)] for i in range(len(a))]


def kron(a, b):
    return [[a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
            for i in range(len(a)) for k in range(len(b))]


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.data())
def test_compose_matches_dense_product(n, m, k, data):
    f = data.draw(matrices(m, n))
    g = data.draw(matrices(k, m))
    assert dense(compose(g, f)) == dense_mul(dense(g), dense(f), n)


@given(st.data())
def test_composition_is_associative(data):
    a, b, c, d = (data.draw(st.integers(1, 3)) for _ in range(4))
    f, g, h = data.draw(matrices(b, a)), data.draw(matrices(c, b)), data.draw(matrices(d, c))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f) == compose_all(h, g, f)


@given(st.data())
def test_tensor_is_kronecker(data):
    f = data.draw(matrices(data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))))
    g = data.draw(matrices(data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))))
    assert dense(tensor(f, g)) == kron(dense(f), dense(g))


@given(st.data())
def test_tensor_is_functorial(data):
    a, b, c, x, y, z = (data.draw(st.integers(1, 3)) for _ in range(6))
    f1, f2 = data.draw(matrices(b, a)), data.draw(matrices(c, b))
    g1, g2 = data.draw(matrices(y, x)), data.draw(matrices(z, y))
    assert compose(tensor(f2, g2), tensor(f1, g1)) == tensor(compose(f2, f1), compose(g2, g1))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_permutation_inverse(dims, rnd):
    order = list(range(len(dims)))
    rnd.shuffle(order)
    p = permutation(dims, order)
    inv = [order.index(k) for k in range(len(dims))]
    q = permutation([dims[k] for k in order], inv)
    assert compose(q, p) == identity(p.dom)


def test_permutation_moves_factors():
    # e_1 ⊗ e_0 ⊗ e_2 in dims (2, 2, 3) goes to e_2 ⊗ e_1 ⊗ e_0 under order (2, 0, 1)
    p = permutation([2, 2, 3], [2, 0, 1])
    src = (1 * 2 + 0) * 3 + 2
    dst = (2 * 2 + 1) * 2 + 0
    assert p.apply({src: 1}) == {dst: 1}


def test_flip_swaps():
    t = flip(2, 3)
    assert t.apply({1 * 3 + 2: 1}) == {2 * 2 + 1: 1}
    assert compose(flip(3, 2), t) == identity(6)


@given(st.data())
def test_leg_13_is_conjugated_tensor(data):
    f = data.draw(matrices(4, 4))  # on 2⊗2
    lhs = leg(f, "13", [2, 2, 2])
    sw = permutation([2, 2, 2], [0, 2, 1])
    rhs = compose_all(sw, tensor(f, identity(2)), sw)
    assert lhs == rhs


def test_leg_rejects_bad_pattern():
    with pytest.raises(UnsupportedPattern):
        leg(identity(4), "11", [2, 2])


@given(st.data())
def test_span_basis_rank_and_span(data):
    vs = data.draw(st.lists(st.lists(small_int, min_size=3, max_size=3), max_size=5))
    b = span_basis(vs, 3)
    assert b.dom == rank_of(vs, 3)
    for v in vs:  # every input vector is in the span
        solve_factor(b, LinMap.from_rows([[x] for x in v]), "right")


@given(matrices())
def test_nullspace(m):
    k = nullspace(m)
    assert compose(m, k).is_zero()
    assert k.dom + m.rank() == m.dom


@given(st.data())
def test_solve_factor_both_sides(data):
    a = data.draw(matrices(3, 2))
    x = data.draw(matrices(2, 2))
    b = compose(a, x)
    assert compose(a, solve_factor(a, b, "right")) == b
    c = compose(x, a.transpose())
    assert compose(solve_factor(a.transpose(), c, "left"), a.transpose()) == c


def test_solve_factor_inconsistent():
    with pytest.raises(Unsolvable):
        solve_factor(zero(1, 1), identity(1), "right")


@given(st.data())
def test_split_idempotent(data):
    n = data.draw(st.integers(1, 4))
    a = data.draw(matrices(n, n))
    # a projection onto the column space of an arbitrary matrix
    basis = a.image_basis()
    e = _projector(basis) if basis.dom else zero(n, n)
    proj, incl = split_idempotent(e)
    assert compose(incl, proj) == e
    assert compose(proj, incl) == identity(incl.dom)


def _projector(basis):
    # B (BᵀB)⁻¹ Bᵀ over ℚ
    bt = basis.transpose()
    g = compose(bt, basis)
    ginv = solve_factor(g, identity(g.dom), "right")
    return compose_all(basis, ginv, bt)


def test_split_idempotent_rejects():
    with pytest.raises(NotIdempotent):
        split_idempotent(LinMap.from_rows([[2]]))


def test_stack_vec_unvec():
    f = LinMap.from_rows([[1, 2], [3, 4]])
    g = LinMap.from_rows([[5], [6]])
    assert dense(hstack(f, g)) == [[1, 2, 5], [3, 4, 6]]
    assert dense(vstack(f, f.transpose())) == [[1, 2], [3, 4], [1, 3], [2, 4]]
    assert unvec(vec(f), 2, 2) == f
    assert basis_vector(1, 3).apply({0: 1}) == {1: 1}
    assert list(decode(5, [2, 3])) == [1, 2]


def test_solution_space_commutant():
    d = LinMap.from_rows([[1, 0], [0, 2]])
    sols = solution_space(2, 2, lambda x: compose(d, x) - compose(x, d))
    assert len(sols) == 2  # diagonal matrices


def test_solve_slot_recovers_middle_factor():
    x = LinMap.from_rows([[1, 1], [0, 2]])
    P = tensor(identity(2), x, identity(2))
    y = solve_slot(identity(8), P, 2, 2, 2, 2)
    assert tensor(identity(2), y, identity(2)) == P


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(identity(2), identity(3))
    with pytest.raises(DimensionMismatch):
        LinMap(2, 2, [{}])


def test_prime_field_arithmetic():
    m = LinMap.from_rows([[3, 1], [1, 5]], field=F7)   # det = 14 = 0 mod 7
    assert m.rank() == 1
    assert LinMap.from_rows([[3, 1], [1, 5]]).rank() == 2


def test_zero_dimensional_maps():
    z = identity(0)
    assert z.dom == z.cod == 0
    assert tensor(z, identity(3)).dom == 0
    assert span_basis([], 0).dom == 0


def test_small_examples():
    assert compose(identity(3), LinMap.from_rows([[1, 2], [0, 1], [5, 5]])) == LinMap.from_rows([[1, 2], [0, 1], [5, 5]])
    assert tensor(identity(2), identity(3)) == identity(6)
    assert flip(1, 4) == identity(4)
    assert dense(flip(2, 2)) == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert leg(identity(6), "13", [2, 5, 3]) == identity(30)
    assert leg(flip(2, 2), "21", [2, 2]) == flip(2, 2)
    assert split_idempotent(identity(3)) == (identity(3), identity(3))
    p, i = split_idempotent(zero(2, 2))
    assert p.cod == i.dom == 0
    p, i = split_idempotent(LinMap.from_rows([[1, 0], [0, 0]]))
    assert p.cod == 1 and compose(i, p) == LinMap.from_rows([[1, 0], [0, 0]])
    b = LinMap.from_rows([[1, 2], [3, 4]])
    assert solve_factor(identity(2), b, "right") == b
    assert span_basis([[1, 2, 3], [2, 4, 6]], 3).dom == 1
    assert span_basis([], 3).dom == 0


@given(st.data())
def test_leg_of_leg(data):
    f = data.draw(matrices(4, 4))
    # (f^{13}) on three factors, then placed on positions 1, 2, 4 of four factors, equals f^{14}
    g = leg(leg(f, "13", [2, 2, 2]), "124", [2, 2, 2, 2])
    assert g == leg(f, "14", [2, 2, 2, 2])


@given(st.lists(st.lists(small_int, min_size=2, max_size=2), min_size=3, max_size=3))
def test_three_vectors_in_the_plane(vs):
    assert span_basis(vs, 2).dom <= 2


def test_rank_deficient_solve_has_zero_residual():
    a = LinMap.from_rows([[1, 2], [2, 4]])
    b = LinMap.from_rows([[3], [6]])
    x = solve_factor(a, b, "right")
    assert compose(a, x) == b
