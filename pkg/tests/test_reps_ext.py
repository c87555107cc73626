from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import two_step
from triad.core import ThreeAlgebra, check_semi_associative
from triad.exactlin import Matrix
from triad.reps_ext import (
    Cocycle,
    DoubleModule,
    InvalidCocycleError,
    InvalidModuleError,
    check_cocycle,
    check_derived_identities,
    check_double_module,
    cocycle_rank,
    cocycle_space,
    double_extension,
    dual_module,
    is_cocycle,
    is_double_module,
    regular_module,
    semidirect_product,
    zero_module,
)


def bad_module(a3):
    return DoubleModule.build(a3, 1, {(0, 1): Matrix.from_rows([[1]])}, {})


def test_regular_and_dual(a3, n4):
    for A in (a3, n4):
        reg = regular_module(A)
        assert check_double_module(reg).passed
        assert check_derived_identities(reg).passed
        dual = dual_module(reg)
        assert check_double_module(dual).passed
        assert dual.phi_at(0, 1) == -reg.phi_at(0, 1).transpose()
        assert check_double_module(dual_module(dual)).passed


def test_invalid_module_witness(a3):
    rep = check_double_module(bad_module(a3))
    v = rep.first()
    assert (v.axiom, v.labels) == ("D52", (1, 2, 1, 2))
    assert v.lhs == Matrix.from_rows([[0]]) and v.rhs == Matrix.from_rows([[1]])
    with pytest.raises(InvalidModuleError):
        dual_module(bad_module(a3))


def test_semidirect_of_regular_matches_dense(a3):
    S = semidirect_product(a3, regular_module(a3))
    assert check_semi_associative(S).passed
    c = oracles.dense_semidirect(regular_module(a3))
    assert oracles.dense_tensor(S) == c
    assert oracles.dense_violations(c) == []


def test_semidirect_of_bad_module_fails(a3):
    dm = bad_module(a3)
    S = semidirect_product(a3, dm)
    assert not check_semi_associative(S).passed
    assert oracles.dense_violations(oracles.dense_semidirect(dm))


@st.composite
def modules_over_a3(draw):
    A = ThreeAlgebra.from_products(3, {(0, 1, 1): (0, 0, 1)})
    m = draw(st.integers(1, 2))

    def mat():
        return Matrix.from_rows(draw(st.lists(st.lists(st.sampled_from((0, 0, 1, -1)), min_size=m,
                                                       max_size=m), min_size=m, max_size=m)), m)

    phi = {k: mat() for k in draw(st.lists(st.sampled_from([(0, 1), (0, 2), (1, 2)]),
                                            max_size=2, unique=True))}
    psi = {k: mat() for k in draw(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                                            max_size=2, unique=True))}
    return DoubleModule.build(A, m, phi, psi)


@settings(max_examples=60, deadline=None)
@given(modules_over_a3())
def test_module_check_is_the_dense_semidirect_check(dm):
    dense_ok = oracles.dense_violations(oracles.dense_semidirect(dm)) == []
    assert is_double_module(dm) == dense_ok


def test_zero_module(n4):
    assert is_double_module(zero_module(n4, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_abelian_cocycle_count(n):
    A = ThreeAlgebra.zero(n)
    assert len(cocycle_space(A)) == n * n * n * (n - 1) // 2


def test_a3_cocycles(a3):
    basis = cocycle_space(a3)
    assert len(basis) == 4
    assert cocycle_rank(a3) == cocycle_rank(a3, reverse=True)
    for c in basis:
        assert is_cocycle(c)
        E = double_extension(a3, c)
        assert oracles.dense_violations(oracles.dense_tensor(E)) == []


def test_zero_extension_is_semidirect_with_dual(a3, n4):
    for A in (a3, n4):
        E = double_extension(A, Cocycle.zero(A))
        S = semidirect_product(A, dual_module(regular_module(A)))
        assert E.products == S.products


def test_extension_matches_dense_formula(a3):
    c = cocycle_space(a3)[2]
    E = double_extension(a3, c)
    assert oracles.dense_tensor(E) == oracles.dense_extension(a3, dict(c.theta))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([(0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 2, 1), (1, 2, 0)]),
                          st.integers(0, 2), st.sampled_from((1, -1))), max_size=2))
def test_cocycle_check_agrees_with_dense_extension(entries):
    A = ThreeAlgebra.from_products(3, {(0, 1, 1): (0, 0, 1)})
    theta = {}
    for t, l, s in entries:
        v = list(theta.get(t, (0, 0, 0)))
        v[l] = F(s)
        theta[t] = tuple(v)
    c = Cocycle.build(A, theta)
    dense_ok = oracles.dense_violations(oracles.dense_extension(A, dict(c.theta))) == []
    assert is_cocycle(c) == dense_ok
    if not dense_ok:
        with pytest.raises(InvalidCocycleError):
            double_extension(A, c)


@settings(max_examples=8, deadline=None)
@given(two_step(max_dim=4))
def test_cocycles_of_two_step_algebras(A):
    basis = cocycle_space(A)
    assert len({c.flat() for c in basis}) == len(basis)
    for c in basis[:6]:
        assert check_cocycle(c).passed
        assert check_semi_associative(double_extension(A, c, contract=False)).passed
