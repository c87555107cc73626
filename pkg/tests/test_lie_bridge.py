from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import tensors, two_step
from triad.core import AlgebraError, ThreeAlgebra
from triad.exactlin import Matrix, Subspace
from triad.lie_bridge import (
    LieModule,
    ThreeLieAlgebra,
    adjoint_module,
    check_filippov,
    check_lie_module,
    ideal_transfer_holds,
    induce_lie_module,
    is_lie_derivation,
    is_lie_ideal,
    is_three_lie,
    lie_quotient,
    lie_semidirect,
    s_identity_defects,
    sub_adjacent,
)
from triad.reps_ext import regular_module


def failing_lie():
    # [e1,e2,e3] = e1, [e1,e2,e4] = e4: fails Filippov at (1,2,3,2,4)
    return ThreeLieAlgebra.from_brackets(4, {(0, 1, 2): (1, 0, 0, 0), (0, 1, 3): (0, 0, 0, 1)})


def test_fold_signs():
    L = ThreeLieAlgebra.from_brackets(3, {(2, 1, 0): (1, 0, 0)})
    assert L.brackets == (((0, 1, 2), (F(-1), 0, 0)),)
    assert L.basis_bracket(1, 2, 0) == (F(-1), 0, 0)
    with pytest.raises(AlgebraError):
        ThreeLieAlgebra.from_brackets(3, {(0, 0, 1): (1, 0, 0)})
    with pytest.raises(AlgebraError):
        ThreeLieAlgebra.from_brackets(3, {(0, 1, 2): (1, 0, 0), (1, 0, 2): (1, 0, 0)})


def test_single_bracket_into_an_argument_is_three_lie():
    # [e1,e2,e3] = e1 spans a 1-dim derived algebra and does satisfy Filippov
    L = ThreeLieAlgebra.from_brackets(3, {(0, 1, 2): (1, 0, 0)})
    assert is_three_lie(L)
    assert oracles.filippov_failures(L) == []


def test_failing_tensor_witness():
    L = failing_lie()
    rep = check_filippov(L)
    v = rep.first()
    assert v.labels == (1, 2, 3, 2, 4)
    assert v.lhs == (0, 0, 0, 1) and v.rhs == (0, 0, 0, 0)
    assert oracles.filippov_failures(L)


@st.composite
def lie_tensors(draw):
    n = draw(st.integers(3, 4))
    prods = {}
    for _ in range(draw(st.integers(0, 2))):
        t = tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=3, max_size=3))))
        prods[t] = tuple(F(draw(st.integers(-1, 1))) for _ in range(n))
    return ThreeLieAlgebra.from_brackets(n, prods)


@settings(max_examples=60, deadline=None)
@given(lie_tensors())
def test_filippov_matches_dense(L):
    assert is_three_lie(L) == (oracles.filippov_failures(L) == [])


def test_sub_adjacent_examples(a3, n4):
    assert sub_adjacent(a3).is_abelian
    assert sub_adjacent(n4).brackets == (((0, 1, 2), (0, 0, 0, 1)),)
    with pytest.raises(AlgebraError):
        sub_adjacent(ThreeAlgebra.from_products(3, {(0, 1, 2): (1, 0, 0)}))


@settings(max_examples=40, deadline=None)
@given(tensors(max_dim=4))
def test_cyclic_sum_matches_dense(A):
    L = sub_adjacent(A, verify=False)
    c = oracles.cyclic_bracket(A)
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert list(L.basis_bracket(i, j, k)) == c[i][j][k]


@settings(max_examples=25, deadline=None)
@given(two_step())
def test_sub_adjacent_of_valid_algebras_is_three_lie(A):
    L = sub_adjacent(A)
    assert oracles.filippov_failures(L) == []
    assert list(s_identity_defects(A, L)) == []


def test_adjoint_and_semidirect(n4):
    L = sub_adjacent(n4)
    M = adjoint_module(L)
    assert check_lie_module(M).passed
    assert is_three_lie(lie_semidirect(M))
    bad = adjoint_module(failing_lie())
    rep = check_lie_module(bad)
    assert rep.first().axiom == "M43" and rep.first().labels == (1, 2, 2, 3)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_module_check_agrees_with_dense_semidirect(data):
    L = ThreeLieAlgebra.from_brackets(3, {(0, 1, 2): (1, 0, 0)})
    m = data.draw(st.integers(1, 2))
    pairs = {}
    for key in ((0, 1), (0, 2), (1, 2)):
        rows = data.draw(st.lists(st.lists(st.integers(-1, 1), min_size=m, max_size=m),
                                  min_size=m, max_size=m))
        pairs[key] = Matrix.from_rows(rows, m)
    M = LieModule.from_pairs(L, m, pairs)
    ok = oracles.filippov_failures(lie_semidirect(M)) == []
    assert check_lie_module(M).passed == ok


def test_induced_module(a3, n4):
    for A in (a3, n4):
        M = induce_lie_module(A, regular_module(A))
        assert check_lie_module(M).passed
    M = induce_lie_module(a3, regular_module(a3))
    dm = regular_module(a3)
    assert M.at(0, 1) == dm.phi_at(0, 1) - dm.psi_at(1, 0) + dm.psi_at(0, 1)


def test_lie_ideals_and_quotient(n4):
    L = sub_adjacent(n4)
    e4 = Subspace.span([(0, 0, 0, 1)], 4)
    assert is_lie_ideal(L, e4)
    assert lie_quotient(L, e4).is_abelian
    assert ideal_transfer_holds(n4, e4, L)
    assert is_lie_derivation(L, Matrix.identity(4).scale(0))
    assert not is_lie_derivation(L, Matrix.identity(4))
