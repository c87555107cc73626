from fractions import Fraction as F

import pytest
from hypothesis import given, settings

import oracles
from strategies import tensors, two_step
from triad.core import (
    AlgebraError,
    AlgebraMorphism,
    NotAnIdealError,
    ThreeAlgebra,
    center,
    centralizer,
    check_semi_associative,
    derived_algebra,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    identity_morphism,
    image,
    independent_witness,
    is_homomorphism,
    is_ideal,
    is_semi_associative,
    is_subalgebra,
    kernel,
    quotient,
    render_vector,
    thm23_violations,
    triple_product,
)
from triad.exactlin import Matrix, Subspace


def test_a3_products(a3):
    assert triple_product(a3, (1, 0, 0), (0, 1, 0), (0, 1, 0)) == (0, 0, 1)
    assert triple_product(a3, (1, 1, 0), (0, 1, 0), (0, 1, 0)) == (0, 0, 1)
    assert triple_product(a3, (0, 1, 0), (1, 0, 0), (0, 1, 0)) == (0, 0, -1)
    assert triple_product(a3, (0, 1, 0), (0, 1, 0), (1, 0, 0)) == (0, 0, 0)


def test_a3_passes(a3):
    rep = check_semi_associative(a3)
    assert rep.passed and rep.checked == ("E21", "E22", "E23")


def test_bad_tensor_witness(bad):
    rep = check_semi_associative(bad)
    v = rep.first()
    assert (v.axiom, v.labels) == ("E22", (2, 1, 2, 3, 3))
    assert v.lhs == (F(-1), 0, 0) and v.rhs == (0, 0, 0)
    # same first failing tuple as the dense brute force
    assert oracles.dense_violations(oracles.dense_tensor(bad))[0] == ("E22", (1, 0, 1, 2, 2))


@settings(max_examples=80, deadline=None)
@given(tensors())
def test_sparse_checker_matches_dense(A):
    rep = check_semi_associative(A)
    got = sorted(((v.axiom, v.witness) for v in rep.violations), key=lambda b: (b[1], b[0]))
    assert got == oracles.dense_violations(oracles.dense_tensor(A))


@settings(max_examples=40, deadline=None)
@given(two_step())
def test_two_step_family_is_valid(A):
    assert is_semi_associative(A)
    assert derived_algebra(A) <= center(A)


def test_fold_rejects_inconsistent_swap():
    with pytest.raises(AlgebraError, match=r"\(1, 2, 3\)"):
        ThreeAlgebra.from_products(3, {(0, 1, 2): (1, 0, 0), (1, 0, 2): (1, 0, 0)})
    with pytest.raises(AlgebraError):
        ThreeAlgebra.from_products(3, {(0, 0, 2): (1, 0, 0)})
    A = ThreeAlgebra.from_products(3, {(1, 0, 2): (1, 0, 0)})
    assert A.products == (((0, 1, 2), (F(-1), 0, 0)),)


def test_center_and_derived(a3, n4):
    e3 = Subspace.span([(0, 0, 1)], 3)
    assert derived_algebra(a3) == e3 and center(a3) == e3
    e4 = Subspace.span([(0, 0, 0, 1)], 4)
    assert derived_algebra(n4) == e4 and center(n4) == e4
    for A in (a3, n4):
        assert center(A).dim == oracles.center_dim(A)
        assert derived_algebra(A).dim == oracles.derived_dim(A)


@settings(max_examples=40, deadline=None)
@given(tensors(max_dim=4))
def test_center_and_derived_dims_match_dense(A):
    assert center(A).dim == oracles.center_dim(A)
    assert derived_algebra(A).dim == oracles.derived_dim(A)


def test_centralizer_of_everything_is_center(n4):
    assert centralizer(n4, Subspace.full(4)) == center(n4)


def test_ideals(a3):
    e3 = Subspace.span([(0, 0, 1)], 3)
    e1 = Subspace.span([(1, 0, 0)], 3)
    assert is_ideal(a3, e3)
    assert not is_ideal(a3, e1)
    assert is_subalgebra(a3, e1)
    assert ideal_intersect(a3, e3, e3) == e3
    assert ideal_sum(a3, e3, Subspace.zero(3)) == e3
    assert ideal_product(a3, e3, Subspace.full(3), Subspace.full(3)).dim == 0
    with pytest.raises(NotAnIdealError):
        ideal_sum(a3, e1, e3)


def test_quotient(a3):
    Q, pi = quotient(a3, Subspace.span([(0, 0, 1)], 3))
    assert Q.dim == 2 and Q.is_abelian
    assert is_homomorphism(pi)
    assert kernel(pi) == Subspace.span([(0, 0, 1)], 3)
    assert image(pi).dim == 2
    with pytest.raises(NotAnIdealError):
        quotient(a3, Subspace.span([(1, 0, 0)], 3))


def test_homomorphisms(a3):
    f = identity_morphism(a3)
    assert is_homomorphism(f) and kernel(f).dim == 0
    swap = AlgebraMorphism(a3, a3, Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    assert not is_homomorphism(swap)


def test_product_shape_and_independent_witness(a3, n4):
    assert thm23_violations(a3) == [] and thm23_violations(n4) == []
    x, y, z = independent_witness(a3)
    assert any(triple_product(a3, x, y, z))
    assert Subspace.span([x, y, z], 3).dim == 3
    assert independent_witness(ThreeAlgebra.zero(3)) is None


def test_render_vector():
    assert render_vector((F(1), F(-1), F(1, 2))) == "e1 - e2 + 1/2*e3"
    assert render_vector((0, 0)) == "0"
