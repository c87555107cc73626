from itertools import product

import pytest
from hypothesis import given, settings

import oracles
from strategies import tensors, two_step
from triad.core import center, derived_algebra
from triad.exactlin import Matrix
from triad.maps import (
    MapSpace,
    basis_left,
    central_derivation_space,
    centroid_defect,
    centroid_space,
    derivation_space,
    is_centroid_element,
    is_derivation,
    is_lie_closed,
    left_mult,
    right_mult,
    s_map,
    span_space,
)


def M(rows):
    return Matrix.from_rows(rows)


def test_operators_on_a3(a3):
    assert basis_left(a3, 0, 1) == M([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    assert left_mult(a3, (1, 0, 0), (0, 1, 0)) == basis_left(a3, 0, 1)
    S = s_map(a3, (1, 0, 0), (0, 1, 0))
    assert S.apply((0, 1, 0)) == (0, 0, 2)
    assert is_derivation(a3, S)
    assert not is_derivation(a3, Matrix.identity(3))
    assert right_mult(a3, (0, 1, 0), (0, 1, 0)).apply((1, 0, 0)) == (0, 0, 1)


def test_der_a3_by_hand(a3):
    """De1 = a e1 + c e3, De2 = p e1 + q e2 + r e3, De3 = (a + 2q) e3."""
    D = derivation_space(a3)
    assert D.dim == 5
    for a, c, p, q, r in product((0, 1, -2), repeat=5):
        assert D.contains(M([[a, p, 0], [0, q, 0], [c, r, a + 2 * q]]))
    # De1 = e2 breaks the rule on (e1, e2, e1): D{e1,e2,e1} = 0 but {e1,e2,De1} = e3
    bad = M([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert not is_derivation(a3, bad) and not D.contains(bad)


def test_small_spaces_on_a3(a3):
    C = central_derivation_space(a3)
    assert C.dim == 2
    assert C.contains(M([[0, 0, 0], [0, 0, 0], [1, 0, 0]]))
    assert C.contains(M([[0, 0, 0], [0, 0, 0], [0, 1, 0]]))
    G = centroid_space(a3)
    assert G.dim == 3
    assert G.contains(Matrix.identity(3))
    for phi in G.basis:
        # the middle-slot identity is not imposed but holds
        assert next(centroid_defect(a3, phi, (1,)), None) is None


@pytest.mark.parametrize("name,dims", [("a3", (1, 2, 2, 2)), ("n4", (1, 2, 3, 3))])
def test_span_dims(name, dims, request):
    A = request.getfixturevalue(name)
    got = tuple(span_space(A, k).dim for k in ("LSpan", "RSpan", "SSpan", "TSpan"))
    assert got == dims


def _corpus(a3, n4):
    from triad.core import ThreeAlgebra
    return [a3, n4, ThreeAlgebra.zero(2), ThreeAlgebra.zero(3)]


def test_dims_match_dense_oracle(a3, n4):
    for A in _corpus(a3, n4):
        assert derivation_space(A).dim == oracles.der_dim(A)
        assert centroid_space(A).dim == oracles.centroid_dim(A)
    assert (derivation_space(n4).dim, central_derivation_space(n4).dim, centroid_space(n4).dim) == (8, 3, 4)


@settings(max_examples=25, deadline=None)
@given(tensors(max_dim=3))
def test_der_and_centroid_match_dense_on_arbitrary_tensors(A):
    D = derivation_space(A)
    assert D.dim == oracles.der_dim(A)
    assert all(is_derivation(A, m) for m in D.basis)
    G = centroid_space(A)
    assert G.dim == oracles.centroid_dim(A)
    assert all(is_centroid_element(A, m) for m in G.basis)


@settings(max_examples=15, deadline=None)
@given(two_step(max_dim=4))
def test_central_derivations_by_definition(A):
    C = central_derivation_space(A)
    Z, A1 = center(A), derived_algebra(A)
    for m in C.basis:
        assert is_derivation(A, m)
        assert all(Z.contains(m.column(q)) for q in range(A.dim))
        assert all(not any(m.apply(v)) for v in A1.vectors)
    # central derivations are exactly Der intersected with the centroid
    assert C.same_space(derivation_space(A).intersect(centroid_space(A)))


def test_mapspace_rejects_bad_kind():
    from triad.exactlin import Subspace
    with pytest.raises(ValueError):
        MapSpace("Foo", 2, Subspace.zero(4))


def test_lie_closed(a3):
    assert is_lie_closed(derivation_space(a3))
    assert is_lie_closed(span_space(a3, "TSpan"))
    assert span_space(a3, "SSpan").leq(derivation_space(a3))
