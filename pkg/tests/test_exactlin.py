from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rank as oracle_rank
from triad.exactlin import (
    DimensionError,
    Matrix,
    SparseEchelon,
    Subspace,
    format_rational,
    inverse,
    nullspace,
    parse_rational,
    rank,
    rref,
)

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_parse_and_format():
    assert parse_rational("-3/6") == F(-1, 2)
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-1, 3)) == "-1/3"
    for bad in ("1.5", " 1", "1/0", "x", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_textbook_elimination(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == oracle_rank([[F(x) for x in r] for r in rows])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_is_annihilated(rows):
    m = Matrix.from_rows(rows)
    ns = nullspace(m)
    assert ns.dim == m.ncols - rank(m)
    for v in ns.vectors:
        assert not any(m.apply(v))


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_sparse_echelon_agrees_with_dense_rref(rows):
    ncols = len(rows[0])
    ech = SparseEchelon(ncols)
    for r in rows:
        ech.add({j: x for j, x in enumerate(r) if x})
    red, rk = rref(Matrix.from_rows(rows))
    assert ech.rank == rk
    assert [list(r) for r in ech.reduced_rows()] == [list(r) for r in red.rows[:rk]]


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_subspace_sum_and_intersection_dims(a, b):
    n = 4
    a = [r + [0] * (n - len(r)) for r in a]
    b = [r + [0] * (n - len(r)) for r in b]
    U = Subspace.span(a, n)
    W = Subspace.span(b, n)
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    assert (U & W) <= U and (U & W) <= W
    assert U <= U + W


def test_span_is_canonical():
    U = Subspace.span([(1, 2, 0), (0, 1, 1)], 3)
    W = Subspace.span([(1, 3, 1), (2, 4, 0)], 3)
    assert U == W
    # coordinates are relative to the RREF basis (1,0,-2), (0,1,1)
    assert U.coordinates((1, 3, 1)) == (F(1), F(3))


def test_inverse():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_dimension_errors():
    with pytest.raises(DimensionError):
        Subspace.span([(1, 2)], 3)
    with pytest.raises(DimensionError):
        Matrix.identity(2) + Matrix.identity(3)
