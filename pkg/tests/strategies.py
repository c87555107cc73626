"""Hypothesis strategies for small random tensors."""

from fractions import Fraction

from hypothesis import strategies as st

from triad.core import ThreeAlgebra


@st.composite
def tensors(draw, min_dim=2, max_dim=4, max_orbits=3):
    """Arbitrary sparse tensors, usually not semi-associative."""
    n = draw(st.integers(min_dim, max_dim))
    count = draw(st.integers(0, max_orbits))
    prods = {}
    for _ in range(count):
        i = draw(st.integers(0, n - 2))
        j = draw(st.integers(i + 1, n - 1))
        k = draw(st.integers(0, n - 1))
        out = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
        prods[(i, j, k)] = tuple(Fraction(x) for x in out)
    return ThreeAlgebra.from_products(n, prods)


@st.composite
def two_step(draw, min_dim=3, max_dim=5):
    """Products of the first u basis vectors landing in the span of the rest.

    Every nested product then vanishes, so these are always semi-associative.
    """
    n = draw(st.integers(min_dim, max_dim))
    u = draw(st.integers(2, n - 1))
    prods = {}
    for _ in range(draw(st.integers(1, 3))):
        i = draw(st.integers(0, u - 2))
        j = draw(st.integers(i + 1, u - 1))
        k = draw(st.integers(0, u - 1))
        out = [Fraction(0)] * n
        for l in range(u, n):
            out[l] = Fraction(draw(st.integers(-2, 2)))
        prods[(i, j, k)] = tuple(out)
    return ThreeAlgebra.from_products(n, prods)
