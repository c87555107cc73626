"""Multiplication operators and the linear map spaces built from them.

A linear map on an n-dimensional algebra is an n x n :class:`Matrix` whose
column q is the image of e_q. Spaces of maps (derivations, centroid, spans of
multiplication operators) are stored as subspaces of Q^(n*n) over the
row-major flattening, so two spaces are equal exactly when their canonical
bases coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Sequence

from .core import ThreeAlgebra, _dense, _sparse, center, derived_algebra
from .exactlin import (
    DimensionError,
    Matrix,
    SparseEchelon,
    Subspace,
    nullspace,
    vector,
)

KINDS = ("Der", "DerC", "Centroid", "LSpan", "RSpan", "SSpan", "TSpan")


@dataclass(frozen=True)
class MapSpace:
    kind: str
    n: int
    space: Subspace

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown map space kind {self.kind!r}")
        if self.space.ambient_dim != self.n * self.n:
            raise DimensionError("map space must live in Q^(n*n)")

    @classmethod
    def spanned_by(cls, kind: str, n: int, maps: Iterable[Matrix]) -> MapSpace:
        return cls(kind, n, Subspace.span([m.flat() for m in maps], n * n))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[Matrix]:
        return [Matrix.from_flat(v, self.n, self.n) for v in self.space.vectors]

    def contains(self, m: Matrix) -> bool:
        if m.shape != (self.n, self.n):
            raise DimensionError(f"{m.shape} map in a space of {self.n}x{self.n} maps")
        return self.space.contains(m.flat())

    def __contains__(self, m: Matrix) -> bool:
        return self.contains(m)

    def leq(self, other: MapSpace) -> bool:
        return self.space.leq(other.space)

    def same_space(self, other: MapSpace) -> bool:
        return self.space == other.space

    def intersect(self, other: MapSpace, kind: str | None = None) -> MapSpace:
        return MapSpace(kind or self.kind, self.n, self.space & other.space)


# --------------------------------------------------------------------------- #
# Operators


def _check(A: ThreeAlgebra, *vs: Sequence):
    for v in vs:
        if len(v) != A.dim:
            raise DimensionError(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")


def _operator(A: ThreeAlgebra, image_of_basis) -> Matrix:
    cols = [_dense(image_of_basis(k), A.dim) for k in range(A.dim)]
    return Matrix.from_columns(cols, A.dim)


def left_mult(A: ThreeAlgebra, x: Sequence, y: Sequence) -> Matrix:
    """L(x, y): z -> {x, y, z}."""
    _check(A, x, y)
    sx, sy = _sparse(vector(x)), _sparse(vector(y))
    return _operator(A, lambda k: A.sparse_product(sx, sy, {k: Fraction(1)}))


def right_mult(A: ThreeAlgebra, x: Sequence, y: Sequence) -> Matrix:
    """R(x, y): z -> {z, x, y}."""
    _check(A, x, y)
    sx, sy = _sparse(vector(x)), _sparse(vector(y))
    return _operator(A, lambda k: A.sparse_product({k: Fraction(1)}, sx, sy))


def s_map(A: ThreeAlgebra, x: Sequence, y: Sequence) -> Matrix:
    """S(x, y) = L(x, y) - R(x, y), the inner derivation."""
    return left_mult(A, x, y) - right_mult(A, x, y)


def basis_left(A: ThreeAlgebra, i: int, j: int) -> Matrix:
    return _operator(A, lambda k: A.table.get((i, j, k), {}))


def basis_right(A: ThreeAlgebra, i: int, j: int) -> Matrix:
    return _operator(A, lambda k: A.table.get((k, i, j), {}))


# --------------------------------------------------------------------------- #
# Derivations and centroid


def _apply_sparse(D: Matrix, i: int) -> dict:
    return {p: D.rows[p][i] for p in range(D.nrows) if D.rows[p][i]}


def derivation_defect(A: ThreeAlgebra, D: Matrix):
    """Yield ((i, j, k), lhs, rhs) where the Leibniz rule fails on basis triples."""
    n = A.dim
    if D.shape != (n, n):
        raise DimensionError(f"{D.shape} map on a {n}-dimensional algebra")
    imgs = [_apply_sparse(D, i) for i in range(n)]
    for i, j, k in iproduct(range(n), repeat=3):
        if i == j:
            continue
        ei, ej, ek = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
        lhs = D.apply(A.basis_product(i, j, k))
        rhs = [Fraction(0)] * n
        for part in (A.sparse_product(imgs[i], ej, ek),
                     A.sparse_product(ei, imgs[j], ek),
                     A.sparse_product(ei, ej, imgs[k])):
            for l, c in part.items():
                rhs[l] += c
        if lhs != tuple(rhs):
            yield (i, j, k), lhs, tuple(rhs)


def is_derivation(A: ThreeAlgebra, D: Matrix) -> bool:
    return next(derivation_defect(A, D), None) is None


def _var(n: int, p: int, q: int) -> int:
    # D[p][q] is the e_p coefficient of D(e_q)
    return p * n + q


def _derivation_rows(A: ThreeAlgebra):
    """Rows of D{e_i,e_j,e_k} - {De_i,e_j,e_k} - {e_i,De_j,e_k} - {e_i,e_j,De_k} = 0."""
    n = A.dim
    t = A.table
    for i, j, k in iproduct(range(n), repeat=3):
        if i == j:
            continue
        rows: dict[int, dict] = {}

        def add(l, var, c):
            r = rows.setdefault(l, {})
            v = r.get(var, 0) + c
            if v:
                r[var] = v
            else:
                r.pop(var, None)

        for m, c in t.get((i, j, k), {}).items():
            for l in range(n):
                add(l, _var(n, l, m), c)
        for p in range(n):
            for l, c in t.get((p, j, k), {}).items():
                add(l, _var(n, p, i), -c)
            for l, c in t.get((i, p, k), {}).items():
                add(l, _var(n, p, j), -c)
            for l, c in t.get((i, j, p), {}).items():
                add(l, _var(n, p, k), -c)
        for l in sorted(rows):
            if rows[l]:
                yield rows[l]


def derivation_space(A: ThreeAlgebra) -> MapSpace:
    """All D with D{x,y,z} = {Dx,y,z} + {x,Dy,z} + {x,y,Dz}."""
    n = A.dim
    ech = SparseEchelon(n * n)
    for row in _derivation_rows(A):
        ech.add(row)
    space = MapSpace("Der", n, ech.nullspace())
    for D in space.basis:
        if not is_derivation(A, D):
            raise AssertionError("derivation solver returned a non-derivation")
    return space


def _annihilator_rows(S: Subspace) -> list[tuple]:
    """Basis of the linear functionals vanishing on S."""
    if S.dim == 0:
        return [tuple(Fraction(int(a == b)) for b in range(S.ambient_dim))
                for a in range(S.ambient_dim)]
    return list(nullspace(S.basis).vectors)


def central_derivation_space(A: ThreeAlgebra) -> MapSpace:
    """Derivations with D(A) ⊆ Z(A) and D(A¹) = 0."""
    n = A.dim
    ech = SparseEchelon(n * n)
    for row in _derivation_rows(A):
        ech.add(row)
    # D e_q ∈ Z  <=>  w . D e_q = 0 for every functional w killing Z
    for w in _annihilator_rows(center(A)):
        for q in range(n):
            ech.add({_var(n, p, q): w[p] for p in range(n) if w[p]})
    for a in derived_algebra(A).vectors:
        for p in range(n):
            ech.add({_var(n, p, q): a[q] for q in range(n) if a[q]})
    return MapSpace("DerC", n, ech.nullspace())


def _centroid_rows(A: ThreeAlgebra):
    n = A.dim
    t = A.table
    # i == j is kept: {phi e_i, e_i, e_k} need not vanish
    for i, j, k in iproduct(range(n), repeat=3):
        for slot in (0, 2):
            rows: dict[int, dict] = {}

            def add(l, var, c):
                r = rows.setdefault(l, {})
                v = r.get(var, 0) + c
                if v:
                    r[var] = v
                else:
                    r.pop(var, None)

            for m, c in t.get((i, j, k), {}).items():
                for l in range(n):
                    add(l, _var(n, l, m), c)
            for p in range(n):
                key = (p, j, k) if slot == 0 else (i, j, p)
                col = i if slot == 0 else k
                for l, c in t.get(key, {}).items():
                    add(l, _var(n, p, col), -c)
            for l in sorted(rows):
                if rows[l]:
                    yield rows[l]


def centroid_defect(A: ThreeAlgebra, phi: Matrix, slots=(0, 1, 2)):
    """Yield ((i, j, k), slot) where phi{e_i,e_j,e_k} differs from phi applied in that slot."""
    n = A.dim
    imgs = [_apply_sparse(phi, i) for i in range(n)]
    for i, j, k in iproduct(range(n), repeat=3):
        lhs = phi.apply(A.basis_product(i, j, k))
        args = [{i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}]
        for slot in slots:
            a = list(args)
            a[slot] = imgs[(i, j, k)[slot]]
            if _dense(A.sparse_product(*a), n) != lhs:
                yield (i, j, k), slot


def is_centroid_element(A: ThreeAlgebra, phi: Matrix, slots=(0, 2)) -> bool:
    return next(centroid_defect(A, phi, slots), None) is None


def centroid_space(A: ThreeAlgebra) -> MapSpace:
    """Maps commuting with the first and third slots of the product.

    The middle-slot identity is a consequence and is not imposed here.
    """
    n = A.dim
    ech = SparseEchelon(n * n)
    for row in _centroid_rows(A):
        ech.add(row)
    return MapSpace("Centroid", n, ech.nullspace())


def span_space(A: ThreeAlgebra, kind: str) -> MapSpace:
    """Span of L(e_i,e_j), R(e_i,e_j), S(e_i,e_j), or L and R together."""
    n = A.dim
    maps: list[Matrix] = []
    for i, j in iproduct(range(n), repeat=2):
        if kind in ("LSpan", "TSpan"):
            maps.append(basis_left(A, i, j))
        if kind in ("RSpan", "TSpan"):
            maps.append(basis_right(A, i, j))
        if kind == "SSpan":
            maps.append(basis_left(A, i, j) - basis_right(A, i, j))
    if kind not in ("LSpan", "RSpan", "SSpan", "TSpan"):
        raise ValueError(f"span_space does not build {kind!r}")
    return MapSpace.spanned_by(kind, n, maps)


def is_lie_closed(space: MapSpace) -> bool:
    """Whether the commutator of any two basis maps stays in the space."""
    basis = space.basis
    return all(space.contains(a.commutator(b)) for a in basis for b in basis)
