"""Exact rational linear algebra: matrices, fraction-free elimination, subspaces.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator. Matrices are immutable and
dense; subspaces are stored by their reduced row echelon basis so that equality
of subspaces is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; whitespace and floats are rejected."""
    if not isinstance(text, str):
        raise TypeError(f"rational must be a string, got {type(text).__name__}")
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if text != text.strip() or q == 0:
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths {len(a)} and {len(b)} differ")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths {len(a)} and {len(b)} differ")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vector(a: Sequence[Fraction]) -> bool:
    return not any(a)


# --------------------------------------------------------------------------- #
# Matrix


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of Fractions.

    ``ncols`` is stored explicitly so that matrices with no rows still know
    their width.
    """

    rows: tuple
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.rows)
        for row in rows:
            if len(row) != self.ncols:
                raise DimensionError(
                    f"row of length {len(row)} in a matrix with {self.ncols} columns"
                )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(tuple(basis_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> Matrix:
        return cls(tuple(tuple(col[i] for col in columns) for i in range(nrows)), len(columns))

    @classmethod
    def from_flat(cls, flat: Sequence, nrows: int, ncols: int) -> Matrix:
        if len(flat) != nrows * ncols:
            raise DimensionError("flat length does not match shape")
        return cls(tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    @cached_property
    def _sparse_rows(self) -> tuple:
        return tuple(tuple((j, x) for j, x in enumerate(row) if x) for row in self.rows)

    @cached_property
    def is_zero(self) -> bool:
        return not any(self._sparse_rows)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def flat(self) -> Vector:
        return tuple(x for row in self.rows for x in row)

    def transpose(self) -> Matrix:
        return Matrix(tuple(zip(*self.rows)) if self.rows else
                      tuple(() for _ in range(self.ncols)), self.nrows)

    def _check_same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s))
                            for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s))
                            for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> Matrix:
        c = as_rational(c)
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Fraction(0)
        other_sparse = other._sparse_rows
        out = []
        for srow in self._sparse_rows:
            acc = [zero] * other.ncols
            for k, a in srow:
                for j, b in other_sparse[k]:
                    acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(tuple(out), other.ncols)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * v[j] for j, a in srow), Fraction(0)) for srow in self._sparse_rows)

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


# --------------------------------------------------------------------------- #
# Elimination


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * den) for x in row]


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> list[tuple[int, list[int]]]:
    """Fraction-free forward elimination. Returns (pivot column, row) pairs.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact.
    """
    m = [r[:] for r in rows]
    nrows = len(m)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row[j] - a * prow[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[j] = q
            row[c] = 0
        # rows above r keep their old scale; only pivot rows are reported
        pivots.append((c, prow))
        prev = piv
        r += 1
    return pivots


def _normalize_echelon(pivots: list[tuple[int, Sequence]], ncols: int) -> list[list[Fraction]]:
    out: list[list[Fraction]] = []
    for c, row in pivots:
        lead = row[c]
        out.append([Fraction(x, 1) / lead if isinstance(x, int) else x / lead for x in row])
    # back substitution from the bottom pivot upwards
    for k in range(len(out) - 1, -1, -1):
        c = pivots[k][0]
        src = out[k]
        for i in range(k):
            f = out[i][c]
            if f:
                dst = out[i]
                for j in range(c, ncols):
                    if src[j]:
                        dst[j] -= f * src[j]
    return out


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.

    Rows are scaled to integers, eliminated with Bareiss' fraction-free
    scheme, and only then normalised to unit pivots. Zero rows are kept at
    the bottom so the result has the same shape as ``m``.
    """
    ints = [_integer_row(row) for row in m.rows]
    pivots = _bareiss_echelon(ints, m.ncols)
    reduced = _normalize_echelon(pivots, m.ncols)
    rank = len(reduced)
    zeros = [[Fraction(0)] * m.ncols for _ in range(m.nrows - rank)]
    return Matrix(tuple(reduced + zeros), m.ncols), rank


def rank(m: Matrix) -> int:
    return len(_bareiss_echelon([_integer_row(r) for r in m.rows], m.ncols))


def pivot_columns(reduced_rows: Sequence[Sequence[Fraction]]) -> list[int]:
    cols = []
    for row in reduced_rows:
        for j, x in enumerate(row):
            if x:
                cols.append(j)
                break
    return cols


def _nullspace_from_rref(reduced: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    pivots = pivot_columns(reduced)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def nullspace(m: Matrix) -> Subspace:
    """Subspace of Q^cols annihilated by ``m``."""
    reduced, r = rref(m)
    return Subspace.span(_nullspace_from_rref(reduced.rows[:r], m.ncols), m.ncols)


class SparseEchelon:
    """Incremental fraction-free echelon form for large sparse systems.

    Rows are added one at a time as ``{column: coefficient}`` mappings and
    kept as primitive integer rows keyed by pivot column. Elimination of a new
    row against a pivot row is the cross-multiplication ``p*r - r_c*p_row``
    followed by removal of the content, so no fractions appear until
    :meth:`reduced_rows` normalises the result.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @staticmethod
    def _primitive(row: dict[int, int]) -> dict[int, int]:
        g = 0
        for x in row.values():
            g = gcd(g, x)
            if g == 1:
                return row
        return {j: x // g for j, x in row.items()}

    def add(self, row: Mapping[int, Fraction | int]) -> bool:
        """Add a row; return True if it increased the rank."""
        items = [(j, as_rational(x)) for j, x in row.items() if x]
        if not items:
            return False
        den = lcm(*(x.denominator for _, x in items))
        cur = {j: int(x * den) for j, x in items}
        for j in cur:
            if not 0 <= j < self.ncols:
                raise DimensionError(f"column {j} out of range for {self.ncols} unknowns")
        while cur:
            c = min(cur)
            prow = self._rows.get(c)
            if prow is None:
                cur = self._primitive(cur)
                if cur[c] < 0:
                    cur = {j: -x for j, x in cur.items()}
                self._rows[c] = cur
                return True
            a = cur[c]
            p = prow[c]
            new = {j: p * x for j, x in cur.items()}
            for j, y in prow.items():
                v = new.get(j, 0) - a * y
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            cur = self._primitive(new) if new else new
        return False

    def reduced_rows(self) -> list[list[Fraction]]:
        order = sorted(self._rows)
        pivots = []
        for c in order:
            dense = [0] * self.ncols
            for j, x in self._rows[c].items():
                dense[j] = x
            pivots.append((c, dense))
        return _normalize_echelon(pivots, self.ncols)

    def nullspace(self) -> Subspace:
        return Subspace.span(_nullspace_from_rref(self.reduced_rows(), self.ncols), self.ncols)


def nullspace_sparse(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> Subspace:
    ech = SparseEchelon(ncols)
    for row in rows:
        ech.add(row)
    return ech.nullspace()


# --------------------------------------------------------------------------- #
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim held as an RREF basis without zero rows."""

    ambient_dim: int
    basis: Matrix = field(compare=True)

    def __post_init__(self):
        if self.basis.ncols != self.ambient_dim:
            raise DimensionError("basis width must equal the ambient dimension")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [vector(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        # the sparse path reaches the same unique RREF and stays cheap on
        # the wide, mostly-unit bases produced by large nullspaces
        ech = SparseEchelon(ambient_dim)
        for v in rows:
            ech.add({j: x for j, x in enumerate(v) if x})
        return cls(ambient_dim, Matrix(tuple(tuple(r) for r in ech.reduced_rows()), ambient_dim))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix((), n))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> Subspace:
        return cls.span([basis_vector(n, i) for i in sorted(set(indices))], n)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> tuple:
        return self.basis.rows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(pivot_columns(self.basis.rows))

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ"
            )

    def residual(self, v: Sequence[Fraction]) -> Vector:
        """Reduce ``v`` modulo the subspace using the RREF pivots."""
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        w = list(vector(v))
        for row, p in zip(self.basis.rows, self.pivots):
            f = w[p]
            if f:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] -= f * row[j]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.residual(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(as_rational(v[p]) for p in self.pivots)

    def leq(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.vectors)

    def __le__(self, other: Subspace) -> bool:
        return self.leq(other)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __repr__(self) -> str:
        gens = ", ".join("(" + ",".join(format_rational(x) for x in v) + ")" for v in self.vectors)
        return f"Subspace(Q^{self.ambient_dim}, <{gens}>)"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace.span(a.vectors + b.vectors, a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Solve sum_i s_i a_i = sum_j t_j b_j and map solutions back through a."""
    a._check(b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    cols = list(a.vectors) + [vec_scale(Fraction(-1), v) for v in b.vectors]
    system = Matrix.from_columns(cols, n)
    sols = nullspace(system)
    out = []
    for s in sols.vectors:
        v = [Fraction(0)] * n
        for coef, av in zip(s[: a.dim], a.vectors):
            if coef:
                for j in range(n):
                    v[j] += coef * av[j]
        out.append(v)
    return Subspace.span(out, n)


def contains(a: Subspace, v: Sequence[Fraction]) -> bool:
    return a.contains(v)


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    return a.leq(b)


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix by row reduction of ``[m | I]``."""
    n = m.nrows
    if m.ncols != n:
        raise DimensionError(f"cannot invert a {m.shape} matrix")
    aug = Matrix(tuple(row + basis_vector(n, i) for i, row in enumerate(m.rows)), 2 * n)
    reduced, _ = rref(aug)
    for i, row in enumerate(reduced.rows):
        if any(row[:i]) or row[i] != 1 or any(row[i + 1:n]):
            raise ZeroDivisionError("matrix is singular")
    return Matrix(tuple(row[n:] for row in reduced.rows), n)
