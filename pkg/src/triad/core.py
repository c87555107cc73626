"""Semi-associative 3-algebras given by structure constants.

Basis indices are 0-based in the Python API; JSON files, CLI output and
rendered witnesses use 1-based labels (``e1`` is index 0).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .exactlin import (
    DimensionError,
    Matrix,
    Subspace,
    basis_vector,
    format_rational,
    inverse,
    nullspace,
    nullspace_sparse,
    vec_add,
    vector,
    zero_vector,
)

Triple = tuple  # (i, j, k)
SparseVec = dict  # {index: Fraction}, zeros omitted


class AlgebraError(ValueError):
    """Malformed structure constants or an argument outside the algebra."""


class NotAnIdealError(ValueError):
    pass


class ContractError(AssertionError):
    """A construction violated a property it is guaranteed to have.

    Raised loudly rather than returned: it means either an implementation bug
    or a counterexample to the published statement behind the contract.
    """


def _sparse(v: Sequence[Fraction]) -> SparseVec:
    return {i: x for i, x in enumerate(v) if x}


def _dense(v: Mapping[int, Fraction], n: int) -> tuple:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return tuple(out)


def _axpy(acc: dict, c: Fraction, v: Mapping[int, Fraction]) -> None:
    for i, x in v.items():
        y = acc.get(i, 0) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)


def _trim(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


# --------------------------------------------------------------------------- #
# Reports


@dataclass(frozen=True)
class Violation:
    """One failed identity instance.

    ``witness`` holds 0-based basis indices; ``labels`` gives the 1-based
    form used in files and on the command line. ``lhs``/``rhs`` are vectors
    (tuples) or :class:`Matrix` values depending on the identity.
    """

    axiom: str
    witness: tuple
    lhs: object
    rhs: object

    @property
    def labels(self) -> tuple:
        return tuple(i + 1 for i in self.witness)

    def sort_key(self):
        return (self.witness, self.axiom)


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple = ()
    checked: tuple = ()  # identity ids that were evaluated
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def first(self, axiom: str | None = None) -> Violation | None:
        for v in self.violations:
            if axiom is None or v.axiom == axiom:
                return v
        return None

    def by_axiom(self) -> dict[str, int]:
        counts: dict[str, int] = {a: 0 for a in self.checked}
        for v in self.violations:
            counts[v.axiom] = counts.get(v.axiom, 0) + 1
        return counts


def make_report(violations: Iterable[Violation], checked: Sequence[str],
                limit: int | None = None) -> AxiomReport:
    vs = sorted(violations, key=Violation.sort_key)
    truncated = limit is not None and len(vs) > limit
    if truncated:
        vs = vs[:limit]
    return AxiomReport(tuple(vs), tuple(checked), truncated)


# --------------------------------------------------------------------------- #
# The algebra


@dataclass(frozen=True)
class ThreeAlgebra:
    """Trilinear product {e_i, e_j, e_k} = sum_l c[i][j][k][l] e_l.

    Only orbits with ``i < j`` are stored; ``{e_j, e_i, e_k}`` is the
    negative and ``{e_i, e_i, e_k}`` is zero, so antisymmetry in the first
    two slots cannot be violated. ``products`` is a sorted tuple of
    ``((i, j, k), coefficient_vector)`` pairs with nonzero vectors.
    """

    dim: int
    products: tuple = ()
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise AlgebraError("dimension must be non-negative")
        clean = []
        for (i, j, k), out in self.products:
            if not (0 <= i < j < self.dim and 0 <= k < self.dim):
                raise AlgebraError(f"bad stored triple {(i + 1, j + 1, k + 1)}")
            out = vector(out)
            if len(out) != self.dim:
                raise AlgebraError(f"coefficient vector of {(i + 1, j + 1, k + 1)} has length {len(out)}")
            if any(out):
                clean.append(((i, j, k), out))
        clean.sort()
        keys = [t for t, _ in clean]
        if len(set(keys)) != len(keys):
            raise AlgebraError("duplicate stored triple")
        object.__setattr__(self, "products", tuple(clean))

    @classmethod
    def from_products(cls, dim: int, products: Mapping[Triple, Sequence] | Iterable,
                      label: str | None = None) -> ThreeAlgebra:
        """Build from ``{(i, j, k): vector}`` with 0-based indices.

        Entries may be given with ``i > j``; they are folded onto ``(j, i, k)``
        with a sign change. Giving both orders is allowed only if they are
        exact negatives, and ``i == j`` entries must be zero.
        """
        items = products.items() if isinstance(products, Mapping) else products
        folded: dict[Triple, tuple] = {}
        for (i, j, k), out in items:
            out = vector(out)
            if len(out) != dim:
                raise AlgebraError(f"coefficient vector of {(i + 1, j + 1, k + 1)} has length {len(out)}")
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise AlgebraError(f"index {idx + 1} outside 1..{dim}")
            if i == j:
                if any(out):
                    raise AlgebraError(
                        f"triple {(i + 1, j + 1, k + 1)} repeats its first two indices but is nonzero"
                    )
                continue
            key, val = ((i, j, k), out) if i < j else ((j, i, k), tuple(-x for x in out))
            if key in folded and folded[key] != val:
                a, b, c = key
                raise AlgebraError(
                    f"inconsistent entries for triple {(a + 1, b + 1, c + 1)} and its swap"
                )
            folded[key] = val
        return cls(dim, tuple(folded.items()), label)

    @classmethod
    def zero(cls, dim: int, label: str | None = None) -> ThreeAlgebra:
        return cls(dim, (), label)

    # -- lookups ----------------------------------------------------------- #

    @cached_property
    def table(self) -> dict[Triple, SparseVec]:
        """Every nonzero ``{e_i, e_j, e_k}`` over ordered triples, sparse."""
        t: dict[Triple, SparseVec] = {}
        for (i, j, k), out in self.products:
            sp = _sparse(out)
            t[(i, j, k)] = sp
            t[(j, i, k)] = {l: -x for l, x in sp.items()}
        return t

    @cached_property
    def by_first(self) -> dict[int, list]:
        d = defaultdict(list)
        for (i, j, k), v in sorted(self.table.items()):
            d[i].append(((j, k), v))
        return dict(d)

    @cached_property
    def by_middle(self) -> dict[int, list]:
        d = defaultdict(list)
        for (i, j, k), v in sorted(self.table.items()):
            d[j].append(((i, k), v))
        return dict(d)

    @cached_property
    def by_last(self) -> dict[int, list]:
        d = defaultdict(list)
        for (i, j, k), v in sorted(self.table.items()):
            d[k].append(((i, j), v))
        return dict(d)

    def basis_product(self, i: int, j: int, k: int) -> tuple:
        return _dense(self.table.get((i, j, k), {}), self.dim)

    def coefficient(self, i: int, j: int, k: int, l: int) -> Fraction:
        return self.table.get((i, j, k), {}).get(l, Fraction(0))

    def sparse_product(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction],
                       z: Mapping[int, Fraction]) -> SparseVec:
        acc: dict = {}
        if not (x and y and z):
            return acc
        for i, xi in x.items():
            for (j, k), out in self.by_first.get(i, ()):
                c = y.get(j)
                if not c:
                    continue
                d = z.get(k)
                if d:
                    _axpy(acc, xi * c * d, out)
        return acc

    def __call__(self, x, y, z) -> tuple:
        return triple_product(self, x, y, z)

    @property
    def is_abelian(self) -> bool:
        return not self.products

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"ThreeAlgebra{name}(dim={self.dim}, orbits={len(self.products)})"


def triple_product(A: ThreeAlgebra, x: Sequence, y: Sequence, z: Sequence) -> tuple:
    """Trilinear extension of the structure constants."""
    for v in (x, y, z):
        if len(v) != A.dim:
            raise DimensionError(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")
    out = A.sparse_product(_sparse(vector(x)), _sparse(vector(y)), _sparse(vector(z)))
    return _dense(out, A.dim)


# --------------------------------------------------------------------------- #
# Axiom checking


def nested_middle(A: ThreeAlgebra) -> dict[tuple, SparseVec]:
    """All nonzero ``{e_a, {e_b, e_c, e_d}, e_e}`` keyed by (a, b, c, d, e)."""
    out: dict[tuple, SparseVec] = {}
    for (b, c, d), w in A.table.items():
        for m, coef in w.items():
            for (a, e), u in A.by_middle.get(m, ()):
                key = (a, b, c, d, e)
                acc = out.setdefault(key, {})
                _axpy(acc, coef, u)
    return {k: v for k, v in out.items() if v}


def nested_last(A: ThreeAlgebra) -> dict[tuple, SparseVec]:
    """All nonzero ``{e_a, e_b, {e_c, e_d, e_e}}`` keyed by (a, b, c, d, e)."""
    out: dict[tuple, SparseVec] = {}
    for (c, d, e), w in A.table.items():
        for m, coef in w.items():
            for (a, b), u in A.by_last.get(m, ()):
                key = (a, b, c, d, e)
                acc = out.setdefault(key, {})
                _axpy(acc, coef, u)
    return {k: v for k, v in out.items() if v}


def check_semi_associative(A: ThreeAlgebra, limit: int | None = None) -> AxiomReport:
    """Check the two mixing identities on every basis 5-tuple.

    Antisymmetry (E21) holds by storage. E22 is
    ``{x1,{x2,x3,x4},x5} = {x1,x2,{x3,x4,x5}}`` and E23 is
    ``{x1,{x2,x3,x4},x5} = {x5,{x2,x3,x4},x1} + {x1,{x5,x3,x4},x2}``.
    Only tuples where some term is nonzero are visited, which is exhaustive
    because every other tuple reads 0 = 0.
    """
    n = A.dim
    mid = nested_middle(A)
    last = nested_last(A)
    empty: SparseVec = {}
    violations = []
    for t in sorted(set(mid) | set(last)):
        l, r = mid.get(t, empty), last.get(t, empty)
        if l != r:
            violations.append(Violation("E22", t, _dense(l, n), _dense(r, n)))
    candidates = set()
    for s in mid:
        s1, s2, s3, s4, s5 = s
        candidates.add(s)
        candidates.add((s5, s2, s3, s4, s1))
        candidates.add((s1, s5, s3, s4, s2))
    for t in sorted(candidates):
        x1, x2, x3, x4, x5 = t
        lhs = mid.get(t, empty)
        rhs = dict(mid.get((x5, x2, x3, x4, x1), empty))
        _axpy(rhs, Fraction(1), mid.get((x1, x5, x3, x4, x2), empty))
        if lhs != rhs:
            violations.append(Violation("E23", t, _dense(lhs, n), _dense(rhs, n)))
    return make_report(violations, ("E21", "E22", "E23"), limit)


def is_semi_associative(A: ThreeAlgebra) -> bool:
    return check_semi_associative(A, limit=1).passed


# --------------------------------------------------------------------------- #
# Structural subspaces


def _basis(n: int) -> list[tuple]:
    return [basis_vector(n, i) for i in range(n)]


def derived_algebra(A: ThreeAlgebra) -> Subspace:
    return Subspace.span([out for _, out in A.products], A.dim)


def _annihilator(A: ThreeAlgebra, images) -> Subspace:
    """Solve for x with every linear condition ``sum_i x_i * images(i)`` = 0.

    ``images(i)`` yields sparse vectors (one per condition) for basis x = e_i.
    """
    n = A.dim
    rows: dict[tuple, dict] = {}
    for i in range(n):
        for cond, vec in images(i):
            for l, c in vec.items():
                rows.setdefault((cond, l), {})[i] = c
    return nullspace_sparse([rows[k] for k in sorted(rows)], n)


def center(A: ThreeAlgebra) -> Subspace:
    """``{x : {x, A, A} = {A, A, x} = 0}``."""
    def images(i):
        for (j, k), v in A.by_first.get(i, ()):
            yield ("first", j, k), v
        for (j, k), v in A.by_last.get(i, ()):
            yield ("last", j, k), v
    return _annihilator(A, images)


def centralizer(A: ThreeAlgebra, V: Subspace) -> Subspace:
    """``{x : {x, V, A} = {V, A, x} = 0}``."""
    if V.ambient_dim != A.dim:
        raise DimensionError("subspace and algebra dimensions differ")
    vs = [_sparse(v) for v in V.vectors]
    units = [{k: Fraction(1)} for k in range(A.dim)]

    def images(i):
        ei = units[i]
        for a, v in enumerate(vs):
            for k, ek in enumerate(units):
                yield ("xVA", a, k), A.sparse_product(ei, v, ek)
                yield ("VAx", a, k), A.sparse_product(v, ek, ei)
    return _annihilator(A, images)


def _span_products(A: ThreeAlgebra, xs, ys, zs) -> Subspace:
    sx, sy, sz = ([_sparse(v) for v in S] for S in (xs, ys, zs))
    outs = []
    for x in sx:
        for y in sy:
            for z in sz:
                p = A.sparse_product(x, y, z)
                if p:
                    outs.append(_dense(p, A.dim))
    return Subspace.span(outs, A.dim)


def product_space(A: ThreeAlgebra, B1: Subspace, B2: Subspace, B3: Subspace) -> Subspace:
    """``{B1, B2, B3}``: span of products with one factor from each subspace."""
    return _span_products(A, B1.vectors, B2.vectors, B3.vectors)


def is_subalgebra(A: ThreeAlgebra, B: Subspace) -> bool:
    return product_space(A, B, B, B).leq(B)


def is_ideal(A: ThreeAlgebra, B: Subspace) -> bool:
    """``{A, A, B} ⊆ B`` and ``{A, B, A} ⊆ B``; ``{B, A, A}`` follows by antisymmetry."""
    if B.ambient_dim != A.dim:
        raise DimensionError("subspace and algebra dimensions differ")
    for x in (_sparse(b) for b in B.vectors):
        for i in range(A.dim):
            for j in range(A.dim):
                for p in (A.sparse_product({i: Fraction(1)}, {j: Fraction(1)}, x),
                          A.sparse_product({i: Fraction(1)}, x, {j: Fraction(1)})):
                    if p and not B.contains(_dense(p, A.dim)):
                        return False
    return True


def _require_ideal(A: ThreeAlgebra, *ideals: Subspace) -> None:
    for I in ideals:
        if not is_ideal(A, I):
            raise NotAnIdealError(f"{I!r} is not an ideal")


def _ensure_ideal(A: ThreeAlgebra, S: Subspace, what: str) -> Subspace:
    if not is_ideal(A, S):
        raise ContractError(f"{what} of ideals is not an ideal: {S!r}")
    return S


def ideal_sum(A: ThreeAlgebra, I1: Subspace, I2: Subspace) -> Subspace:
    _require_ideal(A, I1, I2)
    return _ensure_ideal(A, I1 + I2, "sum")


def ideal_intersect(A: ThreeAlgebra, I1: Subspace, I2: Subspace) -> Subspace:
    _require_ideal(A, I1, I2)
    return _ensure_ideal(A, I1 & I2, "intersection")


def ideal_product(A: ThreeAlgebra, I1: Subspace, I2: Subspace, I3: Subspace) -> Subspace:
    _require_ideal(A, I1, I2, I3)
    return _ensure_ideal(A, product_space(A, I1, I2, I3), "product")


# --------------------------------------------------------------------------- #
# Morphisms and quotients


@dataclass(frozen=True)
class AlgebraMorphism:
    """Linear map between algebras; column j of ``map`` is the image of e_j."""

    source: ThreeAlgebra
    target: ThreeAlgebra
    map: Matrix

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionError(
                f"map of shape {self.map.shape} for {self.source.dim} -> {self.target.dim}"
            )

    def __call__(self, v: Sequence) -> tuple:
        return self.map.apply(vector(v))


def _homomorphism_defect(f: AlgebraMorphism):
    S, T = f.source, f.target
    images = [_sparse(f.map.column(j)) for j in range(S.dim)]
    for i, j, k in iproduct(range(S.dim), repeat=3):
        if i == j:
            continue
        lhs = f.map.apply(S.basis_product(i, j, k))
        rhs = _dense(T.sparse_product(images[i], images[j], images[k]), T.dim)
        if lhs != rhs:
            yield (i, j, k), lhs, rhs


def is_homomorphism(f: AlgebraMorphism) -> bool:
    """``f{e_i,e_j,e_k} = {f e_i, f e_j, f e_k}`` on all basis triples.

    When it holds, the kernel must be an ideal and the image a subalgebra;
    a failure of either raises :class:`ContractError`.
    """
    if next(_homomorphism_defect(f), None) is not None:
        return False
    if not is_ideal(f.source, kernel(f)):
        raise ContractError("kernel of a homomorphism is not an ideal")
    if not is_subalgebra(f.target, image(f)):
        raise ContractError("image of a homomorphism is not a subalgebra")
    return True


def kernel(f: AlgebraMorphism) -> Subspace:
    return nullspace(f.map)


def image(f: AlgebraMorphism) -> Subspace:
    return Subspace.span(f.map.columns(), f.target.dim)


def complement_basis(I: Subspace) -> list[int]:
    """Standard basis indices extending ``I`` to the whole space, greedily by index."""
    n = I.ambient_dim
    chosen: list[int] = []
    span = I
    for j in range(n):
        if span.dim == n:
            break
        e = basis_vector(n, j)
        if not span.contains(e):
            chosen.append(j)
            span = Subspace.span(span.vectors + (e,), n)
    return chosen


def quotient_projection(I: Subspace) -> tuple[list[int], Matrix]:
    """Complement indices and the q x n matrix taking a vector to its class."""
    n = I.ambient_dim
    comp = complement_basis(I)
    # columns: complement representatives then the subspace basis
    change = Matrix.from_columns([basis_vector(n, j) for j in comp] + list(I.vectors), n)
    coords = inverse(change)
    return comp, Matrix(coords.rows[:len(comp)], n)


def quotient(A: ThreeAlgebra, I: Subspace) -> tuple[ThreeAlgebra, AlgebraMorphism]:
    """``A/I`` on the greedy standard complement, with its projection.

    Quotient basis vector ``a`` is the class of ``e_{comp[a]}``. The
    projection is checked to be a homomorphism before returning.
    """
    _require_ideal(A, I)
    comp, proj = quotient_projection(I)
    q = len(comp)
    prods = {}
    for a, b, c in iproduct(range(q), repeat=3):
        if a < b:
            out = proj.apply(A.basis_product(comp[a], comp[b], comp[c]))
            if any(out):
                prods[(a, b, c)] = out
    label = f"{A.label}/I" if A.label else None
    Q = ThreeAlgebra.from_products(q, prods, label)
    pi = AlgebraMorphism(A, Q, proj)
    if not is_homomorphism(pi):
        raise ContractError("quotient projection is not a homomorphism")
    return Q, pi


def identity_morphism(A: ThreeAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, Matrix.identity(A.dim))


# --------------------------------------------------------------------------- #
# Statement-level checks used by the harness


def thm23_violations(A: ThreeAlgebra) -> list[tuple]:
    """Basis triples whose nonzero product is a multiple of an argument or in <e_i, e_j>."""
    bad = []
    for (i, j, k), w in sorted(A.table.items()):
        if i > j:
            continue
        for s in sorted({i, j, k}):
            if set(w) == {s}:
                bad.append(((i, j, k), f"multiple of e{s + 1}"))
        if set(w) <= {i, j}:
            bad.append(((i, j, k), "in span of the first two arguments"))
    return bad


def independent_witness(A: ThreeAlgebra) -> tuple | None:
    """Linearly independent x, y, z with {x, y, z} != 0, or None if A is abelian.

    Tries basis triples with distinct indices first. Otherwise a nonzero
    product {e_i, e_j, e_k} has k in {i, j}, and the third argument is
    perturbed to e_k + e_l for an index l outside {i, j}.
    """
    n = A.dim
    if A.is_abelian:
        return None
    for (i, j, k) in sorted(A.table):
        if len({i, j, k}) == 3:
            return basis_vector(n, i), basis_vector(n, j), basis_vector(n, k)
    for (i, j, k) in sorted(A.table):
        for l in range(n):
            if l in (i, j):
                continue
            x, y = basis_vector(n, i), basis_vector(n, j)
            z = vec_add(basis_vector(n, k), basis_vector(n, l))
            if any(triple_product(A, x, y, z)) and Subspace.span([x, y, z], n).dim == 3:
                return x, y, z
    return None


def render_vector(v: Sequence[Fraction]) -> str:
    terms = []
    for i, c in enumerate(v):
        if not c:
            continue
        name = f"e{i + 1}"
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append(f"-{name}")
        else:
            terms.append(f"{format_rational(c)}*{name}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


__all__ = [
    "AlgebraError", "AlgebraMorphism", "AxiomReport", "ContractError", "NotAnIdealError",
    "ThreeAlgebra", "Violation", "center", "centralizer", "check_semi_associative",
    "complement_basis", "derived_algebra", "ideal_intersect", "ideal_product", "ideal_sum",
    "identity_morphism", "image", "independent_witness", "is_homomorphism", "is_ideal",
    "is_semi_associative", "is_subalgebra", "kernel", "make_report", "nested_last",
    "nested_middle", "product_space", "quotient", "quotient_projection",
    "render_vector", "thm23_violations",
    "triple_product", "zero_vector",
]
