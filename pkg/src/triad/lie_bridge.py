"""3-Lie algebras and the bridge from semi-associative 3-algebras.

The sub-adjacent bracket is the cyclic sum
``[x, y, z]_c = {x, y, z} + {y, z, x} + {z, x, y}``. It is totally
antisymmetric for any tensor that is antisymmetric in its first two slots,
so it can be stored on ``i < j < k`` orbits without loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .core import (
    AlgebraError,
    ContractError,
    SparseVec,
    ThreeAlgebra,
    Violation,
    _axpy,
    _dense,
    _sparse,
    check_semi_associative,
    is_ideal,
    is_subalgebra,
    make_report,
    AxiomReport,
)
from .exactlin import DimensionError, Matrix, Subspace, vector


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


_PERMS3 = [(p, _perm_sign(p)) for p in permutations(range(3))]


@dataclass(frozen=True)
class ThreeLieAlgebra:
    """Totally antisymmetric bracket stored on ``i < j < k`` orbits."""

    dim: int
    brackets: tuple = ()
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        clean = []
        for (i, j, k), out in self.brackets:
            if not (0 <= i < j < k < self.dim):
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
        object.__setattr__(self, "brackets", tuple(clean))

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping | Iterable,
                      label: str | None = None) -> ThreeLieAlgebra:
        """Build from ``{(i, j, k): vector}``; any index order, folded with its sign."""
        items = brackets.items() if isinstance(brackets, Mapping) else brackets
        folded: dict = {}
        for t, out in items:
            out = vector(out)
            if len(out) != dim:
                raise AlgebraError(f"coefficient vector of {tuple(x + 1 for x in t)} has length {len(out)}")
            for idx in t:
                if not 0 <= idx < dim:
                    raise AlgebraError(f"index {idx + 1} outside 1..{dim}")
            if len(set(t)) < 3:
                if any(out):
                    raise AlgebraError(f"bracket {tuple(x + 1 for x in t)} repeats an argument but is nonzero")
                continue
            order = sorted(range(3), key=lambda a: t[a])
            key = tuple(t[a] for a in order)
            val = out if _perm_sign(order) > 0 else tuple(-x for x in out)
            if key in folded and folded[key] != val:
                raise AlgebraError(f"inconsistent entries for bracket {tuple(x + 1 for x in key)}")
            folded[key] = val
        return cls(dim, tuple(folded.items()), label)

    @classmethod
    def zero(cls, dim: int, label: str | None = None) -> ThreeLieAlgebra:
        return cls(dim, (), label)

    @cached_property
    def table(self) -> dict:
        t = {}
        for key, out in self.brackets:
            sp = _sparse(out)
            neg = {l: -x for l, x in sp.items()}
            for p, s in _PERMS3:
                t[tuple(key[a] for a in p)] = sp if s > 0 else neg
        return t

    @cached_property
    def by_first(self) -> dict:
        d: dict = {}
        for (i, j, k), v in sorted(self.table.items()):
            d.setdefault(i, []).append(((j, k), v))
        return d

    def sparse_bracket(self, x: Mapping, y: Mapping, z: Mapping) -> SparseVec:
        acc: dict = {}
        for i, xi in x.items():
            for (j, k), out in self.by_first.get(i, ()):
                c, d = y.get(j), z.get(k)
                if c and d:
                    _axpy(acc, xi * c * d, out)
        return acc

    def bracket(self, x: Sequence, y: Sequence, z: Sequence) -> tuple:
        for v in (x, y, z):
            if len(v) != self.dim:
                raise DimensionError(f"vector of length {len(v)} in a {self.dim}-dimensional algebra")
        return _dense(self.sparse_bracket(_sparse(vector(x)), _sparse(vector(y)),
                                          _sparse(vector(z))), self.dim)

    def basis_bracket(self, i: int, j: int, k: int) -> tuple:
        return _dense(self.table.get((i, j, k), {}), self.dim)

    @property
    def is_abelian(self) -> bool:
        return not self.brackets

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"ThreeLieAlgebra{name}(dim={self.dim}, orbits={len(self.brackets)})"


# --------------------------------------------------------------------------- #
# Filippov identity

# [[x1,x2,x3],x4,x5] = [[x1,x4,x5],x2,x3] + [[x2,x4,x5],x3,x1] + [[x3,x4,x5],x1,x2]
# with N(a,b,c,d,e) = [[a,b,c],d,e]; each term reads N at a permutation of t.
_FILIPPOV_RHS = ((0, 3, 4, 1, 2), (1, 3, 4, 2, 0), (2, 3, 4, 0, 1))


def _nested(L: ThreeLieAlgebra) -> dict:
    out: dict = {}
    for (a, b, c), w in L.table.items():
        for m, coef in w.items():
            for (d, e), u in L.by_first.get(m, ()):
                _axpy(out.setdefault((a, b, c, d, e), {}), coef, u)
    return {k: v for k, v in out.items() if v}


def check_filippov(L: ThreeLieAlgebra, limit: int | None = None) -> AxiomReport:
    """Check the Filippov identity on every basis 5-tuple (nonzero terms only)."""
    n = L.dim
    N = _nested(L)
    cands = set(N)
    for s in N:
        for perm in _FILIPPOV_RHS:
            t = [0] * 5
            for pos, src in enumerate(perm):
                t[src] = s[pos]
            cands.add(tuple(t))
    violations = []
    for t in sorted(cands):
        lhs = N.get(t, {})
        rhs: dict = {}
        for perm in _FILIPPOV_RHS:
            _axpy(rhs, Fraction(1), N.get(tuple(t[p] for p in perm), {}))
        if lhs != rhs:
            violations.append(Violation("F41", t, _dense(lhs, n), _dense(rhs, n)))
    return make_report(violations, ("F41",), limit)


def is_three_lie(L: ThreeLieAlgebra) -> bool:
    return check_filippov(L, limit=1).passed


# --------------------------------------------------------------------------- #
# Sub-adjacent functor


def sub_adjacent(A: ThreeAlgebra, verify: bool = True) -> ThreeLieAlgebra:
    """Cyclic-sum bracket on the same space.

    With ``verify`` (the default) the input must pass the semi-associative
    check and the result is asserted to satisfy the Filippov identity.
    ``verify=False`` skips both, for experiments on arbitrary tensors.
    """
    if verify:
        rep = check_semi_associative(A, limit=1)
        if not rep.passed:
            v = rep.first()
            raise AlgebraError(f"not semi-associative: {v.axiom} fails at {v.labels}")
    t = A.table
    n = A.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict = {}
                for key in ((i, j, k), (j, k, i), (k, i, j)):
                    _axpy(acc, Fraction(1), t.get(key, {}))
                if acc:
                    out.append(((i, j, k), _dense(acc, n)))
    L = ThreeLieAlgebra(n, tuple(out), f"{A.label}_c" if A.label else None)
    if verify and not is_three_lie(L):
        raise ContractError("sub-adjacent bracket of a semi-associative algebra fails Filippov")
    return L


# --------------------------------------------------------------------------- #
# Derivations and ideals of 3-Lie algebras


def lie_derivation_defect(L: ThreeLieAlgebra, D: Matrix):
    """Yield ((i, j, k), lhs, rhs) where D fails the 3-Lie Leibniz rule."""
    n = L.dim
    if D.shape != (n, n):
        raise DimensionError(f"{D.shape} map on a {n}-dimensional algebra")
    cols = [{p: D.rows[p][q] for p in range(n) if D.rows[p][q]} for q in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e = [{i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}]
                lhs = D.apply(L.basis_bracket(i, j, k))
                rhs: dict = {}
                _axpy(rhs, Fraction(1), L.sparse_bracket(cols[i], e[1], e[2]))
                _axpy(rhs, Fraction(1), L.sparse_bracket(e[0], cols[j], e[2]))
                _axpy(rhs, Fraction(1), L.sparse_bracket(e[0], e[1], cols[k]))
                if lhs != _dense(rhs, n):
                    yield (i, j, k), lhs, _dense(rhs, n)


def is_lie_derivation(L: ThreeLieAlgebra, D: Matrix) -> bool:
    # total antisymmetry of both sides makes i < j < k enough
    return next(lie_derivation_defect(L, D), None) is None


def _lie_products(L: ThreeLieAlgebra, xs, ys, zs) -> Subspace:
    vecs = []
    for x in xs:
        for y in ys:
            for z in zs:
                vecs.append(_dense(L.sparse_bracket(_sparse(x), _sparse(y), _sparse(z)), L.dim))
    return Subspace.span(vecs, L.dim)


def is_lie_ideal(L: ThreeLieAlgebra, B: Subspace) -> bool:
    full = Subspace.full(L.dim).vectors
    return _lie_products(L, full, full, B.vectors).leq(B)


def is_lie_subalgebra(L: ThreeLieAlgebra, B: Subspace) -> bool:
    b = B.vectors
    return _lie_products(L, b, b, b).leq(B)


def lie_quotient(L: ThreeLieAlgebra, I: Subspace) -> ThreeLieAlgebra:
    """Quotient by an ideal, on the same basis as ``core.quotient``."""
    from .core import quotient_projection

    if not is_lie_ideal(L, I):
        raise AlgebraError("subspace is not an ideal of the 3-Lie algebra")
    comp, proj = quotient_projection(I)
    q = len(comp)
    out = {}
    for a in range(q):
        for b in range(a + 1, q):
            for c in range(b + 1, q):
                w = proj.apply(L.basis_bracket(comp[a], comp[b], comp[c]))
                if any(w):
                    out[(a, b, c)] = w
    return ThreeLieAlgebra.from_brackets(q, out)


# --------------------------------------------------------------------------- #
# Modules


def _zero_matrix(m: int) -> Matrix:
    return Matrix.zeros(m, m)


@dataclass(frozen=True)
class LieModule:
    """Representation rho of a 3-Lie algebra on Q^vdim.

    ``rho`` holds ``((i, j), matrix)`` for ``i < j``; the other order is the
    negative and ``rho(e_i, e_i)`` is zero.
    """

    algebra: ThreeLieAlgebra
    vdim: int
    rho: tuple = ()

    def __post_init__(self):
        clean = []
        for (i, j), M in self.rho:
            if not 0 <= i < j < self.algebra.dim:
                raise AlgebraError(f"bad rho pair {(i + 1, j + 1)}")
            if M.shape != (self.vdim, self.vdim):
                raise DimensionError(f"rho{(i + 1, j + 1)} has shape {M.shape}")
            if not M.is_zero:
                clean.append(((i, j), M))
        clean.sort(key=lambda p: p[0])
        object.__setattr__(self, "rho", tuple(clean))

    @classmethod
    def from_pairs(cls, algebra: ThreeLieAlgebra, vdim: int, pairs: Mapping) -> LieModule:
        folded: dict = {}
        for (i, j), M in pairs.items():
            if i == j:
                if not M.is_zero:
                    raise AlgebraError(f"rho{(i + 1, i + 1)} must vanish")
                continue
            key, val = ((i, j), M) if i < j else ((j, i), -M)
            if key in folded and folded[key] != val:
                raise AlgebraError(f"inconsistent rho entries for {(key[0] + 1, key[1] + 1)}")
            folded[key] = val
        return cls(algebra, vdim, tuple(folded.items()))

    @cached_property
    def _table(self) -> dict:
        t = {}
        for (i, j), M in self.rho:
            t[(i, j)] = M
            t[(j, i)] = -M
        return t

    def at(self, i: int, j: int) -> Matrix:
        return self._table.get((i, j)) or _zero_matrix(self.vdim)

    def of(self, x: Mapping, y: Mapping) -> Matrix:
        """rho(x, y) for sparse vectors x, y."""
        acc = _zero_matrix(self.vdim)
        for (i, j), M in self._table.items():
            c = x.get(i, 0) * y.get(j, 0)
            if c:
                acc = acc + M.scale(c)
        return acc


def adjoint_module(L: ThreeLieAlgebra) -> LieModule:
    """rho(x, y) = [x, y, .] on the algebra itself."""
    n = L.dim
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            cols = [L.basis_bracket(i, j, k) for k in range(n)]
            pairs[(i, j)] = Matrix.from_columns(cols, n)
    return LieModule.from_pairs(L, n, pairs)


def lie_semidirect(M: LieModule) -> ThreeLieAlgebra:
    """[x1+v1, x2+v2, x3+v3] = [x1,x2,x3] + rho(x1,x2)v3 + rho(x2,x3)v1 + rho(x3,x1)v2."""
    L = M.algebra
    n, m = L.dim, M.vdim
    total = n + m
    out = {}
    for key, w in L.brackets:
        out[key] = tuple(w) + (Fraction(0),) * m
    for (i, j), R in M.rho:
        for a in range(m):
            col = R.column(a)
            if any(col):
                out[(i, j, n + a)] = (Fraction(0),) * n + tuple(col)
    return ThreeLieAlgebra.from_brackets(total, out)


def _lie_module_violations(M: LieModule):
    L = M.algebra
    n = L.dim
    for t in iproduct(range(n), repeat=4):
        x1, x2, x3, x4 = t
        e = [{x: Fraction(1)} for x in t]
        r12 = M.at(x1, x2)
        r34 = M.at(x3, x4)
        b123 = L.table.get((x1, x2, x3), {})
        b124 = L.table.get((x1, x2, x4), {})
        lhs = r12.commutator(r34)
        rhs = M.of(b123, e[3]) + M.of(e[2], b124)
        if lhs != rhs:
            yield Violation("M43", t, lhs, rhs)
        lhs = M.of(b123, e[3])
        rhs = r12 @ r34 + M.at(x2, x3) @ M.at(x1, x4) + M.at(x3, x1) @ M.at(x2, x4)
        if lhs != rhs:
            yield Violation("M44", t, lhs, rhs)


def check_lie_module(M: LieModule, limit: int | None = None) -> AxiomReport:
    """Check both module identities on all basis 4-tuples.

    The semidirect bracket is also checked for the Filippov identity; the two
    verdicts must agree, and a disagreement raises :class:`ContractError`.
    """
    report = make_report(_lie_module_violations(M), ("M43", "M44"), limit)
    cross = is_three_lie(lie_semidirect(M))
    if cross != report.passed:
        raise ContractError(
            f"module identities say {report.passed} but the semidirect Filippov check says {cross}"
        )
    return report


def induce_lie_module(A: ThreeAlgebra, dm) -> LieModule:
    """rho = phi - psi tau + psi, a module over the sub-adjacent 3-Lie algebra."""
    from .reps_ext import check_double_module

    rep = check_double_module(dm, limit=1)
    if not rep.passed:
        v = rep.first()
        raise AlgebraError(f"invalid double module: {v.axiom} fails at {v.labels}")
    L = sub_adjacent(A)
    n = A.dim
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            pairs[(i, j)] = dm.phi_at(i, j) - dm.psi_at(j, i) + dm.psi_at(i, j)
    M = LieModule.from_pairs(L, dm.vdim, pairs)
    if not check_lie_module(M, limit=1).passed:
        raise ContractError("induced module of a double module fails the 3-Lie module identities")
    return M


# --------------------------------------------------------------------------- #
# Statement-level properties


def s_identity_defects(A: ThreeAlgebra, L: ThreeLieAlgebra | None = None):
    """Yield basis 4-tuples where
    S([x1,x2,x3]_c, x4) = S(x2,x3)S(x1,x4) + S(x1,x2)S(x3,x4) - S(x1,x3)S(x2,x4) fails."""
    from .maps import basis_left, basis_right, left_mult, right_mult

    n = A.dim
    L = L or sub_adjacent(A)
    S = {(i, j): basis_left(A, i, j) - basis_right(A, i, j)
         for i in range(n) for j in range(n)}
    for t in iproduct(range(n), repeat=4):
        x1, x2, x3, x4 = t
        b = L.basis_bracket(x1, x2, x3)
        e4 = tuple(Fraction(int(a == x4)) for a in range(n))
        lhs = left_mult(A, b, e4) - right_mult(A, b, e4)
        rhs = S[(x2, x3)] @ S[(x1, x4)] + S[(x1, x2)] @ S[(x3, x4)] - S[(x1, x3)] @ S[(x2, x4)]
        if lhs != rhs:
            yield t, lhs, rhs


def ideal_transfer_holds(A: ThreeAlgebra, B: Subspace, L: ThreeLieAlgebra | None = None) -> bool:
    """An ideal (subalgebra) of A is an ideal (subalgebra) of the sub-adjacent algebra."""
    L = L or sub_adjacent(A)
    if is_ideal(A, B) and not is_lie_ideal(L, B):
        return False
    if is_subalgebra(A, B) and not is_lie_subalgebra(L, B):
        return False
    return True
