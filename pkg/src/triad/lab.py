"""Random generation of semi-associative 3-algebras and the theorem harness.

Every generated algebra is reproducible from its trial seed alone: trial
seeds are drawn from ``random.Random(spec.seed)`` and each trial builds its
own ``random.Random(trial_seed)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable

from . import core, lie_bridge, maps, reps_ext
from .core import ThreeAlgebra, check_semi_associative
from .exactlin import Matrix, Subspace, as_rational

FAMILIES = ("Abelian", "TwoStep", "RandomFiltered")
DEFAULT_COEFFS = tuple(Fraction(c) for c in (-2, -1, 0, 1, 2))


@dataclass(frozen=True)
class GeneratorSpec:
    dim: int
    family: str = "TwoStep"
    coeff_set: tuple = DEFAULT_COEFFS
    seed: int = 0
    trials: int = 1
    sparsity: int = 2
    max_attempts: int = 20000

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dim must be non-negative")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        coeffs = tuple(as_rational(c) for c in self.coeff_set)
        if not any(coeffs):
            raise ValueError("coefficient set needs a nonzero value")
        object.__setattr__(self, "coeff_set", coeffs)


@dataclass(frozen=True)
class Generated:
    algebra: ThreeAlgebra
    trial_seed: int
    attempts: int  # tensors drawn before one was accepted


def trial_seeds(spec: GeneratorSpec) -> list[int]:
    rng = random.Random(spec.seed)
    return [rng.getrandbits(64) for _ in range(spec.trials)]


def _random_vector(rng: random.Random, n: int, support: list[int], coeffs: tuple,
                   max_terms: int = 2) -> tuple:
    nonzero = [c for c in coeffs if c]
    out = [Fraction(0)] * n
    for idx in rng.sample(support, min(len(support), rng.randint(1, max_terms))):
        out[idx] = rng.choice(nonzero)
    return tuple(out)


def _two_step(rng: random.Random, n: int, coeffs: tuple) -> ThreeAlgebra:
    if n < 3:
        return ThreeAlgebra.zero(n)
    u = rng.randint(2, n - 1)
    U, W = list(range(u)), list(range(u, n))
    orbits = [(i, j, k) for i in U for j in U if i < j for k in U]
    chosen = rng.sample(orbits, min(len(orbits), rng.randint(1, 3)))
    prods = {t: _random_vector(rng, n, W, coeffs) for t in sorted(chosen)}
    return ThreeAlgebra.from_products(n, prods)


def _random_tensor(rng: random.Random, n: int, coeffs: tuple, sparsity: int) -> ThreeAlgebra:
    if n < 2:
        return ThreeAlgebra.zero(n)
    orbits = [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(n)]
    # in dim 2 only the zero tensor survives the filter, so zero orbits must
    # be drawable there; elsewhere it would flood the sample with abelian algebras
    lo = 0 if n == 2 else 1
    chosen = rng.sample(orbits, min(len(orbits), rng.randint(lo, max(lo, sparsity))))
    prods = {t: _random_vector(rng, n, list(range(n)), coeffs) for t in sorted(chosen)}
    return ThreeAlgebra.from_products(n, prods)


def generate_one(spec: GeneratorSpec, trial_seed: int) -> Generated:
    rng = random.Random(trial_seed)
    n = spec.dim
    label = f"{spec.family}-{n}-{trial_seed}"
    if spec.family == "Abelian":
        return Generated(ThreeAlgebra.zero(n, label), trial_seed, 1)
    if spec.family == "TwoStep":
        A = _two_step(rng, n, spec.coeff_set)
        if not check_semi_associative(A, limit=1).passed:
            raise core.ContractError("TwoStep generator produced a non-semi-associative tensor")
        return Generated(ThreeAlgebra(n, A.products, label), trial_seed, 1)
    for attempt in range(1, spec.max_attempts + 1):
        A = _random_tensor(rng, n, spec.coeff_set, spec.sparsity)
        if check_semi_associative(A, limit=1).passed:
            return Generated(ThreeAlgebra(n, A.products, label), trial_seed, attempt)
    raise RuntimeError(f"no semi-associative tensor in {spec.max_attempts} attempts (seed {trial_seed})")


def generate_with_stats(spec: GeneratorSpec) -> list[Generated]:
    return [generate_one(spec, s) for s in trial_seeds(spec)]


def generate(spec: GeneratorSpec) -> list[ThreeAlgebra]:
    return [g.algebra for g in generate_with_stats(spec)]


def acceptance_rate(results: list[Generated]) -> float:
    drawn = sum(g.attempts for g in results)
    return len(results) / drawn if drawn else 1.0


# --------------------------------------------------------------------------- #
# Properties
#
# Each property maps (algebra, rng) to a list of witness strings; an empty
# list means the property held. rng is only used for sampling corruptions.

Property = Callable[[ThreeAlgebra, random.Random], list]

PROPERTIES: dict[str, Property] = {}
DESCRIPTIONS: dict[str, str] = {}


def _register(pid: str, text: str):
    def deco(fn):
        PROPERTIES[pid] = fn
        DESCRIPTIONS[pid] = text
        return fn
    return deco


def _e(n: int, i: int) -> tuple:
    return tuple(Fraction(int(a == i)) for a in range(n))


def _labels(t) -> str:
    return "(" + ",".join(str(i + 1) for i in t) + ")"


@_register("thm_2_3", "nonzero basis products avoid multiples of their arguments and <e_i, e_j>")
def prop_thm_2_3(A, rng):
    return [f"{_labels(t)}: {why}" for t, why in core.thm23_violations(A)]


@_register("thm_2_4", "non-abelian algebras of dim >= 3 have an independent nonzero triple")
def prop_thm_2_4(A, rng):
    if A.is_abelian or A.dim < 3:
        return []
    w = core.independent_witness(A)
    if w is None:
        return ["no independent triple with nonzero product"]
    x, y, z = w
    if not any(core.triple_product(A, x, y, z)) or Subspace.span(w, A.dim).dim != 3:
        return ["witness failed re-check"]
    return []


@_register("thm_2_5", "A^1 is contained in Z(A)")
def prop_thm_2_5(A, rng):
    D, Z = core.derived_algebra(A), core.center(A)
    return [] if D.leq(Z) else [f"A^1 dim {D.dim} not inside Z dim {Z.dim}"]


class _Ops:
    def __init__(self, A: ThreeAlgebra):
        self.A = A
        self.n = A.dim
        self._c: dict = {}

    def L(self, i, j):
        k = ("L", i, j)
        if k not in self._c:
            self._c[k] = maps.basis_left(self.A, i, j)
        return self._c[k]

    def R(self, i, j):
        k = ("R", i, j)
        if k not in self._c:
            self._c[k] = maps.basis_right(self.A, i, j)
        return self._c[k]

    def prod(self, i, j, k):
        return self.A.basis_product(i, j, k)

    def L_vec(self, i, w):
        return maps.left_mult(self.A, _e(self.n, i), w)

    def R_vec(self, w, i):
        return maps.right_mult(self.A, w, _e(self.n, i))


@_register("lemma_3_1", "left/right multiplication identities on basis arguments")
def prop_lemma_3_1(A, rng):
    o = _Ops(A)
    n = A.dim
    bad = []
    for t in iproduct(range(n), repeat=4):
        x1, x2, x3, x4 = t
        w234 = o.prod(x2, x3, x4)
        checks = (
            ("E34", o.L(x1, x2), -o.L(x2, x1)),
            ("E35", o.L(x1, x2) @ o.L(x3, x4), o.L_vec(x1, w234)),
            ("E36", o.L_vec(x1, w234), o.R_vec(w234, x1) - o.R(x1, x2) @ o.R(x3, x4)),
            ("E37a", o.L(x1, x2) @ o.L(x3, x4), o.L(x3, x1) @ o.L(x2, x4)),
            ("E37b", o.L(x3, x1) @ o.L(x2, x4),
             o.L(x4, x2) @ o.R(x3, x1) + o.L(x3, x1) @ o.R(x4, x2)),
            ("E38", o.R(x3, x4) @ (o.R(x1, x2) + o.R(x2, x1)), Matrix.zeros(n, n)),
        )
        bad += [f"{eq} at {_labels(t)}" for eq, l, r in checks if l != r]
    return bad


@_register("thm_3_1", "T(A) = L(A) + R(A) is abelian")
def prop_thm_3_1(A, rng):
    T = maps.span_space(A, "TSpan").basis
    return [f"T basis {a}, {b} do not commute"
            for a in range(len(T)) for b in range(a + 1, len(T))
            if not T[a].commutator(T[b]).is_zero]


@_register("thm_3_2", "S maps are derivations, [S(A), S(A)] = 0, [S(A), Der(A)] in S(A)")
def prop_thm_3_2(A, rng):
    n = A.dim
    bad = []
    for i, j in iproduct(range(n), repeat=2):
        if not maps.is_derivation(A, maps.s_map(A, _e(n, i), _e(n, j))):
            bad.append(f"S(e{i + 1},e{j + 1}) is not a derivation")
    S = maps.span_space(A, "SSpan")
    Der = maps.derivation_space(A)
    for a, s in enumerate(S.basis):
        for b, s2 in enumerate(S.basis):
            if not s.commutator(s2).is_zero:
                bad.append(f"[S_{a}, S_{b}] != 0")
        for b, D in enumerate(Der.basis):
            if not S.contains(s.commutator(D)):
                bad.append(f"[S_{a}, D_{b}] not in S(A)")
    return bad


@_register("prop_3_1", "Der(A) is closed under commutators")
def prop_prop_3_1(A, rng):
    return [] if maps.is_lie_closed(maps.derivation_space(A)) else ["Der(A) not closed"]


@_register("thm_6_1", "centroid closure, phi D in Der, Der_C = Gamma cap Der, middle-slot rule")
def prop_thm_6_1(A, rng):
    G = maps.centroid_space(A)
    Der = maps.derivation_space(A)
    bad = []
    if not maps.is_lie_closed(G):
        bad.append("Gamma not closed under commutators")
    for a, phi in enumerate(G.basis):
        if not maps.is_centroid_element(A, phi, (1,)):
            bad.append(f"Gamma_{a} fails the middle slot")
        for b, D in enumerate(Der.basis):
            if not maps.is_derivation(A, phi @ D):
                bad.append(f"Gamma_{a} D_{b} not a derivation")
    if not maps.central_derivation_space(A).same_space(G.intersect(Der)):
        bad.append("Der_C differs from Gamma cap Der")
    return bad


@_register("thm_6_2", "[D, phi] in Gamma and the two equivalences, on basis pairs")
def prop_thm_6_2(A, rng):
    G = maps.centroid_space(A)
    Der = maps.derivation_space(A)
    DC = maps.central_derivation_space(A)
    bad = []
    for a, D in enumerate(Der.basis):
        for b, phi in enumerate(G.basis):
            if not G.contains(D.commutator(phi)):
                bad.append(f"[D_{a}, Gamma_{b}] not in Gamma")
            if G.contains(D @ phi) != DC.contains(phi @ D):
                bad.append(f"D_{a} Gamma_{b}: equivalence (2) fails")
            if Der.contains(D @ phi) != DC.contains(D.commutator(phi)):
                bad.append(f"D_{a} Gamma_{b}: equivalence (3) fails")
    return bad


@_register("thm_4_1", "the sub-adjacent bracket satisfies the Filippov identity")
def prop_thm_4_1(A, rng):
    L = lie_bridge.sub_adjacent(A, verify=False)
    rep = lie_bridge.check_filippov(L, limit=1)
    return [] if rep.passed else [f"Filippov fails at {rep.first().labels}"]


def _candidate_subspaces(A: ThreeAlgebra, rng: random.Random) -> list[Subspace]:
    n = A.dim
    subs = [Subspace.zero(n), Subspace.full(n), core.derived_algebra(A), core.center(A)]
    subs += [Subspace.coordinate(n, [i]) for i in range(n)]
    subs += [Subspace.coordinate(n, [i, j]) for i in range(n) for j in range(i + 1, n)]
    for _ in range(3):
        v = [Fraction(rng.randint(-1, 1)) for _ in range(n)]
        subs.append(Subspace.span([v], n) + core.derived_algebra(A))
    return subs


@_register("thm_4_2", "Der(A) in Der(A_c), the S identity, ideals and subalgebras of A_c")
def prop_thm_4_2(A, rng):
    L = lie_bridge.sub_adjacent(A)
    bad = []
    for a, D in enumerate(maps.derivation_space(A).basis):
        if not lie_bridge.is_lie_derivation(L, D):
            bad.append(f"D_{a} is not a derivation of A_c")
    for t, _, _ in lie_bridge.s_identity_defects(A, L):
        bad.append(f"S identity fails at {_labels(t)}")
        break
    for S in _candidate_subspaces(A, rng):
        if not lie_bridge.ideal_transfer_holds(A, S, L):
            bad.append(f"ideal/subalgebra of dim {S.dim} not preserved")
    return bad


@_register("thm_4_3", "L(A) and R(A) are derivations of A_c")
def prop_thm_4_3(A, rng):
    L = lie_bridge.sub_adjacent(A)
    n = A.dim
    bad = []
    for i, j in iproduct(range(n), repeat=2):
        if not lie_bridge.is_lie_derivation(L, maps.basis_left(A, i, j)):
            bad.append(f"L(e{i + 1},e{j + 1})")
        if not lie_bridge.is_lie_derivation(L, maps.basis_right(A, i, j)):
            bad.append(f"R(e{i + 1},e{j + 1})")
    return bad


@_register("functor_quotient", "sub-adjacent algebra commutes with quotients by ideals")
def prop_functor_quotient(A, rng):
    L = lie_bridge.sub_adjacent(A)
    bad = []
    for I in (core.derived_algebra(A), core.center(A)):
        Q, _ = core.quotient(A, I)
        if lie_bridge.sub_adjacent(Q).brackets != lie_bridge.lie_quotient(L, I).brackets:
            bad.append(f"quotient by ideal of dim {I.dim}")
    return bad


def corrupt_module(dm: reps_ext.DoubleModule, rng: random.Random) -> reps_ext.DoubleModule:
    """Replace one phi or psi matrix by a random sparse matrix, or rescale everything."""
    n, m = dm.algebra.dim, dm.vdim
    phi = {k: M for k, M in dm.phi}
    psi = {k: M for k, M in dm.psi}
    mode = rng.choice(("phi", "psi", "scale"))
    if mode == "scale" or n < 2 or m == 0:
        c = Fraction(rng.choice((0, 2, -1)))
        return reps_ext.DoubleModule.build(dm.algebra, m, {k: M.scale(c) for k, M in phi.items()},
                                           {k: M.scale(c) for k, M in psi.items()})
    M = Matrix.from_rows([[Fraction(rng.choice((0, 0, 0, 1, -1))) for _ in range(m)]
                          for _ in range(m)])
    if mode == "phi":
        i, j = sorted(rng.sample(range(n), 2))
        phi[(i, j)] = M
    else:
        psi[(rng.randrange(n), rng.randrange(n))] = M
    return reps_ext.DoubleModule.build(dm.algebra, m, phi, psi)


@_register("thm_5_1", "semidirect product is semi-associative iff the module identities hold")
def prop_thm_5_1(A, rng, corruptions: int = 20):
    bad = []
    R = reps_ext.regular_module(A)
    try:
        S = reps_ext.semidirect_product(A, R)
    except core.ContractError as exc:
        return [f"regular module: {exc}"]
    if not check_semi_associative(S, limit=1).passed:
        bad.append("A x| regular module is not semi-associative")
    for c in range(corruptions):
        dm = corrupt_module(R, rng)
        mod_ok = reps_ext.is_double_module(dm)
        alg_ok = check_semi_associative(reps_ext.semidirect_product(A, dm, contract=False),
                                        limit=1).passed
        if mod_ok != alg_ok:
            bad.append(f"corruption {c}: module check {mod_ok}, semidirect {alg_ok}")
    return bad


@_register("thm_5_2", "(L, R, A) is a double module")
def prop_thm_5_2(A, rng):
    rep = reps_ext.check_double_module(reps_ext.regular_module(A), limit=1)
    return [] if rep.passed else [f"{rep.first().axiom} at {rep.first().labels}"]


@_register("thm_5_3", "dual modules (including L*, R*) are double modules; duality is an involution")
def prop_thm_5_3(A, rng):
    R = reps_ext.regular_module(A)
    bad = []
    dual = reps_ext._dual_tensors(R)
    rep = reps_ext.check_double_module(dual, limit=1)
    if not rep.passed:
        bad.append(f"(L*, R*) fails {rep.first().axiom} at {rep.first().labels}")
    if reps_ext._dual_tensors(dual) != R:
        bad.append("dual of dual differs")
    return bad


@_register("derived_identities", "the ten component identities of the semidirect product")
def prop_derived_identities(A, rng):
    rep = reps_ext.check_derived_identities(reps_ext.regular_module(A), limit=1)
    return [] if rep.passed else [f"{rep.first().axiom} at {rep.first().labels}"]


@_register("induced_module", "rho = phi - psi tau + psi is a module of A_c, compatible with semidirect products")
def prop_induced_module(A, rng):
    R = reps_ext.regular_module(A)
    bad = []
    try:
        M = lie_bridge.induce_lie_module(A, R)
    except core.ContractError as exc:
        return [str(exc)]
    lhs = lie_bridge.sub_adjacent(reps_ext.semidirect_product(A, R))
    if lhs.brackets != lie_bridge.lie_semidirect(M).brackets:
        bad.append("sub-adjacent of the semidirect product differs from the 3-Lie semidirect sum")
    return bad


@_register("thm_5_4", "every basis cocycle gives a semi-associative double extension")
def prop_thm_5_4(A, rng):
    bad = []
    zero = reps_ext.Cocycle.zero(A)
    E0 = reps_ext.double_extension(A, zero, contract=False)
    S = reps_ext.semidirect_product(A, reps_ext._dual_tensors(reps_ext.regular_module(A)),
                                    contract=False)
    if E0.products != S.products:
        bad.append("theta = 0 extension differs from the dual semidirect product")
    for a, c in enumerate(reps_ext.cocycle_space(A)):
        rep = check_semi_associative(reps_ext.double_extension(A, c, contract=False), limit=1)
        if not rep.passed:
            bad.append(f"cocycle {a}: {rep.first().axiom} at {rep.first().labels}")
    return bad


# --------------------------------------------------------------------------- #
# Harness


@dataclass
class Counterexample:
    trial: int
    trial_seed: int
    algebra: dict
    witness: list
    kind: str  # "discrepancy" when the input verifies, "generator" when it does not

    def to_json(self) -> dict:
        return {"trial": self.trial, "trial_seed": self.trial_seed, "kind": self.kind,
                "algebra": self.algebra, "witness": self.witness}


@dataclass
class HarnessResult:
    property: str
    spec: GeneratorSpec
    trials: int
    counterexamples: list = field(default_factory=list)
    acceptance_rate: float = 1.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "family": self.spec.family,
            "dim": self.spec.dim,
            "seed": self.spec.seed,
            "trials": self.trials,
            "acceptance_rate": round(self.acceptance_rate, 6),
            "counterexamples": [c.to_json() for c in self.counterexamples],
        }

    def to_line(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def run_property(pid: str, A: ThreeAlgebra, seed: int = 0) -> list:
    if pid not in PROPERTIES:
        raise KeyError(f"unknown property {pid!r}; known: {', '.join(sorted(PROPERTIES))}")
    return PROPERTIES[pid](A, random.Random(seed))


def run_harness(pid: str, spec: GeneratorSpec) -> HarnessResult:
    """Evaluate a registered property on every generated algebra of the spec."""
    from .serialize import algebra_to_json

    if pid not in PROPERTIES:
        raise KeyError(f"unknown property {pid!r}; known: {', '.join(sorted(PROPERTIES))}")
    gens = generate_with_stats(spec)
    result = HarnessResult(pid, spec, len(gens), acceptance_rate=acceptance_rate(gens))
    for t, g in enumerate(gens):
        witness = PROPERTIES[pid](g.algebra, random.Random(g.trial_seed))
        if witness:
            verified = check_semi_associative(g.algebra, limit=1).passed
            result.counterexamples.append(Counterexample(
                t, g.trial_seed, algebra_to_json(g.algebra), witness,
                "discrepancy" if verified else "generator"))
    return result
