"""Command-line front end.

Every subcommand reads one JSON document (``--input``, default stdin),
runs one library operation and writes a text or JSON report. Exit status:
0 when the property holds or the construction succeeded, 1 when a checked
property fails, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from . import __version__, lab
from .core import (
    AlgebraError,
    AxiomReport,
    NotAnIdealError,
    ThreeAlgebra,
    center,
    check_semi_associative,
    derived_algebra,
    is_ideal,
    is_subalgebra,
    quotient,
    render_vector,
    triple_product,
)
from .exactlin import DimensionError, Matrix, Subspace, format_rational, parse_rational
from .lie_bridge import check_filippov, check_lie_module, sub_adjacent
from .maps import MapSpace, central_derivation_space, centroid_space, derivation_space, span_space
from .reps_ext import (
    Cocycle,
    InvalidCocycleError,
    InvalidModuleError,
    check_cocycle,
    check_double_module,
    cocycle_space,
    double_extension,
    dual_module,
    semidirect_product,
)
from .serialize import (
    SchemaError,
    algebra_from_json,
    algebra_to_json,
    cocycle_from_json,
    cocycle_to_json,
    dumps,
    lie_from_json,
    lie_module_from_json,
    lie_to_json,
    loads,
    mapspace_to_json,
    module_from_json,
    module_to_json,
    report_to_json,
)

DEFAULT_MAX_DIM = 10


class UsageError(Exception):
    """Bad flags or input; maps to exit status 2."""


class Outcome:
    def __init__(self, status: int, payload: dict, text: list[str]):
        self.status = status
        self.payload = payload
        self.text = text


# --------------------------------------------------------------------------- #
# Input helpers


def _max_dim() -> int:
    raw = os.environ.get("TRIAD_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TRIAD_MAX_DIM must be an integer, got {raw!r}") from None


def _guard(dim: int) -> None:
    cap = _max_dim()
    if dim > cap:
        raise UsageError(f"dimension {dim} exceeds TRIAD_MAX_DIM={cap}")


def _read(args) -> Any:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return loads(text)


def _pick(obj: Any, key: str, index: int | None) -> Any:
    """Select entry ``index`` (1-based) of a list-valued document such as generate output."""
    items = obj[key]
    if not isinstance(items, list) or not items:
        raise SchemaError(f"'{key}' must be a non-empty list")
    if index is None:
        if len(items) != 1:
            raise UsageError(f"input holds {len(items)} entries in '{key}'; pass --index")
        index = 1
    if not 1 <= index <= len(items):
        raise UsageError(f"--index {index} outside 1..{len(items)}")
    return items[index - 1]


def _load_algebra(args) -> ThreeAlgebra:
    obj = _read(args)
    if isinstance(obj, dict) and "algebras" in obj:
        obj = _pick(obj, "algebras", getattr(args, "index", None))
    A = algebra_from_json(obj)
    _guard(A.dim)
    return A


def _load_cocycle(args) -> Cocycle:
    obj = _read(args)
    if isinstance(obj, dict) and "cocycles" in obj:
        _require_keys(obj, ("algebra",))
        theta = _pick(obj, "cocycles", args.index)
        if not isinstance(theta, dict) or "theta" not in theta:
            raise SchemaError("cocycle entry is missing 'theta'")
        obj = {"algebra": obj["algebra"], "theta": theta["theta"]}
    elif isinstance(obj, dict) and "theta" not in obj and "dim" in obj:
        # a bare algebra means the zero cocycle
        A = algebra_from_json(obj)
        _guard(A.dim)
        return Cocycle.zero(A)
    c = cocycle_from_json(obj)
    _guard(c.algebra.dim)
    return c


def _require_keys(obj, keys):
    for k in keys:
        if k not in obj:
            raise SchemaError(f"input is missing '{k}'")


def _parse_vector(text: str, n: int, flag: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"{flag} needs {n} comma-separated rationals, got {len(parts)}")
    try:
        return tuple(parse_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _parse_vectors(text: str, n: int) -> list[tuple]:
    return [_parse_vector(chunk, n, "--vectors") for chunk in text.split(";") if chunk.strip()]


# --------------------------------------------------------------------------- #
# Rendering


def _value_text(v) -> str:
    if isinstance(v, Matrix):
        return "[" + "; ".join(" ".join(format_rational(x) for x in row) for row in v.rows) + "]"
    return render_vector(v)


def _report_lines(title: str, rep: AxiomReport) -> list[str]:
    axes = "/".join(rep.checked)
    if rep.passed:
        return [f"{title} {axes}: pass"]
    lines = [f"{title} {axes}: FAIL"]
    for v in rep.violations:
        wit = ",".join(str(i) for i in v.labels)
        lines.append(f"  {v.axiom} at ({wit}): lhs = {_value_text(v.lhs)}, rhs = {_value_text(v.rhs)}")
    if rep.truncated:
        lines.append("  (more violations omitted; raise --limit)")
    return lines


def _report_outcome(command: str, title: str, rep: AxiomReport) -> Outcome:
    payload = {"command": command}
    payload.update(report_to_json(rep))
    return Outcome(0 if rep.passed else 1, payload, _report_lines(title, rep))


def _subspace_json(S: Subspace) -> dict:
    return {"dim": S.dim, "basis": [[format_rational(x) for x in v] for v in S.vectors]}


def _subspace_lines(name: str, S: Subspace) -> list[str]:
    lines = [f"{name}: dim {S.dim}"]
    lines += [f"  {render_vector(v)}" for v in S.vectors]
    return lines


def _mapspace_outcome(command: str, S: MapSpace) -> Outcome:
    payload = mapspace_to_json(S)
    lines = [f"{S.kind}: dim {S.dim}"]
    for t, M in enumerate(S.basis, 1):
        lines.append(f"  basis {t}: {_value_text(M)}")
    return Outcome(0, payload, lines)


def _algebra_lines(A: ThreeAlgebra) -> list[str]:
    lines = [f"algebra of dim {A.dim}" + (f" ({A.label})" if A.label else "")]
    for (i, j, k), v in A.products:
        lines.append(f"  {{e{i + 1},e{j + 1},e{k + 1}}} = {render_vector(v)}")
    return lines


# --------------------------------------------------------------------------- #
# Commands


def cmd_check(args) -> Outcome:
    A = _load_algebra(args)
    return _report_outcome("check", "axioms", check_semi_associative(A, limit=args.limit))


def cmd_product(args) -> Outcome:
    A = _load_algebra(args)
    x = _parse_vector(args.x, A.dim, "--x")
    y = _parse_vector(args.y, A.dim, "--y")
    z = _parse_vector(args.z, A.dim, "--z")
    p = triple_product(A, x, y, z)
    payload = {"command": "product", "product": [format_rational(c) for c in p]}
    return Outcome(0, payload, [f"{{x,y,z}} = {render_vector(p)}"])


def cmd_derived(args) -> Outcome:
    S = derived_algebra(_load_algebra(args))
    return Outcome(0, {"command": "derived", **_subspace_json(S)}, _subspace_lines("A^1", S))


def cmd_center(args) -> Outcome:
    S = center(_load_algebra(args))
    return Outcome(0, {"command": "center", **_subspace_json(S)}, _subspace_lines("Z(A)", S))


def cmd_ideal_test(args) -> Outcome:
    A = _load_algebra(args)
    B = Subspace.span(_parse_vectors(args.vectors, A.dim), A.dim)
    ideal = is_ideal(A, B)
    sub = is_subalgebra(A, B)
    payload = {"command": "ideal-test", "subspace_dim": B.dim, "ideal": ideal, "subalgebra": sub}
    lines = [f"subspace of dim {B.dim}: ideal {'yes' if ideal else 'no'}, "
             f"subalgebra {'yes' if sub else 'no'}"]
    return Outcome(0 if ideal else 1, payload, lines)


def cmd_quotient(args) -> Outcome:
    A = _load_algebra(args)
    B = Subspace.span(_parse_vectors(args.vectors, A.dim), A.dim)
    try:
        Q, _ = quotient(A, B)
    except NotAnIdealError as exc:
        return Outcome(1, {"command": "quotient", "error": str(exc)}, [f"quotient: {exc}"])
    return Outcome(0, algebra_to_json(Q), _algebra_lines(Q))


def cmd_derivations(args) -> Outcome:
    return _mapspace_outcome("derivations", derivation_space(_load_algebra(args)))


def cmd_central_derivations(args) -> Outcome:
    return _mapspace_outcome("central-derivations", central_derivation_space(_load_algebra(args)))


def cmd_centroid(args) -> Outcome:
    return _mapspace_outcome("centroid", centroid_space(_load_algebra(args)))


_SPAN_ALIASES = {"L": "LSpan", "R": "RSpan", "S": "SSpan", "T": "TSpan"}


def cmd_spans(args) -> Outcome:
    kind = _SPAN_ALIASES.get(args.kind, args.kind)
    return _mapspace_outcome("spans", span_space(_load_algebra(args), kind))


def cmd_subadjacent(args) -> Outcome:
    A = _load_algebra(args)
    try:
        L = sub_adjacent(A, verify=not args.no_verify)
    except AlgebraError as exc:
        return Outcome(1, {"command": "subadjacent", "error": str(exc)}, [f"subadjacent: {exc}"])
    lines = [f"3-Lie algebra of dim {L.dim}" + (f" ({L.label})" if L.label else "")]
    for (i, j, k), v in L.brackets:
        lines.append(f"  [e{i + 1},e{j + 1},e{k + 1}] = {render_vector(v)}")
    return Outcome(0, lie_to_json(L), lines)


def cmd_filippov(args) -> Outcome:
    L = lie_from_json(_read(args))
    _guard(L.dim)
    return _report_outcome("filippov", "Filippov identity", check_filippov(L, limit=args.limit))


def cmd_module_check(args) -> Outcome:
    obj = _read(args)
    if isinstance(obj, dict) and "rho" in obj:
        M = lie_module_from_json(obj)
        _guard(M.algebra.dim + M.vdim)
        return _report_outcome("module-check", "3-Lie module", check_lie_module(M, limit=args.limit))
    dm = module_from_json(obj)
    _guard(dm.algebra.dim + dm.vdim)
    return _report_outcome("module-check", "double module", check_double_module(dm, limit=args.limit))


def cmd_semidirect(args) -> Outcome:
    dm = module_from_json(_read(args))
    _guard(dm.algebra.dim + dm.vdim)
    S = semidirect_product(dm.algebra, dm)
    rep = check_semi_associative(S, limit=args.limit)
    if not rep.passed:
        payload = {"command": "semidirect", "algebra": algebra_to_json(S)}
        payload.update(report_to_json(rep))
        return Outcome(1, payload, _report_lines("semidirect product axioms", rep))
    return Outcome(0, algebra_to_json(S), _algebra_lines(S))


def cmd_dual(args) -> Outcome:
    dm = module_from_json(_read(args))
    _guard(dm.algebra.dim + dm.vdim)
    try:
        out = dual_module(dm)
    except InvalidModuleError as exc:
        return Outcome(1, {"command": "dual", "error": str(exc)}, [f"dual: {exc}"])
    lines = [f"dual module of dim {out.vdim}"]
    for (i, j), M in out.phi:
        lines.append(f"  phi(e{i + 1},e{j + 1}) = {_value_text(M)}")
    for (i, j), M in out.psi:
        lines.append(f"  psi(e{i + 1},e{j + 1}) = {_value_text(M)}")
    return Outcome(0, module_to_json(out), lines)


def cmd_cocycle_check(args) -> Outcome:
    c = _load_cocycle(args)
    return _report_outcome("cocycle-check", "cocycle identities", check_cocycle(c, limit=args.limit))


def cmd_cocycle_space(args) -> Outcome:
    A = _load_algebra(args)
    try:
        basis = cocycle_space(A)
    except AlgebraError as exc:
        return Outcome(1, {"command": "cocycle-space", "error": str(exc)}, [f"cocycle-space: {exc}"])
    payload = {
        "algebra": algebra_to_json(A),
        "dim": len(basis),
        "cocycles": [{"theta": cocycle_to_json(c)["theta"]} for c in basis],
    }
    lines = [f"cocycle space: dim {len(basis)}"]
    for t, c in enumerate(basis, 1):
        terms = [f"theta(e{i + 1},e{j + 1},e{k + 1}) = {render_vector(v)}" for (i, j, k), v in c.theta]
        lines.append(f"  cocycle {t}: " + "; ".join(terms))
    return Outcome(0, payload, lines)


def cmd_extend(args) -> Outcome:
    c = _load_cocycle(args)
    _guard(2 * c.algebra.dim)
    try:
        E = double_extension(c.algebra, c)
    except InvalidCocycleError as exc:
        return Outcome(1, {"command": "extend", "error": str(exc)}, [f"extend: {exc}"])
    return Outcome(0, algebra_to_json(E), _algebra_lines(E))


def _spec(args) -> lab.GeneratorSpec:
    try:
        return lab.GeneratorSpec(dim=args.dim, family=args.family, seed=args.seed,
                                 trials=args.trials, sparsity=args.sparsity)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(args) -> Outcome:
    _guard(args.dim)
    spec = _spec(args)
    gens = lab.generate_with_stats(spec)
    rate = lab.acceptance_rate(gens)
    payload = {
        "family": spec.family, "dim": spec.dim, "seed": spec.seed, "trials": spec.trials,
        "acceptance_rate": round(rate, 6),
        "algebras": [algebra_to_json(g.algebra) for g in gens],
    }
    lines = [f"{spec.family} dim {spec.dim} seed {spec.seed}: {len(gens)} algebras, "
             f"acceptance rate {rate:.4f}"]
    for t, g in enumerate(gens, 1):
        lines.append(f"  {t}: {len(g.algebra.products)} nonzero products, "
                     f"trial seed {g.trial_seed}, {g.attempts} draws")
    return Outcome(0, payload, lines)


def cmd_harness(args) -> Outcome:
    _guard(args.dim)
    spec = _spec(args)
    pids = sorted(lab.PROPERTIES) if args.property == "all" else [args.property]
    unknown = [p for p in pids if p not in lab.PROPERTIES]
    if unknown:
        raise UsageError(f"unknown property {unknown[0]!r}; known: {', '.join(sorted(lab.PROPERTIES))}")
    results = [lab.run_harness(p, spec) for p in pids]
    ok = all(r.passed for r in results)
    payload = {"command": "harness", "passed": ok, "results": [r.to_json() for r in results]}
    lines = []
    for r in results:
        verdict = "pass" if r.passed else f"FAIL ({len(r.counterexamples)} counterexamples)"
        lines.append(f"{r.property}: {verdict} over {r.trials} {spec.family} algebras of dim {spec.dim}")
        for c in r.counterexamples:
            lines.append(f"  trial {c.trial} (seed {c.trial_seed}, {c.kind}): {c.witness}")
    return Outcome(0 if ok else 1, payload, lines)


# --------------------------------------------------------------------------- #
# Parser


def _common(p: argparse.ArgumentParser, input_flag: bool = True) -> None:
    if input_flag:
        p.add_argument("--input", "-i", default="-", help="JSON input file, '-' for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def _limit(p):
    p.add_argument("--limit", type=int, default=20, help="maximum witnesses to list")


def _gen_flags(p):
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--family", default="TwoStep", choices=lab.FAMILIES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--sparsity", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triad", description="Semi-associative 3-algebras over Q.")
    parser.add_argument("--version", action="version", version=f"triad {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_text, input_flag=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _common(p, input_flag)
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, "check the semi-associative axioms")
    _limit(p)
    p.add_argument("--index", type=int, help="entry of a generate output to use (1-based)")
    p = add("product", cmd_product, "evaluate {x,y,z}")
    for flag in ("--x", "--y", "--z"):
        p.add_argument(flag, required=True, help="comma-separated rational coordinates")
    add("derived", cmd_derived, "derived algebra A^1")
    add("center", cmd_center, "center Z(A)")
    p = add("ideal-test", cmd_ideal_test, "test whether a span is an ideal")
    p.add_argument("--vectors", required=True, help="vectors as 'a,b,c;d,e,f'")
    p = add("quotient", cmd_quotient, "quotient by an ideal")
    p.add_argument("--vectors", required=True, help="ideal generators as 'a,b,c;d,e,f'")
    add("derivations", cmd_derivations, "derivation space Der(A)")
    add("central-derivations", cmd_central_derivations, "central derivations Der_C(A)")
    add("centroid", cmd_centroid, "centroid Gamma(A)")
    p = add("spans", cmd_spans, "span of multiplication operators")
    p.add_argument("--kind", required=True,
                   choices=("L", "R", "S", "T", "LSpan", "RSpan", "SSpan", "TSpan"))
    p = add("subadjacent", cmd_subadjacent, "sub-adjacent 3-Lie algebra")
    p.add_argument("--no-verify", action="store_true", help="skip the input and Filippov checks")
    p = add("filippov", cmd_filippov, "check the Filippov identity of a 3-Lie algebra")
    _limit(p)
    p = add("module-check", cmd_module_check, "check a double module or a 3-Lie module")
    _limit(p)
    p = add("semidirect", cmd_semidirect, "semidirect product A x| V")
    _limit(p)
    add("dual", cmd_dual, "dual double module on V*")
    p = add("cocycle-check", cmd_cocycle_check, "check the cocycle identities")
    _limit(p)
    p.add_argument("--index", type=int, help="cocycle of a cocycle-space output to use (1-based)")
    add("cocycle-space", cmd_cocycle_space, "basis of the cocycle space")
    p = add("extend", cmd_extend, "double extension A + A* by a cocycle (zero for a bare algebra)")
    p.add_argument("--index", type=int, help="cocycle of a cocycle-space output to use (1-based)")
    p = add("generate", cmd_generate, "generate verified random algebras", input_flag=False)
    _gen_flags(p)
    p = add("harness", cmd_harness, "run a registered property over generated algebras",
            input_flag=False)
    _gen_flags(p)
    p.add_argument("--property", default="all", help="property id or 'all'")
    # let other algebra-reading commands pick from generate output too
    for name in ("product", "derived", "center", "ideal-test", "quotient", "derivations",
                 "central-derivations", "centroid", "spans", "subadjacent", "cocycle-space"):
        sub.choices[name].add_argument("--index", type=int,
                                       help="entry of a generate output to use (1-based)")
    return parser


def _emit(out: Outcome, args) -> None:
    if args.format == "json":
        text = dumps(out.payload)
    else:
        text = "\n".join(out.text) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
        _emit(out, args)
    except (UsageError, SchemaError, DimensionError) as exc:
        print(f"triad {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"triad {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return out.status


def main() -> None:
    sys.exit(run())


__all__ = ["build_parser", "main", "run"]
