"""JSON forms of algebras, modules, cocycles, map spaces and reports.

Files use 1-based basis indices and rationals as strings ("3", "-1/2").
Output is canonical: fixed key order, entries sorted by index, zero entries
omitted, so equal objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import AlgebraError, AxiomReport, ThreeAlgebra, Violation
from .exactlin import Matrix, format_rational, parse_rational
from .lie_bridge import LieModule, ThreeLieAlgebra
from .maps import MapSpace
from .reps_ext import Cocycle, DoubleModule


class SchemaError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    """Parse JSON; errors carry line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# --------------------------------------------------------------------------- #
# Scalars and vectors


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{where}: expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a rational string, got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _index(value, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: index must be an integer, got {value!r}")
    if not 1 <= value <= n:
        raise SchemaError(f"{where}: index {value} outside 1..{n}")
    return value - 1


def _dim(obj: dict, key: str = "dim") -> int:
    d = obj.get(key)
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise SchemaError(f"'{key}' must be a non-negative integer")
    return d


def _require(obj, keys, what: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    for k in keys:
        if k not in obj:
            raise SchemaError(f"{what} is missing '{k}'")


def vector_out(v) -> dict:
    return {str(l + 1): format_rational(x) for l, x in enumerate(v) if x}


def vector_in(out, n: int, where: str) -> tuple:
    if not isinstance(out, dict):
        raise SchemaError(f"{where}: 'out' must be an object")
    vec = [Fraction(0)] * n
    for key, val in out.items():
        try:
            idx = int(key)
        except ValueError:
            raise SchemaError(f"{where}: bad basis index {key!r}") from None
        vec[_index(idx, n, where)] += _rational(val, where)
    return tuple(vec)


def matrix_out(M: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in M.rows]


def matrix_in(rows, m: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != m:
        raise SchemaError(f"{where}: matrix must have {m} rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise SchemaError(f"{where}: row {r + 1} must have {m} entries")
        out.append([_rational(x, where) for x in row])
    return Matrix.from_rows(out, m)


# --------------------------------------------------------------------------- #
# Algebras


def _triples_out(products) -> list:
    out = []
    for t, v in products:
        entry = {"i": t[0] + 1, "j": t[1] + 1, "k": t[2] + 1, "out": vector_out(v)}
        out.append(entry)
    return out


def algebra_to_json(A: ThreeAlgebra) -> dict:
    obj: dict = {"dim": A.dim}
    if A.label:
        obj["label"] = A.label
    obj["products"] = _triples_out(A.products)
    return obj


def _triples_in(obj: dict, n: int, what: str) -> dict:
    entries = obj.get("products", [])
    if not isinstance(entries, list):
        raise SchemaError(f"{what}: 'products' must be a list")
    got: dict = {}
    for entry in entries:
        _require(entry, ("i", "j", "k", "out"), "product entry")
        where = f"triple ({entry['i']},{entry['j']},{entry['k']})"
        t = tuple(_index(entry[c], n, where) for c in ("i", "j", "k"))
        vec = vector_in(entry["out"], n, where)
        if t in got and got[t] != vec:
            raise SchemaError(f"{where}: listed twice with different values")
        got[t] = vec
    return got


def algebra_from_json(obj: Any) -> ThreeAlgebra:
    _require(obj, ("dim",), "algebra")
    if obj.get("skew") == "full":
        raise SchemaError("this is a 3-Lie algebra file (skew: full), not a 3-algebra")
    n = _dim(obj)
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("'label' must be a string")
    got = _triples_in(obj, n, "algebra")
    try:
        return ThreeAlgebra.from_products(n, got, label)
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None


def lie_to_json(L: ThreeLieAlgebra) -> dict:
    obj: dict = {"dim": L.dim, "skew": "full"}
    if L.label:
        obj["label"] = L.label
    obj["products"] = _triples_out(L.brackets)
    return obj


def lie_from_json(obj: Any) -> ThreeLieAlgebra:
    _require(obj, ("dim",), "3-Lie algebra")
    if obj.get("skew") != "full":
        raise SchemaError("3-Lie algebra files need \"skew\": \"full\"")
    n = _dim(obj)
    got = _triples_in(obj, n, "3-Lie algebra")
    try:
        return ThreeLieAlgebra.from_brackets(n, got, obj.get("label"))
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None


# --------------------------------------------------------------------------- #
# Modules and cocycles


def _pairs_out(pairs) -> list:
    return [{"i": i + 1, "j": j + 1, "matrix": matrix_out(M)} for (i, j), M in pairs]


def _pairs_in(entries, n: int, m: int, name: str) -> dict:
    if not isinstance(entries, list):
        raise SchemaError(f"'{name}' must be a list")
    got: dict = {}
    for entry in entries:
        _require(entry, ("i", "j", "matrix"), f"{name} entry")
        where = f"{name} pair ({entry['i']},{entry['j']})"
        key = (_index(entry["i"], n, where), _index(entry["j"], n, where))
        M = matrix_in(entry["matrix"], m, where)
        if key in got and got[key] != M:
            raise SchemaError(f"{where}: listed twice with different values")
        got[key] = M
    return got


def module_to_json(dm: DoubleModule) -> dict:
    return {
        "algebra": algebra_to_json(dm.algebra),
        "vdim": dm.vdim,
        "phi": _pairs_out(dm.phi),
        "psi": _pairs_out(dm.psi),
    }


def module_from_json(obj: Any) -> DoubleModule:
    _require(obj, ("algebra", "vdim"), "double module")
    A = algebra_from_json(obj["algebra"])
    m = _dim(obj, "vdim")
    phi = _pairs_in(obj.get("phi", []), A.dim, m, "phi")
    psi = _pairs_in(obj.get("psi", []), A.dim, m, "psi")
    try:
        return DoubleModule.build(A, m, phi, psi)
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None


def lie_module_to_json(M: LieModule) -> dict:
    return {"algebra": lie_to_json(M.algebra), "vdim": M.vdim, "rho": _pairs_out(M.rho)}


def lie_module_from_json(obj: Any) -> LieModule:
    _require(obj, ("algebra", "vdim", "rho"), "3-Lie module")
    L = lie_from_json(obj["algebra"])
    m = _dim(obj, "vdim")
    rho = _pairs_in(obj["rho"], L.dim, m, "rho")
    try:
        return LieModule.from_pairs(L, m, rho)
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None


def cocycle_to_json(c: Cocycle) -> dict:
    return {"algebra": algebra_to_json(c.algebra), "theta": _triples_out(c.theta)}


def cocycle_from_json(obj: Any) -> Cocycle:
    _require(obj, ("algebra", "theta"), "cocycle")
    A = algebra_from_json(obj["algebra"])
    got = _triples_in({"products": obj["theta"]}, A.dim, "cocycle")
    try:
        return Cocycle.build(A, got)
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None


def mapspace_to_json(S: MapSpace) -> dict:
    return {"kind": S.kind, "algebra_dim": S.n, "dim": S.dim,
            "basis": [matrix_out(M) for M in S.basis]}


# --------------------------------------------------------------------------- #
# Reports


def _value_out(v):
    if isinstance(v, Matrix):
        return matrix_out(v)
    return [format_rational(x) for x in v]


def violation_to_json(v: Violation) -> dict:
    return {"axiom": v.axiom, "witness": list(v.labels),
            "lhs": _value_out(v.lhs), "rhs": _value_out(v.rhs)}


def report_to_json(rep: AxiomReport) -> dict:
    return {
        "passed": rep.passed,
        "checked": list(rep.checked),
        "violations": [violation_to_json(v) for v in rep.violations],
        "truncated": rep.truncated,
    }
