"""JSON file formats for algebras, extensions, Lie data and subspaces.

Rationals are written as canonical ``"p/q"`` or ``"p"`` strings and every
file is dumped with sorted keys, so equal objects give identical bytes.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .extension import DoubleExtensionData, HComponent, QuadraticLieData, build_double_extension
from .graded import EvenSkewForm, SuperSpace, require_valid
from .linalg import Subspace, format_fraction, to_fraction
from .nary import MultiplicationTable, NAryAlgebra, algebra_from_table
from .report import Report
from .superpoly import SuperPolynomial

FORMAT_VERSION = 1


class InputError(ValueError):
    """A file does not match its schema."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from e


def write_json(obj: Any, path) -> None:
    Path(path).write_text(dumps(obj))


# -- scalars, vectors, polynomials -------------------------------------------------


def _rational(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: expected a rational string, got {x!r}")
    try:
        return to_fraction(x)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{where}: malformed rational {x!r}") from e


def _vector(v, length: int, where: str):
    if not isinstance(v, list) or len(v) != length:
        raise InputError(f"{where}: expected a list of {length} rationals")
    return tuple(_rational(x, where) for x in v)


def _matrix(m, rows: int, cols: int, where: str):
    if not isinstance(m, list) or len(m) != rows:
        raise InputError(f"{where}: expected {rows} rows")
    return tuple(_vector(r, cols, where) for r in m)


def _count(data: dict, key: str, where: str, minimum: int = 0) -> int:
    v = data.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise InputError(f"{where}: '{key}' must be an integer >= {minimum}")
    return v


def _indices(v, d: int, where: str) -> tuple[int, ...]:
    if not isinstance(v, list) or any(isinstance(i, bool) or not isinstance(i, int) for i in v):
        raise InputError(f"{where}: expected a list of indices")
    if any(not 0 <= i < d for i in v):
        raise InputError(f"{where}: index out of range in {v}")
    return tuple(v)


def vector_to_json(v) -> list[str]:
    return [format_fraction(x) for x in v]


def matrix_to_json(m) -> list[list[str]]:
    return [vector_to_json(r) for r in m]


def polynomial_to_json(p: SuperPolynomial) -> list[dict]:
    return [{"mono": list(m), "coeff": format_fraction(c)} for m, c in p]


def polynomial_from_json(terms, space: SuperSpace, where: str) -> SuperPolynomial:
    if not isinstance(terms, list):
        raise InputError(f"{where}: expected a list of monomial records")
    out = SuperPolynomial.zero(space)
    for k, rec in enumerate(terms):
        if not isinstance(rec, dict) or "mono" not in rec or "coeff" not in rec:
            raise InputError(f"{where}[{k}]: records need 'mono' and 'coeff'")
        mono = _indices(rec["mono"], space.dim, f"{where}[{k}]")
        out = out + SuperPolynomial.monomial(space, mono, _rational(rec["coeff"], f"{where}[{k}]"))
    return out


def table_to_json(t: MultiplicationTable) -> list[dict]:
    return [{"args": list(k), "value": vector_to_json(v)} for k, v in sorted(t.entries.items())]


def table_from_json(records, space: SuperSpace, arity: int, where: str) -> MultiplicationTable:
    if not isinstance(records, list):
        raise InputError(f"{where}: expected a list of table records")
    entries = {}
    for k, rec in enumerate(records):
        if not isinstance(rec, dict) or "args" not in rec or "value" not in rec:
            raise InputError(f"{where}[{k}]: records need 'args' and 'value'")
        args = _indices(rec["args"], space.dim, f"{where}[{k}]")
        if len(args) != arity:
            raise InputError(f"{where}[{k}]: expected {arity} arguments")
        if args in entries:
            raise InputError(f"{where}[{k}]: duplicate tuple {args}")
        entries[args] = _vector(rec["value"], space.dim, f"{where}[{k}]")
    return MultiplicationTable(space, arity, entries)


# -- algebras -------------------------------------------------------------------------


def algebra_to_dict(alg: NAryAlgebra) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "dim_even": alg.space.dim_even,
        "dim_odd": alg.space.dim_odd,
        "arity": alg.arity,
        "form": matrix_to_json(alg.form.matrix),
        "potential": polynomial_to_json(alg.potential),
    }


def algebra_from_dict(data: Any, where: str = "algebra") -> tuple[NAryAlgebra, Report]:
    """Parse an algebra record; the report notes a table-to-potential conversion."""
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    if data.get("format_version", FORMAT_VERSION) != FORMAT_VERSION:
        raise InputError(f"{where}: unsupported format_version {data.get('format_version')!r}")
    sp = SuperSpace(_count(data, "dim_even", where), _count(data, "dim_odd", where))
    n = _count(data, "arity", where, minimum=1)
    if "form" not in data:
        raise InputError(f"{where}: missing 'form'")
    form = require_valid(EvenSkewForm(sp, _matrix(data["form"], sp.dim, sp.dim, f"{where}.form")))
    has_pot, has_tab = "potential" in data, "table" in data
    if has_pot == has_tab:
        raise InputError(f"{where}: give exactly one of 'potential' or 'table'")
    rep = Report()
    if has_pot:
        lam = polynomial_from_json(data["potential"], sp, f"{where}.potential")
        if not lam.is_homogeneous(n + 1) and not lam.is_zero():
            raise InputError(f"{where}: potential must have degree {n + 1}")
        return NAryAlgebra(sp, form, n, lam), rep
    table = table_from_json(data["table"], sp, n, f"{where}.table")
    alg = algebra_from_table(form, table)
    rep.add("table converted to a potential", True)
    return alg, rep


def load_algebra(path) -> NAryAlgebra:
    return algebra_from_dict(read_json(path), str(path))[0]


def save_algebra(alg: NAryAlgebra, path) -> None:
    write_json(algebra_to_dict(alg), path)


# -- extensions --------------------------------------------------------------------------


def hcomponent_to_dict(h: HComponent) -> dict:
    return {"dim_even": h.space.dim_even, "dim_odd": h.space.dim_odd, "nu_table": table_to_json(h.table())}


def psi_to_json(psi) -> list[dict]:
    return [{"i": k, "terms": polynomial_to_json(p)} for k, p in enumerate(psi, start=1) if not p.is_zero()]


def extension_to_dict(ext: DoubleExtensionData) -> dict:
    return {"g": algebra_to_dict(ext.g), "h": hcomponent_to_dict(ext.h), "psi": psi_to_json(ext.psi)}


def extension_from_dict(data: Any, where: str = "extension") -> DoubleExtensionData:
    if not isinstance(data, dict) or "g" not in data or "h" not in data:
        raise InputError(f"{where}: expected an object with 'g' and 'h'")
    g, _ = algebra_from_dict(data["g"], f"{where}.g")
    n = g.arity
    hd = data["h"]
    if not isinstance(hd, dict):
        raise InputError(f"{where}.h: expected an object")
    hs = SuperSpace(_count(hd, "dim_even", f"{where}.h"), _count(hd, "dim_odd", f"{where}.h"))
    table = table_from_json(hd.get("nu_table", []), hs, n, f"{where}.h.nu_table")
    h = HComponent.from_table(table)
    amb = SuperSpace(g.space.dim_even + 2 * hs.dim_even, g.space.dim_odd + 2 * hs.dim_odd)
    psi: list[SuperPolynomial | None] = [None] * (n + 1)
    records = data.get("psi", [])
    if not isinstance(records, list):
        raise InputError(f"{where}.psi: expected a list")
    for k, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise InputError(f"{where}.psi[{k}]: expected an object")
        i = _count(rec, "i", f"{where}.psi[{k}]", minimum=1)
        if i > n + 1:
            raise InputError(f"{where}.psi[{k}]: i must be at most {n + 1}")
        p = polynomial_from_json(rec.get("terms", []), amb, f"{where}.psi[{k}].terms")
        psi[i - 1] = p if psi[i - 1] is None else psi[i - 1] + p
    return build_double_extension(g, h, psi)


def load_extension(path) -> DoubleExtensionData:
    return extension_from_dict(read_json(path), str(path))


# -- Lie data and subspaces -----------------------------------------------------------


def lie_from_dict(data: Any, where: str = "lie") -> QuadraticLieData:
    """``{"dim": m, "brackets": [{"args": [i, j], "value": [...]}], "B": [[...]]}``."""
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    m = _count(data, "dim", where)
    brackets = {}
    for k, rec in enumerate(data.get("brackets", [])):
        if not isinstance(rec, dict) or "args" not in rec or "value" not in rec:
            raise InputError(f"{where}.brackets[{k}]: records need 'args' and 'value'")
        args = _indices(rec["args"], m, f"{where}.brackets[{k}]")
        if len(args) != 2:
            raise InputError(f"{where}.brackets[{k}]: a bracket takes two arguments")
        brackets[args] = _vector(rec["value"], m, f"{where}.brackets[{k}]")
    if "B" not in data:
        raise InputError(f"{where}: missing 'B'")
    return QuadraticLieData.from_brackets(m, brackets, _matrix(data["B"], m, m, f"{where}.B"))


def lie_to_dict(l: QuadraticLieData) -> dict:
    recs = [{"args": [i, j], "value": vector_to_json(l.brackets[i][j])}
            for i in range(l.dim) for j in range(i + 1, l.dim) if any(l.brackets[i][j])]
    out = {"dim": l.dim, "brackets": recs}
    if l.B is not None:
        out["B"] = matrix_to_json(l.B)
    return out


def subspace_from_dict(data: Any, d: int, where: str = "subspace") -> Subspace:
    """``{"basis": [[...], ...]}`` or ``{"coordinates": [i, ...]}``."""
    if isinstance(data, dict) and "coordinates" in data:
        return Subspace.coordinate(d, _indices(data["coordinates"], d, where))
    if not isinstance(data, dict) or not isinstance(data.get("basis"), list):
        raise InputError(f"{where}: expected 'basis' or 'coordinates'")
    return Subspace.span(d, [_vector(v, d, where) for v in data["basis"]])


def subspace_to_dict(s: Subspace) -> dict:
    return {"basis": matrix_to_json(s.basis)}
