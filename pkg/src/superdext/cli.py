"""Command line interface.

Exit status: 0 when every check passes or the value was computed, 1 when a
mathematical check fails (a witness is printed), 2 on input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .decompose import DecompositionError, NotApplicable, decompose_along_ideal, decompose_solvable_step
from .extension import (
    DoubleExtensionData,
    StratumError,
    derivation_report,
    encode_quadratic_lie,
    extension_obstructions,
    invariant_derivations,
    master_equation_holds,
    medina_revoy_check,
)
from .graded import FormError, validate_even_skew_form
from .io import (
    InputError,
    algebra_from_dict,
    algebra_to_dict,
    extension_from_dict,
    hcomponent_to_dict,
    lie_from_dict,
    matrix_to_json,
    psi_to_json,
    read_json,
    subspace_from_dict,
    subspace_to_dict,
    write_json,
)
from .linalg import format_fraction, unit
from .nary import (
    InconsistentTable,
    check_commutative,
    check_invariant,
    derived_series,
    is_solvable,
)
from .report import Report

OK, FAILED, BAD_INPUT = 0, 1, 2


def fmt_vector(v) -> str:
    return "(" + ", ".join(format_fraction(x) for x in v) + ")"


def _load_algebra(path):
    return algebra_from_dict(read_json(path), str(path))


def _load_algebra_or_extension(path):
    data = read_json(path)
    if isinstance(data, dict) and "g" in data:
        return extension_from_dict(data, str(path)).ambient
    return algebra_from_dict(data, str(path))[0]


def _finish(rep: Report) -> int:
    print(rep.render(), end="")
    return OK if rep.ok else FAILED


# -- subcommands ------------------------------------------------------------------


def cmd_verify(args) -> int:
    alg, rep = _load_algebra(args.algebra)
    form_rep = validate_even_skew_form(alg.form)
    rep.add("form is even, skew-symmetric and non-degenerate", form_rep.ok, detail="; ".join(form_rep.violations))
    rep.extend(check_commutative(alg))
    rep.extend(check_invariant(alg))
    return _finish(rep)


def cmd_product(args) -> int:
    alg, _ = _load_algebra(args.algebra)
    try:
        idx = [int(x) for x in args.args.split(",")]
    except ValueError as e:
        raise InputError(f"--args must be comma-separated indices, got {args.args!r}") from e
    if len(idx) != alg.arity:
        raise InputError(f"--args needs {alg.arity} indices")
    if any(not 0 <= i < alg.dim for i in idx):
        raise InputError("index out of range")
    print(fmt_vector(alg.evaluate([unit(alg.dim, i) for i in idx])))
    return OK


def cmd_potential(args) -> int:
    alg, rep = _load_algebra(args.algebra)
    print(rep.render(), end="")
    print(f"potential: {alg.potential!r}")
    if args.output:
        write_json(algebra_to_dict(alg), args.output)
    return OK


def cmd_extend(args) -> int:
    ext = extension_from_dict(read_json(args.extension), str(args.extension))
    write_json(algebra_to_dict(ext.ambient), args.output)
    print(f"ambient potential: {ext.ambient.potential!r}")
    return _finish(ext.report)


def _write_decomposition(ext: DoubleExtensionData, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    write_json(algebra_to_dict(ext.g), out / "g.json")
    write_json(dict(hcomponent_to_dict(ext.h), arity=ext.arity), out / "h.json")
    write_json(psi_to_json(ext.psi), out / "psi.json")
    write_json({
        "adapted_basis": matrix_to_json(ext.adapted_basis),
        "layout": {"g": ext.layout.indices(0), "h": ext.layout.indices(1), "h_dual": ext.layout.indices(2)},
    }, out / "grading.json")
    (out / "report.txt").write_text(ext.report.render())


def _print_components(ext: DoubleExtensionData) -> None:
    print(f"mu: {ext.g.potential!r}")
    print(f"nu: {ext.h.nu!r}")
    for k, p in enumerate(ext.psi, start=1):
        print(f"psi_{k}: {p!r}")


def cmd_decompose(args) -> int:
    alg, _ = _load_algebra(args.algebra)
    i = subspace_from_dict(read_json(args.ideal), alg.dim, str(args.ideal))
    try:
        ext = decompose_along_ideal(alg, i)
    except DecompositionError as e:
        print(f"[FAIL] decomposition: {e}")
        return FAILED
    _write_decomposition(ext, Path(args.output))
    _print_components(ext)
    return _finish(ext.report)


def cmd_decompose_solvable(args) -> int:
    alg, _ = _load_algebra(args.algebra)
    ext = decompose_solvable_step(alg)
    if isinstance(ext, NotApplicable):
        print(ext.report.render(), end="")
        print(f"not applicable: {ext.reason}")
        return FAILED
    _write_decomposition(ext, Path(args.output))
    write_json(subspace_to_dict(ext.ideal_in_original()), Path(args.output) / "ideal.json")
    _print_components(ext)
    return _finish(ext.report)


def cmd_derived_series(args) -> int:
    alg = _load_algebra_or_extension(args.algebra)
    for k, s in enumerate(derived_series(alg)):
        basis = ", ".join(fmt_vector(b) for b in s.basis)
        print(f"a^({k}): dim {s.dim}" + (f" [{basis}]" if s.dim else ""))
    ok, K = is_solvable(alg)
    print(f"solvable K={K}" if ok else "not solvable")
    return OK


def cmd_ider(args) -> int:
    alg = _load_algebra_or_extension(args.algebra)
    basis = invariant_derivations(alg)
    print(f"dimension {len(basis)}")
    rep = Report()
    for k, w in enumerate(basis):
        print(f"w_{k}: {w!r}")
        rep.extend(derivation_report(alg, w), prefix=f"w_{k}: ")
    return _finish(rep)


def cmd_encode_lie(args) -> int:
    lie = lie_from_dict(read_json(args.lie), str(args.lie))
    rep = lie.validate()
    if not rep.ok:
        return _finish(rep)
    alg = encode_quadratic_lie(lie)
    write_json(algebra_to_dict(alg), args.output)
    print(f"potential: {alg.potential!r}")
    return _finish(rep)


def cmd_master_check(args) -> int:
    data = read_json(args.algebra)
    rep = Report()
    if isinstance(data, dict) and "g" in data:
        ext = extension_from_dict(data, str(args.algebra))
        alg = ext.ambient
        obs = extension_obstructions(ext)
        rep.extend(obs.report)
        rep.add("O1 = [mu, psi] = 0", obs.o1.is_zero(), _first_mono(obs.o1))
        rep.add("O2 = 2[psi, nu] + [psi, psi] = 0", obs.o2.is_zero(), _first_mono(obs.o2))
    else:
        alg = algebra_from_dict(data, str(args.algebra))[0]
    if alg.arity != 2 or alg.space.dim_even:
        raise InputError("master-check needs a binary algebra on a purely odd space")
    holds, witness = master_equation_holds(alg)
    rep.add("[L, L] = 0", holds)
    rep.add("Jacobi identity on basis triples", witness is None, witness)
    return _finish(rep)


def _first_mono(p):
    return None if p.is_zero() else next(iter(p))[0]


def cmd_mr_check(args) -> int:
    ext = extension_from_dict(read_json(args.extension), str(args.extension))
    if ext.arity != 2 or ext.layout.space.dim_even:
        raise InputError("mr-check needs a binary extension on a purely odd space")
    rep = Report()
    holds, witness = master_equation_holds(ext.ambient)
    rep.add("[L, L] = 0", holds, witness)
    rep.extend(medina_revoy_check(ext))
    return _finish(rep)


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superdext", description="Exact computations with n-ary quadratic superalgebras.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("verify", cmd_verify, "check the form, commutativity and invariance").add_argument("algebra")
    sp = add("product", cmd_product, "evaluate a product of basis vectors")
    sp.add_argument("algebra")
    sp.add_argument("--args", required=True, help="comma-separated basis indices")
    sp = add("potential", cmd_potential, "print the potential, converting a table if needed")
    sp.add_argument("algebra")
    sp.add_argument("-o", "--output", help="write the algebra in potential form")
    sp = add("extend", cmd_extend, "assemble a generalized double extension")
    sp.add_argument("extension")
    sp.add_argument("-o", "--output", required=True)
    sp = add("decompose", cmd_decompose, "decompose along a given ideal")
    sp.add_argument("algebra")
    sp.add_argument("--ideal", required=True, help="JSON file with 'basis' or 'coordinates'")
    sp.add_argument("-o", "--output", required=True, help="output directory")
    sp = add("decompose-solvable", cmd_decompose_solvable, "decompose along a codimension-one ideal")
    sp.add_argument("algebra")
    sp.add_argument("-o", "--output", required=True, help="output directory")
    add("derived-series", cmd_derived_series, "print the derived series").add_argument("algebra")
    add("ider", cmd_ider, "basis of the invariant derivations").add_argument("algebra")
    sp = add("encode-lie", cmd_encode_lie, "encode a quadratic Lie algebra as a binary algebra")
    sp.add_argument("lie")
    sp.add_argument("-o", "--output", required=True)
    add("master-check", cmd_master_check, "check [L, L] = 0 for a binary odd algebra").add_argument("algebra")
    add("mr-check", cmd_mr_check, "compare the Medina-Revoy and derived-bracket tables").add_argument("extension")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InconsistentTable as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except (InputError, FormError, StratumError, ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
