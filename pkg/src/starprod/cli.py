"""Command-line interface.

Subcommands: emit, classify, quantize, symbol, reconstruct, kernel,
intertwine, verify.  Exit codes: 0 success, 1 failed check or precondition,
2 malformed input.  Every human-readable analysis is mirrored by a
machine-readable JSON report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

import numpy as np

from . import __version__
from .catalog import (
    default_fiducial,
    livine_scheme,
    matrix_units_scheme,
    mub_prime_scheme,
    mub_qubit_scheme,
    pauli_scheme,
    random_minimal_povm_scheme,
    sic_qubit_scheme,
    wh_sic_scheme,
)
from .errors import (
    DimensionMismatchError,
    LengthMismatchError,
    NotSquareLengthError,
    SchemeParseError,
    StarProdError,
    UnknownSchemeError,
    WrongCountError,
)
from .matrixcore import ToleranceConfig
from .operator_space import VectorizationBasis, pauli_basis
from .scheme import (
    Scheme,
    canonical_quantizers,
    classify,
    completeness_residual,
    gauge_quantizers,
    with_canonical_quantizers,
)
from .serialization import (
    json_to_matrix,
    load_operator,
    load_scheme,
    load_vector,
    matrix_to_json,
    report_to_json,
    save_kernel,
    save_operator,
    save_scheme,
    save_vector,
    tolerances_to_json,
    vector_to_json,
)
from .star_product import (
    associativity_residual,
    intertwiner,
    reconstruct,
    star_kernel,
    symbol,
)
from .verification import run_battery

_INPUT_ERRORS = (
    SchemeParseError,
    UnknownSchemeError,
    DimensionMismatchError,
    LengthMismatchError,
    NotSquareLengthError,
    WrongCountError,
    OSError,
)


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rank-tol", type=float, default=1e-10)
    parser.add_argument("--residual-tol", type=float, default=1e-10)
    parser.add_argument("--eig-tol", type=float, default=1e-10)


def _add_basis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--basis", choices=("rowstacking", "pauli"), default="rowstacking"
    )
    parser.add_argument(
        "--basis-file", help="JSON file with an explicit orthonormal operator basis"
    )


def _tolerances(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        rank_tol=args.rank_tol, residual_tol=args.residual_tol, eig_tol=args.eig_tol
    )


def _basis(args: argparse.Namespace, d: int, tol: ToleranceConfig) -> VectorizationBasis:
    if getattr(args, "basis_file", None):
        with open(args.basis_file) as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemeParseError(f"{args.basis_file}: invalid JSON ({exc})") from exc
        if not isinstance(payload, dict) or "operators" not in payload:
            raise SchemeParseError(
                f"{args.basis_file}: expected an object with an 'operators' field"
            )
        ops = np.stack(
            [
                json_to_matrix(entry, where=f"{args.basis_file}: operators[{i}]")
                for i, entry in enumerate(payload["operators"])
            ]
        )
        basis = VectorizationBasis.orthonormal(ops, tag=args.basis_file, tol=tol)
    elif args.basis == "pauli":
        basis = pauli_basis()
    else:
        return VectorizationBasis.row_stacking(d)
    if basis.d != d:
        raise DimensionMismatchError(
            f"basis dimension d={basis.d} does not match scheme dimension d={d}"
        )
    return basis


def _write_report(path: str, payload: dict[str, Any]) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    print(f"report written to {path}")


def _report_skeleton(tol: ToleranceConfig) -> dict[str, Any]:
    return {"tool": "starprod", "version": __version__, "tolerances": tolerances_to_json(tol)}


def cmd_emit(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    name = args.scheme_name
    if name == "matrix-units":
        s = matrix_units_scheme(args.d)
    elif name == "pauli":
        variant = "with_i_sigma_y" if args.variant == "with-i-sigma-y" else "hermitian"
        s = pauli_scheme(variant)
    elif name == "livine":
        normalization = args.normalization or "dequantizer"
        s = livine_scheme(normalization.replace("-", "_"))
    elif name == "sic-qubit":
        s = sic_qubit_scheme(args.normalization or "projector")
    elif name == "mub-qubit":
        s = mub_qubit_scheme()
    elif name == "wh-sic":
        fid = load_vector(args.fiducial) if args.fiducial else default_fiducial(args.d)
        s = wh_sic_scheme(args.d, fid, tol)
    elif name == "mub-prime":
        s = mub_prime_scheme(args.p)
    elif name == "random-povm":
        s = random_minimal_povm_scheme(args.d, args.seed, tol)
    else:
        raise UnknownSchemeError(f"unknown built-in scheme {name!r}")
    save_scheme(s, args.output)
    print(f"wrote {s.name} (d={s.d}, N={s.n_points}) to {args.output}")
    return 0


def _format_human(report_data: dict[str, Any], scheme_name: str, d: int, n: int) -> str:
    lines = [f"scheme: {scheme_name} (d={d}, N={n})"]
    tomo = "tomographic" if report_data["tomographic"] else "not tomographic"
    lines.append(f"{report_data['cardinality']}, {tomo} (rank {report_data['rank']})")
    cond = report_data["condition_number"]
    lines.append(f"condition number: {'inf' if cond is None else format(cond, '.10g')}")
    c = report_data["self_dual_coefficient"]
    if c is not None:
        lines.append(f"self-dual, c = {c:.10g}")
    else:
        lines.append("not self-dual")
    if report_data["scaled_unitary"] is not None:
        lines.append(f"scaled unitary: U^dag U = c I with c = {report_data['scaled_unitary']:.10g}")
    povm = report_data["povm"]
    if povm["is_povm"]:
        lines.append("POVM: yes")
    else:
        lines.append(
            "NOT a POVM (sum residual {:.3g}; hermiticity residual {:.3g}; "
            "min effect eigenvalue {:.6g})".format(
                povm["sum_residual"],
                povm["hermiticity_residual"],
                povm["min_effect_eigenvalue"],
            )
        )
    neg = report_data["negativity"]
    if neg is not None:
        lines.append(
            f"min dequantizer eigenvalue: {neg['min_dequantizer_eigenvalue']:.10g}"
        )
        if neg["min_quantizer_eigenvalue"] is not None:
            lines.append(
                f"min quantizer eigenvalue: {neg['min_quantizer_eigenvalue']:.10g}"
            )
        elif not report_data["tomographic"]:
            lines.append("quantizers undefined")
    elif not report_data["tomographic"]:
        lines.append("quantizers undefined")
    if report_data["matrix_unit_like"] is not None:
        lines.append("matrix-unit-like: yes (rotated matrix units)")
    return "\n".join(lines)


def cmd_classify(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    s = load_scheme(args.scheme)
    basis = _basis(args, s.d, tol)
    report = classify(s, tol, basis)
    data = report_to_json(report)
    print(_format_human(data, s.name or args.scheme, s.d, s.n_points))
    payload = _report_skeleton(tol)
    payload["scheme"] = {"path": args.scheme, "name": s.name, "d": s.d, "n": s.n_points}
    payload["basis"] = basis.tag
    payload["report"] = data
    _write_report(args.report or f"{args.scheme}.report.json", payload)
    return 0


def cmd_quantize(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    s = load_scheme(args.scheme)
    if args.gauge:
        with open(args.gauge) as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemeParseError(f"{args.gauge}: invalid JSON ({exc})") from exc
        if not isinstance(payload, dict) or "matrix" not in payload:
            raise SchemeParseError(f"{args.gauge}: expected an object with a 'matrix' field")
        g_mat = json_to_matrix(payload["matrix"], where=args.gauge)
        qs = gauge_quantizers(s, g_mat, tol)
    else:
        qs = s.quantizers if s.quantizers is not None else canonical_quantizers(s, tol)
    augmented = Scheme(dequantizers=s.dequantizers, quantizers=qs, name=s.name)
    residual = completeness_residual(augmented)
    save_scheme(augmented, args.output)
    print(f"wrote quantized scheme to {args.output}")
    print(f"completeness residual: {residual:.3e}")
    payload = _report_skeleton(tol)
    payload["completeness_residual"] = residual
    payload["gauge"] = args.gauge
    _write_report(args.report or f"{args.output}.report.json", payload)
    return 0


def cmd_symbol(args: argparse.Namespace) -> int:
    s = load_scheme(args.scheme)
    a = load_operator(args.operator)
    f = symbol(s, a)
    save_vector(f, args.output, scheme=s.name)
    print(f"wrote symbol vector (N={f.size}) to {args.output}")
    return 0


def cmd_reconstruct(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    s = load_scheme(args.scheme)
    f = load_vector(args.symbol)
    if s.quantizers is None:
        s = with_canonical_quantizers(s, tol)
    a = reconstruct(s, f)
    save_operator(a, args.output)
    print(f"wrote reconstructed operator ({s.d}x{s.d}) to {args.output}")
    return 0


def cmd_kernel(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    s = with_canonical_quantizers(load_scheme(args.scheme), tol)
    kernel = star_kernel(s)
    residual = associativity_residual(kernel) if args.assoc_check else None
    save_kernel(s.d, kernel.values, args.output, assoc_residual=residual)
    print(
        f"wrote kernel tensor ({kernel.n_points}^3 entries) to {args.output}"
    )
    if residual is not None:
        print(f"associativity residual: {residual:.3e}")
    return 0


def cmd_intertwine(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    s_a = load_scheme(args.scheme_a)
    s_b = load_scheme(args.scheme_b)
    a = load_operator(args.operator)
    pair = intertwiner(s_a, s_b, tol)
    f_a = symbol(s_a, a)
    roundtrip = pair.backward @ (pair.forward @ f_a)
    residual = float(np.abs(roundtrip - f_a).max())
    with np.printoptions(precision=6, suppress=True):
        print("forward kernel (source -> target):")
        print(pair.forward)
        print("backward kernel (target -> source):")
        print(pair.backward)
    print(f"symbol round-trip residual: {residual:.3e}")
    payload = _report_skeleton(tol)
    payload["forward"] = matrix_to_json(pair.forward)
    payload["backward"] = matrix_to_json(pair.backward)
    payload["roundtrip_residual"] = residual
    payload["symbol"] = vector_to_json(f_a)
    _write_report(args.report or "intertwine.report.json", payload)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    results = run_battery(suite=args.suite, seeds=args.seeds, tol=tol)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        numbers = {
            key: value
            for key, value in result.details.items()
            if isinstance(value, (int, float)) and not isinstance(value, bool)
        }
        summary = ", ".join(
            f"{key}={value:.3e}" if isinstance(value, float) else f"{key}={value}"
            for key, value in numbers.items()
        )
        print(f"{status} {result.name} ({summary})")
    payload = _report_skeleton(tol)
    payload["suite"] = args.suite
    payload["checks"] = [
        {"name": r.name, "passed": r.passed, "details": _jsonable(r.details)}
        for r in results
    ]
    all_passed = all(r.passed for r in results)
    payload["passed"] = all_passed
    _write_report(args.report or "verify.report.json", payload)
    return 0 if all_passed else 1


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return None if math.isinf(value) or math.isnan(value) else value
    if isinstance(value, np.integer):
        return int(value)
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starprod",
        description="Operator bases as columns of dequantization matrices: "
        "build, classify, and verify star-product quantization schemes.",
    )
    parser.add_argument("--version", action="version", version=f"starprod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emit", help="write a built-in scheme to a JSON file")
    p.add_argument(
        "scheme_name",
        help="one of: matrix-units, pauli, livine, sic-qubit, mub-qubit, "
        "wh-sic, mub-prime, random-povm",
    )
    p.add_argument("--d", type=int, default=2, help="dimension (matrix-units, wh-sic, random-povm)")
    p.add_argument("--p", type=int, default=3, help="prime dimension (mub-prime)")
    p.add_argument("--seed", type=int, default=0, help="sampler seed (random-povm)")
    p.add_argument("--normalization", help="livine: dequantizer|self-dual-normalized; sic-qubit: projector|povm")
    p.add_argument("--variant", choices=("hermitian", "with-i-sigma-y"), default="hermitian")
    p.add_argument("--fiducial", help="vector JSON file overriding the shipped SIC fiducial")
    p.add_argument("-o", "--output", required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("classify", help="classify a scheme and write a report")
    p.add_argument("scheme")
    p.add_argument("--report")
    _add_basis_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quantize", help="attach canonical or gauge-shifted quantizers")
    p.add_argument("scheme")
    p.add_argument("--gauge", help="JSON file with a d^2 x N gauge matrix under 'matrix'")
    p.add_argument("--report")
    p.add_argument("-o", "--output", required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("symbol", help="compute the symbol vector of an operator")
    p.add_argument("scheme")
    p.add_argument("operator")
    p.add_argument("-o", "--output", required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("reconstruct", help="rebuild an operator from a symbol vector")
    p.add_argument("scheme")
    p.add_argument("symbol")
    p.add_argument("-o", "--output", required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("kernel", help="compute the star-product kernel tensor")
    p.add_argument("scheme")
    p.add_argument("--assoc-check", action="store_true")
    p.add_argument("-o", "--output", required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("intertwine", help="intertwining kernels between two schemes")
    p.add_argument("scheme_a")
    p.add_argument("scheme_b")
    p.add_argument("operator")
    p.add_argument("--report")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_intertwine)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument(
        "--suite", choices=("all", "table", "propositions", "random-povm"), default="all"
    )
    p.add_argument("--seeds", type=int, default=1000, help="sample count for random-povm")
    p.add_argument("--report")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StarProdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
