"""Command-line surface.

Subcommands: ``gen`` (matrix generators), ``check`` (classification and
pair certificates), ``report`` (pair invariants), ``realize`` (construct a
pair for a divisor vector), ``sweep`` (realization tables and randomized
property campaigns), ``verify`` (the identity suite).

Exit codes are a stable contract: 0 success, 1 input error, 2 usage error,
3 invariant/oracle violation, 4 verify-suite failure.  With a fixed seed,
``sweep`` output is byte-identical across runs and across ``--jobs``
settings.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .errors import HadinvError, OracleMismatch
from .groups import GroupStructure, extract_subgroup, realize_subgroup
from .hadamard import (
    DpwForm,
    FourierSpec,
    clock_vec,
    decompose_dpw,
    fourier,
    fourier_tensor,
    is_hadamard,
    perm_matrix,
    perm_phase_certificate,
    shift_vec,
)
from .invariants import modified_entropy, pair_report, realization_sweep
from .linalg import DEFAULT_TOL, ToleranceConfig, classify
from .serialize import (
    dpw_to_obj,
    dumps,
    load_matrix,
    matrix_to_obj,
    report_to_obj,
    subgroup_to_obj,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3
EXIT_VERIFY = 4

ENTROPY_SYMMETRY_TOL = 1e-12
ENTROPY_BOUND_TOL = 1e-9


def _csv_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _csv_complex(text: str) -> tuple[complex, ...]:
    return tuple(complex(part) for part in text.split(","))


def _tolerance(args) -> ToleranceConfig:
    eps = getattr(args, "tolerance", None)
    if eps is None:
        env = os.environ.get("HADINV_TOLERANCE")
        if env:
            eps = float(env)
    if eps is None:
        return DEFAULT_TOL
    return ToleranceConfig(eps_entry=float(eps), eps_rank=DEFAULT_TOL.eps_rank)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tolerance", type=float, default=None, help="override eps_entry")
    sub.add_argument("--format", choices=("json", "text"), default="json")


def cmd_gen(args, tol: ToleranceConfig) -> int:
    spec = FourierSpec.parse(args.spec)
    if args.kind == "fourier":
        if len(spec.orders) != 1:
            raise HadinvError("--kind fourier needs a single-factor --spec")
        matrix = fourier(spec.orders[0])
    elif args.kind == "fourier-tensor":
        matrix = fourier_tensor(spec)
    elif args.kind in ("diag", "shift"):
        if args.k is None:
            raise HadinvError(f"--kind {args.kind} needs --k")
        k = _csv_ints(args.k)
        if len(k) != len(spec.orders):
            raise HadinvError(f"--k must list one power per factor of {spec.orders}")
        matrix = clock_vec(spec, k) if args.kind == "diag" else shift_vec(spec, k)
    else:  # dpw
        if args.perm is None or args.phases is None:
            raise HadinvError("--kind dpw needs --perm and --phases")
        form = DpwForm(spec=spec, perm=_csv_ints(args.perm), phases=_csv_complex(args.phases))
        matrix = form.realize()
    _write(dumps(matrix_to_obj(matrix)), args.out)
    return EXIT_OK


def cmd_check(args, tol: ToleranceConfig) -> int:
    if len(args.paths) > 2:
        raise HadinvError("check takes one matrix (classification) or two (pair certificates)")
    mats = [load_matrix(path) for path in args.paths]
    spec = FourierSpec.parse(args.spec) if args.spec else None

    if len(mats) == 1:
        m = mats[0]
        flags = classify(m, tol)
        obj = {
            "dim": int(m.shape[0]),
            "hadamard": is_hadamard(m, tol),
            "class": {
                "unitary": flags.unitary,
                "diagonal": flags.diagonal,
                "permutation": flags.permutation,
                "complex_permutation": flags.complex_permutation,
                "selfadjoint": flags.selfadjoint,
                "projection": flags.projection,
            },
            "dpw": None,
        }
        if spec is not None and is_hadamard(m, tol):
            try:
                obj["dpw"] = dpw_to_obj(decompose_dpw(m, spec, tol))
            except HadinvError:
                obj["dpw"] = None
    else:
        u, v = mats
        cert = perm_phase_certificate(u, v, tol)
        conjugate = None
        if spec is not None:
            try:
                conjugate = decompose_dpw(u, spec, tol).perm == decompose_dpw(v, spec, tol).perm
            except HadinvError:
                conjugate = None
        obj = {
            "dim": int(u.shape[0]),
            "hadamard": [is_hadamard(u, tol), is_hadamard(v, tol)],
            "equivalent": cert is not None,
            "certificate": None
            if cert is None
            else {
                "perm": [int(p) for p in cert[0]],
                "phases": [[float(z.real), float(z.imag)] for z in cert[1]],
            },
            "conjugate": conjugate,
        }
    _write(dumps(obj), getattr(args, "out", None))
    return EXIT_OK


def _report_text(report) -> str:
    lines = [
        f"N: {report.n}",
        f"spec: {','.join(str(n) for n in report.spec)}",
        f"distinct: {str(report.distinct).lower()}",
        f"conjugate: {str(report.conjugate).lower()}",
        f"dimA: {report.dim_a}",
        "subgroup: "
        + (
            "absent"
            if report.subgroup is None
            else "; ".join(",".join(str(x) for x in m) for m in report.subgroup.sorted_members())
        ),
        f"index: {report.index}",
        f"relcomm_dims: {report.relcomm_dims}",
        f"vertex: {str(report.vertex).lower()}",
        f"entropy_h: {report.entropy_h:.6f}",
        f"entropy_upper: {report.entropy_upper:.6f}",
        f"certified: {str(report.certified).lower()}",
        "flags: " + (",".join(report.flags) if report.flags else "-"),
    ]
    return "\n".join(lines) + "\n"


def cmd_report(args, tol: ToleranceConfig) -> int:
    spec = FourierSpec.parse(args.spec)
    u = load_matrix(args.path_u)
    v = load_matrix(args.path_v)
    report = pair_report(u, v, spec, tol)
    if args.format == "json":
        _write(dumps(report_to_obj(report)), getattr(args, "out", None))
    else:
        _write(_report_text(report), getattr(args, "out", None))
    return EXIT_OK


def cmd_realize(args, tol: ToleranceConfig) -> int:
    spec = FourierSpec.parse(args.spec)
    divisor_vec = _csv_ints(args.divisors)
    u, v = realize_subgroup(spec, divisor_vec, tol)
    subgroup = extract_subgroup(u, v, GroupStructure(spec.orders), tol)
    n = spec.dim
    obj = {
        "spec": list(spec.orders),
        "divisors": list(divisor_vec),
        "subgroup": subgroup_to_obj(subgroup),
        "index": {
            "num": Fraction(n * n, subgroup.size).numerator,
            "den": Fraction(n * n, subgroup.size).denominator,
        },
        "u": matrix_to_obj(u),
        "v": matrix_to_obj(v),
    }
    if args.out_u:
        _write(dumps(matrix_to_obj(u)), args.out_u)
    if args.out_v:
        _write(dumps(matrix_to_obj(v)), args.out_v)
    _write(dumps(obj), getattr(args, "out", None))
    return EXIT_OK


def _sweep_realize_rows(spec: FourierSpec, tol: ToleranceConfig) -> list[dict]:
    rows = []
    for divisor_vec, report in realization_sweep(spec, tol):
        gap = report.entropy_upper - report.entropy_h
        rows.append(
            {
                "divisors": list(divisor_vec),
                "dimA": report.dim_a,
                "index": {"num": report.index.numerator, "den": report.index.denominator},
                "entropy_h": report.entropy_h,
                "entropy_upper": report.entropy_upper,
                "gap": gap,
                "violations": [],
            }
        )
    return rows


def _sweep_random_row(spec: FourierSpec, seed: int, sample: int, tol: ToleranceConfig) -> dict:
    # per-row generator keyed by (seed, sample): identical rows regardless of
    # execution order or worker count
    rng = np.random.default_rng([seed, sample])
    n = spec.dim
    w = fourier_tensor(spec)
    perm = rng.permutation(n)
    phases_u = np.exp(2j * np.pi * rng.random(n))
    phases_v = np.exp(2j * np.pi * rng.random(n))
    extra_diag = np.exp(2j * np.pi * rng.random(n))
    shared = perm_matrix(perm) @ w
    u = np.diag(phases_u) @ shared
    v = np.diag(phases_v) @ shared

    violations: list[str] = []
    row: dict = {
        "sample": sample,
        "perm": [int(p) for p in perm],
        "phases_u": [[float(z.real), float(z.imag)] for z in phases_u],
        "phases_v": [[float(z.real), float(z.imag)] for z in phases_v],
    }
    try:
        report = pair_report(u, v, spec, tol)
    except OracleMismatch as exc:
        row.update({"dimA": None, "index": None, "entropy_h": None, "entropy_upper": None, "gap": None})
        violations.append(f"oracle-mismatch: {exc}")
        row["violations"] = violations
        return row

    h = report.entropy_h
    upper = report.entropy_upper
    row.update(
        {
            "dimA": report.dim_a,
            "index": {"num": report.index.numerator, "den": report.index.denominator},
            "entropy_h": h,
            "entropy_upper": upper,
            "gap": upper - h,
        }
    )
    if "subgroup-not-closed" in report.flags:
        violations.append("subgroup-not-closed")
    if report.conjugate and h > upper + ENTROPY_BOUND_TOL:
        violations.append("entropy-bound")
    if not -1e-12 <= h <= math.log(n) + 1e-12:
        violations.append("entropy-range")
    if abs(modified_entropy(v, u, tol) - h) > ENTROPY_SYMMETRY_TOL:
        violations.append("entropy-symmetry")
    d = np.diag(extra_diag)
    if abs(modified_entropy(d @ u, d @ v, tol) - h) > ENTROPY_SYMMETRY_TOL:
        violations.append("entropy-left-invariance")
    row["violations"] = violations
    return row


def _sweep_text(rows: list[dict], total_violations: int) -> str:
    lines = []
    for row in rows:
        key = (
            f"divisors={','.join(str(d) for d in row['divisors'])}"
            if "divisors" in row
            else f"sample={row['sample']}"
        )
        if row.get("dimA") is None:
            lines.append(f"{key} FAILED {';'.join(row['violations'])}")
            continue
        index = Fraction(row["index"]["num"], row["index"]["den"])
        lines.append(
            f"{key} dimA={row['dimA']} index={index} "
            f"h={row['entropy_h']:.6f} bound={row['entropy_upper']:.6f} "
            f"gap={row['gap']:.6f} violations={len(row['violations'])}"
        )
    lines.append(f"rows={len(rows)} violations={total_violations}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args, tol: ToleranceConfig) -> int:
    spec = FourierSpec.parse(args.spec)
    if args.mode == "realize":
        rows = _sweep_realize_rows(spec, tol)
    else:
        if args.seed is None:
            print("usage error: --mode random needs --seed", file=sys.stderr)
            return EXIT_USAGE
        samples = range(args.samples)
        if args.jobs and args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(lambda i: _sweep_random_row(spec, args.seed, i, tol), samples))
        else:
            rows = [_sweep_random_row(spec, args.seed, i, tol) for i in samples]

    total_violations = sum(len(row["violations"]) for row in rows)
    if args.format == "json":
        obj = {
            "spec": list(spec.orders),
            "mode": args.mode,
            "rows": rows,
            "violations": total_violations,
        }
        if args.mode == "random":
            obj["seed"] = args.seed
            obj["samples"] = args.samples
        _write(dumps(obj), getattr(args, "out", None))
    else:
        _write(_sweep_text(rows, total_violations), getattr(args, "out", None))
    return EXIT_VIOLATION if total_violations else EXIT_OK


def cmd_verify(args, tol: ToleranceConfig) -> int:
    gamma_orders = _csv_ints(args.gamma_orders)
    results = run_verification(max_order=args.max_order, gamma_orders=gamma_orders, tol=tol)
    if args.format == "json":
        obj = [
            {"name": r.name, "passed": r.passed, "max_err": r.max_err, "detail": r.detail}
            for r in results
        ]
        _write(dumps(obj), getattr(args, "out", None))
    else:
        _write("".join(r.line() + "\n" for r in results), getattr(args, "out", None))
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"verify failed: {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadinv",
        description="Invariants of pairs of complex Hadamard matrices over Fourier tensor specs.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a matrix and emit matrix JSON")
    gen.add_argument("--spec", required=True, help="factor orders, e.g. 2,3")
    gen.add_argument(
        "--kind",
        required=True,
        choices=("fourier", "fourier-tensor", "diag", "shift", "dpw"),
    )
    gen.add_argument("--k", default=None, help="power per factor for diag/shift, e.g. 1,2")
    gen.add_argument("--perm", default=None, help="permutation images for dpw, e.g. 0,2,1,3")
    gen.add_argument("--phases", default=None, help="unit phases for dpw, e.g. 1,1j,-1,-1j")
    gen.add_argument("--out", default=None)
    _common_flags(gen)
    gen.set_defaults(func=cmd_gen)

    check = commands.add_parser("check", help="classify matrices / certify pair relations")
    check.add_argument("paths", nargs="+", help="one or two matrix JSON files")
    check.add_argument("--spec", default=None)
    check.add_argument("--out", default=None)
    _common_flags(check)
    check.set_defaults(func=cmd_check)

    report = commands.add_parser("report", help="full invariant report for a pair")
    report.add_argument("path_u")
    report.add_argument("path_v")
    report.add_argument("--spec", required=True)
    report.add_argument("--out", default=None)
    _common_flags(report)
    report.set_defaults(func=cmd_report)

    realize = commands.add_parser("realize", help="construct a pair for a divisor vector")
    realize.add_argument("--spec", required=True)
    realize.add_argument("--divisors", required=True, help="one divisor per factor, e.g. 2,1")
    realize.add_argument("--out", default=None)
    realize.add_argument("--out-u", default=None)
    realize.add_argument("--out-v", default=None)
    _common_flags(realize)
    realize.set_defaults(func=cmd_realize)

    sweep = commands.add_parser("sweep", help="realization table or randomized campaign")
    sweep.add_argument("--spec", required=True)
    sweep.add_argument("--mode", choices=("realize", "random"), default="realize")
    sweep.add_argument("--samples", type=int, default=50)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--jobs", type=int, default=None)
    sweep.add_argument("--out", default=None)
    _common_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    verify = commands.add_parser("verify", help="run the structural identity suite")
    verify.add_argument("--max-order", type=int, default=12)
    verify.add_argument("--gamma-orders", default="2,3,4")
    verify.add_argument("--out", default=None)
    verify.add_argument("--format", choices=("json", "text"), default="text")
    verify.add_argument("--tolerance", type=float, default=None)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tolerance(args)
        return args.func(args, tol)
    except OracleMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except HadinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    raise SystemExit(main())
