"""Command-line front end.

Subcommands: solve, check, extremal, compare, mlf, golden, convergence.
Exit codes: 0 success, 1 validation/parse error, 2 iteration cap hit,
3 condition or conclusion not satisfied, 4 ordering violation.

CSV trace files carry a leading ``# manifest=<digest>`` comment (the
digest is a deterministic hash of the command, inputs and parameters;
no timestamps), then the stable header ``tau,omega,residual``.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    AbcfdeError,
    LexError,
    MaxSweepsExceeded,
    NonConvergence,
    OrderingViolation,
    ParseError,
    ValidationError,
)
from .extremal import bracket_maximal, bracket_minimal
from .mittag_leffler import ml_one, ml_prabhakar, ml_two
from .operators import Grid
from .solver import (
    ProblemSpec,
    check_monotone_quotient,
    estimate_h_norm,
    estimate_lipschitz_f,
    existence_condition,
    load_problem,
    picard_solve,
    rhs_operator,
)
from .verifier import Strictness, golden_identity_check, verify_comparison

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MAX_SWEEPS = 2
EXIT_UNSATISFIED = 3
EXIT_ORDERING = 4


def _fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return format(float(x), ".17g")


def _manifest_digest(command: str, input_digest: str | None, params: dict) -> str:
    lines = [f"command={command}", f"version={__version__}"]
    if input_digest is not None:
        lines.append(f"input_sha256={input_digest}")
    for key in sorted(params):
        lines.append(f"{key}={params[key]}")
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_trace_csv(path: Path, digest: str, taus, omegas, residuals) -> None:
    lines = [f"# manifest={digest}", "tau,omega,residual"]
    for t, w, r in zip(taus, omegas, residuals):
        lines.append(f"{_fmt(t)},{_fmt(w)},{_fmt(r)}")
    path.write_text("\n".join(lines) + "\n")


def _write_summary(path: Path, digest: str, fields: dict) -> None:
    lines = [f"manifest={digest}"]
    for key, value in fields.items():
        lines.append(f"{key}={value}")
    path.write_text("\n".join(lines) + "\n")


def _load(path_str: str) -> tuple[ProblemSpec, str]:
    path = Path(path_str)
    text = path.read_text()
    return load_problem(text), _file_digest(path)


def _default_box(spec: ProblemSpec) -> tuple[float, float]:
    if spec.omega_box is not None:
        return spec.omega_box
    return (spec.omega0 - 1.0, spec.omega0 + 1.0)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(args) -> int:
    spec, in_digest = _load(args.problem)
    grid = Grid(spec.T, args.n)
    digest = _manifest_digest(
        "solve",
        in_digest,
        {"n": args.n, "tol": _fmt(args.tol), "max_sweeps": args.max_sweeps},
    )
    out = Path(args.out)
    summary_path = out.with_suffix(out.suffix + ".summary.txt")
    try:
        trace = picard_solve(spec, grid, tol=args.tol, max_sweeps=args.max_sweeps)
        exit_code = EXIT_OK
    except MaxSweepsExceeded as exc:
        trace = exc.trace
        exit_code = EXIT_MAX_SWEEPS
        print(f"E_MAXSWEEPS: {exc}", file=sys.stderr)

    residuals = np.abs(trace.omega - rhs_operator(spec, trace.omega, grid))
    _write_trace_csv(out, digest, grid.nodes, trace.omega, residuals)

    box = _default_box(spec)
    L_f = estimate_lipschitz_f(spec, box)
    h_norm = estimate_h_norm(spec, box)
    report = existence_condition(spec, L_f, h_norm)
    _write_summary(
        summary_path,
        digest,
        {
            "converged": trace.converged,
            "iterations": trace.iterations,
            "residual_sup": _fmt(trace.residual_sup),
            "last_diff": _fmt(trace.iterate_diffs[-1]),
            "condition_lhs": _fmt(report.lhs),
            "condition_satisfied": report.satisfied,
            "condition_L_f": _fmt(report.L_f),
            "condition_h_norm": _fmt(report.h_norm),
            "condition_M_f": _fmt(report.M_f),
            "condition_R": _fmt(report.R) if report.satisfied else "inf",
            "kernel_convention": report.convention.value,
        },
    )
    print(f"wrote {out} and {summary_path}")
    return exit_code


def _cmd_check(args) -> int:
    spec, _ = _load(args.problem)
    if args.omega_box:
        lo, hi = (float(x) for x in args.omega_box.split(","))
        box = (lo, hi)
    else:
        box = _default_box(spec)
    n_tau, n_omega = (
        (int(x) for x in args.lattice.split(",")) if args.lattice else (21, 41)
    )
    quotient = check_monotone_quotient(spec, box, samples=n_omega, n_tau=n_tau)
    L_f = estimate_lipschitz_f(spec, box, n_tau=n_tau, n_omega=n_omega)
    h_norm = estimate_h_norm(spec, box, n_tau=n_tau, n_omega=n_omega)

    from dataclasses import replace

    from .operators import KernelConvention

    default_report = None
    for conv in (KernelConvention.GAMMA, KernelConvention.PAPER_HYBRID):
        variant = replace(spec, cfg=replace(spec.cfg, kernel_convention=conv))
        report = existence_condition(variant, L_f, h_norm)
        tag = conv.value
        if conv is spec.cfg.kernel_convention:
            default_report = report
            tag += " (default)"
        print(f"[{tag}]")
        print(f"  L_f={_fmt(report.L_f)}")
        print(f"  h_norm={_fmt(report.h_norm)}")
        print(f"  M_f={_fmt(report.M_f)}")
        print(f"  lhs={_fmt(report.lhs)}")
        print(f"  satisfied={report.satisfied}")
        if report.satisfied:
            print(f"  R={_fmt(report.R)}")
            print(f"  R_alt={_fmt(report.R_alt)}")
    print(
        f"quotient_min_slope={_fmt(quotient.min_slope)} "
        f"passed={quotient.passed}"
    )
    if not default_report.satisfied:
        print("E_CONDITION: existence condition not satisfied", file=sys.stderr)
        return EXIT_UNSATISFIED
    return EXIT_OK


def _cmd_extremal(args) -> int:
    spec, in_digest = _load(args.problem)
    grid = Grid(spec.T, args.n)
    digest = _manifest_digest(
        "extremal",
        in_digest,
        {
            "n": args.n,
            "eps0": _fmt(args.eps0),
            "ratio": _fmt(args.ratio),
            "levels": args.levels,
            "minimal": args.minimal,
            "tol": _fmt(args.tol),
        },
    )
    bracket_fn = bracket_minimal if args.minimal else bracket_maximal
    result = bracket_fn(
        spec, eps0=args.eps0, ratio=args.ratio, levels=args.levels,
        grid=grid, tol=args.tol,
    )
    prefix = Path(args.out_prefix)
    for level, (eps, trace) in enumerate(zip(result.eps_levels, result.traces)):
        path = prefix.parent / f"{prefix.name}_level{level}.csv"
        residuals = np.abs(trace.omega - rhs_operator(spec, trace.omega, grid))
        _write_trace_csv(path, digest, grid.nodes, trace.omega, residuals)
    _write_summary(
        prefix.parent / f"{prefix.name}_report.txt",
        digest,
        {
            "kind": "minimal" if args.minimal else "maximal",
            "eps_levels": ",".join(_fmt(e) for e in result.eps_levels),
            "sup_gaps": ",".join(_fmt(g) for g in result.sup_gaps),
            "ordering_ok": result.ordering_ok,
            "first_violation_node": result.first_violation_node,
        },
    )
    if not result.ordering_ok:
        print(
            f"E_ORDERING: traces not monotone across levels "
            f"(first violation at node {result.first_violation_node})",
            file=sys.stderr,
        )
        return EXIT_ORDERING
    print(f"wrote {args.levels} level traces with prefix {prefix}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    spec, _ = _load(args.problem)
    from .expression import Expression

    v_expr = Expression(args.lower, {"tau"})
    w_expr = Expression(args.upper, {"tau"})
    grid = Grid(spec.T, args.n)
    mode = Strictness.NONSTRICT if args.nonstrict else Strictness.STRICT
    report = verify_comparison(
        spec,
        lambda t: v_expr(tau=t),
        lambda t: w_expr(tau=t),
        grid,
        mode=mode,
    )
    print(f"mode={report.strictness.value}")
    print(f"hypothesis_ok={report.hypothesis_ok}")
    print(f"lower_ineq_ok={report.lower_ineq_ok}")
    print(f"upper_ineq_ok={report.upper_ineq_ok}")
    print(f"conclusion_ok={report.conclusion_ok}")
    print(f"slack={_fmt(report.slack)}")
    if report.Lg is not None:
        print(f"Lg={_fmt(report.Lg)} Lg_bound={_fmt(report.Lg_bound)}")
    if not report.conclusion_ok:
        print("E_CONDITION: comparison conclusion does not hold", file=sys.stderr)
        return EXIT_UNSATISFIED
    return EXIT_OK


def _cmd_mlf(args) -> int:
    if args.rho is not None:
        value = ml_prabhakar(args.alpha, args.beta or 1.0, args.rho, args.z)
    elif args.beta is not None:
        value = ml_two(args.alpha, args.beta, args.z)
    else:
        value = ml_one(args.alpha, args.z)
    print(_fmt(value))
    return EXIT_OK


def _cmd_golden(args) -> int:
    from .operators import OperatorConfig

    cfg = OperatorConfig(args.alpha)
    grids = [Grid(args.T, int(n)) for n in args.grids.split(",")]
    result = golden_identity_check(
        args.alpha, args.beta, args.sigma, args.lam, cfg, grids
    )
    print("N,sup_error,order")
    for i, (grid, err) in enumerate(zip(result.grids, result.errors)):
        order = _fmt(result.orders[i - 1]) if i > 0 else ""
        print(f"{grid.N},{_fmt(err)},{order}")
    return EXIT_OK


def _cmd_convergence(args) -> int:
    spec, _ = _load(args.problem)
    ns = [int(n) for n in args.grids.split(",")]
    traces = [picard_solve(spec, Grid(spec.T, n), tol=args.tol) for n in ns]
    print("N_coarse,N_fine,sup_diff,order")
    prev_diff = None
    for (n0, t0), (n1, t1) in zip(zip(ns, traces), zip(ns[1:], traces[1:])):
        if n1 % n0 != 0:
            raise ValidationError("grids", "each N must divide the next")
        stride = n1 // n0
        diff = float(np.max(np.abs(t1.omega[::stride] - t0.omega)))
        order = ""
        if prev_diff is not None and diff > 0:
            order = _fmt(np.log2(prev_diff / diff))
        print(f"{n0},{n1},{_fmt(diff)},{order}")
        prev_diff = diff
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcfde",
        description="Hybrid fractional differential equations with the "
        "Atangana-Baleanu-Caputo derivative.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a problem file by Picard iteration")
    p.add_argument("problem")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-sweeps", type=int, default=200)
    p.add_argument("--out", default="solution.csv")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("check", help="evaluate the existence condition")
    p.add_argument("problem")
    p.add_argument("--omega-box", default=None, metavar="LO,HI")
    p.add_argument("--lattice", default=None, metavar="NTAU,NOMEGA")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("extremal", help="bracket the maximal/minimal solution")
    p.add_argument("problem")
    p.add_argument("--eps0", type=float, default=0.1)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out-prefix", default="extremal")
    p.set_defaults(fn=_cmd_extremal)

    p = sub.add_parser("compare", help="verify lower/upper solution inequalities")
    p.add_argument("problem")
    p.add_argument("--lower", required=True, metavar="EXPR")
    p.add_argument("--upper", required=True, metavar="EXPR")
    p.add_argument("--nonstrict", action="store_true")
    p.add_argument("--n", type=int, default=256)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("mlf", help="evaluate a Mittag-Leffler function")
    p.add_argument("z", type=float)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.set_defaults(fn=_cmd_mlf)

    p = sub.add_parser("golden", help="closed-form derivative identity error table")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--grids", default="64,128,256")
    p.add_argument("--T", type=float, default=1.0)
    p.set_defaults(fn=_cmd_golden)

    p = sub.add_parser("convergence", help="grid-refinement study of a solve")
    p.add_argument("problem")
    p.add_argument("--grids", default="64,128,256")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=_cmd_convergence)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, ParseError, LexError, ValueError) as exc:
        print(f"E_INVALID: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MaxSweepsExceeded as exc:
        print(f"E_MAXSWEEPS: {exc}", file=sys.stderr)
        return EXIT_MAX_SWEEPS
    except OrderingViolation as exc:
        print(f"E_ORDERING: {exc}", file=sys.stderr)
        return EXIT_ORDERING
    except NonConvergence as exc:
        print(f"E_NONCONVERGENCE: {exc}", file=sys.stderr)
        return EXIT_MAX_SWEEPS
    except FileNotFoundError as exc:
        print(f"E_INVALID: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AbcfdeError as exc:
        print(f"E_ERROR: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
