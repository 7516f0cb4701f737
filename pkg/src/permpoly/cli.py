"""Command-line interface: one binary, one subcommand per workflow.

Exit codes: 0 success, 1 validation violations (bad structure or refuted
permutation), 2 usage errors, 3 exhausted work budgets. All diagnostics go
to stderr prefixed "permpoly: error:" or "permpoly: budget:" so scripts can
grep them; results go to stdout or --output.
"""

import argparse
import json
import secrets
import sys
import time
from fractions import Fraction

from . import discrepancy as disc
from . import iterate as it
from . import orbit as orb
from . import spectral as spec
from .errors import BudgetExceededError
from .generator import Generator, STREAM_FORMATS, count_step_multiplications
from .system import (
    TriangularSystem,
    check_permutation,
    chain_parameters,
    load_system,
    validate_structure,
)

PROG = "permpoly"


class CliError(Exception):
    """Usage-level failure; maps to exit code 2."""


def _parse_int_list(text, what):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise CliError(f"bad {what} {text!r}: want comma-separated integers") from None


def _load_checked_system(path):
    try:
        sys_ = load_system(path)
    except FileNotFoundError:
        raise CliError(f"system file not found: {path}") from None
    except (ValueError, OverflowError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot load system {path}: {exc}") from None
    return sys_


def _parse_seed(text, sys_):
    if text == "random":
        seed = tuple(secrets.randbelow(sys_.p) for _ in range(sys_.nvars))
        print(f"{PROG}: seed: {','.join(map(str, seed))}", file=sys.stderr)
        return seed
    vals = _parse_int_list(text, "seed")
    if len(vals) != sys_.nvars:
        raise CliError(f"seed needs {sys_.nvars} components, got {len(vals)}")
    return tuple(v % sys_.p for v in vals)


def _open_output(args):
    if args.output and args.output != "-":
        return open(args.output, "w")
    return None


def _write(args, text):
    fh = _open_output(args)
    if fh is None:
        sys.stdout.write(text)
    else:
        with fh:
            fh.write(text)


# ----- subcommands -----


def cmd_validate(args):
    sys_ = _load_checked_system(args.system)
    violations = validate_structure(sys_)
    if violations:
        for v in violations:
            print(f"{PROG}: error: {v}", file=sys.stderr)
        return 1
    budget = args.budget or 10**7
    check = check_permutation(sys_, budget=budget)
    lines = [
        f"p={sys_.p} m={sys_.m}",
        "structure: ok",
        f"permutation: {check.status}"
        + (f" ({check.method}, {check.detail})" if check.method else f" ({check.detail})"),
    ]
    if check.status == "certified" and check.method == "nonresidue-form":
        ws = ", ".join(f"g[{i}]:X{j}^2-{c}" for i, j, c in check.witnesses)
        lines.append(f"nonresidue factors: {ws}")
    _write(args, "\n".join(lines) + "\n")
    if check.status == "refuted":
        print(f"{PROG}: error: not a permutation: {check.detail}", file=sys.stderr)
        return 1
    if check.status == "unknown":
        raise BudgetExceededError(check.detail, budget=budget)
    return 0


def cmd_gen(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    if args.count < 0:
        raise CliError("--count must be >= 0")
    seed = _parse_seed(args.seed, sys_)
    gen = Generator(sys_, seed)
    data = gen.raw_stream(args.count, args.format)
    if isinstance(data, bytes):
        if args.output and args.output != "-":
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
    else:
        _write(args, data)
    return 0


def cmd_degrees(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    budget = args.budget or it.DEFAULT_TERM_BUDGET
    report = it.degree_growth_report(sys_, args.kmax, term_budget=budget)
    lines = ["i,k,deg_g,predicted_leading,residual"]
    for row in report.rows:
        lines.append(f"{row.i},{row.k},{row.deg_g},{row.predicted},{row.residual}")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_expsum(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    coeffs = _parse_int_list(args.a, "coefficient vector")
    budget = args.budget or spec.DEFAULT_ENUMERATION_BUDGET
    try:
        direct = spec.expsum_direct(sys_, coeffs, args.k, args.l, budget=budget)
        collapsed = spec.expsum_collapsed(sys_, coeffs, args.k, args.l)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    scale = sys_.state_count()
    if abs(direct - collapsed) > 1e-6 * scale:
        print(
            f"{PROG}: error: enumeration and collapse disagree: "
            f"{direct} vs {collapsed}",
            file=sys.stderr,
        )
        return 1
    bound = spec.expsum_envelope(args.k, sys_.p, sys_.m)
    lines = [
        "p,m,a,k,l,abs_sum,bound,ratio",
        f"{sys_.p},{sys_.m},{args.a},{args.k},{args.l},"
        f"{abs(direct)!r},{bound!r},{abs(direct) / bound!r}",
    ]
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_vsum(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    coeffs = _parse_int_list(args.a, "coefficient vector")
    N_values = _parse_int_list(args.N, "window lengths")
    budget = args.budget or spec.DEFAULT_ENUMERATION_BUDGET
    try:
        rows = spec.vsum_ratio_table(sys_, coeffs, args.c, args.M, N_values, budget=budget)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    lines = ["p,m,a,c,M,N,vsum,bound,ratio"]
    for N, v, env, ratio in rows:
        lines.append(
            f"{sys_.p},{sys_.m},{args.a},{args.c},{args.M},{N},{v!r},{env!r},{ratio!r}"
        )
    _write(args, "\n".join(lines) + "\n")
    return 0


def _read_points(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([Fraction(cell) for cell in line.split(",")])
    if not rows:
        raise CliError(f"no points in {path}")
    return disc.PointSet.from_fractions(rows)


def cmd_discrepancy(args):
    try:
        points = _read_points(args.input)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse points: {exc}") from None
    except FileNotFoundError:
        raise CliError(f"points file not found: {args.input}") from None
    if args.method == "1d":
        value = disc.star_discrepancy_1d(points)
        _write(args, f"method,N,dim,value,value_float\n"
                     f"1d,{points.n},{points.dim},{value},{float(value)!r}\n")
    elif args.method == "grid":
        value = disc.star_discrepancy_grid(points)
        _write(args, f"method,N,dim,value,value_float\n"
                     f"grid,{points.n},{points.dim},{value},{float(value)!r}\n")
    else:
        if args.L is None:
            raise CliError("--L is required for the etk method")
        bound = disc.etk_bound(points, args.L)
        _write(
            args,
            "method,N,dim,L,bound,resolution_term,sum_term\n"
            f"etk,{points.n},{points.dim},{bound.L},{bound.total!r},"
            f"{bound.resolution_term!r},{bound.sum_term!r}\n",
        )
    return 0


def cmd_avg_discrepancy(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    N_values = _parse_int_list(args.N, "window lengths")
    budget = args.budget or 10**7
    exp = disc.average_discrepancy_experiment(sys_, N_values, budget=budget)
    header = (
        "N,envelope,mean,min,q25,median,q75,max,"
        + ",".join(f"exceed_t{t:g}" for t in exp.thresholds)
    )
    lines = [header]
    for row in exp.rows:
        cells = [
            str(row.N), repr(row.envelope), repr(row.mean), repr(row.minimum),
            repr(row.quartile_low), repr(row.median), repr(row.quartile_high),
            repr(row.maximum),
        ]
        cells += [repr(row.exceedance[t]) for t in exp.thresholds]
        lines.append(",".join(cells))
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_period(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    budget = args.budget or orb.DEFAULT_STATE_BUDGET
    if args.all:
        structure = orb.full_cycle_structure(sys_, budget=budget)
        record = {
            "p": structure.p,
            "m": structure.m,
            "total_states": structure.total_states,
            "cycles": [[length, count] for length, count in structure.cycles],
            "tail_states": structure.tail_states,
            "bijective": structure.is_bijective,
            "max_period": structure.max_period,
            "maximal": structure.is_maximal,
        }
        _write(args, json.dumps(record) + "\n")
        return 0
    if not args.seed:
        raise CliError("period needs --seed or --all")
    seed = _parse_seed(args.seed, sys_)
    result = orb.period_of_seed(sys_, seed, max_steps=budget, projection=args.projection)
    record = {
        "seed": list(result.seed),
        "period": result.period,
        "preperiod": result.preperiod,
    }
    if result.projection_period is not None:
        record["projection_period"] = result.projection_period
    _write(args, json.dumps(record) + "\n")
    return 0


def cmd_bench(args):
    sys_ = _load_checked_system(args.system)
    _require_valid(sys_)
    if args.count < 1:
        raise CliError("--count must be >= 1")
    seed = _parse_seed(args.seed, sys_)
    counts = count_step_multiplications(sys_, state=seed)
    gen = Generator(sys_, seed)
    t0 = time.perf_counter()
    gen.jump(args.count)
    elapsed = time.perf_counter() - t0
    is_chain = chain_parameters(sys_) is not None
    nonlinear = counts[: sys_.m]
    record = {
        "p": sys_.p,
        "m": sys_.m,
        "steps": args.count,
        "seconds": elapsed,
        "steps_per_second": args.count / elapsed if elapsed > 0 else None,
        "ns_per_vector": elapsed / args.count * 1e9,
        "fast_path": is_chain,
        "muls_per_component": counts,
        "nonlinear_muls_per_component": (
            nonlinear[0] if len(set(nonlinear)) == 1 else nonlinear
        ),
        "matches_two_mul_cost_model": is_chain and all(c == 2 for c in nonlinear),
    }
    _write(args, json.dumps(record) + "\n")
    return 0


def _require_valid(sys_):
    violations = validate_structure(sys_)
    if violations:
        raise SystemValidationError(violations)


class SystemValidationError(Exception):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = violations


# ----- parser -----


def build_parser():
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Triangular permutation-polynomial generators over prime "
        "fields: validation, generation, and verification workflows.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None,
                        help="write results to this file instead of stdout")
    common.add_argument("--budget", type=int, default=None,
                        help="override the subcommand's work budget")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count (accepted for compatibility; "
                        "computation is single-process)")

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common],
                       help="check structure and certify the permutation property")
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gen", parents=[common], help="stream generated vectors")
    s.add_argument("--system", required=True)
    s.add_argument("--seed", required=True,
                   help="comma-separated components, or 'random'")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--format", choices=STREAM_FORMATS, default="csv")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("degrees", parents=[common],
                       help="cofactor degree growth under iteration (CSV)")
    s.add_argument("--system", required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.set_defaults(func=cmd_degrees)

    s = sub.add_parser("expsum", parents=[common],
                       help="full-domain character sum of an iterate difference")
    s.add_argument("--system", required=True)
    s.add_argument("--a", required=True, help="comma-separated coefficients a0..a(m-1)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.set_defaults(func=cmd_expsum)

    s = sub.add_parser("vsum", parents=[common],
                       help="seed-aggregated squared window sums across N values")
    s.add_argument("--system", required=True)
    s.add_argument("--a", required=True, help="comma-separated coefficients a0..a(m-1)")
    s.add_argument("--c", type=int, default=0)
    s.add_argument("--M", type=int, default=1)
    s.add_argument("--N", required=True, help="comma-separated window lengths")
    s.set_defaults(func=cmd_vsum)

    s = sub.add_parser("discrepancy", parents=[common],
                       help="discrepancy of a point set from a CSV file")
    s.add_argument("--input", required=True,
                   help="CSV of points; cells are fractions like 3/7 or decimals")
    s.add_argument("--method", choices=("1d", "grid", "etk"), required=True)
    s.add_argument("--L", type=int, default=None, help="frequency cutoff for etk")
    s.set_defaults(func=cmd_discrepancy)

    s = sub.add_parser("avg-discrepancy", parents=[common],
                       help="per-seed discrepancy distribution over all seeds")
    s.add_argument("--system", required=True)
    s.add_argument("--N", required=True, help="comma-separated window lengths")
    s.set_defaults(func=cmd_avg_discrepancy)

    s = sub.add_parser("period", parents=[common],
                       help="orbit periods (one seed) or full cycle structure (--all)")
    s.add_argument("--system", required=True)
    s.add_argument("--seed", default=None)
    s.add_argument("--all", action="store_true")
    s.add_argument("--projection", action="store_true",
                   help="also report the period of the emitted coordinates")
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("bench", parents=[common],
                       help="throughput and instrumented multiplication counts")
    s.add_argument("--system", required=True)
    s.add_argument("--seed", default="random")
    s.add_argument("--count", type=int, default=10**5)
    s.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a usage message; normalize its exit code
        return 0 if exc.code in (0, None) else 2
    if args.threads < 1:
        print(f"{PROG}: error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except SystemValidationError as exc:
        for v in exc.violations:
            print(f"{PROG}: error: {v}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"{PROG}: budget: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
