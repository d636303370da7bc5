"""Command-line interface: comparison tables and plot-ready data.

Subcommands
-----------
pmf         exact log pmf of the type count by one or both exact methods
deviations  asymptotic estimate vs exact probability for one regime
fluctuation density / tail / tail asymptotic of the limit of K_n n^-alpha
simulate    seeded simulation histogram, optionally compared with the exact pmf
validate    cross-oracle self-checks with one pass/fail line per check

Exit codes: 0 success, 1 numerical or validation failure, 2 usage error.
Output is CSV (RFC 4180, header row) or JSON (array of flat objects);
numeric fields carry 17 significant digits so parsed values round-trip to
the exact doubles the library produced. Grids are given as
start:stop:step, endpoints included within half a step. EP_THREADS caps
internal parallelism and never changes results.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import asymptotics, contour, exact, fluctuation, montecarlo, sibuya
from .errors import QuadratureFailureError, NoConvergenceError
from .params import validate_params
from .saddle import solve_saddle


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _emit(rows: list[dict], fmt: str) -> None:
    if not rows:
        return
    if fmt == "json":
        json.dump(rows, sys.stdout)
        sys.stdout.write("\n")
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in header])


def _parse_grid(text: str, parser: argparse.ArgumentParser, name: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        try:
            return [float(parts[0])]
        except ValueError:
            parser.error(f"invalid value for {name}: {text}")
    if len(parts) != 3:
        parser.error(f"{name} must be a number or start:stop:step, got {text}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        parser.error(f"invalid grid for {name}: {text}")
    if step <= 0 or stop < start:
        parser.error(f"grid for {name} must have step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    # round away float accumulation noise so that e.g. 0.4:0.8:0.1 hits 0.6
    # exactly; a shifted grid point would move ceil(n x) and with it the
    # sawtooth factor of the global estimates
    return [round(start + i * step, 12) for i in range(count)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_pmf(args, parser) -> int:
    params = validate_params(args.alpha, args.theta)
    rows: list[dict] = []
    markov = exact.pmf_markov(params, args.n) if args.method in ("markov", "both") else None
    formula = exact.pmf_formula(params, args.n) if args.method in ("formula", "both") else None
    for k in range(1, args.n + 1):
        row: dict = {"k": k}
        if markov is not None:
            row["log_pmf_markov"] = float(markov.log_pmf[k])
        if formula is not None:
            row["log_pmf_formula"] = float(formula.log_pmf[k])
        if markov is not None and formula is not None:
            row["abs_diff"] = abs(row["log_pmf_markov"] - row["log_pmf_formula"])
        rows.append(row)
    _emit(rows, args.format)
    return 0


def _cmd_deviations(args, parser) -> int:
    params = validate_params(args.alpha, args.theta)
    n = args.n
    regime = args.regime
    if regime in ("local-ldp", "global-ldp"):
        if args.x is None:
            parser.error(f"--x is required for {regime}")
        grid = _parse_grid(args.x, parser, "--x")
    else:
        if args.y is None or args.bn is None:
            parser.error(f"--y and --bn are required for {regime}")
        grid = _parse_grid(args.y, parser, "--y")
    table = exact.pmf_markov(params, n)
    rows = []
    for g in grid:
        if regime == "local-ldp":
            k = min(max(int(round(g * n)), 1), n - 1)
            est = asymptotics.local_ldp(params, n, k)
            exact_log = float(table.log_pmf[k])
        elif regime == "global-ldp":
            k = math.ceil(g * n)  # same index the estimate's sawtooth factor uses
            est = asymptotics.global_ldp(params, n, g)
            exact_log = exact.tail_exact(table, k)
        elif regime == "local-mdp":
            k = max(int(round(g * n**params.alpha * args.bn ** (1 - params.alpha))), 1)
            est = asymptotics.local_mdp(params, n, k, args.bn)
            exact_log = float(table.log_pmf[k])
        else:
            k = math.ceil(g * n**params.alpha * args.bn ** (1 - params.alpha) - 1e-9)
            est = asymptotics.global_mdp(params, n, g, args.bn)
            exact_log = exact.tail_exact(table, k)
        rows.append(
            {
                "point": g,
                "k": k,
                "estimate_log": est.log_total,
                "exact_log": exact_log,
                "ratio": math.exp(est.log_total - exact_log),
                "log_coeff": est.log_coeff,
                "log_exp": est.log_exp,
                "frac_factor": est.log_frac,
            }
        )
    _emit(rows, args.format)
    return 0


def _cmd_fluctuation(args, parser) -> int:
    params = validate_params(args.alpha, args.theta)
    rows = []
    if args.what == "density":
        grid = _parse_grid(args.s_grid or "0.25:4.0:0.25", parser, "--s-grid")
        for s in grid:
            rows.append({"point": s, "value": fluctuation.diversity_density(params, s)})
        hi = fluctuation._density_cutoff(params, 1.0)
        norm = fluctuation._quad_checked(
            lambda t: fluctuation.diversity_density(params, t), 1e-9, hi, rel=1e-9
        )
        rows.append({"point": "normalization", "value": norm})
    else:
        grid = _parse_grid(args.x_grid or "1.0:5.0:0.5", parser, "--x-grid")
        fn = (
            fluctuation.diversity_tail_numeric
            if args.what == "tail"
            else fluctuation.diversity_tail_asymptotic
        )
        for x in grid:
            rows.append({"point": x, "value": fn(params, x)})
    _emit(rows, args.format)
    return 0


def _cmd_simulate(args, parser) -> int:
    if args.reps < 1:
        parser.error("--reps must be >= 1")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    params = validate_params(args.alpha, args.theta)
    config = montecarlo.SimConfig(params=params, n=args.n, replications=args.reps, seed=args.seed)
    emp = montecarlo.simulate_kn(config)
    rows = [
        {"k": k, "count": int(emp.counts[k])}
        for k in range(1, args.n + 1)
        if emp.counts[k] > 0
    ]
    if args.compare_exact:
        table = exact.pmf_markov(params, args.n)
        rows.append({"k": "tvd", "count": montecarlo.tvd(emp, table)})
    _emit(rows, args.format)
    return 0


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def _run_validation(quick: bool, inject_fault: bool) -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []
    alphas = [0.3, 0.5, 0.7]
    thetas = [0.5, 1.0, 2.0]

    # saddle residuals
    xs = np.arange(0.05, 0.96, 0.15 if quick else 0.05)
    worst = 0.0
    for a in alphas:
        p = validate_params(a, 1.0)
        for x in xs:
            worst = max(worst, solve_saddle(p, float(x)).residual)
    results.append(("saddle-residual", worst < 1e-12, f"max |h'(z*)| = {worst:.2e} (tol 1e-12)"))

    # exact-method agreement
    n_master = 60 if quick else 150
    worst = 0.0
    for a in alphas:
        conv = sibuya.convolution_log_matrix(sibuya.pmf_table(validate_params(a, 1.0), n_master), n_master, n_master)
        for th in thetas:
            p = validate_params(a, th)
            t1 = exact.pmf_markov(p, n_master)
            t2 = exact.pmf_formula(p, n_master, conv=conv)
            worst = max(worst, float(np.max(np.abs(t1.log_pmf[1:] - t2.log_pmf[1:]))))
    results.append(("exact-methods-agree", worst < 1e-8, f"max log diff = {worst:.2e} at n={n_master} (tol 1e-8)"))

    # contour vs convolution
    pairs = [(0.5, 60, 30)] if quick else [(0.3, 80, 32), (0.5, 100, 50), (0.7, 120, 60)]
    worst = 0.0
    for a, n, k in pairs:
        p = validate_params(a, 1.0)
        conv = sibuya.convolve_power(sibuya.pmf_table(p, n), k, n)
        spec = contour.contour_spec(p, n, k)
        lq = contour.vertical_line_integral(spec, p)
        if inject_fault:
            lq += math.log(1.001)
        worst = max(worst, abs(math.expm1(lq - conv.log_q[n])))
    results.append(("contour-vs-convolution", worst < 1e-6, f"max rel err = {worst:.2e} (tol 1e-6)"))

    # pointwise estimate error trend
    p = validate_params(0.5, 1.0)
    ns = [100, 200] if quick else [100, 200, 400]
    errs = []
    for n in ns:
        t = exact.pmf_markov(p, n)
        est = asymptotics.local_ldp(p, n, n // 2)
        errs.append(abs(math.expm1(est.log_total - float(t.log_pmf[n // 2]))))
    decreasing = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    ratios = [e2 / e1 for e1, e2 in zip(errs, errs[1:])]
    band = all(0.25 < r < 0.85 for r in ratios)
    results.append(
        (
            "local-estimate-trend",
            decreasing and band,
            f"errors {['%.2e' % e for e in errs]}, ratios {['%.2f' % r for r in ratios]}",
        )
    )

    # discrete Laplace sums
    geo = asymptotics.laplace_sum(lambda b: 1.0, lambda b: b, 500, 0.3, 0.9, df=lambda b: 1.0)
    closed = math.exp(-math.ceil(500 * 0.3)) / (1.0 - math.exp(-1.0))
    rel_geo = abs(geo / closed - 1.0)
    sq_a = asymptotics.laplace_sum(lambda b: 1.0, lambda b: b * b, 500, 0.3, 0.8, df=lambda b: 2 * b)
    sq_d = asymptotics.laplace_sum_direct(lambda b: 1.0, lambda b: b * b, 500, 0.3, 0.8)
    rel_sq = abs(sq_d / sq_a - 1.0)
    ok = rel_geo < 1e-12 and rel_sq < 0.02
    results.append(("laplace-sum", ok, f"geometric rel {rel_geo:.1e} (tol 1e-12), quadratic rel {rel_sq:.3f} (tol 0.02)"))

    # fluctuation identities
    p = validate_params(0.5, 1.0)
    worst = 0.0
    for s in [0.5, 1.0, 2.0]:
        d1 = fluctuation.diversity_density(p, s)
        d2 = fluctuation.diversity_density_via_stable(p, s)
        worst = max(worst, abs(d1 / d2 - 1.0))
    levy = 1.0 / (2.0 * math.sqrt(math.pi)) * math.exp(-0.25)
    worst_levy = abs(fluctuation.stable_density(0.5, 1.0) / levy - 1.0)
    ok = worst < 1e-8 and worst_levy < 1e-8
    results.append(("fluctuation-identities", ok, f"two-form rel {worst:.1e}, half-stable rel {worst_levy:.1e} (tol 1e-8)"))
    return results


def _cmd_validate(args, parser) -> int:
    results = _run_validation(args.quick, args.inject_fault)
    all_ok = True
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        all_ok = all_ok and ok
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewens-pitman",
        description="Exact and asymptotic distribution of the number of types "
        "in the two-parameter sequential sampling model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pmf", help="exact log pmf by one or both methods")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=["markov", "formula", "both"], default="both")

    sp = sub.add_parser("deviations", help="asymptotic estimate vs exact probability")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument(
        "--regime",
        choices=["local-ldp", "global-ldp", "local-mdp", "global-mdp"],
        required=True,
    )
    sp.add_argument("--x", help="fraction in (0,1), single value or start:stop:step")
    sp.add_argument("--y", help="intermediate-scale variable, single value or grid")
    sp.add_argument("--bn", type=float, help="intermediate scale b_n in (1, n)")

    sp = sub.add_parser("fluctuation", help="limit law of the rescaled type count")
    _add_common(sp)
    sp.add_argument("--what", choices=["density", "tail", "tail-asymptotic"], required=True)
    sp.add_argument("--s-grid", dest="s_grid", help="density evaluation grid")
    sp.add_argument("--x-grid", dest="x_grid", help="tail evaluation grid")

    sp = sub.add_parser("simulate", help="seeded simulation of the type count")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--reps", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--compare-exact", action="store_true")

    sp = sub.add_parser("validate", help="run the cross-oracle self-checks")
    sp.add_argument("--quick", action="store_true", help="reduced grid, < 60 s")
    sp.add_argument(
        "--inject-fault",
        action="store_true",
        help="negative control: perturb one comparison and expect failure",
    )
    return parser


_DISPATCH = {
    "pmf": _cmd_pmf,
    "deviations": _cmd_deviations,
    "fluctuation": _cmd_fluctuation,
    "simulate": _cmd_simulate,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args, parser)
    except (QuadratureFailureError, NoConvergenceError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
