"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 resource guard,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import DomainError, InvariantError, SizeGuardError
from . import bounds as B
from .codes import average_distance, distance_distribution, hamming_ball, krawtchouk_transform, read_code
from .fourier import from_code, read_truth_table, to_table_bits, weights_of
from .oracle import (
    max_fourier_weight_exhaustive,
    min_avg_distance_exhaustive,
    noise_extremes_exhaustive,
    verify_duality_sweep,
)
from .programs import (
    MAX_SOLVE_N,
    avgdist_bound_from_lambda,
    best_certificate,
    beta_star_index,
    certificate_from_index,
    check_feasibility,
    dual_objective,
    fwy_certificate,
    improved_certificate,
    load_certificate,
    save_certificate,
    solve_weight_program,
    weight_bound_from_phi,
)
from .report import jsonable, render

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_INVARIANT = 0, 2, 3, 4
BOUNDS_COLUMNS = ["a", "fwy_gap", "improved_gap", "chang_gap", "hyper_gap", "eta", "w1_upper"]
POINT_COLUMNS = ["kind", "n", "param", "M", "a", "gap", "w1"]
MAX_BALL_N = 20


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_grid(spec: str) -> list[Fraction]:
    """'lo:hi:step' with exact decimal or p/q endpoints, hi included."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be lo:hi:step, got {spec!r}")
    try:
        lo, hi, step = (Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"grid must be lo:hi:step, got {spec!r}") from None
    if step <= 0 or lo > hi:
        raise UsageError(f"grid needs step > 0 and lo <= hi, got {spec!r}")
    if lo <= 0 or hi > Fraction(1, 2):
        raise UsageError(f"grid must lie in (0, 1/2], got {spec!r}")
    pts = []
    x = lo
    while x <= hi:
        pts.append(x)
        x += step
    return pts


def snap_density(n: int, M, a) -> tuple[int, Fraction]:
    """Resolve --M/--a to (M, M/2^n); decimal a snaps to M = round(a 2^n)."""
    size = 1 << n
    if M is None and a is None:
        raise UsageError("one of --M or --a is required")
    if M is not None and a is not None:
        raise UsageError("give only one of --M and --a")
    if M is None:
        M = round(a * size)
        if Fraction(M, size) != a:
            print(f"note: a={a} snapped to M={M}, a={Fraction(M, size)}", file=sys.stderr)
    if not 1 <= M <= size:
        raise UsageError(f"need 1 <= M <= 2^n = {size}, got M={M}")
    return M, Fraction(M, size)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")


# ------------------------------------------------------------------- bounds


def bounds_row(a) -> dict:
    p = B.bound_profile(a)
    return {
        "a": p.a,
        "fwy_gap": p.gap_fwy,
        "improved_gap": p.gap_improved,
        "chang_gap": p.gap_chang,
        "hyper_gap": p.gap_hyper,
        "eta": p.eta,
        "w1_upper": p.w1_upper,
    }


def subcube_points(lo: Fraction = Fraction(0)) -> list[dict]:
    """a = 2^-i with gap i/2 and W_1 = 4 a^2 i, down to the grid start."""
    out = []
    i = 1
    while Fraction(1, 2**i) >= lo and i <= 30:
        a = Fraction(1, 2**i)
        out.append({"kind": "subcube", "n": None, "param": i, "M": None, "a": a, "gap": Fraction(i, 2), "w1": 4 * a * a * i})
        i += 1
    return out


def ball_points(n: int) -> list[dict]:
    """Hamming balls of every radius, by direct enumeration."""
    if n > MAX_BALL_N:
        raise SizeGuardError(f"Hamming-ball curve is limited to n <= {MAX_BALL_N}", cost=2**n)
    out = []
    for r in range(n + 1):
        ball = hamming_ball(n, r)
        a = ball.density
        g = Fraction(n, 2) - average_distance(ball)
        out.append({"kind": "ball", "n": n, "param": r, "M": ball.M, "a": a, "gap": g, "w1": 8 * a * a * g})
    return out


def cmd_bounds(args) -> str:
    if args.a is not None:
        grid = [args.a]
        if not 0 < args.a <= Fraction(1, 2):
            raise UsageError(f"a must lie in (0, 1/2], got {args.a}")
    else:
        grid = parse_grid(args.grid)
    rows = [bounds_row(a) for a in grid]
    out = render(rows, args.format, BOUNDS_COLUMNS)
    if args.n is not None:
        points = subcube_points(grid[0]) + ball_points(args.n)
        out += "\n" + render(points, args.format, POINT_COLUMNS)
    return out


# ----------------------------------------------------------------------- lp


def cmd_lp(args) -> str:
    _need(args, "n")
    if args.n > MAX_SOLVE_N:
        raise SizeGuardError(
            f"exact solve is limited to n <= {MAX_SOLVE_N}",
            cost=f"{args.n} variables x {args.n} constraints with {args.n}-bit binomials",
        )
    M, a = snap_density(args.n, args.M, args.a)
    sol = solve_weight_program(args.n, a, args.m, dual=args.dual)
    rec = {
        "n": args.n,
        "M": M,
        "a": a,
        "m": args.m,
        "program": "dual" if args.dual else "primal",
        "status": sol.status,
        "optimum": sol.optimum,
        "point": list(sol.point) if sol.point is not None else None,
        "pivots": sol.pivot_count,
    }
    if sol.status == "optimal":
        if args.m == 1:
            rec["avgdist_bound"] = avgdist_bound_from_lambda(args.n, a, sol.optimum)
        rec["weight_bound"] = weight_bound_from_phi(a, sol.optimum)
    return render([rec], args.format)


# -------------------------------------------------------------- certificate


def cmd_certificate(args) -> str:
    if args.check is not None:
        cert = load_certificate(args.check)
        n = cert.n if args.n is None else args.n
        label = "file"
    else:
        _need(args, "n")
        n = args.n
        if args.fwy:
            cert, label = fwy_certificate(n), "fwy"
        elif args.beta == "star":
            _need(args, "a")
            k = beta_star_index(n, args.a)
            if k is None:
                raise UsageError(f"beta* = 1 at a={args.a} >= 1/4; use --fwy")
            cert, label = certificate_from_index(n, k), "improved"
        elif args.beta == "best":
            _need(args, "a")
            cert, label = best_certificate(n, args.a)
        elif args.beta is not None:
            beta = rational(args.beta)
            if not Fraction(1, 2) < beta < 1:
                raise UsageError(f"beta must lie in (1/2, 1), got {args.beta}")
            cert, label = improved_certificate(n, beta), "improved"
        else:
            raise UsageError("one of --fwy, --beta or --check is required")
    report = check_feasibility(cert, n, args.a, cert.m)
    rec = {"kind": label, "certificate": cert.to_json(), "support": cert.support(), "feasibility": report.to_json()}
    if args.a is not None:
        a = args.a
        obj = dual_objective(cert, n, a, cert.m)
        rec["a"] = a
        rec["objective"] = obj
        if cert.m == 1:
            rec["avgdist_bound"] = avgdist_bound_from_lambda(n, a, obj)
            rec["theta"] = B.theta(a)
            try:
                rec["lambda_bar_upper"] = B.lambda_bar_upper(n, a)
            except DomainError:
                rec["lambda_bar_upper"] = None
    if args.save:
        save_certificate(cert, args.save)
    if args.format == "json":
        return json.dumps(jsonable(rec), indent=2) + "\n"
    flat = dict(rec)
    flat["certificate"] = {k + 1: v for k, v in enumerate(cert.x) if v}
    return render([flat], args.format)


# ------------------------------------------------------------------- oracle


def cmd_oracle(args) -> str:
    if args.sweep is not None:
        records = verify_duality_sweep(args.sweep)
        for r in records:
            if not r["strong_duality"] or not r.get("oracle_ge_lp", True):
                raise InvariantError(f"duality sweep failed at n={r['n']}, M={r['M']}")
        return render(records, args.format)
    _need(args, "n")
    M, a = snap_density(args.n, args.M, args.a)
    if args.weights is not None:
        res = max_fourier_weight_exhaustive(args.n, M, args.weights)
        rec = {"n": args.n, "M": M, "a": a, "m": args.weights, "max_weight": res.optimum, "explored": res.explored}
        rec["witness"] = to_table_bits(res.witness)
        if a <= Fraction(1, 2) and args.weights >= 1:
            bound = B.w1_upper(a) if args.weights == 1 else B.wm_upper(a, args.weights)
            rec["bound"] = bound
            rec["within_bound"] = float(res.optimum) <= float(bound) + B.PSI_TOL
        return render([rec], args.format)
    if args.noise is not None:
        ext = noise_extremes_exhaustive(args.n, M, args.noise)
        rec = {"n": args.n, "M": M, "a": a, "rho": args.noise, "min_q": ext.min_q, "max_q": ext.max_q, "explored": ext.explored}
        rec["argmin"] = to_table_bits(ext.argmin)
        rec["argmax"] = to_table_bits(ext.argmax)
        if a <= Fraction(1, 2):
            nb = B.noise_bounds(a, args.noise)
            rec["lower"], rec["upper"] = nb.lower, nb.upper
            rec["within_bounds"] = float(nb.lower) - B.PSI_TOL <= ext.min_q and ext.max_q <= float(nb.upper) + B.PSI_TOL
        return render([rec], args.format)
    res = min_avg_distance_exhaustive(args.n, M, symmetry=args.symmetry)
    rec = {
        "n": args.n,
        "M": M,
        "a": a,
        "optimum": res.optimum,
        "explored": res.explored,
        "symmetry_reduced": res.symmetry_reduced,
        "witness": res.witness.strings(),
    }
    if a <= Fraction(1, 2):
        fwy = B.fwy_bound(args.n, a)
        rec["fwy_bound"] = fwy
        rec["improved_bound"] = B.improved_bound(args.n, a)
        rec["fwy_equality"] = res.optimum == fwy
        if args.n <= MAX_SOLVE_N:
            lam = solve_weight_program(args.n, a, 1, dual=True).optimum
            rec["lp_bound"] = avgdist_bound_from_lambda(args.n, a, lam)
            rec["oracle_ge_lp"] = res.optimum >= rec["lp_bound"]
    return render([rec], args.format)


# ------------------------------------------------------------------ figure1


def crossovers() -> dict:
    return {
        "phi_vs_chang": B.find_crossover(B.phi, B.chang_gap, 0.06, 0.10),
        "phi_vs_psi": B.find_crossover(B.phi, B.psi, 0.07, 0.11),
    }


def cmd_figure1(args) -> str:
    grid = parse_grid(args.grid)
    n = 10 if args.n is None else args.n
    outdir = Path(args.out or "figure1")
    outdir.mkdir(parents=True, exist_ok=True)
    rows = [bounds_row(a) for a in grid]
    cubes, balls = subcube_points(grid[0]), ball_points(n)
    points = cubes + balls
    (outdir / "bounds.csv").write_text(render(rows, "csv", BOUNDS_COLUMNS))
    (outdir / "points.csv").write_text(render(points, "csv", POINT_COLUMNS))
    from .plotting import plot_bounds

    plot_bounds(rows, cubes, balls, outdir / "figure1.png", n)
    summary = {"bounds_csv": str(outdir / "bounds.csv"), "points_csv": str(outdir / "points.csv"), "figure": str(outdir / "figure1.png")}
    summary.update(crossovers())
    args.out = None  # files already written; summary goes to stdout
    return render([summary], args.format)


# ------------------------------------------------------------------ inspect


def cmd_inspect(args) -> str:
    if (args.code is None) == (args.table is None):
        raise UsageError("give exactly one of --code and --table")
    if args.code is not None:
        code = read_code(args.code)
        f = from_code(code)
    else:
        f = read_truth_table(args.table)
        code = f.preimage()
    P = distance_distribution(code)
    Q = krawtchouk_transform(P)
    W = weights_of(f)
    rec = {
        "n": code.n,
        "M": code.M,
        "a": code.density,
        "avg_distance": average_distance(code),
        "gap": Fraction(code.n, 2) - average_distance(code),
        "P": list(P.p),
        "Q": list(Q.q),
        "W": list(W.w),
    }
    return render([rec], args.format)


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamming-lp", description="LP bounds on average Hamming distance and Fourier weights.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="table"):
        p.add_argument("--format", choices=["table", "csv", "json"], default=fmt)
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    p = sub.add_parser("bounds", help="closed-form gap bounds over a density grid")
    p.add_argument("--grid", default="0.01:0.5:0.01", metavar="lo:hi:step")
    p.add_argument("--a", type=rational, help="single density instead of a grid")
    p.add_argument("--n", type=int, help="also emit subcube points and the Hamming-ball curve at this n")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lp", help="solve a weight program exactly")
    p.add_argument("--n", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--a", type=rational)
    p.add_argument("--m", type=int, default=1, help="Fourier degree (1 = average distance)")
    p.add_argument("--dual", action="store_true")
    common(p)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("certificate", help="build or check a dual certificate")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=rational)
    p.add_argument("--beta", metavar="X|star|best")
    p.add_argument("--fwy", action="store_true")
    p.add_argument("--check", metavar="FILE")
    p.add_argument("--save", metavar="PATH")
    common(p, "json")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("oracle", help="exhaustive search on small cubes")
    p.add_argument("--n", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--a", type=rational)
    p.add_argument("--weights", type=int, metavar="m")
    p.add_argument("--noise", "--rho", dest="noise", type=rational, metavar="rho")
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--sweep", type=int, metavar="NMAX")
    common(p, "json")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("figure1", help="write bound curves as CSV and PNG")
    p.add_argument("--grid", default="0.01:0.5:0.01", metavar="lo:hi:step")
    p.add_argument("--n", type=int, help="dimension of the Hamming-ball curve (default 10)")
    common(p)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("inspect", help="distributions and weights of a code or truth table")
    p.add_argument("--code", metavar="FILE")
    p.add_argument("--table", metavar="FILE")
    common(p, "json")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (UsageError, DomainError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeGuardError as exc:
        print(f"error: {exc} (estimated cost: {exc.cost})", file=sys.stderr)
        return EXIT_GUARD
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
