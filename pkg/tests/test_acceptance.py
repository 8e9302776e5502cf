"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py`` for a plain report.
"""

import math
import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from hamming_lp.bounds import (
    beta_star,
    chang_gap,
    find_crossover,
    fwy_gap,
    gap_from_theta,
    lambda_bar_threshold,
    lambda_bar_upper,
    noise_bounds,
    phi,
    psi,
    theta,
    w1_upper,
    wm_upper,
)
from hamming_lp.codes import (
    BinaryCode,
    average_distance,
    avg_distance_from_dual,
    distance_distribution,
    dual_distribution_direct,
    extend_code,
    inverse_krawtchouk_transform,
    krawtchouk_transform,
    random_code,
)
from hamming_lp.fourier import BooleanFunction, q_agree, weights_of
from hamming_lp.krawtchouk import below_magnitude_bound, krawtchouk, krawtchouk_alt
from hamming_lp.oracle import min_avg_distance_exhaustive
from hamming_lp.programs import (
    beta_star_index,
    certificate_from_index,
    certificate_index,
    certificate_residuals,
    certificate_system,
    check_feasibility,
    dual_objective,
    lambda_exact,
    min_avgdist_lower_bound,
    solve_weight_program,
)

TOL = 1e-9


class Outcome:
    def __init__(self, label):
        self.label = label
        self.failures = []
        self.notes = []
        self.start = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    def line(self):
        status = "PASS" if not self.failures else "FAIL"
        detail = "; ".join(self.notes)
        if self.failures:
            shown = self.failures[:3]
            more = f" (+{len(self.failures) - 3} more)" if len(self.failures) > 3 else ""
            detail = "failed: " + "; ".join(shown) + more + (f" | {detail}" if detail else "")
        return f"{status} criterion {self.label} [{self.elapsed:.1f}s] {detail}".rstrip()


def _exact_or_tol(lhs, rhs):
    """lhs <= rhs, exact when both are rational, else with TOL slack."""
    if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
        return lhs <= rhs
    return float(lhs) <= float(rhs) + TOL


# ----------------------------------------------------------------- criteria


def criterion_1():
    out = Outcome("1 (Krawtchouk identities, n <= 40)")
    zs = (Fraction(1, 2), Fraction(-1, 3))
    for n in range(1, 41):
        for k in range(n + 1):
            for x in range(n + 1):
                K = krawtchouk(n, k, x)
                out.check(K == krawtchouk_alt(n, k, x), f"alt n={n} k={k} x={x}")
                out.check(krawtchouk(n, k, n - x) == (-1) ** k * K, f"reflection n={n} k={k} x={x}")
                out.check(krawtchouk(n, n - k, x) == (-1) ** x * K, f"degree symmetry n={n} k={k} x={x}")
                out.check(below_magnitude_bound(n, k, x), f"magnitude n={n} k={k} x={x}")
                if x < n:
                    lower = krawtchouk(n - 1, k - 1, x) if k >= 1 else 0
                    out.check(krawtchouk(n, k, x + 1) == K - 2 * lower, f"recurrence n={n} k={k} x={x}")
        for x in range(n + 1):
            for z in zs:
                series = sum(krawtchouk(n, k, x) * z**k for k in range(n + 1))
                out.check(series == (1 - z) ** x * (1 + z) ** (n - x), f"generating n={n} x={x} z={z}")
    out.check(out.elapsed < 60, f"runtime {out.elapsed:.1f}s >= 60s")
    return out


def _transform_checks(out, code):
    P = distance_distribution(code)
    Q = krawtchouk_transform(P)
    tag = f"n={code.n} words={code.strings()}"
    out.check(Q == dual_distribution_direct(code), f"character sum vs transform {tag}")
    out.check(inverse_krawtchouk_transform(Q) == P, f"round trip {tag}")
    out.check(sum(Q.q) == Fraction(1 << code.n, code.M), f"sum Q {tag}")
    out.check(avg_distance_from_dual(Q) == average_distance(code), f"average distance {tag}")


def criterion_2():
    out = Outcome("2 (transform coherence)")
    rng = random.Random(20240601)
    for _ in range(200):
        n = rng.randint(1, 10)
        M = rng.randint(1, 1 << n)
        _transform_checks(out, random_code(n, M, rng))
    count = 0
    for n in range(1, 4):
        for M in range(1, (1 << n) + 1):
            for words in combinations(range(1 << n), M):
                _transform_checks(out, BinaryCode(n, frozenset(words)))
                count += 1
    out.notes.append(f"200 random codes + {count} exhaustive codes")
    out.check(out.elapsed < 60, f"runtime {out.elapsed:.1f}s >= 60s")
    return out


def criterion_3():
    out = Outcome("3 (LP strong duality)")
    solved = 0
    for n in range(2, 13):
        for a in (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)):
            if (a * 2**n).denominator != 1:
                continue  # 3/8 is not a density of the 2-cube
            degrees = range(1, min(3, n) + 1) if n <= 8 else (1,)
            for m in degrees:
                p = solve_weight_program(n, a, m)
                d = solve_weight_program(n, a, m, dual=True)
                solved += 1
                out.check(p.status == d.status == "optimal", f"status n={n} a={a} m={m}")
                out.check(p.optimum == d.optimum, f"primal {p.optimum} != dual {d.optimum} at n={n} a={a} m={m}")
    out.notes.append(f"{solved} primal/dual pairs")
    out.check(out.elapsed < 600, f"runtime {out.elapsed:.1f}s >= 600s")
    return out


def criterion_3_degree_closed_form():
    out = Outcome("3-note (degree-m dual optimum: 0 for even m, 1/(2a) - 1 for odd m)")
    checked = 0
    for n in range(2, 9):
        for a in (Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)):
            if (a * 2**n).denominator != 1:
                continue
            for m in range(1, min(3, n) + 1):
                opt = solve_weight_program(n, a, m, dual=True).optimum
                expected = 0 if m % 2 == 0 else 1 / (2 * a) - 1
                checked += 1
                out.check(opt == expected, f"n={n} m={m} a={a}: {opt} != {expected}")
    out.notes.append(f"{checked} points; the pattern holds at every n > m")
    return out


def criterion_4():
    out = Outcome("4 (equality cases)")
    for n, M in [(3, 4), (4, 8), (3, 2), (4, 4)]:
        a = Fraction(M, 1 << n)
        target = Fraction(n, 2) - fwy_gap(a)
        res = min_avg_distance_exhaustive(n, M)
        out.check(res.optimum == target, f"oracle {res.optimum} != {target} at n={n} M={M}")
        lp = min_avgdist_lower_bound(n, a, "lp-exact")
        out.check(lp == target, f"LP bound {lp} != {target} at n={n} M={M}")
    out.check(out.elapsed < 60, f"runtime {out.elapsed:.1f}s >= 60s")
    return out


def criterion_5():
    out = Outcome("5 (limit values of the average-distance dual)")
    for n in range(2, 13):
        v = lambda_exact(n, Fraction(1, 2))
        out.check(v == 0, f"n={n} a=1/2: {v}")
    a = Fraction(3, 8)
    start = max(math.ceil(Fraction(5, 8) / (a - Fraction(1, 16))), 3)
    for n in range(start, 15):
        v = lambda_exact(n, a)
        out.check(v == Fraction(1, 3), f"n={n} a=3/8: {v}")
    out.notes.append(f"a=1/2 on n in [2:12]; a=3/8 on n in [{start}:14]")
    return out


def criterion_6():
    out = Outcome("6 (2-sparse certificate)")
    rng = random.Random(7)
    solved = 0
    while solved < 50:
        n = rng.randint(6, 300)
        beta = Fraction(rng.randint(501, 999), 1000)
        k = certificate_index(n, beta)
        if k < 2 or k + 1 > n:
            continue
        cert = certificate_from_index(n, k)
        out.check(certificate_residuals(cert, k) == (0, 0), f"residual n={n} beta={beta}")
        out.check(certificate_system(n, k) == (cert.x[k - 1], cert.x[k]), f"Cramer n={n} beta={beta}")
        solved += 1

    contain_fail = []
    for a in (Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)):
        th = theta(a)
        widths = []
        for n in (64, 128, 256):
            k = beta_star_index(n, a)
            cert = certificate_from_index(n, k)
            out.check(check_feasibility(cert, n, a).feasible, f"x* infeasible at a={a} n={n}")
            low = dual_objective(cert, n, a)
            high = lambda_bar_upper(n, a)
            out.check(low <= high, f"objective above upper bound at a={a} n={n}")
            if not float(low) <= th <= float(high):
                contain_fail.append(f"a={a} n={n}: {float(low):.6f} > theta {th:.6f}")
            widths.append(float(high - low))
            if n == 256:
                rel = max(abs(float(low) - th), abs(float(high) - th)) / th
                out.check(rel < 0.10, f"relative gap {rel:.3g} at a={a}")
                out.notes.append(f"a={a}: rel gap {rel:.2e}")
        out.check(widths[0] > widths[1] > widths[2], f"width not shrinking at a={a}: {widths}")
    for msg in contain_fail:
        out.check(False, "sandwich misses theta, " + msg)
    out.check(out.elapsed < 300, f"runtime {out.elapsed:.1f}s >= 300s")
    return out


def criterion_7():
    out = Outcome("7 (bound comparison)")
    grid = [Fraction(i, 100) for i in range(1, 51)]
    for a in grid:
        out.check(_exact_or_tol(gap_from_theta(a), phi(a)) and _exact_or_tol(phi(a), gap_from_theta(a)),
                  f"theta-derived gap differs from phi at a={a}")
        out.check(psi(a) <= chang_gap(a) + TOL, f"psi above ln(1/a) at a={a}")
    c1 = find_crossover(phi, chang_gap, 0.06, 0.10)
    c2 = find_crossover(phi, psi, 0.07, 0.11)
    out.check(c1 is not None and 0.06 < c1 < 0.10, f"phi/Chang crossing {c1}")
    out.check(c2 is not None and 0.07 < c2 < 0.11, f"phi/psi crossing {c2}")
    out.check(abs(psi(Fraction(1, 2)) - 0.5) <= 1e-6, f"psi(1/2) = {psi(Fraction(1, 2))}")
    out.notes.append(f"crossings {c1:.5f} and {c2:.5f}")
    return out


RHOS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _fourier_checks(out, f, D_of):
    n, a = f.n, f.density
    prof = weights_of(f)
    tag = f"n={n} table={''.join('1' if v == 1 else '0' for v in f.table)}"
    out.check(sum(prof.w) == 1, f"Parseval {tag}")
    out.check(prof.w[0] == (2 * a - 1) ** 2, f"W0 {tag}")
    if f.M == 0 or f.M == 1 << n:
        return
    out.check(prof.w[1] == 4 * a * a * (n - 2 * D_of(f)), f"W1 bridge {tag}")
    # the bounds are stated for a <= 1/2; -f has the same W_m for m >= 1
    g = f if a <= Fraction(1, 2) else BooleanFunction(n, tuple(-v for v in f.table))
    b = g.density
    out.check(_exact_or_tol(prof.w[1], w1_upper(b)), f"W1 bound {tag}")
    for m in range(2, n + 1):
        out.check(prof.w[m] <= wm_upper(b, m), f"W{m} bound {tag}")
    for rho in RHOS:
        q = q_agree(g, rho)
        nb = noise_bounds(b, rho)
        out.check(_exact_or_tol(nb.lower, q) and _exact_or_tol(q, nb.upper), f"q sandwich rho={rho} {tag}")


def criterion_8():
    out = Outcome("8 (Fourier suite)")
    D_of = lambda f: average_distance(f.preimage())  # noqa: E731
    for bits in range(256):
        f = BooleanFunction(3, tuple(1 if bits >> x & 1 else -1 for x in range(8)))
        _fourier_checks(out, f, D_of)
    rng = random.Random(99)
    count = 0
    for M in range(0, 17):
        total = math.comb(16, M)
        if total <= 2000:
            subsets = combinations(range(16), M)
        else:
            subsets = (rng.sample(range(16), M) for _ in range(2000))
        for s in subsets:
            s = set(s)
            _fourier_checks(out, BooleanFunction(4, tuple(1 if x in s else -1 for x in range(16))), D_of)
            count += 1
    out.notes.append(f"256 functions at n=3, {count} at n=4")
    out.check(out.elapsed < 120, f"runtime {out.elapsed:.1f}s >= 120s")
    return out


def criterion_9():
    out = Outcome("9 (monotonicity)")
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 8)
        code = random_code(n, rng.randint(1, 1 << n), rng)
        k = rng.randint(1, 4)
        out.check(average_distance(extend_code(code, k)) == average_distance(code) + Fraction(k, 2),
                  f"extension n={n} k={k}")
    for n in range(1, 4):
        for M in range(1, (1 << n) + 1):
            big = min_avg_distance_exhaustive(n + 1, 2 * M).optimum
            small = min_avg_distance_exhaustive(n, M).optimum
            out.check(big - Fraction(1, 2) <= small, f"doubling n={n} M={M}")
    out.check(out.elapsed < 60, f"runtime {out.elapsed:.1f}s >= 60s")
    return out


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_3_degree_closed_form,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion, capsys):
    out = criterion()
    with capsys.disabled():
        print("\n" + out.line())
    assert not out.failures, out.line()


if __name__ == "__main__":
    for criterion in CRITERIA:
        print(criterion().line(), flush=True)
