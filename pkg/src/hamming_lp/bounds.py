"""Closed-form bounds on the gap n/2 - D(A) and on Fourier weights.

Functions return a ``Fraction`` whenever the value is rational for the
given input (e.g. phi at a perfect-square density) and a ``float``
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from . import DomainError

PSI_TOL = 1e-9
CROSSOVER_TOL = 1e-6
_GOLDEN = (math.sqrt(5) - 1) / 2


def exact_sqrt(q: Fraction) -> Fraction | None:
    """sqrt(q) as a Fraction when q is the square of a rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _sqrt(a):
    if isinstance(a, Fraction):
        s = exact_sqrt(a)
        if s is not None:
            return s
    return math.sqrt(a)


def _as_number(a):
    if isinstance(a, (Fraction, int)):
        return Fraction(a)
    if isinstance(a, str):
        return Fraction(a)
    return float(a)


def _half_density(a):
    a = _as_number(a)
    if not 0 < a <= Fraction(1, 2):
        raise DomainError(f"density must lie in (0, 1/2], got {a}")
    return a


def fwy_gap(a):
    """1/(4a), the gap of the (0, ..., 0, 1/2) certificate."""
    a = _half_density(a)
    return 1 / (4 * a)


def phi(a):
    """Improved gap: 1/sqrt(a) - 1 for a <= 1/4, else 1/(4a)."""
    a = _half_density(a)
    if a <= Fraction(1, 4):
        return 1 / _sqrt(a) - 1
    return 1 / (4 * a)


def theta(a):
    """Limit of the dual optimum: (1 - sqrt a)^2 / a below 1/4, else 1/(2a) - 1."""
    a = _half_density(a)
    if a < Fraction(1, 4):
        return (1 - _sqrt(a)) ** 2 / a
    return 1 / (2 * a) - 1


def gap_from_theta(a):
    """Gap implied by a limiting dual value: 1/(2a) - 1/2 - theta(a)/2."""
    a = _half_density(a)
    return 1 / (2 * a) - Fraction(1, 2) - theta(a) / 2


def chang_gap(a):
    """ln(1/a)."""
    a = _as_number(a)
    if not 0 < a <= 1:
        raise DomainError(f"density must lie in (0, 1], got {a}")
    if a == 1:
        return Fraction(0)
    return math.log(1 / float(a))


def _psi_objective(t: float, a: float) -> float:
    e = t - 1
    if abs(e) < 1e-3:
        # Taylor expansion about the removable singularity at t = 1
        return (
            30 * (1 - a)
            - 10 * e * (2 * a * a - 3 * a + 1)
            + 5 * e * e * (a**3 - 2 * a + 1)
            - e**3 * (2 * a**4 - 5 * a + 3)
        ) / (60 * a)
    s = t * a + (1 - a)
    return s * (a * t * math.log(t) - s * math.log(s)) / (a * a * (t - 1) ** 2)


def _golden_min(f, lo, hi, tol):
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (lo + hi) / 2


def psi_minimizer(a) -> tuple[float, float]:
    """(t*, psi(a)) from a log-grid scan of t in [1e-6, 1e6] and golden-section refinement."""
    return _psi_minimizer(_as_number(a))


@lru_cache(maxsize=4096)
def _psi_minimizer(a) -> tuple[float, float]:
    if not 0 < a <= 1:
        raise DomainError(f"density must lie in (0, 1], got {a}")
    if a == 1:
        return 1.0, 0.0
    af = float(a)

    def g(logt):
        return _psi_objective(math.exp(logt), af)

    lo, hi, steps = math.log(1e-6), math.log(1e6), 2000
    grid = [lo + (hi - lo) * i / steps for i in range(steps + 1)]
    values = [g(x) for x in grid]
    i = min(range(len(values)), key=values.__getitem__)
    left, right = grid[max(i - 1, 0)], grid[min(i + 1, steps)]
    x = _golden_min(g, left, right, 1e-10)
    best = min((g(x), x), (values[i], grid[i]))
    return math.exp(best[1]), best[0]


def psi(a) -> float:
    """Hypercontractivity gap, an infimum over t > 0 computed numerically."""
    return psi_minimizer(a)[1]


def eta(a):
    """min(phi, psi); ties resolve to the exact phi value."""
    p = phi(a)
    h = psi(a)
    return p if p <= h + PSI_TOL else h


def w1_upper(a, mode: str = "combined"):
    a = _half_density(a)
    if mode == "lp":
        g = phi(a)
    elif mode == "hyper":
        g = psi(a)
    elif mode == "combined":
        g = eta(a)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return 8 * a * a * g


def wm_upper(a, m: int):
    """4a(1-a) for even m >= 2, 2a for odd m >= 3."""
    a = _half_density(a)
    if m < 2:
        raise DomainError("degree 1 is bounded by w1_upper")
    return 4 * a * (1 - a) if m % 2 == 0 else 2 * a


def improved_bound(n: int, a):
    """n/2 - phi(a)."""
    return Fraction(n, 2) - phi(a)


def fwy_bound(n: int, a):
    """n/2 - 1/(4a)."""
    return Fraction(n, 2) - fwy_gap(a)


class BoundaryFlag:
    """beta* sits on the boundary beta = 1 where the 2-sparse certificate is undefined."""

    value = 1

    def __repr__(self):
        return "BOUNDARY"

    def __bool__(self):
        return False


BOUNDARY = BoundaryFlag()


def beta_star(a):
    """1 / (2 (1 - sqrt a)) for a < 1/4; BOUNDARY for a >= 1/4."""
    a = _half_density(a)
    if a >= Fraction(1, 4):
        return BOUNDARY
    return 1 / (2 * (1 - _sqrt(a)))


# ------------------------------------------------------------------ upper side


def lambda_bar_threshold(a) -> Fraction:
    """Smallest admissible n (as a rational bound) for lambda_bar_upper."""
    a = _half_density(Fraction(a))
    if a <= Fraction(1, 4):
        return 1 / a - 1
    return (1 - a) / (a - (1 - 2 * a) ** 2)


def _ratio_objective(t, n, a):
    """(-1/a + (2t/n)(1/a - 1)) / (2t(2t - n - 1) / (n(n-1)))."""
    return (-1 / a + 2 * t / n * (1 / a - 1)) / (2 * t * (2 * t - n - 1) / (n * (n - 1)))


def ratio_maximizer(n: int, a) -> float:
    """Local maximizer t2 of the relaxed ratio."""
    a = float(a)
    return (n + math.sqrt(n * (a * n + a - 1))) / (2 * (1 - a))


def theta_n(n: int, a) -> float:
    """Maximum of the relaxed ratio over t in [ceil(n / (2(1-a))), n].

    Uses the interior maximizer t2 when it falls in the interval and the
    endpoints otherwise.
    """
    a = Fraction(a)
    lo = math.ceil(Fraction(n) / (2 * (1 - a)))
    cands = [lo, n]
    if n * (a * n + a - 1) >= 0:
        t2 = ratio_maximizer(n, a)
        if lo <= t2 <= n:
            cands.append(t2)
    af = float(a)
    return max(float(_ratio_objective(t, n, af if isinstance(t, float) else a)) for t in cands)


def lambda_bar_upper(n: int, a):
    """Upper bound on the optimum of the average-distance dual program."""
    a = _half_density(Fraction(a))
    threshold = lambda_bar_threshold(a)
    if n < threshold:
        raise DomainError(
            f"lambda_bar_upper needs n >= {threshold} (= {float(threshold):.6g}) at a={a}, got n={n}"
        )
    if a > Fraction(1, 4):
        return 1 / (2 * a) - 1
    # (1 - 1/n)(s/a) / (r (r - 1 - 1/n)) with r = (1 + s)/(1 - a); the factor
    # s cancels since r - 1 - 1/n = s (1 + s)/(1 - a), which removes the 0/0
    # at n = 1/a - 1
    s = _sqrt(a - (1 - a) / n)
    return (1 - Fraction(1, n)) * (1 - a) ** 2 / (a * (1 + s) ** 2)


# --------------------------------------------------------------- noise bounds


@dataclass(frozen=True)
class NoiseStabilityBounds:
    a: Fraction
    rho: Fraction
    lower: object
    upper: object


def noise_bounds(a, rho, gap=None) -> NoiseStabilityBounds:
    """Sandwich on q = P(f(X) = f(Y) = 1) given the density and correlation.

    ``gap`` defaults to eta(a); pass 1/(4a) to get the weaker variant.
    """
    a = _half_density(Fraction(a))
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise DomainError(f"rho must lie in [0, 1], got {rho}")
    g = eta(a) if gap is None else gap
    lin = 2 * a * a * g
    quad = a * (1 - a) - 2 * a * a * g
    upper = min(a, a * a + lin * rho + quad * rho * rho)
    lower = max(Fraction(0), a * a - lin * rho - quad * rho * rho)
    return NoiseStabilityBounds(a, rho, lower, upper)


# ----------------------------------------------------------- profile and grid


@dataclass(frozen=True)
class BoundProfile:
    a: Fraction
    gap_fwy: object
    gap_improved: object
    gap_chang: object
    gap_hyper: float
    eta: object
    w1_upper: object


def bound_profile(a) -> BoundProfile:
    a = _half_density(Fraction(a))
    e = eta(a)
    return BoundProfile(a, fwy_gap(a), phi(a), chang_gap(a), psi(a), e, 8 * a * a * e)


def find_crossover(f, g, lo: float, hi: float, tol: float = CROSSOVER_TOL) -> float | None:
    """Bisection for a sign change of f - g on [lo, hi]; None if no sign change."""
    d_lo = float(f(lo)) - float(g(lo))
    d_hi = float(f(hi)) - float(g(hi))
    if d_lo == 0:
        return lo
    if d_lo * d_hi > 0:
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        d = float(f(mid)) - float(g(mid))
        if d == 0:
            return mid
        if (d < 0) == (d_lo < 0):
            lo, d_lo = mid, d
        else:
            hi = mid
    return (lo + hi) / 2
