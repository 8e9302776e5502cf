"""Krawtchouk polynomials on the binary Hamming scheme.

Integer arguments are evaluated exactly with Python integers; real arguments
use generalized binomial coefficients over ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import DomainError

DEFAULT_ROOT_TOL = Fraction(1, 2**20)


def _check(n, k, x):
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 0 <= x <= n:
        raise DomainError(f"need 0 <= x <= n, got n={n}, x={x}")


@lru_cache(maxsize=None)
def _row(n: int, k: int) -> tuple[int, ...]:
    comb = math.comb
    return tuple(
        sum((-1) ** j * comb(x, j) * comb(n - x, k - j) for j in range(k + 1))
        for x in range(n + 1)
    )


def krawtchouk(n: int, k: int, x: int) -> int:
    """K_k^(n)(x) = sum_j (-1)^j C(x, j) C(n-x, k-j), exactly."""
    _check(n, k, x)
    return _row(n, k)[x]


def krawtchouk_alt(n: int, k: int, x: int) -> int:
    """Evaluate K_k^(n)(x) as sum_j (-2)^j C(x, j) C(n-j, k-j).

    Deliberately does not share code with :func:`krawtchouk`, so the two
    can be compared against each other.
    """
    _check(n, k, x)
    return sum((-2) ** j * math.comb(x, j) * math.comb(n - j, k - j) for j in range(k + 1))


def gen_binom(t, j: int) -> Fraction:
    """Generalized binomial coefficient t(t-1)...(t-j+1)/j! for rational t."""
    if j < 0:
        return Fraction(0)
    t = Fraction(t)
    num = Fraction(1)
    for i in range(j):
        num *= t - i
    return num / math.factorial(j)


def krawtchouk_real(n: int, k: int, t) -> Fraction:
    """K_k^(n)(t) for an arbitrary rational argument t."""
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    t = Fraction(t)
    return sum(
        ((-1) ** j * gen_binom(t, j) * gen_binom(n - t, k - j) for j in range(k + 1)),
        Fraction(0),
    )


class KrawtchoukTable:
    """Lazily built table of K_k^(n)(x) for a fixed n.

    Rows are computed on first access and shared through a module cache,
    so repeated sweeps over the same dimension are cheap.
    """

    def __init__(self, n: int):
        if n < 0:
            raise DomainError(f"dimension must be nonnegative, got {n}")
        self.n = n

    def row(self, k: int) -> tuple[int, ...]:
        if not 0 <= k <= self.n:
            raise DomainError(f"need 0 <= k <= {self.n}, got {k}")
        return _row(self.n, k)

    def __getitem__(self, key):
        k, x = key
        return krawtchouk(self.n, k, x)

    def as_lists(self) -> list[list[int]]:
        return [list(self.row(k)) for k in range(self.n + 1)]


@dataclass(frozen=True)
class RootBracket:
    n: int
    k: int
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def smallest_root(n: int, k: int, tol=DEFAULT_ROOT_TOL) -> RootBracket:
    """Bracket the smallest real root of K_k^(n).

    Scans integers upward from 0, then bisects the first sign change with
    exact rationals. K_k is orthogonal for a measure supported on the
    integers, so an integer separates any two of its zeros and the scan
    cannot step over a pair of roots.
    """
    if k == 0:
        raise DomainError("K_0 is constant and has no roots")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")

    # the interval n/2 +- sqrt(k(n-k)) is not a valid root enclosure for k
    # near n (K_n^(n) has a root in (0, 1)), so start from the left end
    start = 0
    x = start
    while krawtchouk(n, k, x) > 0:
        x += 1
    if krawtchouk(n, k, x) == 0:
        return RootBracket(n, k, Fraction(x), Fraction(x))

    lo, hi = Fraction(x - 1), Fraction(x)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        value = krawtchouk_real(n, k, mid)
        if value == 0:
            return RootBracket(n, k, mid, mid)
        if value > 0:
            lo = mid
        else:
            hi = mid
    return RootBracket(n, k, lo, hi)


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def magnitude_exponent(n: int, k: int, x: int) -> float:
    """Base-2 exponent of :func:`magnitude_bound`."""
    return (n / 2) * (1 + binary_entropy(k / n) - binary_entropy(x / n) + math.log2(n + 1) / n)


def magnitude_bound(n: int, k: int, x: int) -> float:
    """Entropy upper bound on |K_k^(n)(x)| (strict)."""
    if n < 1 or not (0 <= k <= n and 0 <= x <= n):
        raise DomainError(f"need 0 <= k, x <= n with n >= 1, got n={n}, k={k}, x={x}")
    return 2.0 ** magnitude_exponent(n, k, x)


def below_magnitude_bound(n: int, k: int, x: int) -> bool:
    """Check |K_k^(n)(x)| < magnitude_bound(n, k, x).

    The exact integer is rounded outward (up) before the float comparison.
    """
    value = abs(krawtchouk(n, k, x))
    as_float = math.nextafter(float(value), math.inf) if value else 0.0
    return as_float < magnitude_bound(n, k, x)
