"""Boolean functions, their Fourier spectra and noise stability.

A truth table is indexed by the integer whose bit ``i`` is coordinate
``x_{i+1}`` (set bit = +1), matching the word encoding in :mod:`codes`.
Entry ``table[x]`` is f(x) in {-1, +1}. The Fourier coefficient of a
subset S is indexed by the mask of S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import DomainError, InvariantError
from .codes import BinaryCode, DualDistribution, weight


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise DomainError(f"truth table must have 2^{self.n} entries, got {len(self.table)}")
        if any(v not in (-1, 1) for v in self.table):
            raise DomainError("truth table values must be -1 or +1")

    @property
    def M(self) -> int:
        return sum(1 for v in self.table if v == 1)

    @property
    def density(self) -> Fraction:
        return Fraction(self.M, 1 << self.n)

    def preimage(self) -> BinaryCode:
        """f^-1(1) as a code."""
        return BinaryCode(self.n, frozenset(x for x, v in enumerate(self.table) if v == 1))

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class FourierSpectrum:
    n: int
    coeffs: tuple  # Fraction per subset mask

    def __getitem__(self, mask):
        return self.coeffs[mask]

    def parseval(self) -> Fraction:
        return sum((c * c for c in self.coeffs), Fraction(0))


@dataclass(frozen=True)
class WeightProfile:
    n: int
    a: Fraction
    w: tuple

    def __getitem__(self, m):
        return self.w[m]


def from_code(code: BinaryCode) -> BooleanFunction:
    """f = 2 * 1_A - 1."""
    words = code.words
    return BooleanFunction(code.n, tuple(1 if x in words else -1 for x in range(1 << code.n)))


def from_table_bits(bits: str) -> BooleanFunction:
    bits = bits.strip()
    size = len(bits)
    n = size.bit_length() - 1
    if size == 0 or 1 << n != size:
        raise DomainError(f"truth table length {size} is not a power of two")
    if set(bits) - {"0", "1"}:
        raise DomainError("truth table must be a 0/1 string")
    return BooleanFunction(n, tuple(1 if c == "1" else -1 for c in bits))


def to_table_bits(f: BooleanFunction) -> str:
    return "".join("1" if v == 1 else "0" for v in f.table)


def read_truth_table(path) -> BooleanFunction:
    """Read the single-line truth-table file format (1 -> +1, 0 -> -1)."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 1:
        raise DomainError("truth-table file must hold exactly one nonblank line")
    return from_table_bits(lines[0])


def write_truth_table(f: BooleanFunction, path) -> None:
    Path(path).write_text(to_table_bits(f) + "\n")


def dictator(n: int, i: int = 0) -> BooleanFunction:
    return BooleanFunction(n, tuple(1 if x >> i & 1 else -1 for x in range(1 << n)))


def constant(n: int, value: int = 1) -> BooleanFunction:
    return BooleanFunction(n, (value,) * (1 << n))


def wht_integer(f: BooleanFunction) -> list[int]:
    """2^n * f_hat(S) for every mask S, via the in-place butterfly."""
    a = list(f.table)
    h = 1
    size = len(a)
    while h < size:
        for start in range(0, size, 2 * h):
            for j in range(start, start + h):
                u, v = a[j], a[j + h]
                # chi_S(x) = prod_{i in S} x_i, and x_i = -1 on a clear bit
                a[j], a[j + h] = u + v, v - u
        h *= 2
    return a


def wht(f: BooleanFunction) -> FourierSpectrum:
    scale = 1 << f.n
    return FourierSpectrum(f.n, tuple(Fraction(c, scale) for c in wht_integer(f)))


def chi(mask: int, x: int) -> int:
    """chi_S(x) for the +-1 point encoded by x."""
    return -1 if weight(mask & ~x) % 2 else 1


def fourier_coefficient_direct(f: BooleanFunction, mask: int) -> Fraction:
    """f_hat(S) straight from the expectation, for cross-checks."""
    total = sum(v * chi(mask, x) for x, v in enumerate(f.table))
    return Fraction(total, 1 << f.n)


def evaluate_expansion(spec: FourierSpectrum, x: int) -> Fraction:
    return sum((c * chi(S, x) for S, c in enumerate(spec.coeffs) if c), Fraction(0))


def weight_profile(spec: FourierSpectrum, a) -> WeightProfile:
    if spec.parseval() != 1:
        raise InvariantError("Parseval identity fails: not the spectrum of a Boolean function")
    w = [Fraction(0)] * (spec.n + 1)
    for S, c in enumerate(spec.coeffs):
        w[weight(S)] += c * c
    return WeightProfile(spec.n, Fraction(a), tuple(w))


def weights_of(f: BooleanFunction) -> WeightProfile:
    """Weight profile of f with the density taken from f itself."""
    n = f.n
    w = [0] * (n + 1)
    for S, c in enumerate(wht_integer(f)):
        w[weight(S)] += c * c
    scale = 1 << (2 * n)
    return WeightProfile(n, f.density, tuple(Fraction(v, scale) for v in w))


def dual_from_weights(profile: WeightProfile) -> DualDistribution:
    """Q(0) = 1 and Q(k) = W_k / (4a^2) for k >= 1."""
    a = profile.a
    if not 0 < a <= 1:
        raise DomainError(f"density must lie in (0, 1], got {a}")
    q = (Fraction(1),) + tuple(wk / (4 * a * a) for wk in profile.w[1:])
    M = a * (1 << profile.n)
    if M.denominator != 1:
        raise DomainError(f"density {a} is not a multiple of 2^-{profile.n}")
    return DualDistribution(profile.n, int(M), q)


def w1_distance_bridge(n: int, a, D) -> Fraction:
    """W_1 = 4a^2 (n - 2D)."""
    a = Fraction(a)
    if not 0 < a <= 1:
        raise DomainError(f"density must lie in (0, 1], got {a}")
    return 4 * a * a * (n - 2 * Fraction(D))


def _check_rho(rho):
    rho = Fraction(rho)
    if not -1 <= rho <= 1:
        raise DomainError(f"rho must lie in [-1, 1], got {rho}")
    return rho


def noise_stability(f: BooleanFunction, rho) -> Fraction:
    """Stab_rho[f] = sum_m rho^m W_m."""
    rho = _check_rho(rho)
    profile = weights_of(f)
    return sum((rho**m * wm for m, wm in enumerate(profile.w)), Fraction(0))


def q_agree(f: BooleanFunction, rho) -> Fraction:
    """P(f(X) = f(Y) = 1) = a^2 + (1/4) sum_{k>=1} rho^k W_k."""
    rho = _check_rho(rho)
    profile = weights_of(f)
    a = profile.a
    return a * a + sum((rho**k * wk for k, wk in enumerate(profile.w) if k), Fraction(0)) / 4


def q_from_dual(Q: DualDistribution, rho) -> Fraction:
    """q = a^2 Pi_rho(A)."""
    rho = _check_rho(rho)
    a = Q.density
    return a * a * sum((rho**k * qk for k, qk in enumerate(Q.q)), Fraction(0))


def channel_pair_probability(n: int, x: int, y: int, rho) -> Fraction:
    """P_XY^n(x, y) for the rho-correlated pair channel."""
    rho = Fraction(rho)
    d = weight(x ^ y)
    return ((1 + rho) / 4) ** (n - d) * ((1 - rho) / 4) ** d


def q_agree_direct(f: BooleanFunction, rho, max_n: int = 8) -> Fraction:
    """q by summing the channel over all 4^n input pairs."""
    rho = _check_rho(rho)
    if f.n > max_n:
        raise DomainError(f"direct expectation is limited to n <= {max_n}")
    ones = [x for x, v in enumerate(f.table) if v == 1]
    return sum(
        (channel_pair_probability(f.n, x, y, rho) for x, y in itertools.product(ones, ones)),
        Fraction(0),
    )


def stability_from_q(a, q) -> Fraction:
    """Stab = 2(1 + 2q - 2a) - 1."""
    return 2 * (1 + 2 * Fraction(q) - 2 * Fraction(a)) - 1
