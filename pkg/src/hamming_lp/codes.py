"""Binary codes in the Hamming cube and their distance statistics.

Words are stored as integers. Bit ``i`` of a word holds coordinate
``x_{i+1}``; a set bit stands for the value +1 and a clear bit for -1. The
0/1 string form of a word lists coordinates left to right, so the string
``"10"`` is the word with x_1 = +1, x_2 = -1. This is the only place where
the two conventions meet.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import DomainError, InvariantError, SizeGuardError
from .krawtchouk import KrawtchoukTable

MAX_DIM = 24


def word_to_str(word: int, n: int) -> str:
    return "".join("1" if word >> i & 1 else "0" for i in range(n))


def str_to_word(bits: str) -> int:
    word = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            word |= 1 << i
        elif ch != "0":
            raise DomainError(f"not a 0/1 string: {bits!r}")
    return word


def weight(word: int) -> int:
    return bin(word).count("1")


@dataclass(frozen=True)
class BinaryCode:
    n: int
    words: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"dimension must be nonnegative, got {self.n}")
        if not isinstance(self.words, frozenset):
            object.__setattr__(self, "words", frozenset(self.words))
        limit = 1 << self.n
        for w in self.words:
            if not 0 <= w < limit:
                raise DomainError(f"word {w} does not fit in {self.n} bits")

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "BinaryCode":
        strings = list(strings)
        if not strings:
            raise DomainError("empty code")
        n = len(strings[0])
        if any(len(s) != n for s in strings):
            raise DomainError("codewords have different lengths")
        words = [str_to_word(s) for s in strings]
        if len(set(words)) != len(words):
            raise DomainError("duplicate codewords")
        return cls(n, frozenset(words))

    @classmethod
    def from_pm1(cls, vectors: Iterable[Sequence[int]]) -> "BinaryCode":
        """Build a code from +-1 vectors."""
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            raise DomainError("empty code")
        n = len(vectors[0])
        words = set()
        for v in vectors:
            if len(v) != n or any(c not in (-1, 1) for c in v):
                raise DomainError(f"not a +-1 vector of length {n}: {v}")
            words.add(sum(1 << i for i, c in enumerate(v) if c == 1))
        return cls(n, frozenset(words))

    def __len__(self):
        return len(self.words)

    @property
    def M(self) -> int:
        return len(self.words)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.words), 1 << self.n)

    def sorted_words(self) -> list[int]:
        """Words in lexicographic order of their 0/1 strings."""
        return sorted(self.words, key=lambda w: word_to_str(w, self.n))

    def strings(self) -> list[str]:
        return [word_to_str(w, self.n) for w in self.sorted_words()]

    def pm1(self) -> list[tuple[int, ...]]:
        return [tuple(1 if w >> i & 1 else -1 for i in range(self.n)) for w in self.sorted_words()]

    def complement(self) -> "BinaryCode":
        return BinaryCode(self.n, frozenset(range(1 << self.n)) - self.words)

    def array(self) -> np.ndarray:
        return np.fromiter(sorted(self.words), dtype=np.int64, count=len(self.words))


@dataclass(frozen=True)
class DistanceDistribution:
    n: int
    M: int
    p: tuple

    def __post_init__(self):
        if len(self.p) != self.n + 1:
            raise InvariantError("distribution must have n + 1 entries")

    def check(self):
        if self.p[0] != Fraction(1, self.M) or sum(self.p) != 1 or min(self.p) < 0:
            raise InvariantError(f"invalid distance distribution {self.p}")
        return self


@dataclass(frozen=True)
class DualDistribution:
    n: int
    M: int
    q: tuple

    def __post_init__(self):
        if len(self.q) != self.n + 1:
            raise InvariantError("distribution must have n + 1 entries")

    @property
    def density(self) -> Fraction:
        return Fraction(self.M, 1 << self.n)

    def check(self):
        if self.q[0] != 1 or min(self.q) < 0 or sum(self.q) != Fraction(1 << self.n, self.M):
            raise InvariantError(f"invalid dual distribution {self.q}")
        return self


def _require_nonempty(code: BinaryCode):
    if not code.words:
        raise DomainError("empty code")


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr.astype(np.uint64)).astype(np.int64)


def _fwht_int(values: np.ndarray) -> np.ndarray:
    """Unnormalized integer Walsh-Hadamard butterfly, returns a new array."""
    a = values.copy()
    h = 1
    size = a.shape[0]
    while h < size:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1)
        a = a.reshape(size)
        h *= 2
    return a


def pair_counts_direct(code: BinaryCode) -> list[int]:
    """Ordered pairs at each distance, by popcount over all pairs."""
    _require_nonempty(code)
    words = code.array()
    counts = np.zeros(code.n + 1, dtype=np.int64)
    chunk = max(1, 2**22 // len(words))
    for start in range(0, len(words), chunk):
        block = words[start:start + chunk, None] ^ words[None, :]
        counts += np.bincount(_popcount(block).ravel(), minlength=code.n + 1)
    return [int(c) for c in counts]


def pair_counts_autocorrelation(code: BinaryCode) -> list[int]:
    """Ordered pairs at each distance, via the autocorrelation of the indicator.

    The number of ordered pairs with difference u is obtained from the
    squared Walsh-Hadamard spectrum of the indicator, then bucketed by
    weight.
    """
    _require_nonempty(code)
    n = code.n
    if n > MAX_DIM:
        raise SizeGuardError(f"n={n} exceeds the limit {MAX_DIM}", cost=2**n)
    dtype = np.int64 if n <= 20 else object
    indicator = np.zeros(1 << n, dtype=dtype)
    indicator[code.array()] = 1
    spectrum = _fwht_int(indicator)
    autocorr = _fwht_int(spectrum * spectrum)
    weights = _popcount(np.arange(1 << n, dtype=np.int64))
    counts = [0] * (n + 1)
    for w in range(n + 1):
        counts[w] = int(autocorr[weights == w].sum()) >> n
    return counts


def pair_counts(code: BinaryCode) -> list[int]:
    M = len(code)
    if M * M > (1 << code.n) * max(code.n, 1):
        return pair_counts_autocorrelation(code)
    return pair_counts_direct(code)


def distance_distribution(code: BinaryCode) -> DistanceDistribution:
    _require_nonempty(code)
    M = len(code)
    counts = pair_counts(code)
    return DistanceDistribution(code.n, M, tuple(Fraction(c, M * M) for c in counts))


def average_distance(code: BinaryCode) -> Fraction:
    P = distance_distribution(code)
    return sum((i * p for i, p in enumerate(P.p)), Fraction(0))


def distance_enumerator(code: BinaryCode, z) -> Fraction:
    """Gamma_z(A) = sum_i P(i) z^i."""
    z = Fraction(z)
    return sum((p * z**i for i, p in enumerate(distance_distribution(code).p)), Fraction(0))


def dual_enumerator(Q: DualDistribution, z) -> Fraction:
    """Pi_z(A) = sum_i Q(i) z^i."""
    z = Fraction(z)
    return sum((q * z**i for i, q in enumerate(Q.q)), Fraction(0))


def dual_distribution_direct(code: BinaryCode) -> DualDistribution:
    """Dual distance distribution from its character-sum definition.

    Q(i) = M^-2 * sum over weight-i vectors u of (sum_x (-1)^<u, x>)^2,
    evaluated literally (O(2^n M)), with no fast transform involved.
    """
    _require_nonempty(code)
    n, M = code.n, len(code)
    if n > MAX_DIM:
        raise SizeGuardError(f"n={n} exceeds the limit {MAX_DIM}", cost=(2**n) * M)
    words = code.array()
    totals = [0] * (n + 1)
    chunk = max(1, 2**22 // M)
    for start in range(0, 1 << n, chunk):
        us = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        parity = _popcount(us[:, None] & words[None, :]) & 1
        sums = M - 2 * parity.sum(axis=1)
        sq = sums * sums
        wts = _popcount(us)
        for w, s in zip(wts.tolist(), sq.tolist()):
            totals[w] += s
    return DualDistribution(n, M, tuple(Fraction(t, M * M) for t in totals))


def krawtchouk_transform(P: DistanceDistribution) -> DualDistribution:
    """Q(k) = sum_i P(i) K_k(i)."""
    table = KrawtchoukTable(P.n)
    q = tuple(
        sum((p * K for p, K in zip(P.p, table.row(k))), Fraction(0)) for k in range(P.n + 1)
    )
    return DualDistribution(P.n, P.M, q)


def inverse_krawtchouk_transform(Q: DualDistribution) -> DistanceDistribution:
    """P(k) = 2^-n sum_i Q(i) K_k(i)."""
    table = KrawtchoukTable(Q.n)
    scale = Fraction(1, 1 << Q.n)
    p = tuple(
        scale * sum((q * K for q, K in zip(Q.q, table.row(k))), Fraction(0))
        for k in range(Q.n + 1)
    )
    return DistanceDistribution(Q.n, Q.M, p)


def avg_distance_from_dual(Q: DualDistribution) -> Fraction:
    """Average distance (n+1)/2 - 1/(2a) + (1/2) sum_{i>=2} Q(i)."""
    a = Q.density
    return Fraction(Q.n + 1, 2) - 1 / (2 * a) + sum(Q.q[2:], Fraction(0)) / 2


def extend_code(code: BinaryCode, k: int) -> BinaryCode:
    """Product code A x {-1, 1}^k (new coordinates appended)."""
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if code.n + k > MAX_DIM:
        raise SizeGuardError(f"dimension {code.n + k} exceeds the limit {MAX_DIM}")
    shift = code.n
    return BinaryCode(
        code.n + k, frozenset(w | (c << shift) for w in code.words for c in range(1 << k))
    )


def complement_distance(code: BinaryCode) -> Fraction:
    """Average distance of the complement, from the complement identity.

    |A|^2 D(A) - |A^c|^2 D(A^c) = (|A| - |A^c|) n 2^(n-1).
    """
    _require_nonempty(code)
    n, M = code.n, len(code)
    Mc = (1 << n) - M
    if Mc == 0:
        raise DomainError("the full cube has an empty complement")
    D = average_distance(code)
    return (M * M * D - (M - Mc) * n * Fraction(1 << n, 2)) / (Mc * Mc)


def hamming_ball(n: int, r: int) -> BinaryCode:
    """All words within distance r of the all-zero (all -1) word."""
    if not 0 <= r <= n:
        raise DomainError(f"need 0 <= r <= n, got n={n}, r={r}")
    if n > MAX_DIM:
        raise SizeGuardError(f"n={n} exceeds the limit {MAX_DIM}", cost=2**n)
    words = set()
    for w in range(r + 1):
        for support in itertools.combinations(range(n), w):
            words.add(sum(1 << i for i in support))
    return BinaryCode(n, frozenset(words))


def subcube(n: int, i: int) -> BinaryCode:
    """Words whose first i coordinates are +1."""
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got n={n}, i={i}")
    if n > MAX_DIM:
        raise SizeGuardError(f"n={n} exceeds the limit {MAX_DIM}", cost=2**n)
    fixed = (1 << i) - 1
    return BinaryCode(n, frozenset(fixed | (c << i) for c in range(1 << (n - i))))


def random_code(n: int, M: int, rng: random.Random) -> BinaryCode:
    if not 1 <= M <= 1 << n:
        raise DomainError(f"need 1 <= M <= 2^n, got M={M}")
    return BinaryCode(n, frozenset(rng.sample(range(1 << n), M)))


def parse_code(text: str) -> BinaryCode:
    """Parse the code file format: one 0/1 codeword per line.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return BinaryCode.from_strings(lines)


def read_code(path) -> BinaryCode:
    return parse_code(Path(path).read_text())


def format_code(code: BinaryCode) -> str:
    return "".join(s + "\n" for s in code.strings())


def write_code(code: BinaryCode, path) -> None:
    Path(path).write_text(format_code(code))


def distance_sum(words: Sequence[int]) -> int:
    """Sum of distances over ordered pairs of the given words."""
    total = 0
    for u, v in itertools.combinations(words, 2):
        total += weight(u ^ v)
    return 2 * total


def gap(code: BinaryCode) -> Fraction:
    """n/2 - D(A), the quantity plotted against the density."""
    return Fraction(code.n, 2) - average_distance(code)

