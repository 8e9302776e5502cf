"""Brute-force ground truth on small hypercubes.

Every search enumerates subsets in lexicographic order of their sorted 0/1
strings, so the first optimum found is the lexicographically smallest one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import SizeGuardError
from .bounds import fwy_gap, improved_bound
from .codes import BinaryCode, word_to_str
from .fourier import BooleanFunction, from_code
from .programs import avgdist_bound_from_lambda, solve_weight_program

FULL_SEARCH_MAX_N = 4
REDUCED_SEARCH_MAX_N = 5
MAX_CANDIDATES = 3_000_000


@dataclass
class SearchResult:
    optimum: Fraction
    witness: object
    explored: int
    symmetry_reduced: bool = False


def _ordered_words(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda w: word_to_str(w, n))


def _distance_table(words: list[int]) -> list[list[int]]:
    return [[bin(u ^ v).count("1") for v in words] for u in words]


def _guard(n: int, M: int, symmetry: bool, max_n: int = FULL_SEARCH_MAX_N):
    size = 1 << n
    if not 1 <= M <= size:
        raise ValueError(f"need 1 <= M <= 2^n, got M={M}")
    if symmetry:
        cost = math.comb(size - 1, M - 1)
        if n > REDUCED_SEARCH_MAX_N:
            raise SizeGuardError(
                f"symmetry-reduced search is limited to n <= {REDUCED_SEARCH_MAX_N}", cost=cost
            )
    else:
        cost = math.comb(size, M)
        if n > max_n:
            raise SizeGuardError(
                f"full search is limited to n <= {max_n}; estimated {cost} candidates", cost=cost
            )
    if cost > MAX_CANDIDATES:
        raise SizeGuardError(f"search would visit {cost} candidates", cost=cost)
    return cost


def min_avg_distance_exhaustive(n: int, M: int, symmetry: bool = False) -> SearchResult:
    """Exact minimum of D(A) over all codes of size M in dimension n.

    With ``symmetry`` the search only visits codes that contain the
    all-zero word. Every code is a translate (by XOR with one of its
    words) of such a code with the same average distance, so the optimum
    is unchanged.
    """
    _guard(n, M, symmetry)
    words = _ordered_words(n)
    dist = _distance_table(words)
    size = len(words)
    best = [None, None]
    explored = 0

    # depth-first over increasing index sequences with running pair sums
    def extend(chosen, start, total):
        nonlocal explored
        if len(chosen) == M:
            explored += 1
            if best[0] is None or total < best[0]:
                best[0], best[1] = total, list(chosen)
            return
        need = M - len(chosen)
        for j in range(start, size - need + 1):
            row = dist[j]
            chosen.append(j)
            extend(chosen, j + 1, total + sum(row[i] for i in chosen[:-1]))
            chosen.pop()

    if symmetry:
        extend([0], 1, 0)  # index 0 is the all-zero word
    else:
        extend([], 0, 0)
    total, idx = best
    optimum = Fraction(2 * total, M * M)
    witness = BinaryCode(n, frozenset(words[i] for i in idx))
    return SearchResult(optimum, witness, explored, symmetry)


def _integer_weights(n: int, members) -> list[int]:
    """4^n W_m for f = 2 * 1_A - 1, from the integer butterfly."""
    table = [-1] * (1 << n)
    for x in members:
        table[x] = 1
    h = 1
    size = 1 << n
    while h < size:
        for start in range(0, size, 2 * h):
            for j in range(start, start + h):
                u, v = table[j], table[j + h]
                table[j], table[j + h] = u + v, v - u
        h *= 2
    w = [0] * (n + 1)
    for S, c in enumerate(table):
        w[bin(S).count("1")] += c * c
    return w


def max_fourier_weight_exhaustive(n: int, M: int, m: int) -> SearchResult:
    """Exact maximum of W_m over all f with |f^-1(1)| = M."""
    _guard(n, M, False)
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}")
    best, witness, explored = None, None, 0
    for combo in itertools.combinations(_ordered_words(n), M):
        explored += 1
        wm = _integer_weights(n, combo)[m]
        if best is None or wm > best:
            best, witness = wm, combo
    code = BinaryCode(n, frozenset(witness))
    return SearchResult(Fraction(best, 1 << (2 * n)), from_code(code), explored)


@dataclass
class NoiseExtremes:
    min_q: Fraction
    max_q: Fraction
    argmin: BooleanFunction
    argmax: BooleanFunction
    explored: int


def noise_extremes_exhaustive(n: int, M: int, rho) -> NoiseExtremes:
    """Exact extremes of q = P(f(X) = f(Y) = 1) over all f with |f^-1(1)| = M."""
    _guard(n, M, False)
    rho = Fraction(rho)
    a = Fraction(M, 1 << n)
    scale = Fraction(1, 1 << (2 * n))
    powers = [rho**k for k in range(n + 1)]
    lo = hi = None
    arg_lo = arg_hi = None
    explored = 0
    for combo in itertools.combinations(_ordered_words(n), M):
        explored += 1
        w = _integer_weights(n, combo)
        q = a * a + scale * sum((powers[k] * w[k] for k in range(1, n + 1)), Fraction(0)) / 4
        if lo is None or q < lo:
            lo, arg_lo = q, combo
        if hi is None or q > hi:
            hi, arg_hi = q, combo
    to_f = lambda c: from_code(BinaryCode(n, frozenset(c)))  # noqa: E731
    return NoiseExtremes(lo, hi, to_f(arg_lo), to_f(arg_hi), explored)


def verify_duality_sweep(n_max: int, oracle_max_n: int = FULL_SEARCH_MAX_N):
    """Per (n, M) records comparing primal, dual, oracle and closed-form bounds.

    Covers 2 <= n <= n_max and 1 <= M <= 2^(n-1).
    """
    if n_max > 12:
        raise SizeGuardError("duality sweep is limited to n_max <= 12", cost=2 ** (n_max - 1))
    records = []
    for n in range(2, n_max + 1):
        for M in range(1, (1 << (n - 1)) + 1):
            a = Fraction(M, 1 << n)
            primal = solve_weight_program(n, a, 1)
            dual = solve_weight_program(n, a, 1, dual=True)
            lp_bound = avgdist_bound_from_lambda(n, a, primal.optimum)
            rec = {
                "n": n,
                "M": M,
                "a": a,
                "primal": primal.optimum,
                "dual": dual.optimum,
                "strong_duality": primal.optimum == dual.optimum,
                "lp_bound": lp_bound,
                "fwy_bound": Fraction(n, 2) - fwy_gap(a),
                "improved_bound": improved_bound(n, a),
                "fwy_tight_case": M in (1 << (n - 1), 1 << (n - 2)),
            }
            if n <= oracle_max_n:
                res = min_avg_distance_exhaustive(n, M)
                rec["oracle"] = res.optimum
                rec["oracle_ge_lp"] = res.optimum >= lp_bound
                rec["oracle_ge_improved"] = res.optimum >= improved_bound(n, a)
                rec["fwy_equality"] = res.optimum == Fraction(n, 2) - fwy_gap(a)
                rec["witness"] = res.witness.strings()
            records.append(rec)
    return records

