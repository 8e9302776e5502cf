"""The average-distance and Fourier-weight linear programs and their dual
certificates.

All four programs live in the dual-distribution picture: the unknowns of
the minimization are relaxed values u_i of the dual distance distribution,
and the maximization is its linear-programming dual with one variable x_k
per Krawtchouk constraint. A density ``a`` is always an exact rational.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import DomainError
from .krawtchouk import KrawtchoukTable, krawtchouk
from .simplex import Constraint, LinearProgramSpec, SimplexSolution, simplex_solve

MAX_SOLVE_N = 14


def _density(n: int, a, dyadic: bool = True) -> Fraction:
    a = Fraction(a)
    if not 0 < a <= Fraction(1, 2):
        raise DomainError(f"density must lie in (0, 1/2], got {a}")
    if dyadic and (a * (1 << n)).denominator != 1:
        raise DomainError(f"density {a} is not of the form M/2^{n}")
    return a


def _degree(n: int, m: int) -> int:
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")
    return m


def build_weight_primal(n: int, a, m: int) -> LinearProgramSpec:
    """Minimize sum_{i != 0, m} u_i over relaxed dual distributions.

    Constraint k in [1:n]:
        sum_{i != m} [K_k(m) - K_k(i)] u_i <= K_k(0) + (1/a - 1) K_k(m)
    """
    a = _density(n, a)
    _degree(n, m)
    K = KrawtchoukTable(n)
    idx = [i for i in range(1, n + 1) if i != m]
    rest = 1 / a - 1
    rows = []
    for k in range(1, n + 1):
        row = K.row(k)
        coeffs = tuple(row[m] - row[i] for i in idx)
        rows.append(Constraint(coeffs, "<=", row[0] + rest * row[m]))
    return LinearProgramSpec(
        "min", (1,) * len(idx), tuple(rows), names=tuple(f"u{i}" for i in idx)
    )


def build_weight_dual(n: int, a, m: int) -> LinearProgramSpec:
    """Maximize -sum_k [K_k(0) + (1/a - 1) K_k(m)] x_k.

    Constraint i in [1:n] minus {m}:
        sum_k [K_k(m) - K_k(i)] x_k >= -1
    """
    a = _density(n, a)
    _degree(n, m)
    K = KrawtchoukTable(n)
    rest = 1 / a - 1
    objective = tuple(-(K.row(k)[0] + rest * K.row(k)[m]) for k in range(1, n + 1))
    rows = []
    for i in range(1, n + 1):
        if i == m:
            continue
        coeffs = tuple(K.row(k)[m] - K.row(k)[i] for k in range(1, n + 1))
        rows.append(Constraint(coeffs, ">=", -1))
    return LinearProgramSpec(
        "max", objective, tuple(rows), names=tuple(f"x{k}" for k in range(1, n + 1))
    )


def build_avgdist_primal(n: int, a) -> LinearProgramSpec:
    """The average-distance primal: variables u_2..u_n."""
    return build_weight_primal(n, a, 1)


def build_avgdist_dual(n: int, a) -> LinearProgramSpec:
    """The average-distance dual: variables x_1..x_n."""
    return build_weight_dual(n, a, 1)


def _check_solvable(n: int):
    if n > MAX_SOLVE_N:
        from . import SizeGuardError

        raise SizeGuardError(
            f"exact simplex is limited to n <= {MAX_SOLVE_N} (got n={n})",
            cost=n * n * math.comb(n, n // 2),
        )


def solve_weight_program(n: int, a, m: int = 1, dual: bool = False) -> SimplexSolution:
    _check_solvable(n)
    lp = build_weight_dual(n, a, m) if dual else build_weight_primal(n, a, m)
    return simplex_solve(lp)


def lambda_exact(n: int, a) -> Fraction:
    """Exact optimum of the average-distance program."""
    sol = solve_weight_program(n, a, 1, dual=True)
    if sol.status != "optimal":
        raise DomainError(f"dual program is {sol.status} at n={n}, a={a}")
    return sol.optimum


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class DualCertificate:
    n: int
    x: tuple  # x[k-1] is the multiplier of constraint k
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        if len(self.x) != self.n:
            raise DomainError(f"certificate must have {self.n} entries, got {len(self.x)}")

    def support(self) -> list[int]:
        return [k for k in range(1, self.n + 1) if self.x[k - 1]]

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "x": [str(v) for v in self.x]}

    @classmethod
    def from_json(cls, data) -> "DualCertificate":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(Fraction(v) for v in data["x"]), int(data.get("m", 1)))


def save_certificate(cert: DualCertificate, path) -> None:
    Path(path).write_text(json.dumps(cert.to_json(), indent=2) + "\n")


def load_certificate(path) -> DualCertificate:
    return DualCertificate.from_json(Path(path).read_text())


@dataclass
class FeasibilityReport:
    feasible: bool
    violations: list = field(default_factory=list)  # constraint indices i
    slacks: dict = field(default_factory=dict)  # i -> lhs + 1 (>= 0 iff satisfied)
    negative_entries: list = field(default_factory=list)  # k with x_k < 0

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "violations": [{"i": i, "slack": str(self.slacks[i])} for i in self.violations],
            "negative_entries": self.negative_entries,
            "min_slack": str(min(self.slacks.values())) if self.slacks else None,
        }


def check_feasibility(cert: DualCertificate, n: int, a=None, m: int = 1) -> FeasibilityReport:
    """Evaluate every dual constraint at the certificate, exactly.

    The constraints do not involve the density; ``a`` is accepted for
    symmetry with :func:`dual_objective`.
    """
    if cert.n != n:
        raise DomainError(f"certificate has n={cert.n}, expected {n}")
    _degree(n, m)
    support = cert.support()
    rows = {k: KrawtchoukTable(n).row(k) for k in support}
    slacks = {}
    violations = []
    for i in range(1, n + 1):
        if i == m:
            continue
        lhs = sum((cert.x[k - 1] * (rows[k][m] - rows[k][i]) for k in support), Fraction(0))
        slack = lhs + 1
        slacks[i] = slack
        if slack < 0:
            violations.append(i)
    negative = [k for k in range(1, n + 1) if cert.x[k - 1] < 0]
    return FeasibilityReport(not violations and not negative, violations, slacks, negative)


def dual_objective(cert: DualCertificate, n: int, a, m: int = 1) -> Fraction:
    """-sum_k [K_k(0) + (1/a - 1) K_k(m)] x_k at the certificate."""
    if cert.n != n:
        raise DomainError(f"certificate has n={cert.n}, expected {n}")
    a = Fraction(a)
    if a <= 0:
        raise DomainError(f"density must be positive, got {a}")
    rest = 1 / a - 1
    total = Fraction(0)
    for k in cert.support():
        total -= (math.comb(n, k) + rest * krawtchouk(n, k, m)) * cert.x[k - 1]
    return total


def fwy_certificate(n: int, m: int = 1) -> DualCertificate:
    """The certificate (0, ..., 0, 1/2)."""
    return DualCertificate(n, (0,) * (n - 1) + (Fraction(1, 2),), m)


def zero_certificate(n: int, m: int = 1) -> DualCertificate:
    return DualCertificate(n, (0,) * n, m)


def certificate_index(n: int, beta) -> int:
    """k = 2 floor(beta n / 2)."""
    return 2 * math.floor(Fraction(beta) * n / 2)


def certificate_from_index(n: int, k: int) -> DualCertificate:
    """The 2-sparse certificate supported on k, k+1, in closed form."""
    if k < 2 or k + 1 > n:
        raise DomainError(f"need 2 <= k and k + 1 <= n, got n={n}, k={k}")
    r = Fraction(k, n)
    e = Fraction(1, n)
    common = 2 * r - 1 + e * (2 * r + 2 * e - 1)
    if common == 0:
        raise DomainError(f"degenerate certificate at n={n}, k={k}")
    xk = (1 + 2 * (r + e) ** 2 - 2 * (r + e) - e) / (math.comb(n, k) * 2 * r * common)
    xk1 = (1 - r) / (math.comb(n, k + 1) * common)
    x = [Fraction(0)] * n
    x[k - 1] = xk
    x[k] = xk1
    return DualCertificate(n, tuple(x), 1)


def improved_certificate(n: int, beta) -> DualCertificate:
    """The 2-sparse certificate for a given beta in (1/2, 1)."""
    beta = Fraction(beta)
    if not Fraction(1, 2) < beta < 1:
        raise DomainError(f"beta must lie in (1/2, 1), got {beta}")
    return certificate_from_index(n, certificate_index(n, beta))


def certificate_system(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Solve the 2x2 system tying constraints i = 2 and i = n, by Cramer's rule.

    [K_k(i) - K_k(1)] x_k + [K_{k+1}(i) - K_{k+1}(1)] x_{k+1} = 1 for i in {2, n}.
    """
    K = lambda kk, i: krawtchouk(n, kk, i)  # noqa: E731
    a11, a12 = K(k, 2) - K(k, 1), K(k + 1, 2) - K(k + 1, 1)
    a21, a22 = K(k, n) - K(k, 1), K(k + 1, n) - K(k + 1, 1)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise DomainError(f"singular system at n={n}, k={k}")
    return Fraction(a22 - a12, det), Fraction(a11 - a21, det)


def certificate_residuals(cert: DualCertificate, k: int) -> tuple[Fraction, Fraction]:
    n = cert.n
    xk, xk1 = cert.x[k - 1], cert.x[k]
    out = []
    for i in (2, n):
        lhs = (krawtchouk(n, k, i) - krawtchouk(n, k, 1)) * xk + (
            krawtchouk(n, k + 1, i) - krawtchouk(n, k + 1, 1)
        ) * xk1
        out.append(lhs - 1)
    return tuple(out)


def beta_star_index(n: int, a) -> int | None:
    """k = 2 floor(beta* n / 2) with beta* = 1 / (2 (1 - sqrt a)), exactly.

    Returns None when a >= 1/4, where beta* = 1 and the certificate is
    undefined.
    """
    a = Fraction(a)
    if a >= Fraction(1, 4):
        return None
    # largest j with 4 j (1 - sqrt a) <= n, i.e. 4j - n <= 4j sqrt(a)
    def fits(j):
        lhs = 4 * j - n
        return lhs <= 0 or lhs * lhs <= 16 * j * j * a

    j = n // 2
    while not fits(j):
        j -= 1
    while fits(j + 1):
        j += 1
    return 2 * j


def best_certificate(n: int, a) -> tuple[DualCertificate, str]:
    """The better of the (0, ..., 0, 1/2) certificate and the 2-sparse one.

    The 2-sparse certificate is only used when it exists and passes the
    exact feasibility check.
    """
    a = Fraction(a)
    best, label = fwy_certificate(n), "fwy"
    best_val = dual_objective(best, n, a)
    k = beta_star_index(n, a)
    if k is not None and 2 <= k and k + 1 <= n:
        try:
            cand = certificate_from_index(n, k)
        except DomainError:
            return best, label
        if check_feasibility(cand, n, a).feasible:
            val = dual_objective(cand, n, a)
            if val > best_val:
                best, label = cand, "improved"
    return best, label


def avgdist_bound_from_lambda(n: int, a, lam) -> Fraction:
    """n/2 + 1/2 - 1/(2a) + lam/2."""
    a = Fraction(a)
    return Fraction(n, 2) + Fraction(1, 2) - 1 / (2 * a) + Fraction(lam) / 2


def min_avgdist_lower_bound(n: int, a, method: str = "lp-exact") -> Fraction:
    """Lower bound on the minimum average distance at density a."""
    if method == "lp-exact":
        a = _density(n, a)
        return avgdist_bound_from_lambda(n, a, lambda_exact(n, a))
    if method in ("certificate", "fwy"):
        a = _density(n, a, dyadic=False)
        cert = fwy_certificate(n) if method == "fwy" else best_certificate(n, a)[0]
        return avgdist_bound_from_lambda(n, a, dual_objective(cert, n, a))
    raise DomainError(f"unknown method {method!r}")


def weight_bound_from_phi(a, phi) -> Fraction:
    """W_m <= 4a^2 (1/a - 1 - Phi_m)."""
    a = Fraction(a)
    return 4 * a * a * (1 / a - 1 - Fraction(phi))
