"""Two-phase dense-tableau simplex over exact rationals.

Pivoting follows Bland's rule (smallest eligible index for both the
entering and leaving variable), which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import DomainError

RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise DomainError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))

    def slack(self, point) -> Fraction:
        """Signed slack; nonnegative iff satisfied (for '=' the residual)."""
        value = self.lhs(point)
        if self.relation == "<=":
            return self.rhs - value
        if self.relation == ">=":
            return value - self.rhs
        return value - self.rhs

    def satisfied(self, point) -> bool:
        s = self.slack(point)
        return s == 0 if self.relation == "=" else s >= 0


@dataclass(frozen=True)
class LinearProgramSpec:
    sense: str
    objective: tuple
    constraints: tuple
    nonneg: tuple = None
    names: tuple = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise DomainError(f"sense must be 'min' or 'max', got {self.sense!r}")
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        nv = len(self.objective)
        if not self.constraints:
            raise DomainError("a linear program needs at least one constraint")
        for con in self.constraints:
            if len(con.coeffs) != nv:
                raise DomainError(f"constraint has {len(con.coeffs)} coefficients, expected {nv}")
        if self.nonneg is None:
            object.__setattr__(self, "nonneg", (True,) * nv)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{j}" for j in range(nv)))

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def value(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.objective, point)), Fraction(0))

    def violations(self, point) -> list[int]:
        bad = [i for i, con in enumerate(self.constraints) if not con.satisfied(point)]
        return bad

    def is_feasible(self, point) -> bool:
        if any(flag and x < 0 for flag, x in zip(self.nonneg, point)):
            return False
        return not self.violations(point)

    def matrix(self) -> list[list[Fraction]]:
        return [list(con.coeffs) for con in self.constraints]


@dataclass
class SimplexSolution:
    status: str  # optimal | unbounded | infeasible
    optimum: Fraction = None
    point: tuple = None
    pivot_count: int = 0
    basis: list = field(default_factory=list)


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, c, obj):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            self.rows[r] = row = [v * inv for v in row]
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        coef, val = obj
        if coef[c]:
            f = coef[c]
            obj[0] = [a - f * b for a, b in zip(coef, row)]
            obj[1] = val - f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced(self, cost):
        coef = list(cost)
        val = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                coef = [a - cb * v for a, v in zip(coef, self.rows[r])]
                val -= cb * self.rhs[r]
        return [coef, val]

    def run(self, obj, allowed):
        """Minimize; obj = [reduced costs, -current value]."""
        while True:
            entering = next((j for j in allowed if obj[0][j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering, obj)


def simplex_solve(lp: LinearProgramSpec) -> SimplexSolution:
    """Solve a linear program exactly.

    Free variables are split into a difference of two nonnegative ones;
    the reported point is in the original variables.
    """
    columns = []  # (original var, sign)
    for j, flag in enumerate(lp.nonneg):
        columns.append((j, 1))
        if not flag:
            columns.append((j, -1))
    ncore = len(columns)

    rows, rhs, kinds = [], [], []
    for con in lp.constraints:
        coeffs = [con.coeffs[j] * s for j, s in columns]
        b, rel = con.rhs, con.relation
        if b < 0:
            coeffs = [-v for v in coeffs]
            b = -b
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append(coeffs)
        rhs.append(b)
        kinds.append(rel)

    m = len(rows)
    n_slack = sum(1 for k in kinds if k != "=")
    n_art = sum(1 for k in kinds if k != "<=")
    width = ncore + n_slack + n_art
    full = []
    basis = []
    art_cols = []
    s_idx, a_idx = ncore, ncore + n_slack
    for coeffs, kind in zip(rows, kinds):
        row = coeffs + [Fraction(0)] * (n_slack + n_art)
        if kind == "<=":
            row[s_idx] = Fraction(1)
            basis.append(s_idx)
            s_idx += 1
        else:
            if kind == ">=":
                row[s_idx] = Fraction(-1)
                s_idx += 1
            row[a_idx] = Fraction(1)
            basis.append(a_idx)
            art_cols.append(a_idx)
            a_idx += 1
        full.append(row)

    tab = _Tableau(full, list(rhs), basis)
    non_art = list(range(ncore + n_slack))

    if art_cols:
        cost1 = [Fraction(0)] * width
        for c in art_cols:
            cost1[c] = Fraction(1)
        obj = tab.reduced(cost1)
        tab.run(obj, list(range(width)))
        if -obj[1] != 0:
            return SimplexSolution("infeasible", pivot_count=tab.pivots)
        art_set = set(art_cols)
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] in art_set:
                col = next((j for j in non_art if tab.rows[r][j] != 0), None)
                if col is None:
                    # redundant constraint
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, col, obj)
            r += 1

    sign = 1 if lp.sense == "min" else -1
    cost2 = [Fraction(0)] * width
    for idx, (j, s) in enumerate(columns):
        cost2[idx] = sign * s * lp.objective[j]
    obj = tab.reduced(cost2)
    status = tab.run(obj, non_art)
    if status == "unbounded":
        return SimplexSolution("unbounded", pivot_count=tab.pivots)

    values = [Fraction(0)] * width
    for r, b in enumerate(tab.basis):
        values[b] = tab.rhs[r]
    point = [Fraction(0)] * lp.num_vars
    for idx, (j, s) in enumerate(columns):
        point[j] += s * values[idx]
    point = tuple(point)
    optimum = lp.value(point)
    return SimplexSolution("optimal", optimum, point, tab.pivots, list(tab.basis))


def make_lp(sense: str, objective: Sequence, rows: Sequence[tuple], names=None, nonneg=None):
    """Convenience builder: rows are (coeffs, relation, rhs) triples."""
    cons = tuple(Constraint(tuple(c), rel, b) for c, rel, b in rows)
    return LinearProgramSpec(sense, tuple(objective), cons, nonneg=nonneg, names=names)
