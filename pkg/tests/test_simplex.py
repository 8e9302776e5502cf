from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hamming_lp import DomainError
from hamming_lp.simplex import Constraint, make_lp, simplex_solve


def test_textbook_max():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    lp = make_lp("max", [3, 5], [([1, 0], "<=", 4), ([0, 2], "<=", 12), ([3, 2], "<=", 18)])
    sol = simplex_solve(lp)
    assert sol.status == "optimal"
    assert sol.optimum == 36 and sol.point == (2, 6)


def test_equality_and_surplus_rows():
    # min x + y, x + 2y >= 3, x - y = 0 -> (1, 1)
    lp = make_lp("min", [1, 1], [([1, 2], ">=", 3), ([1, -1], "=", 0)])
    sol = simplex_solve(lp)
    assert sol.optimum == 2 and sol.point == (1, 1)


def test_negative_rhs_is_flipped():
    lp = make_lp("min", [1], [([-1], "<=", -3)])
    assert simplex_solve(lp).optimum == 3


def test_infeasible():
    lp = make_lp("max", [1, 1], [([1, 1], "<=", 1), ([1, 1], ">=", 2)])
    assert simplex_solve(lp).status == "infeasible"


def test_unbounded():
    lp = make_lp("max", [1, 0], [([1, -1], "<=", 1)])
    assert simplex_solve(lp).status == "unbounded"


def test_free_variable():
    lp = make_lp("min", [1], [([1], ">=", -5)], nonneg=(False,))
    sol = simplex_solve(lp)
    assert sol.optimum == -5 and sol.point == (-5,)


def test_redundant_equalities():
    lp = make_lp("min", [1, 2], [([1, 1], "=", 2), ([2, 2], "=", 4)])
    sol = simplex_solve(lp)
    assert sol.optimum == 2 and sol.point == (2, 0)


def test_beale_cycling_example_terminates():
    # classical LP on which the largest-coefficient rule cycles
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    rows = [
        ([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0),
        ([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    sol = simplex_solve(make_lp("min", c, rows))
    assert sol.status == "optimal"
    assert sol.optimum == Fraction(-1, 20)


def test_constraint_helpers():
    con = Constraint((1, 2), "<=", 5)
    assert con.slack((1, 1)) == 2 and con.satisfied((1, 2))
    with pytest.raises(DomainError):
        Constraint((1,), "<", 1)
    with pytest.raises(DomainError):
        make_lp("max", [1, 2], [([1], "<=", 1)])


def _vertex_optimum(c, rows):
    """Best objective over all vertices of {x >= 0, rows} in two variables."""
    lines = [(a, b) for a, _, b in rows] + [((1, 0), 0), ((0, 1), 0)]
    best = None
    for (a1, b1), (a2, b2) in combinations(lines, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det == 0:
            continue
        x = Fraction(b1 * a2[1] - a1[1] * b2, det)
        y = Fraction(a1[0] * b2 - b1 * a2[0], det)
        if x < 0 or y < 0 or any(a[0] * x + a[1] * y > b for a, _, b in rows):
            continue
        v = c[0] * x + c[1] * y
        best = v if best is None else max(best, v)
    return best


small = st.integers(0, 6)


@settings(max_examples=200)
@given(
    st.tuples(small, small),
    st.lists(st.tuples(st.tuples(st.integers(1, 6), st.integers(1, 6)), small), min_size=1, max_size=4),
)
def test_matches_vertex_enumeration(c, raw):
    # positive coefficients keep the region bounded
    rows = [(a, "<=", b) for a, b in raw]
    sol = simplex_solve(make_lp("max", c, rows))
    assert sol.status == "optimal"
    assert sol.optimum == _vertex_optimum(c, rows)
    assert make_lp("max", c, rows).is_feasible(sol.point)
