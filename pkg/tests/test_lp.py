import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conecert.lp import LE, GE, EQ, lp_solve, make_lp, verify_farkas

coef = st.integers(-6, 6)


def test_box_maximum():
    p = make_lp(1, [([1], GE, 0), ([1], LE, 1)], objective=([1], "max"))
    out = lp_solve(p)
    assert out.status == "feasible"
    assert out.optimum == 1
    assert out.point == (F(1),)


def test_infeasible_with_farkas():
    p = make_lp(1, [([1], GE, 1), ([1], LE, 0)])
    out = lp_solve(p)
    assert out.status == "infeasible"
    assert out.farkas is not None
    assert verify_farkas(p, out.farkas)
    # the canonical multipliers (1, 1) also certify this system
    assert verify_farkas(p, (F(1), F(1)))


def test_square_vertex_optimum():
    # brute-force oracle: the optimum of x+y over [-1,1]^2 sits at a vertex
    rows = [([1, 0], LE, 1), ([1, 0], GE, -1), ([0, 1], LE, 1), ([0, 1], GE, -1)]
    best = max(x + y for x, y in itertools.product((-1, 1), repeat=2))
    out = lp_solve(make_lp(2, rows, objective=([1, 1], "max")))
    assert out.status == "feasible"
    assert out.optimum == best == 2
    assert out.point == (F(1), F(1))


def test_unbounded():
    p = make_lp(1, [([1], GE, 0)], objective=([1], "max"))
    out = lp_solve(p)
    assert out.status == "unbounded"
    assert out.optimum is None


def test_equality_constraints():
    p = make_lp(2, [([1, 1], EQ, 3), ([1, -1], EQ, 1)])
    out = lp_solve(p)
    assert out.status == "feasible"
    assert out.point == (F(2), F(1))


def test_infeasible_equalities():
    p = make_lp(2, [([1, 1], EQ, 1), ([2, 2], EQ, 3)])
    out = lp_solve(p)
    assert out.status == "infeasible"
    assert verify_farkas(p, out.farkas)


def test_minimization():
    p = make_lp(2, [([1, 0], GE, -2), ([0, 1], GE, -3), ([1, 1], LE, 10)],
                objective=([1, 1], "min"))
    out = lp_solve(p)
    assert out.optimum == -5


def test_degenerate_redundant_rows():
    p = make_lp(2, [([1, 1], EQ, 2), ([2, 2], EQ, 4), ([1, 0], GE, 0), ([0, 1], GE, 0)],
                objective=([1, 0], "max"))
    out = lp_solve(p)
    assert out.status == "feasible"
    assert out.optimum == 2


@given(st.lists(st.tuples(st.lists(coef, min_size=2, max_size=2),
                          st.sampled_from([LE, GE, EQ]),
                          st.integers(-5, 5)),
                min_size=1, max_size=6))
def test_status_certificates_verify(rows):
    p = make_lp(2, rows)
    out = lp_solve(p)
    if out.status == "feasible":
        assert all(c.holds_at(out.point) for c in p.constraints)
    else:
        assert verify_farkas(p, out.farkas)


@given(st.permutations(range(4)))
def test_row_permutation_invariance(perm):
    rows = [([1, 0], LE, 3), ([1, -1], GE, -3), ([0, 1], LE, 2), ([1, 0], GE, -1)]
    base = lp_solve(make_lp(2, rows, objective=([1, 1], "max")))
    shuf = lp_solve(make_lp(2, [rows[i] for i in perm], objective=([1, 1], "max")))
    assert base.status == shuf.status == "feasible"
    assert base.optimum == shuf.optimum


def test_rejects_malformed():
    with pytest.raises(ValueError):
        make_lp(2, [([1], LE, 0)])
    with pytest.raises(ValueError):
        make_lp(0, [])
    with pytest.raises(ValueError):
        make_lp(1, [([1], "<", 0)])
