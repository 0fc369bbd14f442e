import numpy as np
import pytest

from bellfield.simplex import phase_one


def test_simple_feasible():
    res = phase_one([[1, 1, 1]], [1])
    assert res.feasible
    assert res.x.sum() == pytest.approx(1)
    assert np.all(res.x >= 0)


def test_negative_rhs_rows_are_flipped():
    res = phase_one([[1, -1]], [-0.5])
    assert res.feasible
    assert res.x[0] - res.x[1] == pytest.approx(-0.5)


def test_infeasible():
    # x1 + x2 = 1 and x1 + x2 = 2
    res = phase_one([[1, 1], [1, 1]], [1, 2])
    assert not res.feasible and res.x is None
    assert res.infeasibility == pytest.approx(1.0)


def test_redundant_rows():
    res = phase_one([[1, 1, 0], [2, 2, 0], [0, 1, 1]], [1, 2, 1])
    assert res.feasible
    a = np.array([[1, 1, 0], [2, 2, 0], [0, 1, 1]])
    assert a @ res.x == pytest.approx([1, 2, 1], abs=1e-12)


def test_degenerate_problem_terminates():
    # classic degenerate vertex: many constraints active at x = 0
    a = np.array([[1, -1, 1, 0], [1, 1, -1, 1], [0, 1, 1, -1]], dtype=float)
    res = phase_one(a, [0, 0, 0])
    assert res.feasible
    assert a @ res.x == pytest.approx([0, 0, 0], abs=1e-12)
