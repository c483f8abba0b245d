from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz_lab import linalg
from lefschetz_lab.linalg import DegreeOperator

small = st.integers(-4, 4).map(F)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rref_and_rank():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    reduced, pivots = linalg.rref(rows)
    assert pivots == (0, 1)
    assert reduced[0] == [1, 0, 1] and reduced[1] == [0, 1, 1]
    assert linalg.rank(rows) == 2


def test_results_are_fractions():
    reduced, _ = linalg.rref([[F(2), F(1)], [F(1), F(3)]])
    assert all(type(x) is F for row in reduced for x in row)


def test_nullspace_free_columns():
    basis, free = linalg.nullspace_with_free([[F(1), F(1), F(0)]], 3)
    assert free == [1, 2]
    assert basis == [[-1, 1, 0], [0, 0, 1]]


def test_empty_rows_give_identity_kernel():
    assert linalg.nullspace([], 2) == [[1, 0], [0, 1]]


def test_solve_inconsistent():
    assert linalg.solve([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)], 2) is None
    assert linalg.solve([[F(1), F(1)], [F(1), F(-1)]], [F(2), F(0)], 2) == [1, 1]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    ncols = len(rows[0])
    kernel = linalg.nullspace(rows, ncols)
    assert linalg.rank(rows, ncols) + len(kernel) == ncols
    for v in kernel:
        assert not any(linalg.matvec(rows, v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_finds_solution_of_consistent_system(rows, data):
    ncols = len(rows[0])
    x = data.draw(st.lists(small, min_size=ncols, max_size=ncols))
    rhs = linalg.matvec(rows, x)
    sol = linalg.solve(rows, rhs, ncols)
    assert sol is not None and linalg.matvec(rows, sol) == rhs


def test_degree_operator_algebra():
    a = DegreeOperator.from_columns("a", 0, 1, [[F(1), F(2)]], 2)
    b = DegreeOperator.from_columns("b", 1, 2, [[F(1)], [F(-1)]], 1)
    assert a.shape == (2, 1) and b.shape == (1, 2)
    prod = b @ a
    assert prod.matrix == ((F(-1),),)
    assert (a - a).is_zero()
    assert (a + a).matrix == a.scaled(2).matrix
    with pytest.raises(ValueError):
        a @ a
    assert not a.is_invertible()
    assert DegreeOperator.from_columns("i", 0, 0, [[F(1), F(0)], [F(0), F(1)]], 2).is_invertible()
