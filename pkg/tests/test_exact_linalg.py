import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multiassoc.exact_linalg import (NotACircuit, NotInSpan, RationalMatrix, kernel_basis, nullspace,
                                     rank, solve_in_basis, solve_many, unique_dependence)
from multiassoc.rigidity import bipartite_points_hyper_matrix, complete_bipartite, hyper_matrix


def naive_rank(rows):
    """Textbook elimination over Fractions, used as an independent oracle."""
    A = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0] * 5, [0] * 5]) == 0
    rnd = random.Random(3)
    pts = [(Fraction(rnd.randint(-99, 99), rnd.randint(1, 9)), Fraction(rnd.randint(-99, 99), rnd.randint(1, 9)))
           for _ in range(5)]
    K5 = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    assert rank(hyper_matrix(pts, K5)) == 2 * 5 - 3
    assert rank(hyper_matrix(pts[:3], [(1, 2), (1, 3), (2, 3)])) == 3


def test_kernel_examples():
    ker = kernel_basis([[1, 2, 3], [1, 2, 3]])
    assert len(ker) == 1 and ker[0][0] == -ker[0][1]
    rnd = random.Random(4)
    left = [(1, Fraction(rnd.randint(-50, 50), 7)) for _ in range(4)]
    right = [(1, Fraction(rnd.randint(-50, 50), 11)) for _ in range(4)]
    H = bipartite_points_hyper_matrix(left, right, complete_bipartite(4, 4))
    assert len(kernel_basis(H)) == 4


def test_unique_dependence():
    dep = unique_dependence(RationalMatrix([[1, 2], [3, 6]], ["a", "b"]))
    assert dep.coefficients == {"a": 1, "b": Fraction(-1, 3)}
    assert dep.support == ["a", "b"]
    with pytest.raises(NotACircuit):
        unique_dependence(RationalMatrix([[1, 0], [0, 1]]))
    with pytest.raises(NotACircuit):
        unique_dependence(RationalMatrix([[1, 0], [2, 0], [3, 0]]))


def test_solve_in_basis():
    assert solve_in_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [3, -2, Fraction(1, 2)]) == [3, -2, Fraction(1, 2)]
    rows = [[1, 2, 0], [0, Fraction(1, 3), 5]]
    assert solve_in_basis(rows, [1, Fraction(7, 3), 5]) == [1, 1]
    with pytest.raises(NotInSpan):
        solve_in_basis(rows, [0, 0, 1])
    with pytest.raises(ValueError):
        solve_in_basis([[1, 2], [2, 4]], [1, 2])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_oracle_and_kernel(rows):
    r = rank(rows)
    assert r == naive_rank(rows)
    ker = kernel_basis(rows)
    assert r + len(ker) == len(rows)
    for y in ker:
        assert all(sum(a * row[c] for a, row in zip(y, rows)) == 0 for c in range(len(rows[0])))
    assert naive_rank(ker) == len(ker) if ker else True


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_permutation(rows, rnd):
    perm = rows[:]
    rnd.shuffle(perm)
    assert rank(perm) == rank(rows)


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=5, max_cols=7), st.lists(fractions, min_size=5, max_size=5))
def test_solve_round_trip(rows, coeffs):
    if naive_rank(rows) < len(rows):
        return
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(rows[0]))]
    assert solve_in_basis(rows, target) == coeffs[:len(rows)]


def test_solve_many_with_several_targets():
    rows = [[2, 0, 1], [0, Fraction(1, 2), 1]]
    targets = [[4, 0, 2], [2, Fraction(1, 2), 2], [0, 0, 0]]
    assert solve_many(rows, targets) == [[2, 0], [1, 1], [0, 0]]


def test_nullspace():
    basis = nullspace([[1, 1, 1]], 3)
    assert len(basis) == 2
    assert all(sum(x) == 0 for x in basis)
