import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from multiassoc.algebraic_matroid import (FactorPair, NoConvergence, PartialMatrix, complete_numeric,
                                          completion_status, ferrers_hull,
                                          is_algebraically_independent)
from multiassoc.bipartization import (FerrersDiagram, bipartize, find_bip_crossing, jonsson_greedy,
                                      maximal_free_sets, reduce_bipartization, standard_ferrers)
from multiassoc.exact_linalg import rank
from multiassoc.polygon import ProblemInstance, enumerate_triangulations
from multiassoc.rigidity import complete_bipartite, hyper_matrix


def diagrams_in_box(rows, cols):
    """All nonempty Ferrers diagrams inside a rows x cols box."""
    for heights in combinations(range(cols + rows), rows):
        h = tuple(sorted((x - i for i, x in enumerate(heights)), reverse=True))
        h = tuple(x for x in h if x > 0)
        if h:
            yield FerrersDiagram(h)


def low_rank_partial(rnd, n1, n2, k, cells):
    A = [[Fraction(rnd.randint(-5, 5)) for _ in range(k)] for _ in range(n1)]
    B = [[Fraction(rnd.randint(-5, 5)) for _ in range(n2)] for _ in range(k)]
    known = {(a, b): sum(A[a - 1][r] * B[r][b - 1] for r in range(k)) for a, b in cells}
    return PartialMatrix(n1, n2, k, known)


def test_independence_examples():
    assert is_algebraically_independent([(1, 1)], 1, 2, 2)
    assert is_algebraically_independent([], 2, 3, 3)
    for k in (1, 2, 3):
        assert not is_algebraically_independent(complete_bipartite(k + 1, k + 1), k, k + 1, k + 1)
        edges = complete_bipartite(k + 1, k + 1)
        assert is_algebraically_independent(edges[:-1], k, k + 1, k + 1)


@pytest.mark.parametrize("k", [1, 2])
def test_free_sets_are_independent(k):
    # every free set sits inside a maximal one, so checking those covers all
    checked = 0
    for S in diagrams_in_box(4, 4):
        for E in maximal_free_sets(S, k):
            assert is_algebraically_independent(E, k, S.n1, S.n2)
            checked += 1
    assert checked > 70


@pytest.mark.parametrize("k,n", [(1, 6), (1, 8), (2, 7), (2, 8)])
def test_bipartite_independence_lifts_to_polygon(k, n):
    rnd = random.Random(n)
    inst = ProblemInstance(k, n)
    edges = inst.all_edges()
    tri = enumerate_triangulations(inst)
    lifted = 0
    for trial in range(40):
        if trial % 2:
            E = rnd.sample(edges, rnd.randint(1, len(edges)))
        else:
            T = sorted(rnd.choice(tri).edges)
            E = rnd.sample(T, rnd.randint(1, len(T)))
        if not is_algebraically_independent(bipartize(E, n), k, n, n):
            continue
        pts = [tuple(Fraction(rnd.randint(-10 ** 6, 10 ** 6), rnd.randint(1, 999)) for _ in range(2 * k))
               for _ in range(n)]
        assert rank(hyper_matrix(pts, sorted(E))) == len(E)
        lifted += 1
    assert lifted >= 20


def test_ferrers_hull():
    assert ferrers_hull([(3, 1), (1, 2)]).heights == (2, 1, 1)
    assert ferrers_hull([]).heights == ()
    S = standard_ferrers(2, 7)
    assert ferrers_hull(S.cells()) == S


def test_completion_status():
    T = enumerate_triangulations(ProblemInstance(2, 7))[3]
    P = PartialMatrix(4, 4, 2, {c: 1 for c in reduce_bipartization(T).edges})
    assert completion_status(P).label == "finitely_many"
    P = PartialMatrix(3, 3, 2, {c: 1 for c in complete_bipartite(3, 3)})
    assert completion_status(P).label == "indeterminate"
    assert completion_status(PartialMatrix(3, 3, 2)).label == "generically_completable"
    P = PartialMatrix(4, 4, 2, {c: 1 for c in sorted(reduce_bipartization(T).edges)[:7]})
    assert completion_status(P).label == "generically_completable"


def test_completion_status_matches_rank_oracle():
    rnd = random.Random(3)
    for _ in range(60):
        cells = [(a, b) for a in range(1, 5) for b in range(1, 5) if rnd.random() < 0.5]
        P = PartialMatrix(4, 4, 2, {c: 0 for c in cells})
        if completion_status(P).completable:
            assert is_algebraically_independent(cells, 2, 4, 4)


def test_partial_matrix_json_round_trip():
    P = PartialMatrix(3, 4, 2, {(1, 2): Fraction(3, 7), (3, 4): -2})
    assert PartialMatrix.from_json(P.to_json()) == P
    with pytest.raises(ValueError):
        PartialMatrix(2, 2, 1, {(3, 1): 1})


def test_factor_pair_shapes():
    with pytest.raises(ValueError):
        FactorPair(np.zeros((3, 2)), np.zeros((3, 3)))
    assert FactorPair(np.ones((3, 2)), np.ones((2, 4))).product().shape == (3, 4)


def test_complete_numeric_on_free_support():
    rnd = random.Random(1)
    cells = jonsson_greedy(FerrersDiagram.rectangle(5, 5), 2).edges
    assert find_bip_crossing(cells, 2, diagram=FerrersDiagram.rectangle(5, 5)) is None
    P = low_rank_partial(rnd, 5, 5, 2, cells)
    # this instance traps the first starting point in a local minimum
    with pytest.raises(NoConvergence):
        complete_numeric(P, restarts=1)
    F = complete_numeric(P)
    M = F.product()
    assert max(abs(M[a - 1, b - 1] - float(x)) for (a, b), x in P.known.items()) < 1e-8
    h = F.history
    assert all(b <= a * (1 + 1e-9) + 1e-24 for a, b in zip(h, h[1:]))


def test_complete_numeric_on_full_data():
    rnd = random.Random(2)
    cells = [(a, b) for a in range(1, 5) for b in range(1, 6)]
    P = low_rank_partial(rnd, 4, 5, 2, cells)
    F = complete_numeric(P)
    M = F.product()
    assert np.allclose(M, [[float(P.known[(a, b)]) for b in range(1, 6)] for a in range(1, 5)], atol=1e-8)


def test_complete_numeric_reports_failure():
    rnd = random.Random(4)
    cells = [(a, b) for a in range(1, 5) for b in range(1, 5)]
    P = low_rank_partial(rnd, 4, 4, 3, cells)
    P = PartialMatrix(4, 4, 2, P.known)
    with pytest.raises(NoConvergence) as info:
        complete_numeric(P, iterations=2000)
    h = info.value.history
    assert h[-1] > 1e-6
    assert all(b <= a * (1 + 1e-9) + 1e-24 for a, b in zip(h, h[1:]))
