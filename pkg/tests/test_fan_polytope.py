import random
from fractions import Fraction

import pytest

from multiassoc import exact_linalg as xl
from multiassoc.bipartization import reduce_bipartization
from multiassoc.cli import builtin_configs
from multiassoc.fan_polytope import (check_basis_collection, check_fan, check_greedy_containment,
                                     check_icop, check_pentagons, engine, height_variables, link_cycles,
                                     lifting_inequalities, paired_inequalities, polytope_lp,
                                     star_condition, verify_heights)
from multiassoc.polygon import ProblemInstance, WrongInstance, enumerate_triangulations
from multiassoc.rigidity import ParameterConfig, bipartite_hyper_matrix, random_increasing
from multiassoc.simplex import Infeasible, primitive

TABLE_LEFT = {(3, 6): 16, (3, 7): 35, (3, 8): 59, (4, 7): 11, (4, 8): 36, (5, 8): 37}


def random_config(rnd, k, n, bound=1000):
    m = n - k - 1
    return ParameterConfig(random_increasing(rnd, m, bound=bound), random_increasing(rnd, m, bound=bound), k)


def std(k, n):
    return ProblemInstance(k, n), builtin_configs("standard", k, n)


def test_basis_collection_standard():
    inst, cfg = std(2, 8)
    res = check_basis_collection(inst, cfg)
    assert res["ok"] and res["facets"] == 84
    # independent oracle: the full bipartite matrix of each reduced bipartization
    for T in enumerate_triangulations(inst)[::7]:
        M = bipartite_hyper_matrix(cfg, reduce_bipartization(T)).rows
        assert xl.rank(M) == len(M) == 2 * 2 * 8 - 3 * 4 - 2 * 2


def test_basis_collection_desargues():
    inst = ProblemInstance(3, 9)
    res = check_basis_collection(inst, builtin_configs("desargues", 3, 9))
    assert not res["ok"]
    missing = [set(inst.relevant_edges()) - set(T.relevant) for T in res["failures"]]
    assert missing == [{(1, 6), (3, 7), (4, 9)}]
    assert check_basis_collection(inst, builtin_configs("desargues-generic", 3, 9))["ok"]


def test_vacuous_instances():
    for k in (1, 2, 3):
        inst, cfg = std(k, 2 * k + 1)
        assert check_basis_collection(inst, cfg)["ok"]
        assert check_fan(inst, cfg).realized
        assert polytope_lp(inst, cfg) == {}


def test_icop_examples():
    rnd = random.Random(5)
    for _ in range(10):
        for k, n in [(2, 6), (2, 7), (1, 6)]:
            inst = ProblemInstance(k, n)
            res = check_icop(inst, random_config(rnd, k, n))
            assert res["ok"] and 2 * res["flips"] == len(enumerate_triangulations(inst)) * inst.relevant_size
    res = check_icop(ProblemInstance(3, 9), builtin_configs("desargues", 3, 9))
    assert not res["ok"] and (res["failures"] or res["degenerate"])


def test_pentagons():
    rnd = random.Random(6)
    for _ in range(10):
        res = check_pentagons(ProblemInstance(1, 5), random_config(rnd, 1, 5))
        assert res["ok"] and res["lengths"] == {5: 1}
    res = check_pentagons(*std(2, 8))
    assert res["ok"] and set(res["lengths"]) == {3, 4, 5}


def test_link_cycles_close_up():
    inst, cfg = std(2, 8)
    eng = engine(inst, cfg)
    for rho, z, facets in link_cycles(eng):
        assert len(facets) == len(z)
        for s, i in enumerate(facets):
            pair = (1 << z[s]) | (1 << z[(s + 1) % len(z)])
            assert eng.fg.masks[i] == rho | pair


def test_greedy_containment():
    assert check_greedy_containment(*std(2, 8))["ok"]
    rnd = random.Random(7)
    for _ in range(10):
        assert check_greedy_containment(ProblemInstance(1, 5), random_config(rnd, 1, 5))["ok"]


def test_cone_self_membership():
    eng = engine(*std(2, 8))
    for i in range(0, len(eng.fg), 9):
        P = eng.fg.relevant_positions(i)
        rows = [eng.q[p] for p in P]
        total = [sum(col) for col in zip(*rows)]
        assert xl.solve_in_basis(rows, total) == [1] * len(P)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_standard_positions_realize_fan(n):
    rep = check_fan(*std(2, n))
    assert rep.realized and not rep.degenerate and not rep.witnesses


def test_monotonicity_spot_checks():
    inst, cfg = std(2, 8)
    assert check_fan(inst, cfg).realized
    t = cfg.left
    for drop in range(len(t)):
        for drop2 in range(len(t)):
            left = t[:drop] + t[drop + 1:]
            right = t[:drop2] + t[drop2 + 1:]
            assert check_fan(ProblemInstance(2, 7), ParameterConfig(left, right, 2)).realized
    assert check_fan(ProblemInstance(1, 7), ParameterConfig(t, t, 1)).realized


def test_height_variables():
    for n in (7, 8, 9, 10):
        assert len(height_variables(ProblemInstance(2, n))) == (n - 4) * (n - 5) // 2


def test_lp_table_left():
    inst, cfg = std(2, 8)
    assert verify_heights(inst, cfg, TABLE_LEFT)
    f = polytope_lp(inst, cfg)
    assert not isinstance(f, Infeasible)
    assert verify_heights(inst, cfg, f)
    assert not verify_heights(inst, cfg, {})
    assert not verify_heights(inst, cfg, {e: -x for e, x in TABLE_LEFT.items()})


def test_lp_round_trip_small():
    rnd = random.Random(9)
    for k, n in [(1, 5), (1, 6), (1, 7), (2, 6), (2, 7)]:
        inst = ProblemInstance(k, n)
        cfg = random_config(rnd, k, n)
        f = polytope_lp(inst, cfg)
        assert not isinstance(f, Infeasible) and verify_heights(inst, cfg, f)
        assert all(f[e] == 0 for e in f if e[0] <= k)


def test_lifting_rows_one_per_facet_and_external_edge():
    inst, cfg = std(2, 7)
    rows = lifting_inequalities(inst, cfg)
    external = len(inst.relevant_edges()) - inst.relevant_size
    assert len(rows) == 14 * external
    assert all(row.count(Fraction(1)) >= 1 for row in rows)


def test_lp_infeasible_standard_2_9():
    inst, cfg = std(2, 9)
    res = polytope_lp(inst, cfg)
    assert isinstance(res, Infeasible)
    # the certificate is a positive combination of the assembled rows summing to zero
    cols = [engine(inst, cfg).idx.pos[e] for e in height_variables(inst)]
    rows = {}
    for row in lifting_inequalities(inst, cfg):
        r = tuple(row[c] for c in cols)
        rows[primitive(r)] = r
    rows = [rows[key] for key in sorted(rows)]
    cert = res.certificate
    assert cert and all(c > 0 for c in cert.values())
    assert all(sum(c * rows[i][j] for i, c in cert.items()) == 0 for j in range(len(cols)))


def test_star_condition_examples():
    rnd = random.Random(10)
    for _ in range(5):
        assert star_condition(ProblemInstance(2, 7), random_config(rnd, 2, 7))
    assert star_condition(ProblemInstance(3, 9), builtin_configs("lexcor", 3, 9))
    assert check_fan(ProblemInstance(3, 9), builtin_configs("lexcor", 3, 9)).realized
    ok, margins = star_condition(ProblemInstance(3, 9), builtin_configs("desargues", 3, 9), detail=True)
    assert not ok and min(m for _, m in margins) == 0
    with pytest.raises(WrongInstance):
        star_condition(*std(2, 8))


def test_star_condition_matches_fan_on_random_configs():
    rnd = random.Random(11)
    for _ in range(8):
        inst = ProblemInstance(3, 9)
        cfg = random_config(rnd, 3, 9)
        star = star_condition(inst, cfg)
        assert star == check_fan(inst, cfg).realized


@pytest.mark.parametrize("k", [3, 4])
def test_paired_inequalities_contradict(k):
    rnd = random.Random(k)
    for _ in range(20):
        m = 12 - k - 1
        cfg = ParameterConfig(random_increasing(rnd, m, bound=10 ** 4), random_increasing(rnd, m, bound=10 ** 4), k)
        a, b = paired_inequalities(k, cfg)
        assert not (a > 0 and b > 0)
