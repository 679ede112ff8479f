"""穷举求解器测试"""

import os
import sys
from collections import Counter

import pytest
from pydantic import ValidationError

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from egal_orient.config import settings
from egal_orient.errors import RefusedError
from egal_orient.models import UndirectedGraph
from egal_orient.oracle import (Constraint, Objective, OracleQuery, oracle_max_indegree, oracle_sequence,
                                oracle_solve, sequences_of)
from egal_orient.strong import sc_lower_bound
from egal_orient.unconstrained import ConvexCost
from tests.corpus import (atlas_graphs, bridgeless_atlas_graphs, complete, cycle, path, random_bridgeless_graphs,
                          random_multigraphs, triangle)


def test_known_optima():
    assert oracle_sequence(complete(4)).values == [2, 2, 1, 1]
    assert oracle_sequence(cycle(4)).values == [1, 1, 1, 1]
    assert oracle_max_indegree(cycle(4), Constraint.ACYCLIC) == 2
    assert oracle_max_indegree(complete(4), Constraint.STRONGLY_CONNECTED) == 2
    assert oracle_max_indegree(path(3), Constraint.STRONGLY_CONNECTED) is None


def test_infeasible_result():
    result = oracle_solve(path(3), OracleQuery(constraint=Constraint.STRONGLY_CONNECTED, objective=Objective.MIN_MAX))
    assert not result.feasible
    assert result.witness is None


def test_triangle_table():
    """三角形的 8 个定向：2 个有向环，6 个传递定向"""
    counts = Counter(tuple(s.values) for s in sequences_of(triangle()))
    assert counts == {(1, 1, 1): 2, (2, 1, 0): 6}


def test_c4_table():
    counts = Counter(tuple(s.values) for s in sequences_of(cycle(4)))
    assert sum(counts.values()) == 16
    assert counts[(1, 1, 1, 1)] == 2
    assert counts[(2, 2, 0, 0)] == 2
    assert counts[(2, 1, 1, 0)] == 12


def test_witness_is_first_optimum():
    """编号 0 表示每条边都指向第一个端点，在三角形上恰是一个有向环"""
    result = oracle_solve(triangle(), OracleQuery(objective=Objective.MIN_LEX))
    assert result.index == 0
    assert result.witness.head == [0, 1, 2]
    assert result.sequence.values == [1, 1, 1]

    acyclic = oracle_solve(triangle(), OracleQuery(constraint=Constraint.ACYCLIC, objective=Objective.MIN_MAX))
    assert acyclic.index == 1
    assert acyclic.max_indegree == 2


def test_shards_and_workers_do_not_change_the_answer(monkeypatch):
    queries = [OracleQuery(objective=Objective.MIN_LEX),
               OracleQuery(constraint=Constraint.STRONGLY_CONNECTED, objective=Objective.MIN_MAX),
               OracleQuery(constraint=Constraint.ACYCLIC, objective=Objective.MIN_MAX),
               OracleQuery(objective=Objective.MIN_CONVEX, cost=ConvexCost.square(6))]
    g = complete(4)
    expected = [oracle_solve(g, q) for q in queries]
    monkeypatch.setattr(settings, "oracle_shard_bits", 2)
    monkeypatch.setattr(settings, "oracle_workers", 3)
    for q, before in zip(queries, expected):
        after = oracle_solve(g, q)
        assert after.index == before.index
        assert after.witness.head == before.witness.head


def test_refuses_large_graphs(monkeypatch):
    monkeypatch.setattr(settings, "oracle_max_edges", 5)
    with pytest.raises(RefusedError):
        oracle_solve(complete(4), OracleQuery())
    with pytest.raises(RefusedError):
        sequences_of(complete(4))


def test_query_validation():
    with pytest.raises(ValidationError):
        OracleQuery(objective=Objective.MIN_CONVEX)


def test_empty_graphs():
    result = oracle_solve(UndirectedGraph(n=0), OracleQuery())
    assert result.feasible
    assert result.sequence.values == []
    assert oracle_sequence(UndirectedGraph(n=3)).values == [0, 0, 0]


def test_lex_optimum_dominates_max_optimum():
    """字典序最优见证的最大入度等于同约束下的最小最大入度"""
    for g in atlas_graphs(5) + random_multigraphs(30, max_m=10, seed=41):
        for constraint in Constraint:
            lex = oracle_solve(g, OracleQuery(constraint=constraint, objective=Objective.MIN_LEX))
            best = oracle_max_indegree(g, constraint)
            if not lex.feasible:
                assert best is None
                continue
            assert lex.max_indegree == best


def test_strong_optimum_meets_subset_bound():
    for g in atlas_graphs(5):
        best = oracle_max_indegree(g, Constraint.STRONGLY_CONNECTED)
        if best is not None:
            assert best >= sc_lower_bound(g)
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(30, seed=43):
        assert oracle_max_indegree(g, Constraint.STRONGLY_CONNECTED) == sc_lower_bound(g)


if __name__ == "__main__":
    test_known_optima()
    test_triangle_table()
    print("所有测试通过!")
