"""强连通定向测试"""

import os
import sys

import networkx as nx
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from egal_orient.config import settings
from egal_orient.errors import ContractViolation, NotStronglyConnectedError, NotStronglyOrientableError, RefusedError
from egal_orient.models import Orientation, UndirectedGraph, indegree_sequence
from egal_orient.oracle import Constraint, oracle_max_indegree
from egal_orient.strong import (check_one_edge_structure, find_strongly_reversible_path, initial_strong_orientation,
                                is_strongly_connected, require_strongly_orientable, sc_lower_bound, sc_path_reversal,
                                two_reaches, two_reaches_set)
from egal_orient.unconstrained import check_path
from tests.corpus import (bowtie, bridgeless_atlas_graphs, complete, cycle, path, random_bridgeless_graphs,
                          to_multidigraph, triangle)


def _k5_unbalanced() -> Orientation:
    """K5 上入度序列为 3 2 2 2 1 的强连通定向"""
    arcs = [(1, 0), (2, 0), (3, 0), (0, 4), (4, 1), (4, 2), (4, 3), (1, 2), (2, 3), (3, 1)]
    g = UndirectedGraph(n=5, edges=arcs)
    return Orientation.from_heads(g, [h for _, h in arcs])


def test_require_strongly_orientable():
    with pytest.raises(NotStronglyOrientableError) as info:
        require_strongly_orientable(path(3))
    assert str(info.value) == "bridge 0-1"
    assert info.value.bridge == (0, 1)

    two_triangles = UndirectedGraph(n=6, edges=[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    with pytest.raises(NotStronglyOrientableError, match="disconnected"):
        require_strongly_orientable(two_triangles)

    require_strongly_orientable(UndirectedGraph(n=2, edges=[(0, 1), (0, 1)]))


def test_initial_strong_orientation():
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(50):
        o = initial_strong_orientation(g)
        assert nx.is_strongly_connected(to_multidigraph(o))


def test_small_examples():
    assert sc_path_reversal(complete(4)).max_indegree() == 2
    assert sc_path_reversal(cycle(4)).max_indegree() == 1
    assert sc_path_reversal(triangle()).max_indegree() == 1
    assert sc_path_reversal(bowtie()).max_indegree() == 2
    assert sc_path_reversal(complete(5)).max_indegree() == 2
    assert sc_path_reversal(UndirectedGraph(n=1)).max_indegree() == 0


def test_rejects_bridged_graph():
    with pytest.raises(NotStronglyOrientableError):
        sc_path_reversal(path(3))


def test_triple_equality_on_corpus(monkeypatch):
    """算法结果、穷举最优值与子集下界三者相等"""
    monkeypatch.setattr(settings, "debug_checks", True)
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(100):
        trace = []
        o = sc_path_reversal(g, trace=trace)
        assert is_strongly_connected(o)
        assert len(trace) <= g.m
        k = o.max_indegree()
        assert k == oracle_max_indegree(g, Constraint.STRONGLY_CONNECTED), g.edges
        assert k == sc_lower_bound(g)


def test_certificate_on_outputs():
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(60, seed=19):
        o = sc_path_reversal(g)
        report = check_one_edge_structure(o)
        assert report.passed, report.violations
        assert report.bound == report.k == o.max_indegree()
        assert report.vertex in report.witness


def test_certificate_on_directed_c4():
    o = Orientation.from_heads(cycle(4), [1, 2, 3, 0])
    report = check_one_edge_structure(o)
    assert report.passed
    assert report.witness == [0]
    assert report.bound == 1


def test_certificate_detects_improvable_orientation():
    o = _k5_unbalanced()
    assert indegree_sequence(o).values == [3, 2, 2, 2, 1]
    report = check_one_edge_structure(o)
    assert not report.passed
    assert report.vertex == 0
    assert 4 in report.witness


def test_find_strongly_reversible_path():
    o = _k5_unbalanced()
    p = find_strongly_reversible_path(o)
    assert (p.start, p.end) == (4, 0)
    check_path(o, p)

    balanced = sc_path_reversal(complete(5))
    assert find_strongly_reversible_path(balanced) is None

    with pytest.raises(NotStronglyConnectedError):
        find_strongly_reversible_path(Orientation.from_heads(triangle(), [1, 2, 2]))


def test_two_reaches():
    o = _k5_unbalanced()
    result = two_reaches(o, 4, 0)
    assert result.value == 2
    assert len(result.paths) == 2
    used = [e for p in result.paths for e in p.arcs]
    assert len(used) == len(set(used))
    for p in result.paths:
        check_path(o, p)
        assert (p.start, p.end) == (4, 0)

    directed_c4 = Orientation.from_heads(cycle(4), [1, 2, 3, 0])
    assert two_reaches(directed_c4, 0, 2).value == 1
    with pytest.raises(ContractViolation):
        two_reaches(directed_c4, 1, 1)


def test_two_reaches_set():
    directed_c4 = Orientation.from_heads(cycle(4), [1, 2, 3, 0])
    assert two_reaches_set(directed_c4, 0, [2]).value == 1
    assert two_reaches_set(_k5_unbalanced(), 4, {0, 1}).value == 2
    assert two_reaches_set(directed_c4, 0, []).value == 0
    with pytest.raises(ContractViolation):
        two_reaches_set(directed_c4, 0, [0, 1])


def test_two_reachability_is_transitive_into_sets():
    """u 双可达 v 且 v 双可达集合 U 时，u 也双可达 U"""
    for g in random_bridgeless_graphs(20, seed=23):
        o = initial_strong_orientation(g)
        n = g.n
        for u in range(n):
            for v in range(n):
                if u == v or two_reaches(o, u, v).value < 2:
                    continue
                targets = {w for w in range(n) if w not in (u, v)}
                if targets and two_reaches_set(o, v, targets).value == 2:
                    assert two_reaches_set(o, u, targets).value == 2


def test_sc_lower_bound_refuses_large_graphs(monkeypatch):
    monkeypatch.setattr(settings, "sc_bound_max_vertices", 3)
    with pytest.raises(RefusedError, match="certificate"):
        sc_lower_bound(complete(4))

def test_trace_end_indegrees_never_increase():
    """每次翻转的终点入度是当前最大入度，随翻转单调不增"""
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(100, seed=41):
        trace = []
        o = sc_path_reversal(g, trace=trace)
        ends = [step.end_indegree for step in trace]
        assert all(a >= b for a, b in zip(ends, ends[1:])), ends
        if ends:
            assert ends[-1] >= o.max_indegree()


def _disjoint_paths_to_pair(o: Orientation, u: int, s: int, t: int) -> bool:
    """u 到 s、u 到 t 各有一条路径且两条路径弧不相交"""
    D = nx.DiGraph()
    D.add_nodes_from(range(o.graph.n))
    for e in range(o.graph.m):
        tail, head = o.arc(e)
        capacity = D[tail][head]["capacity"] + 1 if D.has_edge(tail, head) else 1
        D.add_edge(tail, head, capacity=capacity)
    D.add_edge(s, "sink", capacity=1)
    D.add_edge(t, "sink", capacity=1)
    return nx.maximum_flow_value(D, u, "sink") == 2


def test_two_reachability_through_two_intermediates():
    """s、t 都双可达 v，且 u 有弧不相交的路径分别到 s 和 t 时，u 双可达 v"""
    checked = 0
    orientations = [initial_strong_orientation(g) for g in random_bridgeless_graphs(25, seed=43)]
    orientations += [sc_path_reversal(complete(5)), _k5_unbalanced()]
    for o in orientations:
        n = o.graph.n
        reaches = {(a, b): two_reaches(o, a, b).value >= 2 for a in range(n) for b in range(n) if a != b}
        for v in range(n):
            into_v = [w for w in range(n) if w != v and reaches[(w, v)]]
            for s in into_v:
                for t in into_v:
                    if s >= t:
                        continue
                    for u in range(n):
                        if u in (s, t, v) or not _disjoint_paths_to_pair(o, u, s, t):
                            continue
                        checked += 1
                        assert two_reaches(o, u, v).value == 2, (o.head, u, s, t, v)
    assert checked > 0



if __name__ == "__main__":
    test_small_examples()
    test_certificate_on_directed_c4()
    print("所有测试通过!")
