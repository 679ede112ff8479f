"""区间路由测试"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from egal_orient.config import settings
from egal_orient.errors import ContractViolation, NotStronglyConnectedError
from egal_orient.models import Orientation, UndirectedGraph
from egal_orient.oracle import Constraint, oracle_max_indegree
from egal_orient.routing import (CyclicOrdering, EarDecomposition, NumericInterval, build_routing, check_partition,
                                 ear_decomposition, finalize_numeric, min_outdegree_routing, route, routing_for,
                                 validate_ear_decomposition)
from egal_orient.strong import initial_strong_orientation, sc_path_reversal
from tests.corpus import bridgeless_atlas_graphs, complete, cycle, random_bridgeless_graphs, triangle

A, B, C, D, E, F, G, H = range(8)
NAMES = "ABCDEFGH"


def _two_ear_network() -> Orientation:
    """环 A B C D E 加上耳 D F G H A"""
    arcs = [(A, B), (B, C), (C, D), (D, E), (E, A), (D, F), (F, G), (G, H), (H, A)]
    g = UndirectedGraph(n=8, edges=arcs)
    return Orientation.from_heads(g, [h for _, h in arcs])


def _two_ear_decomposition(o: Orientation) -> EarDecomposition:
    return EarDecomposition.from_vertex_sequences(o, [[A, B, C, D, E], [D, F, G, H, A]])


def test_two_ear_network_intervals():
    o = _two_ear_network()
    ears = _two_ear_decomposition(o)
    assert validate_ear_decomposition(o, ears) == []
    snapshots = []
    ordering, labels = build_routing(o, ears, observer=lambda i, ordering, labels:
                                     snapshots.append((i, check_partition(o, ordering, labels))))
    assert snapshots == [(0, []), (1, [])]
    assert ordering.order() == [A, B, C, D, F, G, H, E]

    by_arc = {label.arc: label for label in labels}
    assert by_arc[3].describe(NAMES) == "[E,D)"
    assert by_arc[5].describe(NAMES) == "(D,E)"
    assert by_arc[0].describe(NAMES) == "(A,A)"
    assert by_arc[6].describe(NAMES) == "(F,F)"

    tables = finalize_numeric(ordering, labels)
    assert tables.ordering == [A, B, C, D, F, G, H, E]
    assert tables.entries[3] == NumericInterval(lo=7, hi=2)
    assert tables.entries[5] == NumericInterval(lo=4, hi=6)
    assert tables.entries[0] == NumericInterval(lo=1, hi=7)

    arcs = route(tables, A, F)
    assert [A] + [tables.heads[e] for e in arcs] == [A, B, C, D, F]
    arcs = route(tables, D, E)
    assert arcs == [3]


def test_numeric_interval_wraps():
    wrapped = NumericInterval(lo=7, hi=2)
    assert wrapped.contains(0) and wrapped.contains(7) and wrapped.contains(2)
    assert not wrapped.contains(4)
    assert NumericInterval(lo=4, hi=6).contains(5)


def test_single_edge_ears_are_unused():
    g = UndirectedGraph(n=4, edges=[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    o = Orientation.from_heads(g, [1, 2, 3, 0, 2])
    ears = ear_decomposition(o)
    assert ears.ears == [[0, 1, 2, 3, 0], [0, 2]]
    tables = routing_for(o)
    assert tables.entries[4] is None
    assert tables.table_size(0) == 1
    assert tables.max_out_degree() == 2
    assert tables.max_table_size() == 1
    for s in range(4):
        for t in range(4):
            if s != t:
                assert tables.heads[route(tables, s, t)[-1]] == t


def test_ear_decomposition_on_corpus(monkeypatch):
    """每条弧恰属于一个耳，每个耳后区间划分成立，路由总能到达目的地"""
    monkeypatch.setattr(settings, "debug_checks", True)
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(60, seed=31):
        for o in (initial_strong_orientation(g), sc_path_reversal(g)):
            ears = ear_decomposition(o)
            assert validate_ear_decomposition(o, ears) == []
            ordering, labels = build_routing(o, ears)
            assert check_partition(o, ordering, labels) == []
            tables = finalize_numeric(ordering, labels)
            for s in range(g.n):
                for t in range(g.n):
                    if s == t:
                        continue
                    arcs = route(tables, s, t)
                    assert tables.tails[arcs[0]] == s
                    assert tables.heads[arcs[-1]] == t


def test_min_outdegree_routing_is_compact():
    """最大出度等于强连通定向的最小最大入度，区间数不超过它"""
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(40, seed=37):
        tables = min_outdegree_routing(g)
        best = oracle_max_indegree(g, Constraint.STRONGLY_CONNECTED)
        assert tables.max_out_degree() == best
        assert tables.max_table_size() <= best


def test_validate_ear_decomposition_reports_problems():
    o = _two_ear_network()
    ears = _two_ear_decomposition(o)
    truncated = EarDecomposition(ears=ears.ears[:1], arcs=ears.arcs[:1])
    problems = validate_ear_decomposition(o, truncated)
    assert any("not covered" in p for p in problems)

    bad = EarDecomposition(ears=[ears.ears[1], ears.ears[0]], arcs=[ears.arcs[1], ears.arcs[0]])
    assert validate_ear_decomposition(o, bad)


def test_ear_decomposition_preconditions():
    with pytest.raises(NotStronglyConnectedError):
        ear_decomposition(Orientation.from_heads(triangle(), [1, 2, 2]))
    with pytest.raises(ContractViolation):
        ear_decomposition(Orientation.from_heads(UndirectedGraph(n=1), []))
    with pytest.raises(ContractViolation):
        EarDecomposition.from_vertex_sequences(_two_ear_network(), [[A, C]])


def test_route_rejects_same_endpoints():
    tables = min_outdegree_routing(cycle(4))
    with pytest.raises(ContractViolation):
        route(tables, 2, 2)


def test_cyclic_ordering():
    ordering = CyclicOrdering.from_cycle([0, 1, 2])
    ordering.insert_after(1, [5, 4])
    assert ordering.order() == [0, 1, 5, 4, 2]
    assert ordering.successor(2) == 0
    assert ordering.predecessor(5) == 1
    assert len(ordering) == 5
    with pytest.raises(ContractViolation):
        ordering.insert_after(0, [4])
    with pytest.raises(ContractViolation):
        CyclicOrdering.from_cycle([0, 0])


def test_complete_graph_routing():
    tables = min_outdegree_routing(complete(5))
    assert tables.max_out_degree() == 2
    assert sorted(tables.number) == list(range(5))

def test_numeric_intervals_keep_membership():
    """数值区间与符号区间对每条弧、每个顶点给出相同的包含关系"""
    for g in bridgeless_atlas_graphs(5) + random_bridgeless_graphs(40, seed=47):
        for o in (initial_strong_orientation(g), sc_path_reversal(g)):
            ordering, labels = build_routing(o, ear_decomposition(o))
            ranks = ordering.ranks()
            tables = finalize_numeric(ordering, labels)
            for label in labels:
                entry = tables.entries[label.arc]
                if not label.used:
                    assert entry is None
                    continue
                for w in range(g.n):
                    assert label.contains(w, ranks) == entry.contains(tables.number[w]), (g.edges, label.arc, w)


def test_cycle_ear():
    """三角形 0 1 2 上挂一个从 0 出发又回到 0 的环耳 0 3 4"""
    g = UndirectedGraph(n=5, edges=[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    o = Orientation.from_heads(g, [1, 2, 0, 3, 4, 0])
    ears = EarDecomposition.from_vertex_sequences(o, [[0, 1, 2], [0, 3, 4, 0]])
    assert ears.arcs == [[0, 1, 2], [3, 4, 5]]
    assert validate_ear_decomposition(o, ears) == []

    snapshots = []
    ordering, labels = build_routing(o, ears, observer=lambda i, ordering, labels:
                                     snapshots.append((i, check_partition(o, ordering, labels))))
    assert snapshots == [(0, []), (1, [])]
    assert ordering.order() == [0, 3, 4, 1, 2]

    tables = finalize_numeric(ordering, labels)
    assert tables.entries[0] == NumericInterval(lo=3, hi=4)
    assert tables.entries[3] == NumericInterval(lo=1, hi=2)
    assert tables.table_size(0) == 2
    assert [3] + [tables.heads[e] for e in route(tables, 3, 1)] == [3, 4, 0, 1]
    for s in range(5):
        for t in range(5):
            if s != t:
                assert tables.heads[route(tables, s, t)[-1]] == t


def test_single_vertex_tables():
    g = UndirectedGraph(n=1)
    for tables in (min_outdegree_routing(g), routing_for(Orientation.from_heads(g, []))):
        assert tables.ordering == [0]
        assert tables.number == [0]
        assert tables.entries == []
        assert tables.max_table_size() == 0


def test_route_rejects_out_of_range_vertices():
    tables = min_outdegree_routing(cycle(4))
    with pytest.raises(ContractViolation, match="out of range"):
        route(tables, 0, 4)
    with pytest.raises(ContractViolation, match="out of range"):
        route(tables, -1, 2)



if __name__ == "__main__":
    test_two_ear_network_intervals()
    test_single_edge_ears_are_unused()
    print("所有测试通过!")
