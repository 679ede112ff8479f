"""测试用图集：小图全集、随机多重图与随机无桥图"""

import os
import random
import sys
from typing import List

import networkx as nx

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from egal_orient.models import Orientation, UndirectedGraph


def from_networkx(G: nx.Graph) -> UndirectedGraph:
    index = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return UndirectedGraph(n=len(index), edges=[(index[u], index[v]) for u, v in G.edges()])


def to_multidigraph(o: Orientation) -> nx.MultiDiGraph:
    D = nx.MultiDiGraph()
    D.add_nodes_from(range(o.graph.n))
    D.add_edges_from(o.arc(e) for e in range(o.graph.m))
    return D


def to_multigraph(g: UndirectedGraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def atlas_graphs(max_n: int = 5) -> List[UndirectedGraph]:
    """n <= max_n 的全部连通图（同构意义下各取一个）"""
    return [from_networkx(G) for G in nx.graph_atlas_g()
            if 1 <= G.number_of_nodes() <= max_n and nx.is_connected(G)]


def bridgeless_atlas_graphs(max_n: int = 5) -> List[UndirectedGraph]:
    return [from_networkx(G) for G in nx.graph_atlas_g()
            if 3 <= G.number_of_nodes() <= max_n and nx.is_connected(G) and not nx.has_bridges(G)]


def random_multigraph(rng: random.Random, max_m: int = 14) -> UndirectedGraph:
    n = rng.randint(2, 7)
    edges = []
    for _ in range(rng.randint(1, max_m)):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return UndirectedGraph(n=n, edges=edges)


def random_multigraphs(count: int, max_m: int = 14, seed: int = 2024) -> List[UndirectedGraph]:
    rng = random.Random(seed)
    return [random_multigraph(rng, max_m) for _ in range(count)]


def random_bridgeless(rng: random.Random, max_m: int = 12) -> UndirectedGraph:
    """从一个环出发不断添加随机的耳（可以是平行边或环耳）"""
    size = rng.randint(3, 4)
    n = size
    edges = [(i, (i + 1) % size) for i in range(size)]
    target = rng.randint(size, max_m)
    while True:
        x, y = rng.randrange(n), rng.randrange(n)
        new = rng.randint(1 if x == y else 0, 2)
        if len(edges) + new + 1 > target:
            break
        chain = [x] + list(range(n, n + new)) + [y]
        n += new
        edges.extend(zip(chain, chain[1:]))
    return UndirectedGraph(n=n, edges=edges)


def random_bridgeless_graphs(count: int, max_m: int = 12, seed: int = 7) -> List[UndirectedGraph]:
    rng = random.Random(seed)
    return [random_bridgeless(rng, max_m) for _ in range(count)]


def triangle() -> UndirectedGraph:
    return UndirectedGraph(n=3, edges=[(0, 1), (1, 2), (2, 0)])


def cycle(n: int) -> UndirectedGraph:
    return UndirectedGraph(n=n, edges=[(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> UndirectedGraph:
    return UndirectedGraph(n=n, edges=[(u, v) for u in range(n) for v in range(u + 1, n)])


def path(n: int) -> UndirectedGraph:
    return UndirectedGraph(n=n, edges=[(i, i + 1) for i in range(n - 1)])


def bowtie() -> UndirectedGraph:
    """两个共享顶点 0 的三角形"""
    return UndirectedGraph(n=5, edges=[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
