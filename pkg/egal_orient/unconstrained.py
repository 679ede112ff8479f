"""无约束定向：路径翻转算法、翻转运算与凸代价"""

import logging
import random
from collections import deque
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from egal_orient.config import settings
from egal_orient.errors import ContractViolation, DomainError, InternalInconsistency
from egal_orient.models import DirectedPath, Orientation, ReversalStep, UndirectedGraph

logger = logging.getLogger(__name__)


def arbitrary_orientation(g: UndirectedGraph, seed: Optional[int] = None) -> Orientation:
    """默认每条边指向编号较大的端点；给出种子时均匀随机定向"""
    if seed is None:
        return Orientation.from_heads(g, [max(u, v) for u, v in g.edges])
    rng = random.Random(seed)
    return Orientation.from_heads(g, [rng.choice((u, v)) for u, v in g.edges])


def check_path(o: Orientation, p: DirectedPath) -> None:
    """确认 p 是 o 中的一条有向路径"""
    at = p.start
    for e in p.arcs:
        if not 0 <= e < o.graph.m:
            raise ContractViolation(f"edge id {e} out of range")
        tail, head = o.arc(e)
        if tail != at:
            raise ContractViolation(f"arc {e} ({tail}->{head}) does not continue the path at vertex {at}")
        at = head
    if at != p.end:
        raise ContractViolation(f"path ends at {at}, not at its declared end {p.end}")


def reverse_path(o: Orientation, p: DirectedPath) -> None:
    """翻转路径上每条弧：起点入度加一，终点入度减一"""
    check_path(o, p)
    for e in p.arcs:
        o.flip(e)
    if settings.debug_checks:
        o.recount()


def _backward_search(o: Orientation, v: int, accept: Callable[[int], bool]) -> Optional[DirectedPath]:
    """从 v 沿入弧做广度优先搜索，返回第一个被接受的起点到 v 的路径"""
    parent: Dict[int, int] = {v: -1}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for e, tail in sorted(o.in_arcs(x), key=lambda item: (item[1], item[0])):
            if tail in parent:
                continue
            parent[tail] = e
            if accept(tail):
                arcs: List[int] = []
                at = tail
                while at != v:
                    arc = parent[at]
                    arcs.append(arc)
                    at = o.head[arc]
                return DirectedPath(arcs=arcs, start=tail, end=v)
            queue.append(tail)
    return None


def find_reversible_path(o: Orientation) -> Optional[DirectedPath]:
    """终点入度最高的可翻转路径（起点入度 < 终点入度 - 1）；不存在时返回 None"""
    if o.graph.n == 0:
        return None
    lowest = min(o.indegree)
    for v in sorted(range(o.graph.n), key=lambda x: (-o.indegree[x], x)):
        target = o.indegree[v]
        if target < lowest + 2:
            break
        path = _backward_search(o, v, lambda u: o.indegree[u] < target - 1)
        if path is not None:
            return path
    return None


def path_reversal(g: UndirectedGraph, seed: Optional[int] = None,
                  trace: Optional[List[ReversalStep]] = None) -> Orientation:
    """反复翻转可翻转路径，得到入度序列字典序最小的定向

    翻转次数以 m 为上界，超出只可能是实现缺陷。
    """
    o = arbitrary_orientation(g, seed)
    reversals = 0
    while True:
        path = find_reversible_path(o)
        if path is None:
            break
        if reversals >= g.m:
            raise InternalInconsistency(f"path reversal exceeded {g.m} reversals")
        step = ReversalStep(start=path.start, end=path.end,
                            end_indegree=o.indegree[path.end], length=len(path))
        logger.debug("reversal %d -> %d at indegree %d", step.start, step.end, step.end_indegree)
        reverse_path(o, path)
        reversals += 1
        if trace is not None:
            trace.append(step)
    logger.info("path reversal finished after %d reversals", reversals)
    return o


def _same_graph(o1: Orientation, o2: Orientation) -> None:
    if o1.graph is not o2.graph and o1.graph.edges != o2.graph.edges:
        raise ContractViolation("orientations belong to different graphs")


def cycle_reversal_sequence(o1: Orientation, o2: Orientation) -> List[List[int]]:
    """把 o1 与 o2 的差异弧分解为 o1 中弧不相交的有向环

    两个定向入度处处相同时，差异子图每个顶点出入度平衡，逐段行走即可拆出简单环。
    """
    _same_graph(o1, o2)
    for v in range(o1.graph.n):
        if o1.indegree[v] != o2.indegree[v]:
            raise ContractViolation(
                f"vertex {v} has indegree {o1.indegree[v]} in the first orientation and {o2.indegree[v]} in the second")

    pending: List[List[int]] = [[] for _ in range(o1.graph.n)]
    for e in range(o1.graph.m):
        if o1.head[e] != o2.head[e]:
            pending[o1.tail(e)].append(e)
    for arcs in pending:
        arcs.reverse()

    cycles: List[List[int]] = []
    for start in range(o1.graph.n):
        while pending[start]:
            walk_vertices = [start]
            walk_arcs: List[int] = []
            position = {start: 0}
            at = start
            while True:
                if not pending[at]:
                    raise InternalInconsistency(f"difference digraph is unbalanced at vertex {at}")
                e = pending[at].pop()
                nxt = o1.head[e]
                walk_arcs.append(e)
                if nxt in position:
                    cut = position[nxt]
                    cycles.append(walk_arcs[cut:])
                    for w in walk_vertices[cut + 1:]:
                        del position[w]
                    walk_vertices = walk_vertices[:cut + 1]
                    walk_arcs = walk_arcs[:cut]
                    at = nxt
                    if not walk_arcs:
                        break
                else:
                    position[nxt] = len(walk_vertices)
                    walk_vertices.append(nxt)
                    at = nxt
    logger.debug("decomposed difference into %d cycles", len(cycles))
    return cycles


def reverse_cycle(o: Orientation, cycle: List[int]) -> None:
    """翻转一个有向环；所有顶点入度不变"""
    if not cycle:
        return
    start = o.tail(cycle[0])
    reverse_path(o, DirectedPath(arcs=cycle, start=start, end=start))


def weak_reversal_candidates(o: Orientation) -> List[Tuple[int, int]]:
    """所有存在 u 到 v 有向路径且 δ(u) = δ(v) - 1 的有序对"""
    pairs: List[Tuple[int, int]] = []
    for u in range(o.graph.n):
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for _, y in o.out_arcs(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        pairs.extend((u, v) for v in sorted(seen - {u}) if o.indegree[u] == o.indegree[v] - 1)
    return pairs


class ConvexCost(BaseModel):
    """入度上的递增严格凸代价 f(0), f(1), ..."""
    name: str = Field("custom", description="代价函数名称")
    values: List[float] = Field(..., min_length=1, description="f(i)，i 为入度")

    @field_validator("values")
    @classmethod
    def _increasing_strictly_convex(cls, values: List[float]) -> List[float]:
        for i in range(len(values) - 1):
            if not values[i + 1] > values[i]:
                raise ValueError(f"cost must be increasing: f({i + 1}) <= f({i})")
        for i in range(1, len(values) - 1):
            if not values[i + 1] - values[i] > values[i] - values[i - 1]:
                raise ValueError(f"cost must be strictly convex at {i}")
        return values

    @classmethod
    def from_function(cls, fn: Callable[[int], float], upto: int, name: str = "custom") -> "ConvexCost":
        return cls(name=name, values=[float(fn(i)) for i in range(upto + 1)])

    @classmethod
    def square(cls, upto: int) -> "ConvexCost":
        return cls.from_function(lambda x: x * x, upto, "square")

    @classmethod
    def pow2(cls, upto: int) -> "ConvexCost":
        return cls.from_function(lambda x: 2 ** x, upto, "pow2")

    @property
    def upto(self) -> int:
        return len(self.values) - 1

    def __call__(self, x: int) -> float:
        if not 0 <= x < len(self.values):
            raise DomainError(f"cost {self.name} is undefined at indegree {x} (domain 0..{self.upto})")
        return self.values[x]


def convex_cost(o: Orientation, f: ConvexCost) -> float:
    """F = Σ_v f(δ(v))"""
    return sum(f(d) for d in o.indegree)
