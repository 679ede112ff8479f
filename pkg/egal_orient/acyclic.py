"""无环定向：剥离过程、无环性验证与 t-可剥离判定"""

import heapq
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field, model_validator

from egal_orient.errors import ContractViolation
from egal_orient.models import Orientation, UndirectedGraph
from egal_orient.structure import topological_order

logger = logging.getLogger(__name__)


class StrippingOrder(BaseModel):
    """顶点删除顺序；degrees[i] 是 order[i] 被删除时的剩余度数，即它的入度"""
    order: List[int] = Field(default_factory=list)
    degrees: List[int] = Field(default_factory=list)
    peak: int = Field(0, ge=0, description="产生的最大入度")

    @model_validator(mode="after")
    def _peak_matches(self) -> "StrippingOrder":
        if len(self.order) != len(self.degrees):
            raise ValueError("order and degrees differ in length")
        if self.peak != max(self.degrees, default=0):
            raise ValueError("peak must equal the largest removal degree")
        return self


class _Stripper:
    """剥离状态：剩余度数、已删除集合、已定向的边"""

    def __init__(self, g: UndirectedGraph):
        self.g = g
        self.remaining = [g.degree(v) for v in range(g.n)]
        self.removed = [False] * g.n
        self.head = [-1] * g.m
        self.order: List[int] = []
        self.degrees: List[int] = []

    def strip_group(self, group: Iterable[int]) -> None:
        """在组内反复删除剩余度数最小的顶点（同度取最小编号），其余边全部指向它

        每个度数一个最小堆；度数下降时把顶点压入新堆，旧堆中的条目弹出时丢弃。
        """
        members: Set[int] = set(group)
        buckets: Dict[int, List[int]] = defaultdict(list)
        for v in sorted(members):
            if self.removed[v]:
                raise ContractViolation(f"vertex {v} is stripped twice")
            buckets[self.remaining[v]].append(v)
        for heap in buckets.values():
            heapq.heapify(heap)
        current = min(buckets, default=0)
        left = len(members)
        while left:
            heap = buckets.get(current)
            if not heap:
                current += 1
                continue
            x = heapq.heappop(heap)
            # 剩余度数只减不增，度数不符即为过期条目
            if self.removed[x] or self.remaining[x] != current:
                continue
            self.removed[x] = True
            self.order.append(x)
            self.degrees.append(self.remaining[x])
            left -= 1
            for e, y in self.g.incidence[x]:
                if self.removed[y]:
                    continue
                self.head[e] = x
                self.remaining[y] -= 1
                if y in members:
                    heapq.heappush(buckets[self.remaining[y]], y)
                    current = min(current, self.remaining[y])

    def result(self) -> Tuple[StrippingOrder, Orientation]:
        if not all(self.removed):
            raise ContractViolation("stripping phases do not cover every vertex")
        order = StrippingOrder(order=self.order, degrees=self.degrees, peak=max(self.degrees, default=0))
        return order, Orientation.from_heads(self.g, self.head)


def strip_phased(g: UndirectedGraph, phases: Sequence[Iterable[int]]) -> Tuple[StrippingOrder, Orientation]:
    """按给定顶点组的顺序剥离，组内按最小剩余度数选择"""
    stripper = _Stripper(g)
    for group in phases:
        stripper.strip_group(group)
    return stripper.result()


def stripping(g: UndirectedGraph) -> Tuple[StrippingOrder, Orientation]:
    """反复删除度数最小的顶点并把它的边都指向它；得到最大入度最小的无环定向"""
    order, o = strip_phased(g, [range(g.n)])
    logger.info("stripping peak %d on %d vertices", order.peak, g.n)
    return order, o


def verify_acyclic(o: Orientation) -> bool:
    return topological_order(o.graph.n, (o.arc(e) for e in range(o.graph.m))) is not None


def is_t_strippable(g: UndirectedGraph, t: int, vertices: Optional[Iterable[int]] = None) -> bool:
    """剥离产生的最大入度是否不超过 t

    给出 vertices 时只剥离这些顶点，度数仍按整张图中尚未删除的顶点计算。
    """
    if t < 0:
        raise ContractViolation("t must be nonnegative")
    if vertices is None:
        return stripping(g)[0].peak <= t
    stripper = _Stripper(g)
    stripper.strip_group(vertices)
    return max(stripper.degrees, default=0) <= t


def degeneracy(g: UndirectedGraph) -> int:
    """最大的 k 使得 k-核非空（逐层削去度数小于 k 的顶点）"""
    k = 0
    while True:
        alive = [True] * g.n
        degree = [g.degree(v) for v in range(g.n)]
        queue = [v for v in range(g.n) if degree[v] < k + 1]
        while queue:
            x = queue.pop()
            if not alive[x]:
                continue
            alive[x] = False
            for _, y in g.incidence[x]:
                if alive[y]:
                    degree[y] -= 1
                    if degree[y] < k + 1:
                        queue.append(y)
        if not any(alive):
            return k
        k += 1
