"""数据模型定义"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

from egal_orient.errors import ContractViolation, InternalInconsistency


class UndirectedGraph(BaseModel):
    """无向多重图，边编号即其在边表中的位置

    构造之后不应再修改；多个读者可以共享同一个实例。
    """
    n: int = Field(..., ge=0, description="顶点数，顶点编号为 0..n-1")
    edges: List[Tuple[int, int]] = Field(default_factory=list, description="边表，下标为边编号")

    _incidence: Optional[List[List[Tuple[int, int]]]] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_edges(self) -> "UndirectedGraph":
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"edge {e} is a self-loop at vertex {u}")
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def incidence(self) -> List[List[Tuple[int, int]]]:
        """每个顶点的 (边编号, 另一端点) 列表，首次访问时建立"""
        if self._incidence is None:
            incidence: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
            for e, (u, v) in enumerate(self.edges):
                incidence[u].append((e, v))
                incidence[v].append((e, u))
            self._incidence = incidence
        return self._incidence

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> List[int]:
        return sorted({w for _, w in self.incidence[v]})

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if v == u else u


class DirectedPath(BaseModel):
    """当前定向下的有向路径；空路径表示单个顶点"""
    arcs: List[int] = Field(default_factory=list, description="按顺序排列的边编号")
    start: int = Field(..., ge=0)
    end: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_trivial(self) -> "DirectedPath":
        if not self.arcs and self.start != self.end:
            raise ValueError("an empty path must start and end at the same vertex")
        return self

    def __len__(self) -> int:
        return len(self.arcs)


class Orientation(BaseModel):
    """给图的每条边选定一个头端点

    入度是缓存值，随每次翻转增量维护；recount() 用于调试时的完整复核。
    同一时刻只应由一个线程修改。
    """
    graph: UndirectedGraph
    head: List[int] = Field(..., description="每条边的头端点")
    indegree: List[int] = Field(default_factory=list, description="每个顶点的入度缓存")

    @model_validator(mode="after")
    def _check_heads(self) -> "Orientation":
        g = self.graph
        if len(self.head) != g.m:
            raise ValueError(f"expected {g.m} heads, got {len(self.head)}")
        for e, h in enumerate(self.head):
            if h not in g.edges[e]:
                raise ValueError(f"head {h} of edge {e} is not one of its endpoints {g.edges[e]}")
        counted = self._count()
        if self.indegree and self.indegree != counted:
            raise ValueError("cached indegrees disagree with the head array")
        self.indegree = counted
        return self

    def _count(self) -> List[int]:
        indegree = [0] * self.graph.n
        for h in self.head:
            indegree[h] += 1
        return indegree

    @classmethod
    def from_heads(cls, graph: UndirectedGraph, head: List[int]) -> "Orientation":
        return cls(graph=graph, head=list(head))

    def tail(self, e: int) -> int:
        u, v = self.graph.edges[e]
        return u if self.head[e] == v else v

    def arc(self, e: int) -> Tuple[int, int]:
        """(tail, head)"""
        return self.tail(e), self.head[e]

    def out_arcs(self, v: int) -> List[Tuple[int, int]]:
        """顶点 v 的出弧 (边编号, 头)"""
        return [(e, w) for e, w in self.graph.incidence[v] if self.head[e] == w]

    def in_arcs(self, v: int) -> List[Tuple[int, int]]:
        """顶点 v 的入弧 (边编号, 尾)"""
        return [(e, w) for e, w in self.graph.incidence[v] if self.head[e] == v]

    def out_degree(self, v: int) -> int:
        return self.graph.degree(v) - self.indegree[v]

    def flip(self, e: int) -> None:
        """翻转一条弧并更新入度缓存"""
        old = self.head[e]
        new = self.graph.other(e, old)
        self.head[e] = new
        self.indegree[old] -= 1
        self.indegree[new] += 1

    def recount(self) -> None:
        """完整复核入度缓存与边数之和"""
        counted = self._count()
        if counted != self.indegree:
            raise InternalInconsistency(f"indegree cache {self.indegree} != recount {counted}")
        if sum(counted) != self.graph.m:
            raise InternalInconsistency("indegrees do not sum to m")

    def copy(self) -> "Orientation":
        return Orientation.model_construct(graph=self.graph, head=list(self.head),
                                           indegree=list(self.indegree))

    def reversed(self) -> "Orientation":
        """所有弧反向后的定向"""
        return Orientation.from_heads(self.graph, [self.tail(e) for e in range(self.graph.m)])

    def max_indegree(self) -> int:
        return max(self.indegree, default=0)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class DegreeSequence(BaseModel):
    """降序排列的入度多重集，按字典序比较，越小越平等"""
    values: List[int] = Field(default_factory=list)

    @field_validator("values")
    @classmethod
    def _non_increasing(cls, values: List[int]) -> List[int]:
        if any(x < 0 for x in values):
            raise ValueError("indegrees are nonnegative")
        if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
            raise ValueError(f"sequence {values} is not sorted non-increasing")
        return values

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.values)

    def __lt__(self, other: "DegreeSequence") -> bool:
        return lex_compare(self, other) is Ordering.LESS


class ReversalStep(BaseModel):
    """一次路径翻转的轨迹记录"""
    start: int
    end: int
    end_indegree: int = Field(..., description="翻转前终点的入度")
    length: int


def indegree_sequence(o: Orientation) -> DegreeSequence:
    return DegreeSequence(values=sorted(o.indegree, reverse=True))


def lex_compare(a: DegreeSequence, b: DegreeSequence) -> Ordering:
    """比较两个同一图上的入度序列；LESS 表示 a 更优"""
    if len(a.values) != len(b.values):
        raise ContractViolation(f"sequences of different lengths {len(a.values)} and {len(b.values)}")
    if sum(a.values) != sum(b.values):
        raise ContractViolation("sequences with different sums come from different graphs")
    for x, y in zip(a.values, b.values):
        if x != y:
            return Ordering.LESS if x < y else Ordering.GREATER
    return Ordering.EQUAL

