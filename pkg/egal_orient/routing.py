"""区间路由：耳分解、循环顺序、每条弧一个区间的路由表与消息路由模拟"""

import logging
from collections import deque
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, PrivateAttr

from egal_orient.config import settings
from egal_orient.errors import ContractViolation, InternalInconsistency, NotStronglyConnectedError
from egal_orient.models import Orientation, UndirectedGraph
from egal_orient.strong import is_strongly_connected, sc_path_reversal

logger = logging.getLogger(__name__)


class EarDecomposition(BaseModel):
    """耳分解：第 0 个耳是简单有向环，其余耳是只在端点处接触前面各耳的有向路径或环

    ears[i] 是顶点序列（环的首尾顶点相同），arcs[i] 是对应的边编号。
    """
    ears: List[List[int]] = Field(default_factory=list)
    arcs: List[List[int]] = Field(default_factory=list)

    @classmethod
    def from_vertex_sequences(cls, o: Orientation, sequences: Sequence[Sequence[int]]) -> "EarDecomposition":
        """由顶点序列还原边编号；第 0 个耳若未闭合则自动闭合"""
        taken = [False] * o.graph.m
        ears: List[List[int]] = []
        arcs: List[List[int]] = []
        for i, sequence in enumerate(sequences):
            seq = list(sequence)
            if i == 0 and seq[0] != seq[-1]:
                seq.append(seq[0])
            ear_arcs: List[int] = []
            for tail, head in zip(seq, seq[1:]):
                e = next((e for e, w in o.out_arcs(tail) if w == head and not taken[e]), None)
                if e is None:
                    raise ContractViolation(f"no unused arc {tail}->{head} for ear {i}")
                taken[e] = True
                ear_arcs.append(e)
            ears.append(seq)
            arcs.append(ear_arcs)
        return cls(ears=ears, arcs=arcs)

    def __len__(self) -> int:
        return len(self.ears)


def ear_decomposition(o: Orientation) -> EarDecomposition:
    """基于搜索的耳分解：先找一条过顶点 0 的环，再从已访问顶点沿未用弧延伸到已访问顶点"""
    g = o.graph
    if g.n < 2:
        raise ContractViolation("ear decomposition needs at least two vertices")
    if not is_strongly_connected(o):
        raise NotStronglyConnectedError("orientation is not strongly connected")

    visited = [False] * g.n
    used = [False] * g.m

    def walk_to_visited(start: int) -> Tuple[List[int], List[int]]:
        # 从未访问的 start 出发做广度优先搜索，直到碰到已访问顶点
        parent: Dict[int, Tuple[int, int]] = {start: (-1, -1)}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for e, y in o.out_arcs(x):
                if y in parent:
                    continue
                parent[y] = (e, x)
                if visited[y]:
                    vertices, arcs = [y], []
                    at = y
                    while at != start:
                        e_in, prev = parent[at]
                        arcs.append(e_in)
                        vertices.append(prev)
                        at = prev
                    return vertices[::-1], arcs[::-1]
                queue.append(y)
        raise NotStronglyConnectedError(f"vertex {start} cannot reach the decomposed part")

    ears: List[List[int]] = []
    ear_arcs: List[List[int]] = []
    scan: List[int] = []

    def add_ear(vertices: List[int], arcs: List[int]) -> None:
        for e in arcs:
            used[e] = True
        for v in vertices:
            if not visited[v]:
                visited[v] = True
                scan.append(v)
        ears.append(vertices)
        ear_arcs.append(arcs)

    first, w = o.out_arcs(0)[0]
    visited[0] = True
    scan.append(0)
    if w == 0:
        raise InternalInconsistency("self-loop in orientation")
    tail_vertices, tail_arcs = walk_to_visited(w)
    add_ear([0] + tail_vertices, [first] + tail_arcs)

    position = 0
    while position < len(scan):
        x = scan[position]
        for e, y in o.out_arcs(x):
            if used[e]:
                continue
            if visited[y]:
                add_ear([x, y], [e])
            else:
                rest_vertices, rest_arcs = walk_to_visited(y)
                add_ear([x] + rest_vertices, [e] + rest_arcs)
        position += 1
    logger.debug("ear decomposition with %d ears", len(ears))
    return EarDecomposition(ears=ears, arcs=ear_arcs)


def validate_ear_decomposition(o: Orientation, ears: EarDecomposition) -> List[str]:
    """检查弧划分与端点相交条件，返回违规描述列表"""
    g = o.graph
    problems: List[str] = []
    seen_arcs: Dict[int, int] = {}
    union: set = set()
    if not ears.ears:
        return ["no ears"]
    for i, (seq, arcs) in enumerate(zip(ears.ears, ears.arcs)):
        if len(seq) != len(arcs) + 1 or not arcs:
            problems.append(f"ear {i} has {len(seq)} vertices for {len(arcs)} arcs")
            continue
        for j, e in enumerate(arcs):
            if e in seen_arcs:
                problems.append(f"arc {e} appears in ears {seen_arcs[e]} and {i}")
            seen_arcs[e] = i
            if o.arc(e) != (seq[j], seq[j + 1]):
                problems.append(f"ear {i} arc {e} is {o.arc(e)}, expected {(seq[j], seq[j + 1])}")
        internal = seq[1:-1]
        if len(set(internal)) != len(internal) or (seq[0] != seq[-1] and seq[0] in internal) \
                or seq[-1] in internal:
            problems.append(f"ear {i} is not simple")
        if i == 0:
            if seq[0] != seq[-1]:
                problems.append("ear 0 is not a cycle")
        else:
            if seq[0] not in union or seq[-1] not in union:
                problems.append(f"ear {i} endpoints do not lie on earlier ears")
            touched = [v for v in internal if v in union]
            if touched:
                problems.append(f"ear {i} meets earlier ears at internal vertices {touched}")
        union.update(seq)
    if len(seen_arcs) != g.m:
        missing = sorted(set(range(g.m)) - set(seen_arcs))
        problems.append(f"arcs {missing} are not covered")
    if len(union) != g.n:
        problems.append(f"vertices {sorted(set(range(g.n)) - union)} are not covered")
    return problems


class CyclicOrdering(BaseModel):
    """动态循环顶点顺序，支持在某顶点之后插入"""
    first: int = Field(..., description="编号 0 的锚点")
    succ: Dict[int, int] = Field(default_factory=dict)
    pred: Dict[int, int] = Field(default_factory=dict)

    @classmethod
    def from_cycle(cls, vertices: Sequence[int]) -> "CyclicOrdering":
        if len(set(vertices)) != len(vertices) or not vertices:
            raise ContractViolation("a cyclic ordering needs distinct vertices")
        succ = {v: vertices[(i + 1) % len(vertices)] for i, v in enumerate(vertices)}
        pred = {w: v for v, w in succ.items()}
        return cls(first=vertices[0], succ=succ, pred=pred)

    def __len__(self) -> int:
        return len(self.succ)

    def __contains__(self, v: int) -> bool:
        return v in self.succ

    def successor(self, v: int) -> int:
        return self.succ[v]

    def predecessor(self, v: int) -> int:
        return self.pred[v]

    def insert_after(self, anchor: int, vertices: Sequence[int]) -> None:
        at = anchor
        for v in vertices:
            if v in self.succ:
                raise ContractViolation(f"vertex {v} is already in the ordering")
            nxt = self.succ[at]
            self.succ[at] = v
            self.succ[v] = nxt
            self.pred[v] = at
            self.pred[nxt] = v
            at = v

    def order(self) -> List[int]:
        result = [self.first]
        at = self.succ[self.first]
        while at != self.first:
            result.append(at)
            at = self.succ[at]
        return result

    def ranks(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order())}


class IntervalLabel(BaseModel):
    """弧上的符号区间，端点是顶点，可开可闭；(a, a) 表示除 a 之外的所有顶点"""
    arc: int
    tail: int
    head: int
    used: bool = True
    lo: Optional[int] = None
    hi: Optional[int] = None
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, w: int, ranks: Dict[int, int]) -> bool:
        if not self.used or self.lo is None or self.hi is None:
            return False
        size = len(ranks)
        offset = (ranks[w] - ranks[self.lo]) % size
        span = size if self.lo == self.hi else (ranks[self.hi] - ranks[self.lo]) % size
        if offset == 0:
            return self.lo_closed
        if offset < span:
            return True
        return offset == span and self.hi_closed

    def describe(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.used:
            return "UNUSED"
        name = (lambda v: names[v]) if names else str
        return f"{'[' if self.lo_closed else '('}{name(self.lo)},{name(self.hi)}{']' if self.hi_closed else ')'}"


def check_partition(o: Orientation, ordering: CyclicOrdering, labels: Sequence[Optional[IntervalLabel]]) -> List[str]:
    """每个已编入顶点的出弧区间两两不交，且并起来恰为除它之外的所有顶点"""
    ranks = ordering.ranks()
    problems: List[str] = []
    outgoing: Dict[int, List[IntervalLabel]] = {v: [] for v in ranks}
    for label in labels:
        if label is not None and label.used and label.tail in outgoing:
            outgoing[label.tail].append(label)
    for v, own in outgoing.items():
        for w in ranks:
            hits = sum(1 for label in own if label.contains(w, ranks))
            expected = 0 if w == v else 1
            if hits != expected:
                problems.append(f"vertex {w} lies in {hits} out-intervals of {v}")
    return problems


EarObserver = Callable[[int, CyclicOrdering, List[Optional[IntervalLabel]]], None]


def build_routing(o: Orientation, ears: EarDecomposition,
                  observer: Optional[EarObserver] = None) -> Tuple[CyclicOrdering, List[IntervalLabel]]:
    """按耳的顺序构造循环顺序和每条弧的区间

    单弧耳不参与路由，它们的弧标为未使用。每个耳处理完后调用 observer。
    """
    if not ears.ears:
        raise ContractViolation("empty ear decomposition")
    labels: List[Optional[IntervalLabel]] = [None] * o.graph.m

    cycle = ears.ears[0][:-1]
    ordering = CyclicOrdering.from_cycle(cycle)
    for e in ears.arcs[0]:
        tail, head = o.arc(e)
        labels[e] = IntervalLabel(arc=e, tail=tail, head=head, lo=tail, hi=tail)
    _after_ear(0, o, ordering, labels, observer)

    for i in range(1, len(ears)):
        seq, arcs = ears.ears[i], ears.arcs[i]
        if len(arcs) == 1:
            tail, head = o.arc(arcs[0])
            labels[arcs[0]] = IntervalLabel(arc=arcs[0], tail=tail, head=head, used=False)
            _after_ear(i, o, ordering, labels, observer)
            continue
        v1, internal = seq[0], seq[1:-1]
        opening = [label for label in labels
                   if label is not None and label.used and label.tail == v1
                   and label.lo == v1 and not label.lo_closed]
        if len(opening) != 1:
            raise InternalInconsistency(f"vertex {v1} has {len(opening)} out-intervals starting just after it")
        ordering.insert_after(v1, internal)
        for j, v in enumerate(internal, start=1):
            e = arcs[j]
            labels[e] = IntervalLabel(arc=e, tail=v, head=o.head[e], lo=v, hi=v)
        b = ordering.successor(internal[-1])
        reassigned = opening[0]
        reassigned.lo = b
        reassigned.lo_closed = True
        labels[arcs[0]] = IntervalLabel(arc=arcs[0], tail=v1, head=seq[1], lo=v1, hi=b)
        _after_ear(i, o, ordering, labels, observer)

    missing = [e for e, label in enumerate(labels) if label is None]
    if missing:
        raise ContractViolation(f"arcs {missing} are not covered by the ear decomposition")
    return ordering, [label for label in labels if label is not None]


def _after_ear(i: int, o: Orientation, ordering: CyclicOrdering,
               labels: List[Optional[IntervalLabel]], observer: Optional[EarObserver]) -> None:
    if settings.debug_checks:
        problems = check_partition(o, ordering, labels)
        if problems:
            raise InternalInconsistency(f"partition invariant broken after ear {i}: {problems[0]}")
    if observer is not None:
        observer(i, ordering, labels)


class NumericInterval(BaseModel):
    """闭循环数值区间 [lo, hi]"""
    lo: int
    hi: int

    def contains(self, x: int) -> bool:
        if self.lo <= self.hi:
            return self.lo <= x <= self.hi
        return x >= self.lo or x <= self.hi


class RoutingTables(BaseModel):
    """定稿的路由表：顶点编号与每条弧的闭区间（未使用的弧为 None）

    构造后不再修改，route 可以被并发调用。
    """
    ordering: List[int] = Field(..., description="位置 i 上的顶点")
    number: List[int] = Field(..., description="顶点的编号")
    tails: List[int]
    heads: List[int]
    entries: List[Optional[NumericInterval]]

    _out: List[List[int]] = PrivateAttr(default_factory=list)

    def model_post_init(self, __context) -> None:
        out: List[List[int]] = [[] for _ in self.number]
        for e, tail in enumerate(self.tails):
            out[tail].append(e)
        self._out = out

    @property
    def n(self) -> int:
        return len(self.number)

    def out_arcs(self, v: int) -> List[int]:
        return self._out[v]

    def table_size(self, v: int) -> int:
        """顶点 v 的区间个数"""
        return sum(1 for e in self._out[v] if self.entries[e] is not None)

    def max_table_size(self) -> int:
        return max((self.table_size(v) for v in range(self.n)), default=0)

    def max_out_degree(self) -> int:
        return max((len(arcs) for arcs in self._out), default=0)

    def next_arc(self, at: int, target: int) -> Optional[int]:
        x = self.number[target]
        for e in self._out[at]:
            entry = self.entries[e]
            if entry is not None and entry.contains(x):
                return e
        return None


def finalize_numeric(ordering: CyclicOrdering, labels: Sequence[IntervalLabel]) -> RoutingTables:
    """第 i 个位置的顶点编号为 i，开端点换成相邻顶点得到闭区间"""
    order = ordering.order()
    ranks = {v: i for i, v in enumerate(order)}
    number = [0] * len(order)
    for v, i in ranks.items():
        if v >= len(order):
            raise ContractViolation("ordering must contain exactly the vertices 0..n-1")
        number[v] = i
    m = len(labels)
    tails, heads = [0] * m, [0] * m
    entries: List[Optional[NumericInterval]] = [None] * m
    for label in labels:
        tails[label.arc], heads[label.arc] = label.tail, label.head
        if not label.used:
            continue
        if not any(label.contains(w, ranks) for w in order):
            raise InternalInconsistency(f"interval of arc {label.arc} is empty")
        lo = label.lo if label.lo_closed else ordering.successor(label.lo)
        hi = label.hi if label.hi_closed else ordering.predecessor(label.hi)
        entries[label.arc] = NumericInterval(lo=ranks[lo], hi=ranks[hi])
    return RoutingTables(ordering=order, number=number, tails=tails, heads=heads, entries=entries)


def route(tables: RoutingTables, s: int, t: int) -> List[int]:
    """从 s 出发，每一跳选择区间包含 t 编号的出弧，直到到达 t"""
    for v in (s, t):
        if not 0 <= v < tables.n:
            raise ContractViolation(f"vertex {v} out of range 0..{tables.n - 1}")
    if s == t:
        raise ContractViolation("source and destination must differ")
    cap = tables.n * max(len(tables.tails), 1)
    path: List[int] = []
    at = s
    while at != t:
        if len(path) >= cap:
            raise InternalInconsistency(f"message from {s} to {t} exceeded {cap} hops")
        e = tables.next_arc(at, t)
        if e is None:
            raise InternalInconsistency(f"no interval at vertex {at} contains destination {t}")
        path.append(e)
        at = tables.heads[e]
    return path


def _single_vertex_tables() -> RoutingTables:
    """单个顶点：编号 0，没有弧"""
    return RoutingTables(ordering=[0], number=[0], tails=[], heads=[], entries=[])


def min_outdegree_routing(g: UndirectedGraph) -> RoutingTables:
    """最大出度最小的强连通定向上的路由表：先求最小最大入度，再整体反向"""
    if g.n == 1:
        return _single_vertex_tables()
    o = sc_path_reversal(g).reversed()
    ears = ear_decomposition(o)
    ordering, labels = build_routing(o, ears)
    tables = finalize_numeric(ordering, labels)
    logger.info("routing tables: max table size %d, max out-degree %d",
                tables.max_table_size(), tables.max_out_degree())
    return tables


def routing_for(o: Orientation) -> RoutingTables:
    """任意强连通定向上的路由表"""
    if o.graph.n == 1:
        return _single_vertex_tables()
    ordering, labels = build_routing(o, ear_decomposition(o))
    return finalize_numeric(ordering, labels)
