"""强连通定向：SC 路径翻转、双可达性检测、单弧结构证书与子集下界"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

from pydantic import BaseModel, Field

from egal_orient.config import settings
from egal_orient.errors import (ContractViolation, InternalInconsistency, NotStronglyConnectedError,
                                NotStronglyOrientableError, RefusedError)
from egal_orient.models import DirectedPath, Orientation, ReversalStep, UndirectedGraph
from egal_orient.structure import connected_components, find_bridges, strongly_connected_arcs
from egal_orient.unconstrained import reverse_path

logger = logging.getLogger(__name__)


class FlowResult(BaseModel):
    """单位容量网络上截断到 2 的最大流"""
    value: int = Field(..., ge=0, le=2, description="min(2, 最大流值)")
    paths: List[DirectedPath] = Field(default_factory=list, description="实现该流的弧不相交路径")


def is_strongly_connected(o: Orientation) -> bool:
    return strongly_connected_arcs(o.graph.n, (o.arc(e) for e in range(o.graph.m)))


def require_strongly_orientable(g: UndirectedGraph) -> None:
    """Robbins 定理的前提：连通且无桥"""
    components = connected_components(g)
    if len(components) > 1:
        stranger = components[1][0]
        raise NotStronglyOrientableError(f"graph is disconnected: vertex {stranger} is not reachable from {components[0][0]}")
    bridges = find_bridges(g)
    if bridges:
        u, v = g.edges[bridges[0]]
        raise NotStronglyOrientableError(f"bridge {u}-{v}", bridge=(u, v))


def initial_strong_orientation(g: UndirectedGraph) -> Orientation:
    """以 0 为根的深度优先树：树边向下，非树边向上"""
    require_strongly_orientable(g)
    head: List[int] = [-1] * g.m
    if g.n:
        visited = [False] * g.n
        visited[0] = True
        stack: List[Tuple[int, int]] = [(0, 0)]
        while stack:
            v, i = stack[-1]
            incidence = g.incidence[v]
            if i == len(incidence):
                stack.pop()
                continue
            stack[-1] = (v, i + 1)
            e, w = incidence[i]
            if head[e] != -1:
                continue
            # 未定向的非树边必然连向祖先
            head[e] = w
            if not visited[w]:
                visited[w] = True
                stack.append((w, 0))
    o = Orientation.from_heads(g, head)
    if not is_strongly_connected(o):
        raise InternalInconsistency("depth-first orientation of a bridgeless graph is not strongly connected")
    return o


def _unit_flow(o: Orientation, source: int, sinks: Set[int], limit: int = 2) -> FlowResult:
    """至多 limit 轮增广路搜索，然后把流分解成弧不相交路径"""
    g = o.graph
    flow = [0] * g.m
    value = 0
    while value < limit:
        parent: Dict[int, Tuple[int, int]] = {source: (-1, -1)}
        queue = deque([source])
        reached = -1
        while queue and reached == -1:
            x = queue.popleft()
            for e, y in g.incidence[x]:
                forward = o.head[e] == y and flow[e] == 0
                backward = o.head[e] == x and flow[e] == 1
                if (forward or backward) and y not in parent:
                    parent[y] = (e, x)
                    if y in sinks:
                        reached = y
                        break
                    queue.append(y)
        if reached == -1:
            break
        at = reached
        while at != source:
            e, prev = parent[at]
            flow[e] ^= 1
            at = prev
        value += 1

    paths: List[DirectedPath] = []
    used = [False] * g.m
    for _ in range(value):
        vertices = [source]
        arcs: List[int] = []
        position = {source: 0}
        at = source
        while at not in sinks:
            e = next(e for e, w in g.incidence[at] if flow[e] and o.head[e] == w and not used[e])
            used[e] = True
            at = o.head[e]
            if at in position:
                # 丢弃绕回的环
                cut = position[at]
                for w in vertices[cut + 1:]:
                    del position[w]
                vertices = vertices[:cut + 1]
                arcs = arcs[:cut]
            else:
                position[at] = len(vertices)
                vertices.append(at)
                arcs.append(e)
        paths.append(DirectedPath(arcs=arcs, start=source, end=at))
    return FlowResult(value=value, paths=paths)


def two_reaches(o: Orientation, u: int, v: int) -> FlowResult:
    """u 是否有两条弧不相交的路径到 v"""
    if u == v:
        raise ContractViolation("two_reaches needs distinct vertices")
    return _unit_flow(o, u, {v})


def two_reaches_set(o: Orientation, u: int, targets: Iterable[int]) -> FlowResult:
    """u 是否有两条弧不相交的路径到达顶点集 targets（终点可以不同）"""
    sinks = set(targets)
    if u in sinks:
        raise ContractViolation("source must lie outside the target set")
    if not sinks:
        return FlowResult(value=0)
    return _unit_flow(o, u, sinks)


def find_strongly_reversible_path(o: Orientation) -> Optional[DirectedPath]:
    """起点入度 < k-1、终点入度为最大值 k、且起点双可达终点的路径

    返回二流分解中的一条路径，翻转它保持强连通。
    """
    if not is_strongly_connected(o):
        raise NotStronglyConnectedError("orientation is not strongly connected")
    k = o.max_indegree()
    sources = sorted((u for u in range(o.graph.n) if o.indegree[u] < k - 1),
                     key=lambda u: (o.indegree[u], u))
    if not sources:
        return None
    for v in range(o.graph.n):
        if o.indegree[v] != k:
            continue
        for u in sources:
            result = two_reaches(o, u, v)
            if result.value >= 2:
                return result.paths[0]
    return None


def sc_path_reversal(g: UndirectedGraph, trace: Optional[List[ReversalStep]] = None) -> Orientation:
    """最大入度最小的强连通定向"""
    o = initial_strong_orientation(g)
    reversals = 0
    while True:
        path = find_strongly_reversible_path(o)
        if path is None:
            break
        if reversals >= g.m:
            raise InternalInconsistency(f"SC path reversal exceeded {g.m} reversals")
        step = ReversalStep(start=path.start, end=path.end,
                            end_indegree=o.indegree[path.end], length=len(path))
        logger.debug("strong reversal %d -> %d at indegree %d", step.start, step.end, step.end_indegree)
        reverse_path(o, path)
        reversals += 1
        if settings.debug_checks and not is_strongly_connected(o):
            raise InternalInconsistency(f"reversal {step.start}->{step.end} broke strong connectivity")
        if trace is not None:
            trace.append(step)
    logger.info("SC path reversal finished after %d reversals, max indegree %d", reversals, o.max_indegree())
    return o


def _inside_edges(g: UndirectedGraph, members: Set[int]) -> int:
    return sum(1 for u, v in g.edges if u in members and v in members)


def _subset_bound(g: UndirectedGraph, members: Set[int]) -> int:
    """⌈(m(U) + c(U)) / |U|⌉"""
    outside = [v for v in range(g.n) if v not in members]
    total = _inside_edges(g, members) + len(connected_components(g, outside))
    return -(-total // len(members))


def sc_lower_bound(g: UndirectedGraph) -> int:
    """枚举全部非空子集 U 的下界 max ⌈(m(U) + c(U)) / |U|⌉"""
    if g.n > settings.sc_bound_max_vertices:
        raise RefusedError(
            f"subset enumeration refused for n={g.n} > {settings.sc_bound_max_vertices}; "
            "use 'sc-minmax --certificate' for a polynomial optimality certificate")
    best = 0
    for mask in range(1, 1 << g.n):
        members = {v for v in range(g.n) if mask >> v & 1}
        best = max(best, _subset_bound(g, members))
    return best


class OneEdgeReport(BaseModel):
    """单弧结构检查的结果，witness 是最优性证书"""
    passed: bool
    k: int = Field(..., description="最大入度")
    vertex: int = Field(..., description="最大入度顶点 v")
    witness: List[int] = Field(default_factory=list, description="U = {双可达 v 的顶点} ∪ {v}")
    bound: int = Field(..., description="U 给出的下界 ⌈(m(U)+c(U))/|U|⌉")
    violations: List[str] = Field(default_factory=list)


def check_one_edge_structure(o: Orientation) -> OneEdgeReport:
    """验证 SC 路径翻转输出的结构：U 内入度为 k 或 k-1，G[V\\U] 每个分量恰有一条弧进入 U"""
    g = o.graph
    if g.n == 0:
        return OneEdgeReport(passed=True, k=0, vertex=0, bound=0)
    k = o.max_indegree()
    v = min(x for x in range(g.n) if o.indegree[x] == k)
    members = {v} | {u for u in range(g.n) if u != v and two_reaches(o, u, v).value >= 2}
    violations: List[str] = []
    for u in sorted(members):
        if o.indegree[u] not in (k, k - 1):
            violations.append(f"vertex {u} two-reaches {v} but has indegree {o.indegree[u]} < {k - 1}")
    for component in connected_components(g, [x for x in range(g.n) if x not in members]):
        inside = set(component)
        entering = [e for e in range(g.m) if o.tail(e) in inside and o.head[e] in members]
        if len(entering) != 1:
            violations.append(f"component {component} sends {len(entering)} arcs into U")
    bound = _subset_bound(g, members)
    if not violations and bound != k:
        violations.append(f"certificate bound {bound} differs from maximum indegree {k}")
    if violations:
        logger.warning("one-edge structure violated: %s", "; ".join(violations))
    return OneEdgeReport(passed=not violations, k=k, vertex=v, witness=sorted(members),
                         bound=bound, violations=violations)
