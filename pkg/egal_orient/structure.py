"""图结构查询：连通分量、桥、强连通性与拓扑序"""

from collections import deque
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from egal_orient.models import UndirectedGraph


def connected_components(g: UndirectedGraph, vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
    """诱导子图 G[vertices] 的连通分量，按最小顶点编号排序"""
    allowed: Set[int] = set(range(g.n)) if vertices is None else set(vertices)
    seen: Set[int] = set()
    components: List[List[int]] = []
    for root in sorted(allowed):
        if root in seen:
            continue
        seen.add(root)
        component = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for _, y in g.incidence[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    component.append(y)
                    queue.append(y)
        components.append(sorted(component))
    return components


def is_connected(g: UndirectedGraph) -> bool:
    return len(connected_components(g)) <= 1


def find_bridges(g: UndirectedGraph) -> List[int]:
    """返回所有桥的边编号（升序）

    迭代式 lowpoint 计算；只跳过进入当前顶点的那条树边本身，
    因此平行边不会被误判为桥。
    """
    pre = [-1] * g.n
    low = [0] * g.n
    counter = 0
    bridges: List[int] = []
    for root in range(g.n):
        if pre[root] != -1:
            continue
        pre[root] = low[root] = counter
        counter += 1
        # (顶点, 进入它的边, 邻接表游标)
        stack: List[List[int]] = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, parent_edge, i = frame
            incidence = g.incidence[v]
            if i < len(incidence):
                frame[2] += 1
                e, w = incidence[i]
                if e == parent_edge:
                    continue
                if pre[w] == -1:
                    pre[w] = low[w] = counter
                    counter += 1
                    stack.append([w, e, 0])
                else:
                    low[v] = min(low[v], pre[w])
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] > pre[u]:
                    bridges.append(parent_edge)
    return sorted(bridges)


def _adjacency(n: int, arcs: Iterable[Tuple[int, int]]) -> Tuple[List[List[int]], List[List[int]]]:
    out: List[List[int]] = [[] for _ in range(n)]
    into: List[List[int]] = [[] for _ in range(n)]
    for tail, head in arcs:
        out[tail].append(head)
        into[head].append(tail)
    return out, into


def _reached(adjacency: Sequence[Sequence[int]], start: int) -> int:
    seen = [False] * len(adjacency)
    seen[start] = True
    count = 1
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count


def strongly_connected_arcs(n: int, arcs: Iterable[Tuple[int, int]]) -> bool:
    """一个强连通分量是否覆盖全部 n 个顶点（n <= 1 时为真）"""
    if n <= 1:
        return True
    out, into = _adjacency(n, arcs)
    return _reached(out, 0) == n and _reached(into, 0) == n


def topological_order(n: int, arcs: Iterable[Tuple[int, int]]) -> Optional[List[int]]:
    """Kahn 算法；有向环存在时返回 None"""
    out, into = _adjacency(n, arcs)
    pending = [len(into[v]) for v in range(n)]
    queue = deque(v for v in range(n) if pending[v] == 0)
    order: List[int] = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in out[x]:
            pending[y] -= 1
            if pending[y] == 0:
                queue.append(y)
    return order if len(order) == n else None
