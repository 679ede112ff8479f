"""集合覆盖到“最少最大入度顶点数”问题的归约：k-小工具、整图构造与两个方向的见证转换"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from egal_orient.acyclic import strip_phased, stripping, verify_acyclic
from egal_orient.errors import ContractViolation, InternalInconsistency
from egal_orient.models import Orientation, UndirectedGraph
from egal_orient.structure import connected_components

logger = logging.getLogger(__name__)


class SetCoverInstance(BaseModel):
    """全集 0..u-1 和一族子集；子集的并必须等于全集"""
    universe_size: int = Field(..., ge=1, description="全集大小")
    sets: List[List[int]] = Field(..., description="子集列表，下标即集合编号")

    @field_validator("sets")
    @classmethod
    def _normalize(cls, sets: List[List[int]]) -> List[List[int]]:
        normalized = []
        for i, members in enumerate(sets):
            if not members:
                raise ValueError(f"set {i} is empty")
            if len(set(members)) != len(members):
                raise ValueError(f"set {i} lists an element twice")
            normalized.append(sorted(members))
        return normalized

    @model_validator(mode="after")
    def _covers_universe(self) -> "SetCoverInstance":
        for i, members in enumerate(self.sets):
            bad = [x for x in members if not 0 <= x < self.universe_size]
            if bad:
                raise ValueError(f"set {i} has elements {bad} outside 0..{self.universe_size - 1}")
        covered = {x for members in self.sets for x in members}
        if len(covered) != self.universe_size:
            missing = sorted(set(range(self.universe_size)) - covered)
            raise ValueError(f"union of sets misses elements {missing}")
        return self

    def frequency(self, x: int) -> int:
        return sum(1 for members in self.sets if x in members)

    def sets_containing(self, x: int) -> List[int]:
        return [i for i, members in enumerate(self.sets) if x in members]

    def is_cover(self, indices: Iterable[int]) -> bool:
        covered = {x for i in indices for x in self.sets[i]}
        return len(covered) == self.universe_size


def choose_k(inst: SetCoverInstance) -> int:
    """大于所有集合大小和元素频数的最小奇数"""
    largest = max(max(len(members) for members in inst.sets),
                  max(inst.frequency(x) for x in range(inst.universe_size)))
    k = largest + 1
    return k if k % 2 == 1 else k + 1


class Gadget(BaseModel):
    """k-小工具 H_ℓ：两个 K_k、根 r，偶数 ℓ 时还有额外顶点 s

    左团为 0..k-1，右团为 k..2k-1，r = 2k，s = 2k+1。
    """
    graph: UndirectedGraph
    k: int
    ell: int
    root: int
    extra: Optional[int] = None

    @property
    def left(self) -> List[int]:
        return list(range(self.k))

    @property
    def right(self) -> List[int]:
        return list(range(self.k, 2 * self.k))

    @property
    def designated(self) -> int:
        """不与 r 相邻、编号最小的团顶点"""
        attached = set(self.graph.neighbors(self.root))
        return min(v for v in self.left + self.right if v not in attached)

    def strip_phases(self, removed: int) -> List[List[int]]:
        """删去 removed 之后按图示顺序剥离其余顶点：先剥它所在的团，再剥另一个团，最后是 r"""
        if removed == self.root:
            return [[v for v in range(self.graph.n) if v != removed]]
        if removed == self.extra:
            return [self.left, self.right, [self.root]]
        own, other = (self.left, self.right) if removed < self.k else (self.right, self.left)
        phases = [[v for v in own if v != removed]]
        if self.extra is not None:
            phases.append([self.extra])
        phases.extend([other, [self.root]])
        return phases


def _validate_gadget(gadget: Gadget) -> None:
    g, k = gadget.graph, gadget.k
    for v in range(g.n):
        if v != gadget.root and g.degree(v) != k:
            raise InternalInconsistency(f"gadget H_{gadget.ell}: vertex {v} has degree {g.degree(v)}, expected {k}")
    if g.degree(gadget.root) != k - gadget.ell:
        raise InternalInconsistency(f"gadget H_{gadget.ell}: root has degree {g.degree(gadget.root)}")
    if len(connected_components(g, [v for v in range(g.n) if v != gadget.root])) != 1:
        raise InternalInconsistency(f"gadget H_{gadget.ell} minus its root is disconnected")
    if stripping(g)[0].peak > k - 1:
        raise InternalInconsistency(f"gadget H_{gadget.ell} is not {k - 1}-strippable")


@lru_cache(maxsize=None)
def build_gadget(k: int, ell: int) -> Gadget:
    """构造并校验 k-小工具 H_ℓ（k 为奇数，1 <= ℓ < k）"""
    if k < 3 or k % 2 == 0:
        raise ContractViolation(f"k must be an odd integer >= 3, got {k}")
    if not 1 <= ell < k:
        raise ContractViolation(f"l must satisfy 1 <= l < k, got l={ell} for k={k}")
    left, right = list(range(k)), list(range(k, 2 * k))
    root = 2 * k
    edges: List[Tuple[int, int]] = []
    for clique in (left, right):
        edges.extend((clique[i], clique[j]) for i in range(k) for j in range(i + 1, k))

    extra: Optional[int] = None
    if ell % 2 == 1:
        attach = (k - ell) // 2
        edges.extend((root, v) for v in left[:attach] + right[:attach])
        edges.extend(zip(left[attach:], right[attach:]))
        n = 2 * k + 1
    else:
        half = ell // 2
        extra = 2 * k + 1
        edges.extend((root, v) for v in left[:k - ell])
        edges.extend((extra, v) for v in left[k - ell:k - half] + right[:k - half])
        edges.extend(zip(left[k - half:], right[k - half:]))
        n = 2 * k + 2

    gadget = Gadget(graph=UndirectedGraph(n=n, edges=edges), k=k, ell=ell, root=root, extra=extra)
    _validate_gadget(gadget)
    return gadget


class GadgetPlacement(BaseModel):
    """小工具在归约图中的位置；kind 为 "set" 或 "element" """
    kind: str
    index: int = Field(..., description="集合编号或元素编号")
    offset: int = Field(..., description="小工具顶点 0 在整图中的编号")
    gadget: Gadget

    def vertex(self, local: int) -> int:
        return self.offset + local

    def vertices(self) -> List[int]:
        return list(range(self.offset, self.offset + self.gadget.graph.n))


class ReductionInstance(BaseModel):
    """归约图：每个集合一个 H_1，每个元素 x 一个 H_{f_x}，以及 r_i 与 r_x 之间的连边"""
    instance: SetCoverInstance
    graph: UndirectedGraph
    k: int
    set_roots: Dict[int, int] = Field(default_factory=dict)
    element_roots: Dict[int, int] = Field(default_factory=dict)
    placements: List[GadgetPlacement] = Field(default_factory=list)
    membership: List[int] = Field(default_factory=list, description="顶点所属小工具在 placements 中的下标")

    def owner(self, v: int) -> GadgetPlacement:
        return self.placements[self.membership[v]]

    def set_placement(self, i: int) -> GadgetPlacement:
        return self.placements[i]

    def element_placement(self, x: int) -> GadgetPlacement:
        return self.placements[len(self.instance.sets) + x]


def _validate_reduction(ri: ReductionInstance) -> None:
    g, k = ri.graph, ri.k
    expected = [k] * g.n
    for i, root in ri.set_roots.items():
        expected[root] = k + len(ri.instance.sets[i]) - 1
    for v in range(g.n):
        if g.degree(v) != expected[v]:
            raise InternalInconsistency(f"reduction vertex {v} has degree {g.degree(v)}, expected {expected[v]}")
    if stripping(g)[0].peak > k:
        raise InternalInconsistency(f"reduction graph is not {k}-strippable")


def build_reduction(inst: SetCoverInstance) -> ReductionInstance:
    k = choose_k(inst)
    edges: List[Tuple[int, int]] = []
    placements: List[GadgetPlacement] = []
    membership: List[int] = []

    def place(kind: str, index: int, ell: int) -> GadgetPlacement:
        gadget = build_gadget(k, ell)
        offset = len(membership)
        edges.extend((offset + u, offset + v) for u, v in gadget.graph.edges)
        membership.extend([len(placements)] * gadget.graph.n)
        placement = GadgetPlacement(kind=kind, index=index, offset=offset, gadget=gadget)
        placements.append(placement)
        return placement

    set_roots: Dict[int, int] = {}
    for i in range(len(inst.sets)):
        set_roots[i] = place("set", i, 1).vertex(build_gadget(k, 1).root)
    element_roots: Dict[int, int] = {}
    for x in range(inst.universe_size):
        f = inst.frequency(x)
        if not 1 <= f < k:
            raise InternalInconsistency(f"element {x} has frequency {f} outside 1..{k - 1}")
        placement = place("element", x, f)
        element_roots[x] = placement.vertex(placement.gadget.root)
    for i, members in enumerate(inst.sets):
        edges.extend((set_roots[i], element_roots[x]) for x in members)

    ri = ReductionInstance(instance=inst, graph=UndirectedGraph(n=len(membership), edges=edges), k=k,
                           set_roots=set_roots, element_roots=element_roots,
                           placements=placements, membership=membership)
    _validate_reduction(ri)
    logger.info("reduction graph: k=%d, %d vertices, %d edges", k, ri.graph.n, ri.graph.m)
    return ri


def count_at_least(o: Orientation, k: int) -> int:
    return sum(1 for d in o.indegree if d >= k)


def cover_to_orientation(ri: ReductionInstance, cover: Iterable[int]) -> Orientation:
    """由覆盖构造无环定向：选中集合的小工具各有一个入度 k 的顶点，其余顶点入度至多 k-1"""
    chosen = sorted(set(cover))
    for i in chosen:
        if not 0 <= i < len(ri.instance.sets):
            raise ContractViolation(f"set index {i} out of range")
    if not ri.instance.is_cover(chosen):
        raise ContractViolation(f"sets {chosen} do not cover the universe")

    designated = {i: ri.set_placement(i).vertex(ri.set_placement(i).gadget.designated) for i in chosen}
    phases: List[Sequence[int]] = [sorted(designated.values())]
    for i in chosen:
        placement = ri.set_placement(i)
        local = placement.gadget.designated
        phases.extend([placement.vertex(v) for v in group] for group in placement.gadget.strip_phases(local))
    for x in range(ri.instance.universe_size):
        phases.append(ri.element_placement(x).vertices())
    for i in range(len(ri.instance.sets)):
        if i not in designated:
            phases.append(ri.set_placement(i).vertices())

    order, o = strip_phased(ri.graph, phases)
    x_set = set(designated.values())
    for v, d in zip(order.order, order.degrees):
        if v not in x_set and d > ri.k - 1:
            raise InternalInconsistency(f"vertex {v} received indegree {d} > {ri.k - 1}")
    if not verify_acyclic(o):
        raise InternalInconsistency("cover orientation is cyclic")
    return o


class CoverReport(BaseModel):
    """从定向中提取的集合族"""
    cover: List[int] = Field(default_factory=list)
    high_count: int = Field(..., description="入度至少为 k 的顶点数")
    is_cover: bool

    @property
    def size(self) -> int:
        return len(self.cover)


def orientation_to_cover(ri: ReductionInstance, o: Orientation) -> CoverReport:
    """集合小工具含高入度顶点则选该集合；元素小工具含高入度顶点则选一个包含该元素的集合

    优先复用已选集合，否则取编号最小的集合。
    """
    if o.graph.edges != ri.graph.edges:
        raise ContractViolation("orientation does not belong to the reduction graph")
    if not verify_acyclic(o):
        raise ContractViolation("orientation must be acyclic")
    high = [v for v in range(ri.graph.n) if o.indegree[v] >= ri.k]
    owners = sorted({ri.membership[v] for v in high})
    chosen = {ri.placements[p].index for p in owners if ri.placements[p].kind == "set"}
    for p in owners:
        placement = ri.placements[p]
        if placement.kind != "element":
            continue
        candidates = ri.instance.sets_containing(placement.index)
        if not any(i in chosen for i in candidates):
            chosen.add(candidates[0])
    cover = sorted(chosen)
    report = CoverReport(cover=cover, high_count=len(high), is_cover=ri.instance.is_cover(cover))
    if not report.is_cover:
        logger.warning("extracted sets %s do not cover the universe", cover)
    return report
