"""穷举求解器：枚举全部 2^m 个定向，按约束过滤后取目标最优者

第 i 位为 1 表示边 i 指向 edges[i][1]。枚举空间按 2**shard_bits 切片，
每片用 numpy 一次算出全部入度向量，再按目标值顺序逐个检查约束。
合并时目标值相同取编号最小者，因此结果与切片方式和线程数无关。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from egal_orient.acyclic import verify_acyclic
from egal_orient.config import settings
from egal_orient.errors import DomainError, RefusedError
from egal_orient.models import DegreeSequence, Orientation, UndirectedGraph, indegree_sequence
from egal_orient.strong import is_strongly_connected
from egal_orient.unconstrained import ConvexCost, convex_cost

logger = logging.getLogger(__name__)


class Constraint(str, Enum):
    NONE = "none"
    STRONGLY_CONNECTED = "sc"
    ACYCLIC = "acyclic"


class Objective(str, Enum):
    MIN_MAX = "minmax"
    MIN_LEX = "minlex"
    MIN_CONVEX = "convex"


class OracleQuery(BaseModel):
    constraint: Constraint = Constraint.NONE
    objective: Objective = Objective.MIN_LEX
    cost: Optional[ConvexCost] = Field(None, description="objective 为 convex 时的代价函数")

    @model_validator(mode="after")
    def _cost_for_convex(self) -> "OracleQuery":
        if self.objective is Objective.MIN_CONVEX and self.cost is None:
            raise ValueError("convex objective needs a cost function")
        return self


class OracleResult(BaseModel):
    """feasible 为假时约束过滤掉了所有定向"""
    feasible: bool
    max_indegree: Optional[int] = None
    sequence: Optional[DegreeSequence] = None
    cost: Optional[float] = None
    witness: Optional[Orientation] = None
    index: Optional[int] = Field(None, description="见证定向的枚举编号")


def _passes(o: Orientation, constraint: Constraint) -> bool:
    if constraint is Constraint.STRONGLY_CONNECTED:
        return is_strongly_connected(o)
    if constraint is Constraint.ACYCLIC:
        return verify_acyclic(o)
    return True


def _shard_indegrees(g: UndirectedGraph, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
    """返回 (heads, indegrees)，形状分别为 (S, m) 与 (S, n)"""
    indices = np.arange(start, stop, dtype=np.int64)
    bits = (indices[:, None] >> np.arange(g.m, dtype=np.int64)) & 1
    tails = np.array([u for u, _ in g.edges], dtype=np.int64)
    heads_if_set = np.array([v for _, v in g.edges], dtype=np.int64)
    heads = np.where(bits == 1, heads_if_set, tails)
    indegrees = np.zeros((stop - start, g.n), dtype=np.int64)
    rows = np.arange(stop - start)
    for j in range(g.m):
        indegrees[rows, heads[:, j]] += 1
    return heads, indegrees


def _shard_keys(indegrees: np.ndarray, q: OracleQuery) -> Tuple[np.ndarray, np.ndarray]:
    """返回 (候选顺序, 每行的比较键)；同键按编号稳定排序"""
    if q.objective is Objective.MIN_LEX:
        keys = -np.sort(-indegrees, axis=1)
        order = np.lexsort(keys.T[::-1]) if keys.shape[1] else np.arange(keys.shape[0])
        return order, keys
    if q.objective is Objective.MIN_MAX:
        keys = indegrees.max(axis=1) if indegrees.shape[1] else np.zeros(indegrees.shape[0], dtype=np.int64)
    else:
        table = np.asarray(q.cost.values, dtype=np.float64)
        if indegrees.size and indegrees.max() > q.cost.upto:
            raise DomainError(f"cost {q.cost.name} is undefined at indegree {int(indegrees.max())} "
                              f"(domain 0..{q.cost.upto})")
        keys = table[indegrees].sum(axis=1)
    return np.argsort(keys, kind="stable"), keys


def _strong_candidates(g: UndirectedGraph, indegrees: np.ndarray) -> np.ndarray:
    """强连通的必要条件：每个顶点入度和出度都至少为 1"""
    if g.n < 2:
        return np.ones(indegrees.shape[0], dtype=bool)
    degrees = np.array([g.degree(v) for v in range(g.n)], dtype=np.int64)
    return ((indegrees >= 1) & (indegrees <= degrees - 1)).all(axis=1)


def _solve_shard(g: UndirectedGraph, q: OracleQuery, start: int, stop: int) -> Optional[Tuple[Tuple, int, Orientation]]:
    heads, indegrees = _shard_indegrees(g, start, stop)
    order, keys = _shard_keys(indegrees, q)
    admissible = _strong_candidates(g, indegrees) if q.constraint is Constraint.STRONGLY_CONNECTED else None
    for row in order:
        if admissible is not None and not admissible[row]:
            continue
        o = Orientation.from_heads(g, heads[row].tolist())
        if _passes(o, q.constraint):
            key = keys[row]
            comparable = tuple(int(x) for x in key) if np.ndim(key) else (key.item(),)
            return comparable, start + int(row), o
    return None


def oracle_solve(g: UndirectedGraph, q: OracleQuery) -> OracleResult:
    """枚举全部定向，返回约束下的最优值和第一个达到最优的定向"""
    if g.m > settings.oracle_max_edges:
        raise RefusedError(f"oracle refused: m={g.m} exceeds the enumeration ceiling {settings.oracle_max_edges}")
    total = 1 << g.m
    width = 1 << min(settings.oracle_shard_bits, g.m)
    shards = [(start, min(start + width, total)) for start in range(0, total, width)]
    logger.debug("oracle: %d orientations in %d shards, %s/%s",
                 total, len(shards), q.constraint.value, q.objective.value)

    if settings.oracle_workers > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=settings.oracle_workers) as pool:
            found = list(pool.map(lambda bounds: _solve_shard(g, q, *bounds), shards))
    else:
        found = [_solve_shard(g, q, start, stop) for start, stop in shards]

    candidates = [item for item in found if item is not None]
    if not candidates:
        return OracleResult(feasible=False)
    _, index, witness = min(candidates, key=lambda item: (item[0], item[1]))
    return OracleResult(
        feasible=True,
        max_indegree=witness.max_indegree(),
        sequence=indegree_sequence(witness),
        cost=convex_cost(witness, q.cost) if q.cost is not None else None,
        witness=witness,
        index=index,
    )


def oracle_sequence(g: UndirectedGraph, constraint: Constraint = Constraint.NONE) -> Optional[DegreeSequence]:
    result = oracle_solve(g, OracleQuery(constraint=constraint, objective=Objective.MIN_LEX))
    return result.sequence if result.feasible else None


def oracle_max_indegree(g: UndirectedGraph, constraint: Constraint = Constraint.NONE) -> Optional[int]:
    result = oracle_solve(g, OracleQuery(constraint=constraint, objective=Objective.MIN_MAX))
    return result.max_indegree if result.feasible else None


def oracle_convex_cost(g: UndirectedGraph, cost: ConvexCost, constraint: Constraint = Constraint.NONE) -> Optional[float]:
    result = oracle_solve(g, OracleQuery(constraint=constraint, objective=Objective.MIN_CONVEX, cost=cost))
    return result.cost if result.feasible else None


def sequences_of(g: UndirectedGraph) -> List[DegreeSequence]:
    """全部定向的入度序列（按枚举编号），用于小图的手工核对"""
    if g.m > settings.oracle_max_edges:
        raise RefusedError(f"oracle refused: m={g.m} exceeds the enumeration ceiling {settings.oracle_max_edges}")
    _, indegrees = _shard_indegrees(g, 0, 1 << g.m)
    return [DegreeSequence(values=sorted(row.tolist(), reverse=True)) for row in indegrees]
