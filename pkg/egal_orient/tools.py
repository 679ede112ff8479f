"""工具层：把各模块的操作组合成命令行子命令使用的结果字典"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple, Union

from egal_orient.acyclic import stripping, verify_acyclic
from egal_orient.errors import InfeasibleError, RefusedError
from egal_orient.models import Orientation, ReversalStep, UndirectedGraph, indegree_sequence
from egal_orient.oracle import Constraint, Objective, OracleQuery, oracle_solve
from egal_orient.reduction import (SetCoverInstance, build_gadget, build_reduction, count_at_least,
                                   cover_to_orientation, orientation_to_cover)
from egal_orient.routing import min_outdegree_routing, route
from egal_orient.storage import parse_orientation
from egal_orient.strong import check_one_edge_structure, sc_lower_bound, sc_path_reversal
from egal_orient.unconstrained import ConvexCost, path_reversal

logger = logging.getLogger(__name__)

COSTS = {"square": ConvexCost.square, "pow2": ConvexCost.pow2}


class OrientationTools:
    """定向工具类，每个方法对应一个子命令"""

    def minlex(self, g: UndirectedGraph, seed: Optional[int] = None) -> Dict:
        """字典序最小的无约束定向

        Returns:
            orientation、sequence 与逐次翻转的 trace
        """
        trace: List[ReversalStep] = []
        o = path_reversal(g, seed=seed, trace=trace)
        return {"orientation": o, "sequence": indegree_sequence(o), "trace": trace}

    def sc_minmax(self, g: UndirectedGraph, certificate: bool = False, compare_lex: bool = False) -> Dict:
        """最大入度最小的强连通定向，可选附带最优性证书和字典序对照"""
        trace: List[ReversalStep] = []
        o = sc_path_reversal(g, trace=trace)
        result: Dict = {"orientation": o, "max_indegree": o.max_indegree(), "trace": trace}
        if certificate:
            result["certificate"] = check_one_edge_structure(o)
        if compare_lex:
            produced = indegree_sequence(o)
            try:
                best = oracle_solve(g, OracleQuery(constraint=Constraint.STRONGLY_CONNECTED,
                                                   objective=Objective.MIN_LEX)).sequence
            except RefusedError as e:
                logger.warning("lexicographic comparison skipped: %s", e)
                best = None
            result["comparison"] = {
                "produced": produced,
                "oracle": best,
                "holds": None if best is None else produced.values == best.values,
            }
        return result

    def bound_sc(self, g: UndirectedGraph) -> Dict:
        return {"bound": sc_lower_bound(g)}

    def strip(self, g: UndirectedGraph) -> Dict:
        order, o = stripping(g)
        return {"order": order, "orientation": o}

    def route_tables(self, g: UndirectedGraph) -> Dict:
        return {"tables": min_outdegree_routing(g)}

    def route_sim(self, g: UndirectedGraph, pairs: Optional[Iterable[Tuple[int, int]]] = None) -> Dict:
        """在路由表上模拟消息转发；pairs 为空时模拟所有有序顶点对"""
        tables = min_outdegree_routing(g)
        if pairs is None:
            pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
        routes = []
        for s, t in pairs:
            arcs = route(tables, s, t)
            routes.append({"source": s, "target": t,
                           "vertices": [s] + [tables.heads[e] for e in arcs]})
        return {
            "tables": tables,
            "routes": routes,
            "max_hops": max((len(r["vertices"]) - 1 for r in routes), default=0),
            "max_table_size": tables.max_table_size(),
        }

    def oracle(self, g: UndirectedGraph, constraint: str = "none", objective: str = "minlex") -> Dict:
        """穷举求解；objective 取 minmax、minlex 或 convex:<square|pow2>"""
        cost = None
        if objective.startswith("convex:"):
            name = objective.split(":", 1)[1]
            cost = COSTS[name](max(g.m, 1))
            objective = Objective.MIN_CONVEX.value
        query = OracleQuery(constraint=Constraint(constraint), objective=Objective(objective), cost=cost)
        result = oracle_solve(g, query)
        if not result.feasible:
            raise InfeasibleError(f"no orientation satisfies constraint {constraint}")
        return {"objective": query.objective, "result": result}

    def gadget_build(self, k: int, ell: int) -> Dict:
        return {"gadget": build_gadget(k, ell)}

    def gadget_reduce(self, inst: SetCoverInstance) -> Dict:
        ri = build_reduction(inst)
        sidecar = {
            "k": ri.k,
            "set_roots": ri.set_roots,
            "element_roots": ri.element_roots,
            "gadgets": [
                {"kind": p.kind, "index": p.index, "offset": p.offset, "l": p.gadget.ell, "size": p.gadget.graph.n}
                for p in ri.placements
            ],
        }
        return {"reduction": ri, "sidecar": sidecar}

    def gadget_verify(self, inst: SetCoverInstance, cover: List[int]) -> Dict:
        """由覆盖构造无环定向并统计入度为 k 的顶点"""
        ri = build_reduction(inst)
        o = cover_to_orientation(ri, cover)
        return {"k": ri.k, "orientation": o, "high_count": count_at_least(o, ri.k), "acyclic": verify_acyclic(o)}

    def gadget_extract(self, inst: SetCoverInstance, orientation_text: Union[str, bytes]) -> Dict:
        ri = build_reduction(inst)
        o: Orientation = parse_orientation(orientation_text, ri.graph)
        return {"k": ri.k, "report": orientation_to_cover(ri, o)}


# 创建全局工具实例
orientation_tools = OrientationTools()
