"""文本格式的读写：图文件、定向文件、集合覆盖文件和 JSON 附加文件"""

import json
import logging
from typing import Any, Iterator, List, Tuple, Union

from pydantic import ValidationError

from egal_orient.errors import GraphParseError, OrientationParseError, SetCoverParseError
from egal_orient.models import Orientation, UndirectedGraph
from egal_orient.reduction import SetCoverInstance

logger = logging.getLogger(__name__)

Text = Union[str, bytes]


def _lines(text: Text, error: type = GraphParseError) -> Iterator[Tuple[int, List[str]]]:
    """逐行给出 (行号, 字段)，跳过空行和 # 注释行"""
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise error("input is not valid UTF-8", text[:e.start].count(b"\n") + 1) from None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        yield number, line.split()


def _int_fields(fields: List[str], line: int, error: type) -> List[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise error(f"expected integers, got {' '.join(fields)!r}", line) from None


def parse_graph(text: Text) -> UndirectedGraph:
    """解析图文件：首行 "n m"，随后 m 行 "u v"，顶点从 0 开始编号"""
    rows = _lines(text)
    header = next(rows, None)
    if header is None:
        raise GraphParseError("missing header line 'n m'")
    line, fields = header
    if len(fields) != 2:
        raise GraphParseError("header must be 'n m'", line)
    n, m = _int_fields(fields, line, GraphParseError)
    if n < 0 or m < 0:
        raise GraphParseError("n and m must be nonnegative", line)

    edges: List[Tuple[int, int]] = []
    last = line
    for line, fields in rows:
        last = line
        if len(fields) != 2:
            raise GraphParseError("edge line must be 'u v'", line)
        u, v = _int_fields(fields, line, GraphParseError)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1}", line)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line)
        if len(edges) == m:
            raise GraphParseError(f"more than the declared {m} edges", line)
        edges.append((u, v))
    if len(edges) != m:
        raise GraphParseError(f"declared {m} edges but found {len(edges)}", last)
    return UndirectedGraph(n=n, edges=edges)


def serialize_graph(g: UndirectedGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def serialize_orientation(o: Orientation) -> str:
    """每条边一行 "tail head"，按边编号排列"""
    return "".join(f"{o.tail(e)} {o.head[e]}\n" for e in range(o.graph.m))


def parse_orientation(text: Text, g: UndirectedGraph) -> Orientation:
    """解析定向文件，第 i 行描述第 i 条边"""
    heads: List[int] = []
    for line, fields in _lines(text, OrientationParseError):
        if len(fields) != 2:
            raise OrientationParseError("orientation line must be 'tail head'", line)
        tail, head = _int_fields(fields, line, OrientationParseError)
        e = len(heads)
        if e >= g.m:
            raise OrientationParseError(f"more than the graph's {g.m} edges", line)
        if sorted((tail, head)) != sorted(g.edges[e]):
            raise OrientationParseError(f"arc {tail}->{head} does not match edge {e} {g.edges[e]}", line)
        heads.append(head)
    if len(heads) != g.m:
        raise OrientationParseError(f"expected {g.m} arcs, found {len(heads)}")
    return Orientation.from_heads(g, heads)


def parse_set_cover(text: Text) -> SetCoverInstance:
    """解析集合覆盖文件：首行 "u s"，随后 s 行元素编号"""
    rows = _lines(text, SetCoverParseError)
    header = next(rows, None)
    if header is None:
        raise SetCoverParseError("missing header line 'u s'")
    line, fields = header
    if len(fields) != 2:
        raise SetCoverParseError("header must be 'u s'", line)
    universe, count = _int_fields(fields, line, SetCoverParseError)
    sets: List[List[int]] = []
    for line, fields in rows:
        sets.append(_int_fields(fields, line, SetCoverParseError))
    if len(sets) != count:
        raise SetCoverParseError(f"declared {count} sets but found {len(sets)}")
    try:
        return SetCoverInstance(universe_size=universe, sets=sets)
    except ValidationError as e:
        raise SetCoverParseError(str(e.errors()[0]['msg'])) from None


def _read(path: str) -> bytes:
    with open(path, 'rb') as f:
        return f.read()


def load_graph(path: str) -> UndirectedGraph:
    return parse_graph(_read(path))


def load_orientation(path: str, g: UndirectedGraph) -> Orientation:
    return parse_orientation(_read(path), g)


def load_set_cover(path: str) -> SetCoverInstance:
    return parse_set_cover(_read(path))


def save_text(path: str, text: str) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)


def save_json(path: str, data: Any) -> None:
    """保存数据到JSON文件"""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=2, default=str)
    logger.info("wrote %s", path)
