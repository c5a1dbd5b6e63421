# src/minorkit/utils/graph_io.py

"""Reading and writing graphs: graph6, adjacency JSON, named graphs, td files."""

import json
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import networkx as nx
from pydantic import ValidationError

from ..core.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    grid_graph,
    path_graph,
    petersen_graph,
)
from ..errors import InvalidArgument, ParseError
from .schemas import GraphDocument

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


def strip_graph6_header(g6: str) -> str:
    s = g6.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    return s


def parse_graph6(g6: Union[str, bytes]) -> Graph:
    """Parse one graph6 line."""
    if isinstance(g6, bytes):
        g6 = g6.decode("ascii", errors="replace")
    s = strip_graph6_header(g6)
    if not s:
        raise ParseError("empty graph6 string")
    bad = [c for c in s if not 63 <= ord(c) <= 126]
    if bad:
        raise ParseError(f"graph6 byte out of range: {bad[0]!r}", text=s)
    try:
        G = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed graph6 string {s!r}: {exc}", text=s) from exc
    index = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph(G.number_of_nodes(), ((index[u], index[v]) for u, v in G.edges()))


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def read_graph6_file(path: Union[str, Path]) -> List[Graph]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(parse_graph6(line))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc.message}") from exc
    return out


def write_graph6_file(path: Union[str, Path], graphs: Iterable[Graph]) -> None:
    Path(path).write_text("".join(to_graph6(g) + "\n" for g in graphs))


def graph_to_json(g: Graph) -> Dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json(data: Union[str, Dict]) -> Graph:
    try:
        doc = GraphDocument.model_validate_json(data) if isinstance(data, str) else GraphDocument.model_validate(data)
    except ValidationError as exc:
        raise ParseError(f"invalid graph document: {exc}") from exc
    try:
        return Graph(doc.n, doc.edges)
    except InvalidArgument as exc:
        raise ParseError(exc.message) from exc


def named_graph(name: str) -> Graph:
    """Built-in graphs: ``K5``, ``K_{3,3}``, ``P4``, ``C5``, ``E3`` (edgeless), ``petersen``,
    ``grid:3x4`` and ``2K2`` style disjoint copies."""
    s = name.strip().replace("_", "").replace("{", "").replace("}", "").replace(" ", "")
    copies = re.match(r"^(\d+)([A-Za-z].*)$", s)
    if copies:
        g = named_graph(copies.group(2))
        return disjoint_union(*([g] * int(copies.group(1))))
    if s.lower() == "petersen":
        return petersen_graph()
    m = re.match(r"^grid:(\d+)[x×](\d+)$", s, re.IGNORECASE)
    if m:
        return grid_graph(int(m.group(1)), int(m.group(2)))
    m = re.match(r"^K(\d+),(\d+)$", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.match(r"^([KPCE])(\d+)$", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"K": complete_graph, "P": path_graph, "C": cycle_graph, "E": empty_graph}[kind](n)
    raise ParseError(f"unknown graph name {name!r}")


def load_graph(spec: str) -> Graph:
    """Resolve a graph argument: file path (.g6 / .json), JSON text, named graph or graph6 text."""
    path = Path(spec)
    if path.suffix in (".g6", ".graph6", ".json") and path.exists():
        text = path.read_text()
        if path.suffix == ".json":
            return graph_from_json(text)
        graphs = [line for line in text.splitlines() if line.strip()]
        if len(graphs) != 1:
            raise ParseError(f"{spec} holds {len(graphs)} graphs, expected one")
        return parse_graph6(graphs[0])
    if spec.lstrip().startswith("{"):
        return graph_from_json(spec)
    try:
        return named_graph(spec)
    except ParseError:
        return parse_graph6(spec)


def load_family(specs: Iterable[str]) -> List[Graph]:
    return [load_graph(s) for s in specs]


# ---------------------------------------------------------------------------
# td files: "s td <bags> <max bag size> <vertices>", "b <id> <v>...", then "<id> <id>" tree edges


def read_td(text: str) -> Tuple[int, Dict[int, List[int]], List[Tuple[int, int]]]:
    """Parse td-file text; vertices and bag ids are 1-based in the file and 0-based here."""
    header: Optional[Tuple[int, int, int]] = None
    bags: Dict[int, List[int]] = {}
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "s":
                if header is not None or len(parts) != 5 or parts[1] != "td":
                    raise ParseError(f"line {lineno}: malformed solution line")
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            elif parts[0] == "b":
                if header is None:
                    raise ParseError(f"line {lineno}: bag before solution line")
                bag_id = int(parts[1]) - 1
                if bag_id in bags:
                    raise ParseError(f"line {lineno}: duplicate bag {bag_id + 1}")
                bags[bag_id] = [int(x) - 1 for x in parts[2:] if x != "0"]
            else:
                if header is None or len(parts) != 2:
                    raise ParseError(f"line {lineno}: malformed tree edge")
                edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer field") from exc
    if header is None:
        raise ParseError("missing 's td' line")
    num_bags, _, n = header
    if set(bags) != set(range(num_bags)):
        raise ParseError(f"declared {num_bags} bags, found ids {sorted(b + 1 for b in bags)}")
    return n, bags, edges


def write_td(n: int, bags: Dict[int, Iterable[int]], edges: Iterable[Tuple[int, int]]) -> str:
    bag_lists = {b: sorted(vs) for b, vs in bags.items()}
    width = max((len(vs) for vs in bag_lists.values()), default=0)
    lines = [f"s td {len(bag_lists)} {width} {n}"]
    for b in sorted(bag_lists):
        lines.append(" ".join(["b", str(b + 1)] + [str(v + 1) for v in bag_lists[b]]))
    for a, b in edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
