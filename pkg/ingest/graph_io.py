"""
Text formats for graphs.

Digraph TSV::

    #vertices <n>
    #label <id> <name>          (optional, one per vertex)
    <src>\t<dst>\t<weight>

Hypergraph::

    #vertices <n>
    <v1> <v2> ... [\t<weight>]

Undirected edge list (reduce-dks input): ``#vertices <n>`` optional, then one
``u v`` (or ``u,v``) pair per line.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from models.graph import OrderedHypergraph, WeightedDigraph
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def _int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"{what} '{token}' is not an integer", line=line_no) from None


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _write(path: Union[str, Path], text: str):
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _vertex_header(line: str, line_no: int) -> int:
    parts = line.split()
    if len(parts) != 2:
        raise InputError("expected '#vertices <n>'", line=line_no)
    n = _int(parts[1], "vertex count", line_no)
    if n < 0:
        raise InputError(f"negative vertex count {n}", line=line_no)
    return n


def format_graph(g: WeightedDigraph) -> str:
    lines = [f"#vertices {g.n}"]
    if g.labels is not None:
        lines += [f"#label {v} {name}" for v, name in enumerate(g.labels)]
    lines += [f"{src}\t{dst}\t{g.arcs[(src, dst)]!r}" for src, dst in sorted(g.arcs)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> WeightedDigraph:
    n: Optional[int] = None
    labels: Dict[int, str] = {}
    edges: List[Tuple[int, int, float]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#vertices"):
            n = _vertex_header(line, line_no)
            continue
        if line.startswith("#label"):
            parts = line.split(maxsplit=2)
            if len(parts) != 3:
                raise InputError("expected '#label <id> <name>'", line=line_no)
            labels[_int(parts[1], "vertex id", line_no)] = parts[2]
            continue
        if line.startswith("#"):
            continue
        if n is None:
            raise InputError("edge before the '#vertices' header", line=line_no)
        parts = line.split("\t")
        if len(parts) != 3:
            raise InputError(f"expected src<TAB>dst<TAB>weight, got {len(parts)} fields", line=line_no)
        try:
            weight = float(parts[2])
        except ValueError:
            raise InputError(f"weight '{parts[2]}' is not a number", line=line_no) from None
        edges.append((_int(parts[0], "vertex id", line_no), _int(parts[1], "vertex id", line_no), weight))
    if n is None:
        raise InputError("missing '#vertices <n>' header")
    names = None
    if labels:
        missing = [v for v in range(n) if v not in labels]
        if missing:
            raise InputError(f"label table misses vertices {missing[:10]}")
        names = [labels[v] for v in range(n)]
    return WeightedDigraph.from_edges(n, edges, labels=names)


def write_graph(g: WeightedDigraph, path: Union[str, Path]):
    _write(path, format_graph(g))
    logger.info(f"wrote graph with {g.n} vertices and {len(g.arcs)} edges to {path}")


def read_graph(path: Union[str, Path]) -> WeightedDigraph:
    return parse_graph(_read(path))


def format_hypergraph(h: OrderedHypergraph) -> str:
    lines = [f"#vertices {h.n}"]
    for edge in h.edge_ids:
        w = h.hyperedges[edge]
        vertices = " ".join(str(v) for v in edge)
        lines.append(vertices if w == 1.0 else f"{vertices}\t{w!r}")
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> OrderedHypergraph:
    n: Optional[int] = None
    hyperedges = []
    weights = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#vertices"):
            n = _vertex_header(line, line_no)
            continue
        if line.startswith("#"):
            continue
        if n is None:
            raise InputError("hyperedge before the '#vertices' header", line=line_no)
        vertices, _, weight = line.partition("\t")
        hyperedges.append(tuple(_int(t, "vertex id", line_no) for t in vertices.split()))
        try:
            weights.append(float(weight) if weight.strip() else 1.0)
        except ValueError:
            raise InputError(f"weight '{weight}' is not a number", line=line_no) from None
    if n is None:
        raise InputError("missing '#vertices <n>' header")
    return OrderedHypergraph.from_hyperedges(n, hyperedges, weights)


def read_hypergraph(path: Union[str, Path]) -> OrderedHypergraph:
    return parse_hypergraph(_read(path))


def parse_undirected_edges(text: str) -> Tuple[Optional[int], List[Tuple[int, int]]]:
    n: Optional[int] = None
    edges = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#vertices"):
            n = _vertex_header(line, line_no)
            continue
        if line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise InputError(f"expected 'u v', got {len(parts)} fields", line=line_no)
        edges.append((_int(parts[0], "vertex id", line_no), _int(parts[1], "vertex id", line_no)))
    return n, edges


def read_undirected_edges(path: Union[str, Path]) -> Tuple[Optional[int], List[Tuple[int, int]]]:
    return parse_undirected_edges(_read(path))
