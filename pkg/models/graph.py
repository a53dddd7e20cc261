"""
Directed weighted graphs and ordered hypergraphs over dense integer vertex ids.

An edge id is the tuple of its vertices: ``(src, dst)`` for a digraph arc
(``(v, v)`` for a self-loop) and the ordered vertex tuple for a hyperedge.
Both structures share ``SequenceStructure`` so policies and oracles can run
on either.
"""
import operator
from abc import ABC, abstractmethod
from collections import defaultdict
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from utils.errors import InputError

VertexId = int
EdgeId = Tuple[int, ...]
VertexSequence = Tuple[VertexId, ...]


def canonical_edge_key(edge: EdgeId) -> tuple:
    """Sort key shared by arcs and hyperedges: (first vertex, last vertex, full tuple)."""
    return (edge[0], edge[-1], edge)


def check_sequence(sigma: Sequence[VertexId], n: int) -> VertexSequence:
    try:
        sigma = tuple(operator.index(v) for v in sigma)
    except TypeError as e:
        raise InputError(f"vertex ids must be integers: {e}") from e
    for v in sigma:
        if v < 0 or v >= n:
            raise InputError(f"unknown vertex id {v} (graph has {n} vertices)")
    if len(set(sigma)) != len(sigma):
        raise InputError(f"sequence repeats a vertex: {list(sigma)}")
    return sigma


class SequenceStructure(BaseModel, ABC):
    """Ground structure whose edges carry sequence value."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    labels: Optional[Tuple[str, ...]] = None

    @property
    @abstractmethod
    def weights(self) -> Dict[EdgeId, float]:
        ...

    @property
    @abstractmethod
    def arity(self) -> int:
        """Vertices a single greedy step may append (2 for digraphs, r for hypergraphs)."""

    @abstractmethod
    def induced(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        ...

    @abstractmethod
    def valid(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        ...

    @cached_property
    def edge_ids(self) -> Tuple[EdgeId, ...]:
        return tuple(sorted(self.weights, key=canonical_edge_key))

    @cached_property
    def edge_index(self) -> Dict[EdgeId, int]:
        return {e: i for i, e in enumerate(self.edge_ids)}

    def valid_mask(self, sigma: Sequence[VertexId]) -> np.ndarray:
        """Boolean mask over edge_ids marking valid(sigma)."""
        mask = np.zeros(len(self.edge_ids), dtype=bool)
        index = self.edge_index
        for e in self.valid(sigma):
            mask[index[e]] = True
        return mask

    @cached_property
    def source_array(self) -> np.ndarray:
        return np.array([e[0] for e in self.edge_ids], dtype=int)

    @cached_property
    def destination_array(self) -> np.ndarray:
        return np.array([e[-1] for e in self.edge_ids], dtype=int)

    @cached_property
    def in_edges(self) -> Dict[VertexId, Tuple[EdgeId, ...]]:
        index = defaultdict(list)
        for edge in self.edge_ids:
            index[edge[-1]].append(edge)
        return {v: tuple(edges) for v, edges in index.items()}

    def max_in_degree(self) -> int:
        return max((len(edges) for edges in self.in_edges.values()), default=0)

    def label(self, v: VertexId) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def vertex_index(self) -> Dict[str, VertexId]:
        return {self.label(v): v for v in range(self.n)}

    def _check_labels(self):
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"label table has {len(self.labels)} names for {self.n} vertices")


class WeightedDigraph(SequenceStructure):
    arcs: Dict[Tuple[int, int], float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check(self):
        self._check_labels()
        for (src, dst), w in self.arcs.items():
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise ValueError(f"edge ({src}, {dst}) references a vertex outside 0..{self.n - 1}")
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"edge ({src}, {dst}) has weight {w} outside [0, 1]")
        return self

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int, float]],
        labels: Optional[Sequence[str]] = None,
    ) -> "WeightedDigraph":
        arcs = {}
        for src, dst, w in edges:
            if (src, dst) in arcs:
                raise InputError(f"duplicate edge ({src}, {dst})")
            arcs[(src, dst)] = float(w)
        try:
            return cls(n=n, arcs=arcs, labels=tuple(labels) if labels is not None else None)
        except ValidationError as e:
            raise InputError(str(e)) from e

    @property
    def weights(self) -> Dict[EdgeId, float]:
        return self.arcs

    @property
    def arity(self) -> int:
        return 2

    @cached_property
    def out_edges(self) -> Dict[VertexId, Tuple[EdgeId, ...]]:
        index = defaultdict(list)
        for edge in self.edge_ids:
            index[edge[0]].append(edge)
        return {v: tuple(edges) for v, edges in index.items()}

    def self_loop_weight(self, v: VertexId) -> float:
        return self.arcs.get((v, v), 0.0)

    def induced(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        return induced_edges(sigma, self)

    def valid(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        return valid_edges(sigma, self)

    def valid_mask(self, sigma: Sequence[VertexId]) -> np.ndarray:
        selected = np.zeros(self.n, dtype=bool)
        selected[list(check_sequence(sigma, self.n))] = True
        return ~selected[self.destination_array]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from((src, dst, w) for (src, dst), w in self.arcs.items())
        return graph


class OrderedHypergraph(SequenceStructure):
    hyperedges: Dict[Tuple[int, ...], float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check(self):
        self._check_labels()
        for edge, w in self.hyperedges.items():
            if len(edge) == 0:
                raise ValueError("empty hyperedge")
            if len(set(edge)) != len(edge):
                raise ValueError(f"hyperedge {edge} repeats a vertex")
            if any(v < 0 or v >= self.n for v in edge):
                raise ValueError(f"hyperedge {edge} references a vertex outside 0..{self.n - 1}")
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"hyperedge {edge} has weight {w} outside [0, 1]")
        return self

    @classmethod
    def from_hyperedges(
        cls,
        n: int,
        hyperedges: Iterable[Sequence[int]],
        weights: Optional[Sequence[float]] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> "OrderedHypergraph":
        hyperedges = [tuple(e) for e in hyperedges]
        weights = list(weights) if weights is not None else [1.0] * len(hyperedges)
        if len(weights) != len(hyperedges):
            raise InputError(f"{len(weights)} weights for {len(hyperedges)} hyperedges")
        table = {}
        for edge, w in zip(hyperedges, weights):
            if edge in table:
                raise InputError(f"duplicate hyperedge {edge}")
            table[edge] = float(w)
        try:
            return cls(n=n, hyperedges=table, labels=tuple(labels) if labels is not None else None)
        except ValidationError as e:
            raise InputError(str(e)) from e

    @property
    def weights(self) -> Dict[EdgeId, float]:
        return self.hyperedges

    @property
    def r(self) -> int:
        return max((len(e) for e in self.hyperedges), default=0)

    @property
    def arity(self) -> int:
        return self.r

    def induced(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        return fully_induced_hyperedges(sigma, self)

    def valid(self, sigma: Sequence[VertexId]) -> FrozenSet[EdgeId]:
        return hyper_valid_edges(sigma, self)


def induced_edges(sigma: Sequence[VertexId], g: WeightedDigraph) -> FrozenSet[EdgeId]:
    """E(sigma): arcs (u, v) with u at or before v in sigma; self-loops count as soon as v is in sigma."""
    sigma = check_sequence(sigma, g.n)
    induced = set()
    for j, v in enumerate(sigma):
        for u in sigma[: j + 1]:
            if (u, v) in g.arcs:
                induced.add((u, v))
    return frozenset(induced)


def max_in_degree(g: SequenceStructure) -> int:
    return g.max_in_degree()


def valid_edges(sigma: Sequence[VertexId], g: WeightedDigraph) -> FrozenSet[EdgeId]:
    selected = set(check_sequence(sigma, g.n))
    return frozenset(e for e in g.arcs if e[1] not in selected)


def _positions(sigma: Sequence[VertexId], n: int) -> Dict[VertexId, int]:
    return {v: i for i, v in enumerate(check_sequence(sigma, n))}


def hyper_valid_edges(sigma: Sequence[VertexId], h: OrderedHypergraph) -> FrozenSet[EdgeId]:
    pos = _positions(sigma, h.n)
    valid = set()
    for edge in h.hyperedges:
        present = [v for v in edge if v in pos]
        m = len(present)
        if m == len(edge):
            continue
        if set(present) != set(edge[:m]):
            continue
        if all(pos[edge[i]] < pos[edge[i + 1]] for i in range(m - 1)):
            valid.add(edge)
    return frozenset(valid)


def fully_induced_hyperedges(sigma: Sequence[VertexId], h: OrderedHypergraph) -> FrozenSet[EdgeId]:
    pos = _positions(sigma, h.n)
    induced = set()
    for edge in h.hyperedges:
        if all(v in pos for v in edge) and all(pos[edge[i]] < pos[edge[i + 1]] for i in range(len(edge) - 1)):
            induced.add(edge)
    return frozenset(induced)


def hypergraph_from_digraph(g: WeightedDigraph) -> OrderedHypergraph:
    """Natural encoding: arc (u, v) becomes hyperedge (u, v), self-loop (v, v) becomes (v,)."""
    table = {}
    for (src, dst), w in g.arcs.items():
        table[(src,) if src == dst else (src, dst)] = w
    return OrderedHypergraph(n=g.n, hyperedges=table, labels=g.labels)


def encoded_edge(edge: EdgeId) -> EdgeId:
    """Map a digraph edge id to its id under hypergraph_from_digraph."""
    return (edge[0],) if len(edge) == 2 and edge[0] == edge[1] else edge