"""
Densest-k-subgraph as a sequence problem: every undirected edge becomes two
opposite arcs, so any ordering of a vertex set induces exactly one arc per
undirected edge inside the set, and the counting utility scores it.
"""
import itertools
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from models.graph import VertexId, WeightedDigraph
from models.states import StateDistribution
from oracle.instances import Instance
from oracle.optimal import optimal_sequence
from utility.linear_utility import LinearUtility
from utils.constants import MAX_DKS_SOLVE_VERTICES
from utils.errors import CapacityError, InputError


def _undirected(edges: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    pairs = set()
    for u, v in edges:
        if u == v:
            raise InputError(f"self-loop {{{u}, {v}}} in an undirected simple graph")
        pairs.add((min(u, v), max(u, v)))
    return sorted(pairs)


def dks_reduce(undirected_edges: Iterable[Tuple[int, int]], n: Optional[int] = None) -> Tuple[WeightedDigraph, LinearUtility]:
    pairs = _undirected(undirected_edges)
    if n is None:
        n = max((v for pair in pairs for v in pair), default=-1) + 1
    arcs = [(u, v, 1.0) for u, v in pairs] + [(v, u, 1.0) for u, v in pairs]
    g = WeightedDigraph.from_edges(n, arcs)
    return g, LinearUtility.counting(g.edge_ids)


def dks_value(g: WeightedDigraph, h: LinearUtility, sigma: Sequence[VertexId]) -> float:
    """f(sigma) with every vertex in state 1."""
    return h.value(g.induced(sigma))


def dks_instance(g: WeightedDigraph, h: LinearUtility, k: int) -> Instance:
    return Instance(structure=g, utility=h, dist=StateDistribution.point_mass([1] * g.n), k=k)


def solve_dks(undirected_edges: Iterable[Tuple[int, int]], k: int, n: Optional[int] = None) -> Tuple[Tuple[VertexId, ...], float]:
    """Densest k-subgraph through the reduction: best sequence and its edge count."""
    g, h = dks_reduce(undirected_edges, n)
    if g.n > MAX_DKS_SOLVE_VERTICES:
        raise CapacityError(f"exact DkS solve over {g.n} vertices exceeds the guard of {MAX_DKS_SOLVE_VERTICES}")
    return optimal_sequence(dks_instance(g, h, k))


def densest_subgraph_bruteforce(n: int, undirected_edges: Iterable[Tuple[int, int]], k: int) -> Tuple[Tuple[int, ...], int]:
    """Independent check: max edge count of G[S] over all vertex sets with |S| <= k."""
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(_undirected(undirected_edges))
    best: Tuple[Tuple[int, ...], int] = ((), 0)
    for size in range(1, min(k, n) + 1):
        for subset in itertools.combinations(range(n), size):
            count = graph.subgraph(subset).number_of_edges()
            if count > best[1]:
                best = (subset, count)
    return best
