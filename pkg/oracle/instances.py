"""
Oracle instances and the seeded random generators behind the verification
campaigns.
"""
import itertools
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from models.graph import OrderedHypergraph, SequenceStructure, WeightedDigraph
from models.states import EdgeStateRule, StateDistribution, start_vertex_rule
from utility import build_utility
from utility.base_utility import BaseUtility
from utility.linear_utility import LinearUtility


class Instance(BaseModel):
    """The tuple an optimal policy is defined over."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    structure: SequenceStructure
    utility: BaseUtility
    dist: StateDistribution
    k: int = Field(ge=0)
    rule: EdgeStateRule = Field(default_factory=start_vertex_rule)
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def is_hypergraph(self) -> bool:
        return isinstance(self.structure, OrderedHypergraph)


def _distribution(rng: np.random.Generator, n: int, point_mass: bool) -> StateDistribution:
    if point_mass:
        return StateDistribution.point_mass(rng.integers(0, 2, size=n).tolist())
    # round so campaign CSVs stay readable; 0 and 1 are allowed
    return StateDistribution.bernoulli(np.round(rng.random(n), 3).tolist())


def _sample_pairs(rng: np.random.Generator, candidates: List[tuple], max_edges: int) -> List[tuple]:
    if not candidates:
        return []
    count = int(rng.integers(1, min(max_edges, len(candidates)) + 1))
    chosen = rng.choice(len(candidates), size=count, replace=False)
    return [candidates[i] for i in sorted(chosen)]


def random_digraph_instance(
    seed: int,
    max_vertices: int = 6,
    max_edges: int = 6,
    utility: str = "coverage",
    k_range: Tuple[int, int] = (2, 5),
    point_mass: bool = False,
) -> Instance:
    """Random weighted digraph with self-loops allowed, at most ``max_edges`` edges."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_vertices + 1))
    pairs = _sample_pairs(rng, list(itertools.product(range(n), repeat=2)), max_edges)
    weights = np.round(rng.random(len(pairs)), 3)
    g = WeightedDigraph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
    dist = _distribution(rng, n, point_mass)
    k = int(rng.integers(k_range[0], k_range[1] + 1))
    return Instance(structure=g, utility=build_utility(utility, g), dist=dist, k=k, seed=seed)


def random_hypergraph_instance(
    seed: int,
    max_vertices: int = 6,
    max_r: int = 3,
    max_edges: int = 5,
    utility: str = "coverage",
    k_max: int = 5,
    point_mass: bool = False,
) -> Instance:
    """Random ordered hypergraph; the budget is drawn from r..k_max."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_vertices + 1))
    count = int(rng.integers(1, max_edges + 1))
    table = {}
    for _ in range(count):
        length = int(rng.integers(1, min(max_r, n) + 1))
        edge = tuple(int(v) for v in rng.choice(n, size=length, replace=False))
        table[edge] = float(np.round(rng.random(), 3))
    h_graph = OrderedHypergraph(n=n, hyperedges=table)
    dist = _distribution(rng, n, point_mass)
    k = int(rng.integers(h_graph.r, max(k_max, h_graph.r) + 1))
    return Instance(structure=h_graph, utility=build_utility(utility, h_graph), dist=dist, k=k, seed=seed)


def random_linear_instance(seed: int, max_vertices: int = 6, max_edges: int = 6) -> Instance:
    """Point-mass instance under the counting utility (gamma is exactly 1 there)."""
    inst = random_digraph_instance(seed, max_vertices, max_edges, utility="linear", point_mass=True)
    return with_utility(inst, LinearUtility.counting(inst.structure.edge_ids))


def random_undirected_graph(seed: int, max_vertices: int = 7) -> Tuple[int, List[Tuple[int, int]]]:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_vertices + 1))
    density = rng.random()
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < density]
    return n, edges


def with_utility(inst: Instance, utility: BaseUtility) -> Instance:
    return inst.model_copy(update={"utility": utility})
