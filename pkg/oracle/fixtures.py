"""
The three-movie running example: F, T and R with self-loops on each and
arcs F->T, F->R, T->R, all states uniform, scored by the counting utility.
"""
from models.graph import WeightedDigraph
from models.states import PartialRealization, StateDistribution
from oracle.instances import Instance
from utility.linear_utility import LinearUtility

F, T, R = 0, 1, 2
MOVIE_LABELS = ("F", "T", "R")


def movie_graph() -> WeightedDigraph:
    edges = [(F, F, 1.0), (T, T, 1.0), (R, R, 1.0), (F, T, 1.0), (F, R, 1.0), (T, R, 1.0)]
    return WeightedDigraph.from_edges(3, edges, labels=MOVIE_LABELS)


def movie_psi1() -> PartialRealization:
    """Liked F, did not like T."""
    return PartialRealization(observed={F: 1, T: 0})


def movie_psi2() -> PartialRealization:
    """Only T observed (state 0)."""
    return PartialRealization(observed={T: 0})


def movie_instance(k: int = 3) -> Instance:
    g = movie_graph()
    return Instance(
        structure=g,
        utility=LinearUtility.counting(g.edge_ids),
        dist=StateDistribution.uniform(3, 0.5),
        k=k,
    )
