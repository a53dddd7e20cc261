import itertools
from typing import Hashable, Optional, Sequence

import networkx as nx

from utils.errors import InputError


def _check_unique(items: Sequence[Hashable], what: str):
    if len(set(items)) != len(items):
        raise InputError(f"{what} contains duplicate items")


def accuracy_score(recs: Sequence[Hashable], future: Sequence[Hashable]) -> int:
    """How many recommended items the user actually went on to pick."""
    return len(set(recs) & set(future))


def sequence_score(recs: Sequence[Hashable], future: Sequence[Hashable]) -> int:
    """Ordered pairs (a, b) with a before b in both lists."""
    _check_unique(recs, "recommendation list")
    _check_unique(future, "future sequence")
    position = {item: i for i, item in enumerate(future)}
    common = [item for item in recs if item in position]
    return sum(1 for a, b in itertools.combinations(common, 2) if position[a] < position[b])


def graph_diameter(links: nx.DiGraph) -> int:
    """Longest finite shortest-path length."""
    return max(
        (d for _, lengths in nx.all_pairs_shortest_path_length(links) for d in lengths.values()),
        default=0,
    )


def relevance_distance(
    final_page: Hashable,
    target: Hashable,
    links: nx.DiGraph,
    penalty: Optional[float] = None,
) -> float:
    """
    Mean shortest-path length to ``target`` over the out-neighbours of
    ``final_page``; unreachable neighbours (or no neighbours) cost ``penalty``,
    by default the graph diameter + 1.
    """
    if final_page == target:
        return 0.0
    if final_page not in links or target not in links:
        raise InputError(f"pages {final_page!r} and {target!r} must both be in the link graph")
    if penalty is None:
        penalty = graph_diameter(links) + 1
    neighbours = sorted(links.successors(final_page), key=str)
    if not neighbours:
        return float(penalty)
    to_target = nx.single_source_shortest_path_length(links.reverse(copy=False), target)
    return sum(to_target.get(u, penalty) for u in neighbours) / len(neighbours)
