"""
Navigation graph from browsing paths: w_ij is the share of visits to page i
that moved on to page j along an existing link.
"""
import logging
from collections import Counter
from typing import Dict, Tuple

from pydantic import BaseModel, Field

from models.experiment import LinkTable, SequenceLog
from models.graph import WeightedDigraph
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


class TransitionCounts(BaseModel):
    visits: Dict[str, int] = Field(default_factory=dict)
    transitions: Dict[Tuple[str, str], int] = Field(default_factory=dict)
    dropped: int = 0

    def pages(self, min_visits: int):
        return sorted(page for page, c in self.visits.items() if c >= min_visits)


def count_navigation_transitions(paths: SequenceLog, links: LinkTable) -> TransitionCounts:
    """Visits per page and linked adjacent transitions; steps with no link are dropped."""
    visits: Counter = Counter()
    transitions: Counter = Counter()
    dropped = 0
    for _, path in paths.entries:
        visits.update(path)
        for src, dst in zip(path, path[1:]):
            if (src, dst) in links:
                transitions[(src, dst)] += 1
            else:
                dropped += 1
    return TransitionCounts(visits=dict(visits), transitions=dict(transitions), dropped=dropped)


def build_navigation_graph(paths: SequenceLog, links: LinkTable, min_visits: int) -> WeightedDigraph:
    graph, _ = build_navigation_graph_with_counts(paths, links, min_visits)
    return graph


def build_navigation_graph_with_counts(
    paths: SequenceLog, links: LinkTable, min_visits: int
) -> Tuple[WeightedDigraph, TransitionCounts]:
    if min_visits < 1:
        raise InputError(f"min_visits must be at least 1, got {min_visits}")
    counts = count_navigation_transitions(paths, links)
    pages = counts.pages(min_visits)
    ids = {page: v for v, page in enumerate(pages)}
    edges = []
    for (src, dst), c in counts.transitions.items():
        if src in ids and dst in ids and src != dst:
            edges.append((ids[src], ids[dst], c / counts.visits[src]))
    edges.sort()
    g = WeightedDigraph.from_edges(len(pages), edges, labels=pages)
    if counts.dropped:
        logger.warning(f"dropped {counts.dropped} path steps with no matching link")
    logger.info(f"navigation graph: {g.n} pages (min_visits={min_visits}), {len(edges)} links")
    return g, counts
