import logging
from collections import Counter
from typing import Dict, List, Tuple

from models.experiment import SequenceLog
from models.graph import WeightedDigraph
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def popular_items(log: SequenceLog, min_count: int) -> List[str]:
    """Items bought by at least ``min_count`` users, sorted by name."""
    if min_count < 1:
        raise InputError(f"min_count must be at least 1, got {min_count}")
    counts = Counter(item for _, items in log.entries for item in items)
    return sorted(item for item, c in counts.items() if c >= min_count)


def build_purchase_graph(log: SequenceLog, min_count: int) -> WeightedDigraph:
    """
    w_ii: share of retained users who bought i.
    w_ij: share of i's buyers who bought j at any later position.
    """
    items = popular_items(log, min_count)
    ids: Dict[str, int] = {item: v for v, item in enumerate(items)}

    buyers: Counter = Counter()
    followed: Counter = Counter()
    population = 0
    for _, sequence in log.entries:
        kept = [ids[item] for item in sequence if item in ids]
        if not kept:
            continue
        population += 1
        buyers.update(kept)
        for a, i in enumerate(kept):
            for j in kept[a + 1:]:
                followed[(i, j)] += 1

    edges: List[Tuple[int, int, float]] = []
    for i in range(len(items)):
        edges.append((i, i, buyers[i] / population))
    for (i, j), c in followed.items():
        edges.append((i, j, c / buyers[i]))
    edges.sort()
    g = WeightedDigraph.from_edges(len(items), edges, labels=items)
    logger.info(f"purchase graph: {g.n} items (min_count={min_count}), {len(edges)} edges from {population} users")
    return g
