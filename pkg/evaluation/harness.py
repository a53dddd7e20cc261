"""
End-to-end experiment protocol for the two sequence-log tasks.

Purchase: per trial, split users, build the purchase graph on the training
side, then for every test user seed the first g items in state 1 and let each
policy recommend k items; an item is confirmed iff the user bought it later.

Navigation: same split, but the policy walks links from the g-th page, a pick
is confirmed only if it is the user's actual next page, and the final page is
scored by its relevance distance to the user's target.
"""
import logging
import math
import sys
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from evaluation.metrics import accuracy_score, graph_diameter, relevance_distance, sequence_score
from ingest.navigation_graph import build_navigation_graph
from ingest.purchase_graph import build_purchase_graph
from models.experiment import ExperimentConfig, LinkTable, MetricReport, MetricRow, SequenceLog, UserScore
from models.graph import WeightedDigraph
from models.states import StateDistribution
from policies.base_policy import BasePolicy, PolicyContext
from policies.feedback import NavigationFeedback, ReplayFeedback
from utility import build_utility
from utility.base_utility import BaseUtility
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import UsageError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def split_users(log: SequenceLog, cfg: ExperimentConfig, trial: int) -> Tuple[List[str], List[str]]:
    """Seeded train/test split of the users (sorted by id), with optional training subsample."""
    rng = np.random.default_rng([cfg.seed, trial])
    users = sorted(log.users())
    order = rng.permutation(len(users))
    n_train = int(round(cfg.split * len(users)))
    train = sorted(users[i] for i in order[:n_train])
    test = sorted(users[i] for i in order[n_train:])
    if cfg.train_fraction < 1.0 and train:
        size = max(1, math.ceil(cfg.train_fraction * len(train)))
        keep = rng.choice(len(train), size=size, replace=False)
        train = sorted(train[i] for i in keep)
    return train, test


def _check_policies(policies: Sequence[BasePolicy], task: str):
    unsupported = [p.name for p in policies if not p.supports(task)]
    if unsupported:
        raise UsageError(f"policies {unsupported} cannot run the {task} task")


def bernoulli_marginals(g: WeightedDigraph) -> StateDistribution:
    """q_i = w_ii: the chance an unseen item is one the user wants."""
    return StateDistribution.bernoulli([g.self_loop_weight(v) for v in range(g.n)])


def _aggregate(trial: int, scores: List[UserScore], budgets: Iterable[int], policies: Sequence[BasePolicy],
               skipped: int, navigation: bool) -> List[MetricRow]:
    rows = []
    for k in budgets:
        for policy in policies:
            mine = [s for s in scores if s.k == k and s.policy == policy.name]
            if not mine:
                continue
            rows.append(
                MetricRow(
                    trial=trial,
                    k=k,
                    policy=policy.name,
                    users=len(mine),
                    skipped=skipped,
                    accuracy=float(np.mean([s.accuracy for s in mine])),
                    sequence_score=float(np.mean([s.sequence_score for s in mine])),
                    relevance_distance=float(np.mean([s.relevance_distance for s in mine])) if navigation else None,
                )
            )
    return rows


def score_purchase_user(
    g: WeightedDigraph,
    h: BaseUtility,
    marginals: StateDistribution,
    cfg: ExperimentConfig,
    trial: int,
    user: str,
    sequence: Sequence[str],
    policies: Sequence[BasePolicy],
) -> List[UserScore]:
    ids = g.vertex_index()
    future = list(sequence[cfg.g:])
    given = tuple(ids[item] for item in sequence[: cfg.g] if item in ids)
    positives = {ids[item] for item in future if item in ids}
    scores = []
    for k in cfg.budgets():
        for policy in policies:
            context = PolicyContext(structure=g, utility=h, marginals=marginals, k=k, given=given, tie=cfg.tie)
            trace = policy.run(context, ReplayFeedback(positives))
            recs = [g.label(v) for v in trace.sigma]
            scores.append(
                UserScore(
                    trial=trial,
                    k=k,
                    policy=policy.name,
                    user=user,
                    accuracy=accuracy_score(recs, future),
                    sequence_score=sequence_score(recs, future),
                )
            )
    return scores


def run_purchase_experiment(
    log: SequenceLog, cfg: ExperimentConfig, policies: Sequence[BasePolicy], jobs: int = 1
) -> MetricReport:
    _check_policies(policies, "purchase")
    report = MetricReport(task="purchase")
    table = log.as_dict()
    for trial in range(cfg.trials):
        train, test = split_users(log, cfg, trial)
        g = build_purchase_graph(log.subset(train), cfg.min_count)
        h = build_utility(cfg.utility, g)
        marginals = bernoulli_marginals(g)
        eligible = [u for u in test if len(table[u]) > cfg.g]
        skipped = len(test) - len(eligible)
        logger.info(f"trial {trial}: {len(train)} training users, {len(eligible)} test users ({skipped} skipped)")
        if not eligible:
            logger.warning(f"trial {trial}: no test user has more than g={cfg.g} items")
            continue
        progress = tqdm(eligible, desc=f"trial {trial}", file=sys.stderr, disable=not sys.stderr.isatty())
        per_user = Parallel(n_jobs=jobs)(
            delayed(score_purchase_user)(g, h, marginals, cfg, trial, u, table[u], policies) for u in progress
        )
        scores = [s for user_scores in per_user for s in user_scores]
        report.users.extend(scores)
        report.rows.extend(_aggregate(trial, scores, cfg.budgets(), policies, skipped, navigation=False))
    if not report.rows:
        logger.warning("empty report: no trial had an eligible test user")
    return report


def link_graph(links: LinkTable) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_edges_from(links.links)
    return graph


def score_navigation_user(
    g: WeightedDigraph,
    h: BaseUtility,
    marginals: StateDistribution,
    links: nx.DiGraph,
    penalty: float,
    cfg: ExperimentConfig,
    trial: int,
    user: str,
    path: Sequence[str],
    policies: Sequence[BasePolicy],
) -> List[UserScore]:
    ids = g.vertex_index()
    start = ids[path[cfg.g - 1]]
    target = path[-1]
    future = list(path[cfg.g:])
    given = tuple(ids[page] for page in path[: cfg.g] if page in ids)
    vertex_path: List[Optional[int]] = [ids.get(page) for page in path]
    scores = []
    for k in cfg.budgets():
        for policy in policies:
            context = PolicyContext(
                structure=g,
                utility=h,
                marginals=marginals,
                k=k,
                given=given,
                start=start,
                target_stop=ids.get(target),
                tie=cfg.tie,
            )
            trace = policy.run(context, NavigationFeedback(vertex_path, position=cfg.g - 1))
            recs = [g.label(v) for v in trace.sigma]
            final_page = g.label(trace.frontier if trace.frontier is not None else start)
            scores.append(
                UserScore(
                    trial=trial,
                    k=k,
                    policy=policy.name,
                    user=user,
                    accuracy=accuracy_score(recs, future),
                    sequence_score=sequence_score(recs, future),
                    relevance_distance=relevance_distance(final_page, target, links, penalty),
                )
            )
    return scores


def run_navigation_experiment(
    paths: SequenceLog,
    links: LinkTable,
    cfg: ExperimentConfig,
    policies: Sequence[BasePolicy],
    jobs: int = 1,
) -> MetricReport:
    _check_policies(policies, "navigation")
    report = MetricReport(task="navigation")
    table = paths.as_dict()
    links_graph = link_graph(links)
    links_graph.add_nodes_from(page for _, path in paths.entries for page in path)
    penalty = graph_diameter(links_graph) + 1
    for trial in range(cfg.trials):
        train, test = split_users(paths, cfg, trial)
        g = build_navigation_graph(paths.subset(train), links, cfg.min_visits)
        h = build_utility(cfg.utility, g)
        # every link is followable; observations decide which pick is right
        marginals = StateDistribution.uniform(g.n, 1.0)
        ids = g.vertex_index()
        eligible = [u for u in test if len(table[u]) > cfg.g >= 1 and table[u][cfg.g - 1] in ids]
        skipped = len(test) - len(eligible)
        logger.info(f"trial {trial}: {len(train)} training paths, {len(eligible)} test paths ({skipped} skipped)")
        if not eligible:
            logger.warning(f"trial {trial}: no test path is longer than g={cfg.g} with a known current page")
            continue
        progress = tqdm(eligible, desc=f"trial {trial}", file=sys.stderr, disable=not sys.stderr.isatty())
        per_user = Parallel(n_jobs=jobs)(
            delayed(score_navigation_user)(g, h, marginals, links_graph, penalty, cfg, trial, u, table[u], policies)
            for u in progress
        )
        scores = [s for user_scores in per_user for s in user_scores]
        report.users.extend(scores)
        report.rows.extend(_aggregate(trial, scores, cfg.budgets(), policies, skipped, navigation=True))
    if not report.rows:
        logger.warning("empty report: no trial had an eligible test path")
    return report


def run_experiment(
    cfg: ExperimentConfig,
    log: SequenceLog,
    policies: Sequence[BasePolicy],
    links: Optional[LinkTable] = None,
    jobs: int = 1,
) -> MetricReport:
    if cfg.task == "navigation":
        if links is None:
            raise UsageError("the navigation task needs a link table")
        return run_navigation_experiment(log, links, cfg, policies, jobs)
    return run_purchase_experiment(log, cfg, policies, jobs)

