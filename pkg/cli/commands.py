"""
Subcommand implementations. Each command reads its inputs, writes its
outputs plus a RunManifest next to them and returns a process exit code.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import setup.initialize_policies  # noqa: F401  registers the policies
from cli.manifest import ManifestTimer, RunManifest, write_manifest
from cli.parser import build_parser
from evaluation.harness import run_experiment
from evaluation.reporting import bound_table, summary_table, write_bound_csv, write_metric_csv, write_summary_json
from ingest.graph_io import read_graph, read_hypergraph, read_undirected_edges, write_graph
from ingest.log_reader import read_link_table, read_sequence_log
from ingest.navigation_graph import build_navigation_graph_with_counts
from ingest.purchase_graph import build_purchase_graph
from models.experiment import ExperimentConfig, LinkTable
from models.states import EDGE_STATE_RULES, StateDistribution
from oracle.bounds import run_campaign
from oracle.dks import dks_reduce, solve_dks
from oracle.fixtures import movie_instance
from oracle.gamma import estimate_gamma
from oracle.instances import Instance
from policies.registry import PolicyRegistry
from utility import build_utility
from utility.linear_utility import LinearUtility
from utils.constants import PURCHASE_MIN_COUNT, LOG_LEVEL_VALUE, LOG_FORMAT, NAVIGATION_MIN_VISITS
from utils.errors import AdaSeqError, EXIT_OK, UsageError, VerificationError, exit_code_for

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def cmd_build_graph(args: argparse.Namespace) -> int:
    manifest = RunManifest(command="build-graph", inputs=[args.log], outputs=[args.out])
    with ManifestTimer(manifest):
        log = read_sequence_log(args.log)
        if args.task == "navigation":
            if args.links is None:
                raise UsageError("build-graph --task navigation needs --links")
            manifest.inputs.append(args.links)
            min_visits = args.min_count if args.min_count is not None else NAVIGATION_MIN_VISITS
            g, counts = build_navigation_graph_with_counts(log, read_link_table(args.links), min_visits)
            if counts.dropped:
                print(f"dropped transitions: {counts.dropped}")
        else:
            min_count = args.min_count if args.min_count is not None else PURCHASE_MIN_COUNT
            g = build_purchase_graph(log, min_count)
        write_graph(g, args.out)
    write_manifest(manifest, args.out)
    print(f"{g.n} vertices, {len(g.edge_ids)} edges -> {args.out}")
    return EXIT_OK


def _policies(names: List[str]):
    known = PolicyRegistry.all()
    unknown = [name for name in names if name not in known]
    if unknown:
        raise UsageError(f"unknown policies {unknown}, expected names from {sorted(known)}")
    return [known[name] for name in names]


def summary_path(out: str) -> Path:
    """JSON summary next to the metric CSV; a .json --out keeps its own name."""
    path = Path(out)
    if path.suffix == ".json":
        return path.with_suffix(".summary.json")
    return path.with_suffix(".json")


def cmd_run(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.load(
        Path(args.config) if args.config else None,
        task=args.task,
        policies=args.policies,
        g=args.g,
        k=args.k,
        k_values=args.k_values,
        split=args.split,
        train_fraction=args.train_fraction,
        trials=args.trials,
        seed=args.seed,
        min_count=args.min_count,
        min_visits=args.min_visits,
        utility=args.utility,
        tie=args.tie,
    )
    policies = _policies(cfg.policies)
    summary = summary_path(args.out)
    manifest = RunManifest(
        command="run", config=args.config, inputs=[args.log], outputs=[args.out, str(summary)], seed=cfg.seed
    )
    with ManifestTimer(manifest):
        log = read_sequence_log(args.log)
        links: Optional[LinkTable] = None
        if args.links is not None:
            manifest.inputs.append(args.links)
            links = read_link_table(args.links)
        report = run_experiment(cfg, log, policies, links, jobs=args.jobs)
        write_metric_csv(report, args.out)
        write_summary_json(report, summary)
    write_manifest(manifest, args.out)
    if report.rows:
        print(summary_table(report))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.instances < 0:
        raise UsageError(f"--instances must be non-negative, got {args.instances}")
    if args.max_set < 1:
        raise UsageError(f"--max-set must be at least 1, got {args.max_set}")
    kind = "hypergraph" if args.hyper else "linear" if args.linear else "digraph"
    manifest = RunManifest(command=f"verify {kind}", outputs=[args.out], seed=args.seed)
    with ManifestTimer(manifest):
        reports = run_campaign(
            kind,
            args.instances,
            max_vertices=args.max_vertices,
            seed=args.seed,
            max_set=args.max_set,
            tie=args.tie,
            jobs=args.jobs,
        )
        write_bound_csv(reports, args.out)
    write_manifest(manifest, args.out)
    print(bound_table(reports))
    failed = [r.seed for r in reports if not r.holds]
    if failed:
        raise VerificationError(f"bound violated on seeds {failed}")
    return EXIT_OK


def _gamma_instance(args: argparse.Namespace) -> Instance:
    if args.fixture == "movie":
        return movie_instance()
    structure = read_graph(args.graph) if args.graph else read_hypergraph(args.hypergraph)
    if args.counting:
        utility = LinearUtility.counting(structure.edge_ids)
    else:
        utility = build_utility(args.utility, structure)
    if args.distribution == "point":
        if args.states is None:
            raise UsageError("--distribution point needs --states")
        dist = StateDistribution.point_mass(args.states)
    else:
        dist = StateDistribution.uniform(structure.n, args.q)
    return Instance(structure=structure, utility=utility, dist=dist, k=0, rule=EDGE_STATE_RULES[args.rule])


def cmd_estimate_gamma(args: argparse.Namespace) -> int:
    if args.max_set < 1:
        raise UsageError(f"--max-set must be at least 1, got {args.max_set}")
    source = args.graph or args.hypergraph or f"fixture:{args.fixture}"
    manifest = RunManifest(command="estimate-gamma", inputs=[source])
    with ManifestTimer(manifest):
        estimate = estimate_gamma(_gamma_instance(args), max_set=args.max_set)
    print(f"{estimate.gamma_hat:.6f}")
    print(estimate.witness_text())
    if args.out is not None:
        Path(args.out).write_text(estimate.model_dump_json(indent=2) + "\n", encoding="utf-8", newline="\n")
        manifest.outputs.append(args.out)
        write_manifest(manifest, args.out)
    return EXIT_OK


def cmd_reduce_dks(args: argparse.Namespace) -> int:
    if args.solve and args.k is None:
        raise UsageError("reduce-dks --solve needs --k")
    manifest = RunManifest(command="reduce-dks", inputs=[args.edges], outputs=[args.out])
    with ManifestTimer(manifest):
        n, edges = read_undirected_edges(args.edges)
        g, _ = dks_reduce(edges, n)
        write_graph(g, args.out)
        if args.solve:
            sigma, value = solve_dks(edges, args.k, g.n)
            print(f"{value:g}")
            print(" ".join(str(v) for v in sigma))
    write_manifest(manifest, args.out)
    return EXIT_OK


COMMANDS = {
    "build-graph": cmd_build_graph,
    "run": cmd_run,
    "verify": cmd_verify,
    "estimate-gamma": cmd_estimate_gamma,
    "reduce-dks": cmd_reduce_dks,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except AdaSeqError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)
