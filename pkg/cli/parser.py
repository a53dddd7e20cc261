import argparse
from typing import List

from models.states import EDGE_STATE_RULES
from policies.base_policy import TIE_RULES
from utility import UTILITIES
from utils.constants import ADASEQ_JOBS, ADASEQ_MAX_SET, MAX_ADAPTIVE_SEARCH_VERTICES


def parse_int_list(raw: str) -> List[int]:
    try:
        return [int(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{raw}'") from None


def parse_name_list(raw: str) -> List[str]:
    return [p.strip() for p in raw.split(",") if p.strip()]


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--jobs", type=int, default=ADASEQ_JOBS, help="Worker processes (default: $ADASEQ_JOBS or 1).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaseq",
        description="Adaptive sequence submodular maximization: policies, oracles and experiments.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build-graph", help="Build a purchase or navigation graph from a sequence log.")
    build.add_argument("--log", required=True, help="Sequence log (CSV user_id,item,position or TSV).")
    build.add_argument("--task", choices=["purchase", "navigation"], default="purchase")
    build.add_argument("--links", default=None, help="Link table CSV src,dst (navigation only).")
    build.add_argument("--min-count", type=int, default=None,
                       help="Minimum buyers per item (purchase) or visits per page (navigation).")
    build.add_argument("--out", required=True, help="Output graph TSV.")

    run = commands.add_parser("run", help="Run the experiment harness.")
    run.add_argument("--config", default=None, help="ExperimentConfig JSON; flags override its values.")
    run.add_argument("--log", required=True, help="Sequence log of users (purchase) or paths (navigation).")
    run.add_argument("--links", default=None, help="Link table CSV (navigation only).")
    run.add_argument("--task", choices=["purchase", "navigation"], default=None)
    run.add_argument("--policies", type=parse_name_list, default=None,
                     help="Comma-separated subset of adaptive-greedy, greedy, frequency, path-greedy.")
    run.add_argument("--g", type=int, default=None, help="Given prefix length.")
    run.add_argument("--k", type=int, default=None, help="Recommendation budget.")
    run.add_argument("--k-values", type=parse_int_list, default=None, help="Comma-separated budgets to sweep.")
    run.add_argument("--split", type=float, default=None)
    run.add_argument("--train-fraction", type=float, default=None)
    run.add_argument("--trials", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--min-count", type=int, default=None)
    run.add_argument("--min-visits", type=int, default=None)
    run.add_argument("--utility", choices=sorted(UTILITIES), default=None)
    run.add_argument("--tie", choices=sorted(TIE_RULES), default=None)
    run.add_argument("--out", required=True, help="Metric CSV; the JSON summary goes next to it.")
    _add_common(run)

    verify = commands.add_parser("verify", help="Check the approximation bound on random instances.")
    verify.add_argument("--instances", type=int, default=200)
    verify.add_argument("--max-vertices", type=int, default=MAX_ADAPTIVE_SEARCH_VERTICES)
    verify.add_argument("--seed", type=int, default=0)
    kind = verify.add_mutually_exclusive_group()
    kind.add_argument("--hyper", action="store_true", help="Ordered hypergraph instances.")
    kind.add_argument("--linear", action="store_true", help="Point-mass instances under the counting utility.")
    verify.add_argument("--max-set", type=int, default=ADASEQ_MAX_SET, help="Cap on |A| in the gamma enumerator.")
    verify.add_argument("--tie", choices=sorted(TIE_RULES), default="lowest-id")
    verify.add_argument("--out", required=True, help="Bound-report CSV.")
    _add_common(verify)

    gamma = commands.add_parser("estimate-gamma", help="Estimate the weak adaptive submodularity ratio.")
    source = gamma.add_mutually_exclusive_group(required=True)
    source.add_argument("--fixture", choices=["movie"])
    source.add_argument("--graph", help="Graph TSV.")
    source.add_argument("--hypergraph", help="Hypergraph file.")
    gamma.add_argument("--utility", choices=sorted(UTILITIES), default="coverage")
    gamma.add_argument("--counting", action="store_true", help="Unit weights for the linear utility.")
    gamma.add_argument("--distribution", choices=["bernoulli", "point"], default="bernoulli")
    gamma.add_argument("--q", type=float, default=0.5, help="Uniform state-1 probability (bernoulli).")
    gamma.add_argument("--states", type=parse_int_list, default=None, help="Comma-separated states (point).")
    gamma.add_argument("--rule", choices=sorted(EDGE_STATE_RULES), default="start")
    gamma.add_argument("--max-set", type=int, default=ADASEQ_MAX_SET)
    gamma.add_argument("--out", default=None, help="Optional JSON file for the estimate and witness.")

    dks = commands.add_parser("reduce-dks", help="Reduce densest-k-subgraph to a sequence instance.")
    dks.add_argument("--edges", required=True, help="Undirected edge list, one 'u v' pair per line.")
    dks.add_argument("--out", required=True, help="Output bidirected graph TSV.")
    dks.add_argument("--solve", action="store_true", help="Solve exactly through the reduction.")
    dks.add_argument("--k", type=int, default=None)

    return parser
