from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

EdgeStates = List[Tuple[Tuple[int, ...], int]]


class GammaEstimate(BaseModel):
    """
    Smallest ratio sum_e Delta(e | psi) / Delta(A | psi') found by enumeration.

    The family of (psi, psi', A) is capped at |A| <= max_set, so gamma_hat is an
    upper bound on the true gamma of the instance.
    """

    gamma_hat: float = 1.0
    max_set: int
    edge_count: int
    pairs_checked: int = 0
    witness_psi: Optional[EdgeStates] = None
    witness_psi_prime: Optional[EdgeStates] = None
    witness_A: Optional[List[Tuple[int, ...]]] = None

    def witness_text(self) -> str:
        if self.witness_A is None:
            return "no set with positive marginal gain"

        def fmt(states):
            return "{" + ", ".join(f"{e}:{s}" for e, s in states) + "}"

        return f"psi={fmt(self.witness_psi)} psi'={fmt(self.witness_psi_prime)} A={self.witness_A}"


BOUND_CSV_FIELDS = ["seed", "n", "edges", "d_in", "gamma_hat", "greedy", "opt", "bound", "ratio", "holds"]


class BoundReport(BaseModel):
    seed: Optional[int] = None
    n: int
    edges: int
    d_in: int
    width: int = Field(2, description="2 for digraphs, r for hypergraphs")
    gamma_hat: float
    max_set: int
    greedy_value: float
    opt_value: float
    bound: float
    ratio: float
    holds: bool
    # gamma_hat comes from a capped enumeration, so the bound is an estimate
    gamma_is_estimate: bool = True

    def csv_row(self) -> Dict[str, object]:
        return {
            "seed": self.seed,
            "n": self.n,
            "edges": self.edges,
            "d_in": self.d_in,
            "gamma_hat": repr(self.gamma_hat),
            "greedy": repr(self.greedy_value),
            "opt": repr(self.opt_value),
            "bound": repr(self.bound),
            "ratio": repr(self.ratio),
            "holds": str(self.holds).lower(),
        }
