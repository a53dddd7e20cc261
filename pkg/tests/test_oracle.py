import itertools

import pytest

from models.graph import OrderedHypergraph, WeightedDigraph
from models.states import StateDistribution
from oracle.bounds import greedy_expected_value, run_campaign, verify_bound
from oracle.dks import densest_subgraph_bruteforce, dks_instance, dks_reduce, dks_value, solve_dks
from oracle.fixtures import F, movie_instance
from oracle.gamma import estimate_gamma, submasks
from oracle.instances import (
    Instance,
    random_digraph_instance,
    random_hypergraph_instance,
    random_linear_instance,
    random_undirected_graph,
)
from oracle.optimal import edge_state_table, optimal_adaptive_value, optimal_sequence
from policies.feedback import NeverReveal
from policies.sequence_greedy import nonadaptive_sequence_greedy
from utility.coverage_utility import CoverageUtility
from utility.expectation import policy_expected_value
from utility.linear_utility import LinearUtility
from utils.errors import CapacityError, InputError


def single_edge_instance(k=2, dist=None):
    g = WeightedDigraph.from_edges(2, [(0, 1, 1.0)])
    return Instance(
        structure=g,
        utility=CoverageUtility.from_structure(g),
        dist=dist or StateDistribution.point_mass([1, 1]),
        k=k,
    )


def single_loop_instance(k=1, q=0.3):
    g = WeightedDigraph.from_edges(1, [(0, 0, 1.0)])
    return Instance(structure=g, utility=LinearUtility.counting(g.edge_ids), dist=StateDistribution.bernoulli([q]), k=k)


def test_submasks():
    assert submasks(0) == [0]
    assert submasks(5) == [0, 1, 4, 5]


def test_edge_state_table_sums_to_one(movie_inst):
    table = edge_state_table(movie_inst.structure, movie_inst.dist, movie_inst.rule)
    assert sum(table.values()) == pytest.approx(1.0)
    assert len(table) == 8


def test_optimal_sequence_examples():
    empty = Instance(structure=WeightedDigraph(n=2), utility=LinearUtility({}), dist=StateDistribution.uniform(2, 0.5), k=2)
    assert optimal_sequence(empty) == ((), 0.0)
    assert optimal_sequence(single_edge_instance()) == ((0, 1), 1.0)
    assert optimal_sequence(single_edge_instance(k=0)) == ((), 0.0)


def test_optimal_sequence_guard():
    g = WeightedDigraph.from_edges(11, [(0, 10, 1.0)])
    inst = Instance(structure=g, utility=LinearUtility.counting(g.edge_ids), dist=StateDistribution.uniform(11, 1.0), k=2)
    with pytest.raises(CapacityError):
        optimal_sequence(inst)


def test_optimal_adaptive_examples():
    point = single_edge_instance()
    assert optimal_adaptive_value(point) == pytest.approx(optimal_sequence(point)[1])
    assert optimal_adaptive_value(single_loop_instance()) == pytest.approx(0.3, abs=1e-12)
    assert optimal_adaptive_value(single_loop_instance(k=0)) == 0.0


def test_optimal_adaptive_guard():
    g = WeightedDigraph.from_edges(7, [(0, 6, 0.5)])
    inst = Instance(structure=g, utility=CoverageUtility.from_structure(g), dist=StateDistribution.uniform(7, 0.5), k=2)
    with pytest.raises(CapacityError):
        optimal_adaptive_value(inst)


def test_adaptivity_helps_on_movie_fixture(movie_inst):
    adaptive = optimal_adaptive_value(movie_inst)
    _, fixed = optimal_sequence(movie_inst)
    assert adaptive >= fixed - 1e-9
    # sigma = [F, T, R] induces all six edges, each worth its source's chance of being liked
    assert fixed == pytest.approx(3.0)


def test_gamma_on_movie_fixture():
    estimate = estimate_gamma(movie_instance())
    assert estimate.gamma_hat <= 0.5 + 1e-12
    assert estimate.witness_A is not None
    assert estimate.pairs_checked > 0
    assert "psi=" in estimate.witness_text()


def test_gamma_single_edge_is_one():
    inst = single_edge_instance(dist=StateDistribution.uniform(2, 0.5))
    assert estimate_gamma(inst).gamma_hat == 1.0


def test_gamma_guards():
    g = WeightedDigraph.from_edges(11, [(i, i + 1, 0.5) for i in range(10)] + [(0, 0, 0.5)])
    inst = Instance(structure=g, utility=CoverageUtility.from_structure(g), dist=StateDistribution.uniform(11, 0.5), k=2)
    with pytest.raises(CapacityError):
        estimate_gamma(inst)
    with pytest.raises(InputError):
        estimate_gamma(movie_instance(), max_set=0)


def test_gamma_without_positive_gain():
    g = WeightedDigraph.from_edges(2, [(0, 1, 0.0), (1, 1, 0.0)])
    inst = Instance(structure=g, utility=CoverageUtility.from_structure(g), dist=StateDistribution.uniform(2, 0.5), k=2)
    estimate = estimate_gamma(inst)
    assert estimate.gamma_hat == 1.0
    assert estimate.witness_A is None


def test_verify_bound_linear_point_mass():
    inst = random_linear_instance(3)
    report = verify_bound(inst)
    assert report.gamma_hat == 1.0
    assert report.bound == pytest.approx(1.0 / (2 * report.d_in + 1))
    assert report.holds


def test_verify_bound_zero_optimum():
    g = WeightedDigraph.from_edges(3, [(0, 1, 0.0), (1, 2, 0.0), (2, 2, 0.0)])
    inst = Instance(structure=g, utility=CoverageUtility.from_structure(g), dist=StateDistribution.uniform(3, 0.5), k=3)
    report = verify_bound(inst)
    assert report.opt_value == 0.0
    assert report.ratio == 1.0
    assert report.holds
    assert report.csv_row()["holds"] == "true"


def test_hypergraph_bound_uses_arity():
    hg = OrderedHypergraph.from_hyperedges(3, [(0, 1, 2), (1, 2)], weights=[0.5, 0.8])
    inst = Instance(structure=hg, utility=CoverageUtility.from_structure(hg), dist=StateDistribution.uniform(3, 0.5), k=3)
    report = verify_bound(inst)
    assert report.width == 3
    assert report.holds


def test_generators_are_seeded():
    a, b = random_digraph_instance(11), random_digraph_instance(11)
    assert a.structure == b.structure and a.dist == b.dist and a.k == b.k
    hyper = random_hypergraph_instance(5)
    assert hyper.is_hypergraph
    assert hyper.structure.r <= hyper.k <= 5


def test_campaign_guard():
    with pytest.raises(CapacityError):
        run_campaign("digraph", 1, max_vertices=12)


def test_campaign_of_zero_instances():
    assert run_campaign("digraph", 0) == []


def test_oracle_dominance():
    for seed in range(40):
        inst = random_digraph_instance(seed)
        s = inst.structure
        adaptive = optimal_adaptive_value(inst)
        _, fixed = optimal_sequence(inst)
        assert adaptive >= fixed - 1e-9, seed
        assert fixed >= -1e-9

        def plain(feedback, k):
            return nonadaptive_sequence_greedy(s, inst.utility, inst.rule, inst.dist, k)

        assert fixed >= policy_expected_value(plain, s, inst.utility, inst.dist, inst.k) - 1e-9, seed
        assert adaptive >= greedy_expected_value(inst) - 1e-9, seed


def test_nonadaptive_greedy_never_looks(movie_inst):
    s = movie_inst.structure
    trace = nonadaptive_sequence_greedy(s, movie_inst.utility, movie_inst.rule, movie_inst.dist, 3)
    again = nonadaptive_sequence_greedy(s, movie_inst.utility, movie_inst.rule, movie_inst.dist, 3)
    assert trace.final_psi.observed == {}
    assert trace.same_choices(again)
    assert NeverReveal().reveal(F) is None


def test_dks_examples():
    g, h = dks_reduce([(0, 1), (1, 2), (0, 2)])
    assert solve_dks([(0, 1), (1, 2), (0, 2)], 3)[1] == 3.0
    assert max(dks_value(g, h, p) for p in itertools.permutations(range(3))) == 3.0

    g, h = dks_reduce([(0, 1)])
    assert dks_value(g, h, [0, 1]) == dks_value(g, h, [1, 0]) == 1.0

    g, h = dks_reduce([], n=3)
    assert all(dks_value(g, h, p) == 0.0 for p in itertools.permutations(range(3)))
    assert solve_dks([], 2, n=3) == ((), 0.0)
    assert solve_dks([(0, 1), (1, 2)], 2)[1] == 1.0


def test_dks_rejects_self_loops_and_large_solves():
    with pytest.raises(InputError):
        dks_reduce([(1, 1)])
    with pytest.raises(CapacityError):
        solve_dks([(0, 7)], 2)


def test_dks_instance_is_point_mass():
    g, h = dks_reduce([(0, 1), (1, 2)])
    inst = dks_instance(g, h, 2)
    assert inst.dist.kind == "point"
    assert edge_state_table(g, inst.dist, inst.rule) == {(1 << len(g.edge_ids)) - 1: 1.0}


@pytest.mark.campaign
def test_dks_reduction_campaign():
    for seed in range(50):
        n, edges = random_undirected_graph(seed)
        g, h = dks_reduce(edges, n)
        for size in range(n + 1):
            for subset in itertools.combinations(range(n), size):
                inside = sum(1 for u, v in edges if u in subset and v in subset)
                for order in itertools.permutations(subset):
                    assert dks_value(g, h, order) == inside, (seed, order)
        for k in sorted({min(2, n), min(3, n), n}):
            assert solve_dks(edges, k, n)[1] == densest_subgraph_bruteforce(n, edges, k)[1], (seed, k)


@pytest.mark.campaign
def test_bound_campaign_digraphs():
    reports = run_campaign("digraph", 200, max_vertices=6, seed=0, max_set=4)
    assert len(reports) == 200
    assert [r.seed for r in reports if not r.holds] == []


@pytest.mark.campaign
def test_bound_campaign_hypergraphs():
    reports = run_campaign("hypergraph", 100, max_vertices=6, seed=0, max_set=4)
    assert len(reports) == 100
    assert [r.seed for r in reports if not r.holds] == []


@pytest.mark.campaign
def test_bound_campaign_linear():
    reports = run_campaign("linear", 100, max_vertices=6, seed=0)
    for r in reports:
        assert r.gamma_hat == 1.0
        assert r.bound == pytest.approx(1.0 / (2 * r.d_in + 1))
        assert r.holds
