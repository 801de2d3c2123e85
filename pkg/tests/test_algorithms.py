"""Tests for the MAX-CUT algorithm ladder.

exact_maxcut is validated against a slow independent enumerator and known
closed forms, and then serves as the oracle for every other algorithm.
"""

import itertools
import math
import random

import pytest

import plmc.algorithms as algos
from plmc.errors import ContractError, DomainError, OracleSizeError
from plmc.generator import generate
from plmc.multigraph import Cut, Multigraph, cut_value
from plmc.plgmath import PowerLawParams
from conftest import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    gnp_graph,
    path_graph,
    petersen_graph,
    prism_graph,
    random_multigraph,
    star_graph,
)


def slow_exact_value(g: Multigraph) -> int:
    """Independent oracle: plain itertools enumeration of all cuts."""
    best = 0
    n = g.vertex_count
    for assignment in itertools.product((0, 1), repeat=n - 1):
        c = Cut.from_iterable((0,) + assignment)
        best = max(best, cut_value(g, c))
    return best


class TestExact:
    def test_complete_graphs(self):
        for n in range(2, 7):
            assert algos.exact_maxcut(complete_graph(n)).value == (n // 2) * ((n + 1) // 2)

    def test_k4(self, k4):
        res = algos.exact_maxcut(k4)
        assert res.value == 4
        assert res.certified_optimal
        assert cut_value(k4, res.cut) == 4

    def test_c5(self, c5):
        assert algos.exact_maxcut(c5).value == 4

    def test_petersen(self, petersen):
        assert algos.exact_maxcut(petersen).value == 12

    def test_matches_slow_oracle(self):
        rng = random.Random(13)
        for _ in range(25):
            g = random_multigraph(rng, max_n=8)
            assert algos.exact_maxcut(g).value == slow_exact_value(g)

    def test_multiplicities_and_loops(self):
        g = Multigraph(3, [(0, 1, 5), (1, 2, 2), (0, 0, 9)])
        assert algos.exact_maxcut(g).value == 7

    def test_component_decomposition(self):
        # disjoint K4 + C5 + isolated vertex: optimum adds up
        edges = [(i, j, 1) for i in range(4) for j in range(i + 1, 4)]
        edges += [(4 + i, 4 + (i + 1) % 5, 1) for i in range(5)]
        g = Multigraph(10, edges)
        assert algos.exact_maxcut(g).value == 8

    def test_size_refusal(self):
        g = complete_graph(12)
        with pytest.raises(OracleSizeError):
            algos.exact_maxcut(g, limit=11)

    def test_env_limit(self, monkeypatch):
        monkeypatch.setenv("PLMC_ORACLE_LIMIT", "3")
        with pytest.raises(OracleSizeError):
            algos.exact_maxcut(complete_graph(5))

    def test_large_disjoint_instance(self):
        # 40 disjoint edges: 80 vertices but trivial components
        g = Multigraph(80, [(2 * i, 2 * i + 1, 1) for i in range(40)])
        assert algos.exact_maxcut(g).value == 40


class TestGreedy:
    def test_path_optimal(self):
        assert algos.greedy_cut(path_graph(3)).value == 2

    def test_triangle(self):
        assert algos.greedy_cut(cycle_graph(3)).value == 2

    def test_half_guarantee(self):
        rng = random.Random(99)
        for _ in range(40):
            g = random_multigraph(rng)
            res = algos.greedy_cut(g)
            assert res.value >= g.effective_edge_total / 2
            assert res.value == cut_value(g, res.cut)


class TestLocalSearch:
    def test_improves_all_one_side(self, k4):
        start = Cut.from_iterable([0, 0, 0, 0])
        res = algos.local_search(k4, start)
        assert res.value == 4

    def test_fixpoint(self, k4):
        start = Cut.from_iterable([0, 0, 1, 1])
        res = algos.local_search(k4, start)
        assert res.value == 4

    def test_c5_all_starts(self, c5):
        for assignment in itertools.product((0, 1), repeat=4):
            res = algos.local_search(c5, Cut.from_iterable((0,) + assignment))
            assert res.value == 4

    def test_one_flip_optimality(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_multigraph(rng)
            start = Cut.from_iterable(rng.randint(0, 1) for _ in range(g.vertex_count))
            res = algos.local_search(g, start)
            assert res.value >= cut_value(g, start)
            assert algos.is_one_flip_optimal(g, res.cut)

    def test_start_mismatch(self, k4):
        with pytest.raises(ContractError):
            algos.local_search(k4, Cut.from_iterable([0, 1]))


class TestDensePtas:
    def test_k4(self, k4):
        res = algos.dense_ptas(k4, eps=0.25, seed=7)
        assert res.value == 4
        assert res.params["t"] == 4

    def test_ratio_on_random_graphs(self):
        for seed in range(5):
            g = gnp_graph(16, 0.5, seed=100 + seed)
            exact = algos.exact_maxcut(g).value
            res = algos.dense_ptas(g, eps=0.25, seed=seed)
            assert res.value >= 0.75 * exact

    def test_dominates_greedy(self):
        rng = random.Random(21)
        for seed in range(5):
            g = random_multigraph(rng, max_n=24)
            res = algos.dense_ptas(g, eps=2.0, seed=seed)  # eps>1 -> t=1 sample
            assert res.value >= algos.greedy_cut(g).value

    def test_determinism(self):
        g = gnp_graph(18, 0.4, seed=3)
        a = algos.dense_ptas(g, eps=0.5, seed=11)
        b = algos.dense_ptas(g, eps=0.5, seed=11)
        assert a.cut == b.cut and a.value == b.value

    def test_eps_validation(self, k4):
        with pytest.raises(DomainError):
            algos.dense_ptas(k4, eps=0.0, seed=1)


class TestSplitPtas:
    def test_dominates_greedy_on_plg(self):
        p = PowerLawParams(math.log(100), 1.5)
        g, _ = generate(p, seed=3)
        res = algos.split_ptas(g, p, eps=0.5, seed=3)
        assert res.value >= algos.greedy_cut(g).value
        assert res.params["x"] == pytest.approx((2 * 12.0) ** -2.0)

    def test_tiny_threshold_degenerates_to_dense(self):
        p = PowerLawParams(math.log(30), 1.5)
        g, _ = generate(p, seed=1)
        res = algos.split_ptas(g, p, eps=0.25, seed=1)
        # x = 1/1600 and Delta ~ 9 -> threshold <= 1: whole graph goes dense
        assert res.params["threshold"] <= 1
        dense = algos.dense_ptas(g, res.params["eps_prime"], seed=1)
        assert res.value == dense.value

    def test_beta_domain(self, k4):
        with pytest.raises(DomainError):
            algos.split_ptas(k4, PowerLawParams(3.0, 2.5), eps=0.5, seed=0)

    def test_histogram_warning(self, k4):
        p = PowerLawParams(math.log(100), 1.5)
        with pytest.warns(UserWarning):
            algos.split_ptas(k4, p, eps=0.5, seed=0)

    def test_value_verified(self):
        p = PowerLawParams(math.log(60), 1.5)
        g, _ = generate(p, seed=5)
        res = algos.split_ptas(g, p, eps=1.0, seed=5)
        assert res.value == cut_value(g, res.cut)


class TestGwSdp:
    def test_single_edge(self):
        g = Multigraph(2, [(0, 1, 1)])
        res = algos.gw_sdp(g, seed=0, restarts=10)
        assert res.value == 1
        assert res.upper_bound == pytest.approx(1.0, abs=1e-6)

    def test_c5(self, c5):
        res = algos.gw_sdp(c5, seed=1, restarts=50)
        assert res.value == 4
        assert res.upper_bound >= 4.0
        # known relaxation value for the 5-cycle: 5/2 (1 + cos(pi/5))
        want = 2.5 * (1 + math.cos(math.pi / 5))
        assert res.upper_bound == pytest.approx(want, abs=1e-4)

    def test_quality_and_certificates(self):
        hits = 0
        for seed in range(20):
            g = gnp_graph(8 + seed % 7, 0.5, seed=200 + seed)
            if g.effective_edge_total == 0:
                continue
            exact = algos.exact_maxcut(g).value
            res = algos.gw_sdp(g, seed=seed, restarts=100)
            assert res.upper_bound >= exact - 1e-6
            if res.value >= 0.878 * exact:
                hits += 1
        assert hits >= 19

    def test_determinism(self):
        g = gnp_graph(12, 0.5, seed=77)
        a = algos.gw_sdp(g, seed=5, restarts=20)
        b = algos.gw_sdp(g, seed=5, restarts=20)
        assert a.cut == b.cut and a.upper_bound == b.upper_bound

    def test_needs_two_vertices(self):
        with pytest.raises(ContractError):
            algos.gw_sdp(Multigraph(1), seed=0)


class TestBetaGt2:
    def test_single_matching_edge(self):
        g = Multigraph(2, [(0, 1, 1)])
        res = algos.beta_gt2_algorithm(g, seed=0)
        assert res.value == 1
        assert res.cut.sides == (0, 1)

    def test_star(self):
        g = star_graph(5)
        res = algos.beta_gt2_algorithm(g, seed=0)
        assert res.value == 5

    def test_cuts_every_degree1_edge(self):
        rng = random.Random(31)
        for seed in range(10):
            g = random_multigraph(rng, max_n=12)
            res = algos.beta_gt2_algorithm(g, seed=seed)
            for v in range(g.vertex_count):
                if g.degree(v) == 1:
                    (w, m), = g.adjacency()[v]
                    assert res.cut[v] != res.cut[w]

    def test_dominates_plain_gw_on_plgs(self):
        p = PowerLawParams(6.0, 2.5)
        for seed in range(5):
            g, _ = generate(p, seed=seed)
            paired = algos.beta_gt2_algorithm(g, seed=seed, restarts=20)
            plain = algos.gw_sdp(g, seed=seed, restarts=20)
            assert paired.value >= plain.value


class TestMuFraction:
    def test_perfect_matching(self):
        g = Multigraph(6, [(0, 1, 1), (2, 3, 1), (4, 5, 1)])
        assert algos.mu_fraction(g) == 1.0

    def test_star(self):
        assert algos.mu_fraction(star_graph(5)) == 0.0

    def test_path3(self):
        assert algos.mu_fraction(path_graph(3)) == 0.0

    def test_no_degree_one(self):
        assert algos.mu_fraction(cycle_graph(4)) == 0.0


class TestOracleDominance:
    def test_all_algorithms_bounded_by_exact(self):
        fixtures = [
            complete_graph(4),
            cycle_graph(5),
            petersen_graph(),
            complete_bipartite(3, 3),
            prism_graph(),
            star_graph(6),
            path_graph(7),
        ]
        fixtures += [gnp_graph(10, 0.4, seed=s) for s in range(3)]
        tiny = PowerLawParams(math.log(10), 1.5)
        fixtures.append(generate(tiny, seed=0)[0])
        for g in fixtures:
            exact = algos.exact_maxcut(g).value
            assert algos.greedy_cut(g).value <= exact
            assert algos.local_search(g, greedy_cut_start(g)).value <= exact
            assert algos.dense_ptas(g, 0.25, seed=1).value <= exact
            if g.vertex_count >= 2 and g.effective_edge_total > 0:
                res = algos.gw_sdp(g, seed=1, restarts=30)
                assert res.value <= exact
                assert res.upper_bound >= exact - 1e-6
            assert algos.beta_gt2_algorithm(g, seed=1, restarts=30).value <= exact


def greedy_cut_start(g):
    return algos.greedy_cut(g).cut
