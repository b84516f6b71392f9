import math
import random
from fractions import Fraction

import pytest

from powergraph.errors import InputError
from powergraph.exact import exact_mds
from powergraph.graph import DS2, Graph, is_feasible, square
from powergraph.mds_distributed import (
    EstimateConfig,
    estimate_2hop_counts,
    g2mds_logd,
)

from oracles import brute_min_ds, random_connected_gnp
from test_graph import complete, cycle, path, star


def two_hop_counts(g, U):
    counts = []
    for v in range(g.n):
        reach = {v} | {u for u in g.adj[v]}
        for u in g.adj[v]:
            reach.update(g.adj[u])
        counts.append(len(reach & U))
    return counts


def harmonic(k):
    return sum(Fraction(1, i) for i in range(1, k + 1))


class TestEstimateConfig:
    def test_eps_range(self):
        with pytest.raises(InputError):
            EstimateConfig(eps_est=Fraction(1, 4))
        with pytest.raises(InputError):
            EstimateConfig(eps_est=0)

    def test_defaults_resolve(self):
        cfg = EstimateConfig()
        r, t = cfg.resolve(100)
        assert r >= 6 * math.log(100) * 63  # 1/eps^2 = 64
        assert t == math.ceil(8 * math.log(100))


class TestExactEstimation:
    def test_isolated_vertex(self):
        g = Graph(1, [])
        est, exact, _ = estimate_2hop_counts(g, {0})
        assert exact == [True]
        assert est == [1]

    def test_p5_middle_vertex(self):
        g = path(5)
        est, exact, _ = estimate_2hop_counts(g, set(range(5)))
        assert all(exact)
        assert est[2] == 5
        assert est == two_hop_counts(g, set(range(5)))

    def test_subset_u(self):
        g = star(9)
        U = set(range(1, 9))  # the leaves
        est, exact, _ = estimate_2hop_counts(g, U)
        assert all(exact)
        assert est == two_hop_counts(g, U)

    def test_random_graphs_counted_exactly(self):
        rng = random.Random(7)
        for trial in range(10):
            n = rng.randint(2, 14)
            g = Graph(n, random_connected_gnp(n, 0.4, seed=1100 + trial))
            U = {v for v in range(n) if rng.random() < 0.7}
            est, exact, _ = estimate_2hop_counts(g, U, seed=trial)
            assert all(exact)  # at this scale every degree is tiny
            assert est == two_hop_counts(g, U)


class TestSampledEstimation:
    def test_bracket_on_cycle(self):
        # exact_threshold=1 forces every vertex onto the sampling path
        g = cycle(10)
        cfg = EstimateConfig(samples=800, exact_threshold=1)
        U = set(range(10))
        truth = two_hop_counts(g, U)
        hits = 0
        total = 0
        for seed in range(5):
            est, exact, _ = estimate_2hop_counts(g, U, cfg, seed=seed)
            assert not any(exact)
            for v in range(10):
                total += 1
                if Fraction(3, 4) * truth[v] <= est[v] <= Fraction(5, 4) * truth[v]:
                    hits += 1
        assert hits >= 0.95 * total

    def test_no_uncovered_nearby_gives_zero(self):
        g = path(5)
        cfg = EstimateConfig(samples=50, exact_threshold=1)
        est, _, _ = estimate_2hop_counts(g, {0}, cfg, seed=3)
        assert est[3] == 0 and est[4] == 0
        assert est[0] > 0

    def test_deterministic(self):
        g = cycle(8)
        cfg = EstimateConfig(samples=100, exact_threshold=1)
        e1, _, _ = estimate_2hop_counts(g, set(range(8)), cfg, seed=5)
        e2, _, _ = estimate_2hop_counts(g, set(range(8)), cfg, seed=5)
        assert e1 == e2

    def test_bandwidth_too_small(self):
        from powergraph.sim import Model, CONGEST

        with pytest.raises(InputError):
            estimate_2hop_counts(
                path(3), {0, 1, 2}, model=Model(CONGEST, bandwidth_words=1)
            )


class TestG2MdsLogd:
    def test_star(self):
        g = star(9)
        sol, stats = g2mds_logd(g, seed=0)
        assert is_feasible(g, DS2, sol.members)
        assert sol.value == 1
        assert stats.rounds > 0

    def test_cycle5(self):
        sol, _ = g2mds_logd(cycle(5), seed=0)
        assert is_feasible(cycle(5), DS2, sol.members)
        assert sol.value == 1

    def test_single_vertex(self):
        sol, _ = g2mds_logd(Graph(1, []), seed=0)
        assert sol.members == {0}

    def test_feasible_on_random_graphs(self):
        rng = random.Random(19)
        for trial in range(12):
            n = rng.randint(2, 12)
            g = Graph(n, random_connected_gnp(n, 0.35, seed=1300 + trial))
            sol, _ = g2mds_logd(g, seed=trial)
            assert is_feasible(g, DS2, sol.members)

    def test_ratio_against_oracle(self):
        rng = random.Random(23)
        for trial in range(10):
            n = rng.randint(2, 12)
            g = Graph(n, random_connected_gnp(n, 0.4, seed=1400 + trial))
            opt = brute_min_ds(n, list(square(g).edges()))
            delta = max(g.degree(v) for v in range(n))
            bound = 8 * harmonic(delta * delta)
            for seed in (0, 1, 2):
                sol, _ = g2mds_logd(g, seed=seed)
                assert sol.value <= bound * opt

    def test_deterministic(self):
        g = Graph(10, random_connected_gnp(10, 0.4, seed=21))
        s1, st1 = g2mds_logd(g, seed=6)
        s2, st2 = g2mds_logd(g, seed=6)
        assert s1.members == s2.members
        assert st1.rounds == st2.rounds
