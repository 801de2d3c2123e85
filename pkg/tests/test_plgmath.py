"""Tests for the closed-form power-law analytics.

Expected values are either closed forms, independently recomputed with
mpmath / direct enumeration oracles, or frozen from those oracles.
"""

import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import plmc
from plmc.errors import DomainError, RangeError
from plmc.plgmath import _interval_sum, classify_growth

BETAS = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]


def direct_interval_sum(alpha, beta, a, b, weighted):
    """Independent oracle: term-by-term enumeration with the same floor snapping."""
    tot = 0
    for j in range(a, b + 1):
        v = math.exp(alpha - beta * math.log(j))
        r = round(v)
        y = int(r) if abs(v - r) <= 1e-9 * max(1.0, abs(v)) else math.floor(v)
        tot += j * y if weighted else y
    return tot


class TestZeta:
    def test_known_closed_form(self):
        assert plmc.zeta(2.0, 1e-9) == pytest.approx(math.pi**2 / 6, abs=2e-9)

    def test_against_mpmath(self):
        for beta in (1.5, 2.5, 3.0, 4.0):
            assert plmc.zeta(beta, 1e-9) == pytest.approx(float(mpmath.zeta(beta)), abs=2e-9)

    def test_frozen_value(self):
        # mpmath.zeta(2.5) = 1.341487257250917
        assert plmc.zeta(2.5, 1e-9) == pytest.approx(1.341487257250917, abs=2e-9)

    def test_divergence(self):
        with pytest.raises(DomainError):
            plmc.zeta(1.0, 1e-9)
        with pytest.raises(DomainError):
            plmc.zeta(0.5, 1e-9)

    def test_bad_tol(self):
        with pytest.raises(DomainError):
            plmc.zeta(2.0, 0.0)

    def test_convergence_invariant(self):
        for beta in (1.3, 2.0, 3.5):
            for tol in (1e-6, 1e-8):
                assert abs(plmc.zeta(beta, tol) - plmc.zeta(beta, tol / 10)) <= tol


class TestDegreeCounts:
    def test_examples(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        assert plmc.degree_count(p, 1) == 100
        assert plmc.degree_count(p, 2) == 25
        assert plmc.degree_count(p, 3) == 11

    def test_range_error(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        with pytest.raises(RangeError):
            plmc.degree_count(p, 0)
        with pytest.raises(RangeError):
            plmc.degree_count(p, 11)

    def test_max_degree(self):
        assert plmc.max_degree(plmc.PowerLawParams(math.log(100), 2.0)) == 10
        assert plmc.max_degree(plmc.PowerLawParams(math.log(100), 1.0)) == 100
        assert plmc.max_degree(plmc.PowerLawParams(0.1, 10.0)) == 1

    def test_huge_alpha_uses_big_integers(self):
        p = plmc.PowerLawParams(800.0, 2.0)
        y1 = plmc.degree_count(p, 1)
        assert y1 > 10**300
        # floor(e^800) has 348 digits; check first digits against mpmath
        with mpmath.workdps(360):
            want = int(mpmath.floor(mpmath.exp(800)))
        assert y1 == want

    def test_params_validation(self):
        with pytest.raises(DomainError):
            plmc.PowerLawParams(0.0, 2.0)
        with pytest.raises(DomainError):
            plmc.PowerLawParams(1.0, -1.0)


class TestEstimates:
    def test_node_regimes(self):
        p = plmc.PowerLawParams(10.0, 2.5)
        want = float(mpmath.zeta(2.5)) * math.exp(10.0)
        assert plmc.node_count_estimate(p) == pytest.approx(want, rel=1e-9)
        p = plmc.PowerLawParams(10.0, 0.5)
        assert plmc.node_count_estimate(p) == pytest.approx(2 * math.exp(20.0), rel=1e-12)
        p = plmc.PowerLawParams(10.0, 1.0)
        assert plmc.node_count_estimate(p) == pytest.approx(10 * math.exp(10.0), rel=1e-12)

    def test_edge_regimes(self):
        p = plmc.PowerLawParams(10.0, 3.0)
        want = 0.5 * (math.pi**2 / 6) * math.exp(10.0)
        assert plmc.edge_count_estimate(p) == pytest.approx(want, rel=1e-8)
        p = plmc.PowerLawParams(10.0, 2.0)
        assert plmc.edge_count_estimate(p) == pytest.approx(2.5 * math.exp(10.0), rel=1e-12)
        p = plmc.PowerLawParams(10.0, 1.5)
        assert plmc.edge_count_estimate(p) == pytest.approx(math.exp(40 / 3.0), rel=1e-12)

    def test_node_estimate_matches_exact_sum(self):
        # the beta>1 estimate approaches the exact count for alpha >= 10
        for beta in (2.0, 2.5, 3.0):
            p = plmc.PowerLawParams(10.0, beta)
            exact = plmc.interval_size_exact(p, 1, p.max_degree)
            assert plmc.node_count_estimate(p) == pytest.approx(exact, rel=0.05)


class TestIntervalSums:
    def test_examples(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        assert plmc.interval_size_exact(p, 2, 3) == 36
        assert plmc.interval_volume_exact(p, 1, 1) == 100
        d = p.max_degree
        assert plmc.interval_size_exact(p, d, d) >= 1

    def test_against_direct_enumeration(self):
        rng = random.Random(42)
        for _ in range(60):
            alpha = rng.uniform(3.0, 12.0)
            beta = rng.choice(BETAS)
            p = plmc.PowerLawParams(alpha, beta)
            d = p.max_degree
            a = rng.randint(1, d)
            b = rng.randint(a, min(d, a + 3000))
            for weighted in (False, True):
                got = _interval_sum(alpha, beta, a, b, weighted)
                assert got == direct_interval_sum(alpha, beta, a, b, weighted)

    def test_bucket_path_on_huge_ranges(self):
        # beta < 1 makes Delta astronomically large; the split path must
        # agree with term enumeration on a far-out slice
        alpha, beta = 12.0, 0.5
        p = plmc.PowerLawParams(alpha, beta)
        d = p.max_degree
        a = d - 2000
        assert plmc.interval_size_exact(p, a, d) == direct_interval_sum(alpha, beta, a, d, False)
        assert plmc.interval_volume_exact(p, a, d) == direct_interval_sum(alpha, beta, a, d, True)

    def test_range_error(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        with pytest.raises(RangeError):
            plmc.interval_size_exact(p, 0, 5)
        with pytest.raises(RangeError):
            plmc.interval_volume_exact(p, 3, 2)
        with pytest.raises(RangeError):
            plmc.interval_size_exact(p, 1, 11)


class TestIntervalBounds:
    def test_bracket_example(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        bounds = plmc.interval_size_bounds(p, 2, 3)
        assert plmc.interval_size_exact(p, 2, 3) in bounds
        assert bounds.lo <= 36 <= bounds.hi

    def test_single_point_width(self):
        p = plmc.PowerLawParams(math.log(100), 2.0)
        a = 2
        b = plmc.interval_size_bounds(p, a, a)
        f = lambda t: math.exp(p.alpha) / t**p.beta
        assert b.width == pytest.approx(f(a) - f(a + 1) + 1, rel=1e-9)

    def test_randomized_sweep(self):
        rng = random.Random(7)
        for _ in range(120):
            alpha = rng.uniform(4.0, 14.0)
            beta = rng.choice(BETAS)
            p = plmc.PowerLawParams(alpha, beta)
            d = p.max_degree
            a = rng.randint(1, d)
            b = min(d, a + rng.randint(0, 10**6))
            assert plmc.interval_size_exact(p, a, b) in plmc.interval_size_bounds(p, a, b)
            assert plmc.interval_volume_exact(p, a, b) in plmc.interval_volume_bounds(p, a, b)

    @settings(max_examples=40, deadline=None)
    @given(
        alpha=st.floats(4.0, 14.0),
        beta=st.sampled_from(BETAS),
        seed=st.integers(0, 2**31),
    )
    def test_bracket_property(self, alpha, beta, seed):
        rng = random.Random(seed)
        p = plmc.PowerLawParams(alpha, beta)
        d = p.max_degree
        a = rng.randint(1, d)
        b = min(d, a + rng.randint(0, 10**4))
        assert plmc.interval_size_exact(p, a, b) in plmc.interval_size_bounds(p, a, b)
        assert plmc.interval_volume_exact(p, a, b) in plmc.interval_volume_bounds(p, a, b)


class TestSplitParams:
    def test_tau(self):
        assert plmc.tau(0.25) == 20.0
        assert plmc.tau(1.0) == 8.0
        assert plmc.tau(1e9) == pytest.approx(4.0, rel=1e-8)
        with pytest.raises(DomainError):
            plmc.tau(0.0)

    def test_quarter_and_unit_eps(self):
        sp = plmc.split_params(0.25, 1.5)
        assert sp.tau == 20.0
        assert sp.x == pytest.approx(1 / 1600, rel=1e-12)
        assert sp.eps_prime == pytest.approx(8.21827744904668e-06, abs=1e-9)
        sp = plmc.split_params(1.0, 1.5)
        assert sp.x == pytest.approx(1 / 256, rel=1e-12)

    def test_x_in_unit_interval(self):
        rng = random.Random(3)
        for _ in range(50):
            sp = plmc.split_params(rng.uniform(0.01, 5.0), rng.uniform(1.01, 1.99))
            assert 0.0 < sp.x < 1.0
            assert sp.eps_prime > 0.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            plmc.split_params(0.25, 2.0)
        with pytest.raises(DomainError):
            plmc.split_params(0.25, 1.0)
        with pytest.raises(DomainError):
            plmc.split_params(-1.0, 1.5)

    def test_volume_condition(self):
        # the chosen threshold keeps the low-degree volume within the 1/tau
        # fraction of the (regime-estimate) edge count, 10% slack, alpha >= 10;
        # the exact edge total sits a constant factor below its estimate for
        # beta near 1 (floor losses), so the estimate is the comparison base
        for alpha in (10.0, 12.0, 14.0):
            for beta in (1.2, 1.3, 1.5, 1.7):
                for eps in (0.25, 0.5, 1.0):
                    p = plmc.PowerLawParams(alpha, beta)
                    sp = plmc.split_params(eps, beta)
                    cut_at = int(sp.x * p.max_degree)
                    if cut_at < 1:
                        continue
                    vol_low = plmc.interval_volume_exact(p, 1, cut_at)
                    assert vol_low <= plmc.edge_count_estimate(p) / sp.tau * 1.1


class TestFunctional:
    def test_functional_x(self):
        f = plmc.FunctionalSpec(math.sqrt, "sqrt")
        assert plmc.functional_x(f, 100.0) == pytest.approx(0.1, rel=1e-12)
        g = plmc.FunctionalSpec(math.log, "log")
        assert plmc.functional_x(g, math.exp(10.0)) == pytest.approx(0.1, rel=1e-12)
        with pytest.raises(DomainError):
            plmc.functional_x(f, 0.25)

    def test_conditions_at_x_one(self):
        # closed low interval [1, Delta] has volume = 2 * edge total up to
        # the floor in the edge count
        f = plmc.FunctionalSpec(math.sqrt, "sqrt")
        r1, r2 = plmc.functional_conditions_check(f, 20.0, 1.0)
        assert r2 == pytest.approx(2.0, abs=1e-4)

    def test_conditions_below_min_degree(self):
        f = plmc.FunctionalSpec(math.sqrt, "sqrt")
        p = plmc.PowerLawParams(20.0, f.beta_f(20.0))
        tiny = 0.5 / p.max_degree
        r1, r2 = plmc.functional_conditions_check(f, 20.0, tiny)
        assert r2 == 0.0

    def test_exact_ratios_match_direct(self):
        # independent direct enumeration at alpha = 20
        alpha = 20.0
        f = plmc.FunctionalSpec(math.sqrt, "sqrt")
        beta = f.beta_f(alpha)
        p = plmc.PowerLawParams(alpha, beta)
        d = p.max_degree
        x = plmc.functional_x(f, alpha)
        j = np.arange(1, d + 1, dtype=np.float64)
        y = np.floor(np.exp(alpha - beta * np.log(j)))
        lo_b = int(x * d)
        vol_low = float((j[:lo_b] * y[:lo_b]).sum())
        edge_total = int((j * y).sum()) // 2
        size_high = float(y[lo_b:].sum())
        r1, r2 = plmc.functional_conditions_check(f, alpha, x)
        assert r1 == pytest.approx(size_high**2 / edge_total, rel=1e-9)
        assert r2 == pytest.approx(vol_low / edge_total, rel=1e-9)

    def test_monotone_validation(self):
        f = plmc.FunctionalSpec(lambda a: 10.0 / a, "decreasing")
        with pytest.raises(DomainError):
            f.validate_monotone([10.0, 20.0, 40.0])
        plmc.FunctionalSpec(math.sqrt, "sqrt").validate_monotone([10.0, 20.0, 40.0])

    def test_growth_classification(self):
        assert classify_growth(plmc.FunctionalSpec(math.sqrt), [20.0, 80.0]) == "sublinear"
        assert classify_growth(plmc.FunctionalSpec(lambda a: 0.5 * a), [20.0, 80.0]) == "linear"
        assert classify_growth(plmc.FunctionalSpec(lambda a: a**1.5), [20.0, 80.0]) == "superlinear"


class TestRatioBounds:
    def test_gw_bound_worst_case(self):
        got = plmc.gw_ratio_bound(3.0, plmc.GwBoundInputs(mu=1.0))
        assert got == pytest.approx(0.9525591793243373, abs=5e-4)

    def test_gw_bound_cap(self):
        assert plmc.gw_ratio_bound(3.0, plmc.GwBoundInputs(mu=0.0)) == 1.0

    def test_gw_bound_monotone_in_mu(self):
        for beta in (2.2, 2.5, 3.0, 4.0):
            vals = [plmc.gw_ratio_bound(beta, plmc.GwBoundInputs(mu=m)) for m in np.linspace(0, 1, 11)]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
            assert min(vals) == pytest.approx(vals[-1], abs=1e-12)

    def test_gw_bound_dominates_base_constant(self):
        for beta in (2.05, 2.3, 2.7, 3.0, 5.0):
            for mu in (0.0, 0.5, 1.0):
                assert plmc.gw_ratio_bound(beta, plmc.GwBoundInputs(mu=mu)) >= 0.879

    def test_gw_bound_domain(self):
        with pytest.raises(DomainError):
            plmc.gw_ratio_bound(2.0, plmc.GwBoundInputs(mu=1.0))
        with pytest.raises(DomainError):
            plmc.GwBoundInputs(mu=1.5)

    def test_hardness_ratio(self):
        assert plmc.hardness_ratio(3.0) == pytest.approx(1.000434, abs=1e-6)
        assert plmc.hardness_ratio(2.1) == pytest.approx(1.000181, abs=1e-6)

    def test_hardness_ratio_exceeds_one(self):
        for beta in np.linspace(2.05, 6.0, 25):
            assert plmc.hardness_ratio(float(beta)) > 1.0

    def test_hardness_domain(self):
        with pytest.raises(DomainError):
            plmc.hardness_ratio(2.0)

    def test_core_strength_bound(self):
        assert plmc.core_strength_bound(8.0) == pytest.approx(512 / math.exp(8.0), rel=1e-12)
        assert plmc.core_strength_bound(8.0) == pytest.approx(0.1718, abs=5e-4)
        assert plmc.core_strength_bound(12.0) == pytest.approx(0.01062, abs=5e-5)

    def test_core_strength_bound_decreasing(self):
        xs = np.linspace(3.5, 20.0, 40)
        vals = [plmc.core_strength_bound(float(a)) for a in xs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
