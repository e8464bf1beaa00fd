import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import hand_profile, npv_loop
from pvuptake.cashflow import (
    CashFlowProfile,
    annual_energy,
    build_profile,
    investment_cost,
    npv,
    positive_cash_flow,
)
from pvuptake.sampling import Population, SystemSample


def sample(**kw):
    base = dict(
        size_kwp=5.0,
        specific_cost=4000.0,
        performance_ratio=0.84,
        self_consumption=0.05,
        degradation=0.005,
        inclination_factor=0.98,
        irradiance=1253.0,
        om_share=0.015,
        retail_price=0.21,
        tariff=0.43,
        sc_tariff=0.0,
    )
    base.update(kw)
    return SystemSample(**base)


class TestInvestmentCost:
    def test_reference_size(self):
        assert investment_cost(10.0, 2000.0) == 20000.0

    def test_half_size(self):
        # mpmath: 5 * 2000 * 0.5**-0.063 = 10446.3576...
        assert investment_cost(5.0, 2000.0) == pytest.approx(10446.4, abs=0.1)

    def test_one_kwp(self):
        # mpmath: 2000 * 0.1**-0.063 = 2312.2245...
        assert investment_cost(1.0, 2000.0) == pytest.approx(2312.2, abs=0.1)

    @pytest.mark.parametrize("s, i0", [(0.0, 2000.0), (-1.0, 2000.0), (5.0, 0.0)])
    def test_rejects_non_positive(self, s, i0):
        with pytest.raises(ValueError):
            investment_cost(s, i0)


class TestEnergy:
    def test_identity_factors(self):
        s = sample(size_kwp=1.0, inclination_factor=1.0, performance_ratio=1.0, irradiance=1000.0, degradation=0.0)
        assert [annual_energy(s, n) for n in (1, 7, 20)] == [1000.0, 1000.0, 1000.0]

    def test_first_year(self):
        s = sample(inclination_factor=0.9)
        # mpmath: 5 * 0.9 * 0.84 * 1253 * 0.995 = 4712.6583
        assert annual_energy(s, 1) == pytest.approx(4712.7, abs=0.1)

    def test_degradation_ratio(self):
        s = sample(degradation=0.02)
        base = s.size_kwp * s.inclination_factor * s.performance_ratio * s.irradiance
        assert annual_energy(s, 20) / base == pytest.approx(0.6676, abs=1e-4)

    @pytest.mark.parametrize("n", [0, 21])
    def test_year_out_of_range(self, n):
        with pytest.raises(ValueError):
            annual_energy(sample(), n)


class TestRevenue:
    def test_feed_in_branch(self):
        assert positive_cash_flow(sample(tariff=0.50, retail_price=0.20), 1000.0) == 500.0

    def test_self_consumption_branch(self):
        s = sample(tariff=0.20, retail_price=0.25, self_consumption=0.10)
        assert positive_cash_flow(s, 1000.0) == pytest.approx(205.0, abs=1e-9)

    def test_no_self_consumption_collapses_to_feed_in(self):
        s = sample(tariff=0.20, retail_price=0.25, self_consumption=0.0)
        assert positive_cash_flow(s, 1000.0) == 1000.0 * 0.20

    @given(
        st.floats(0.01, 0.6),
        st.floats(0.0, 0.3),
        st.floats(0.0, 1.0),
        st.floats(0.0, 1e5),
    )
    def test_branches_meet_exactly_at_boundary(self, e, f_sc, sc, energy):
        f = e + f_sc
        s = sample(tariff=f, retail_price=e, sc_tariff=f_sc, self_consumption=sc)
        assert positive_cash_flow(s, energy) == energy * f

    def test_negative_energy(self):
        with pytest.raises(ValueError):
            positive_cash_flow(sample(), -1.0)


class TestProfile:
    def test_no_om_high_tariff_all_positive(self):
        p = build_profile(sample(om_share=0.0, tariff=0.6))
        assert p.lifetime == 20 and np.all(p.flows > 0)

    def test_zero_output(self):
        s = sample(inclination_factor=0.0)
        p = build_profile(s)
        np.testing.assert_allclose(p.flows, -p.initial_outlay * s.om_share, rtol=1e-15)

    def test_matches_hand_table(self):
        s = sample()
        outlay, rows = hand_profile(5.0, 4000.0, 0.84, 0.05, 0.005, 0.98, 1253.0, 0.015, 0.21, 0.43, 0.0)
        p = build_profile(s)
        assert p.initial_outlay == pytest.approx(outlay, abs=1e-9)
        np.testing.assert_allclose(p.flows, [r[4] for r in rows], rtol=0, atol=1e-9)

    def test_matches_hand_table_self_consumption_era(self):
        s = sample(tariff=0.3405, retail_price=0.2369, sc_tariff=0.1767, self_consumption=0.12, specific_cost=2700.0)
        outlay, rows = hand_profile(5.0, 2700.0, 0.84, 0.12, 0.005, 0.98, 1253.0, 0.015, 0.2369, 0.3405, 0.1767)
        np.testing.assert_allclose(build_profile(s).flows, [r[4] for r in rows], rtol=0, atol=1e-9)

    def test_population_matches_scalar_path(self):
        samples = [sample(size_kwp=s, self_consumption=sc) for s, sc in [(1.0, 0.0), (4.0, 0.2), (9.5, 0.1)]]
        pop = build_profile(Population.from_samples(samples))
        for i, s in enumerate(samples):
            single = build_profile(s)
            assert pop.initial_outlay[i] == single.initial_outlay
            np.testing.assert_allclose(pop.flows[i], single.flows, rtol=1e-14)


class TestNpv:
    def test_empty_economics(self):
        assert npv(CashFlowProfile(0.0, np.zeros(20)), 0.05) == 0.0

    def test_zero_rate_is_plain_sum(self):
        flows = np.arange(1.0, 21.0)
        assert npv(CashFlowProfile(100.0, flows), 0.0) == pytest.approx(-100.0 + flows.sum(), abs=1e-9)

    def test_annuity(self):
        # closed form: 1000 * (1 - 1.05**-20) / 0.05 - 10000 = 2462.2103...
        assert npv(CashFlowProfile(10000.0, np.full(20, 1000.0)), 0.05) == pytest.approx(2462.2, abs=0.1)

    def test_rate_must_exceed_minus_one(self):
        with pytest.raises(ValueError):
            npv(CashFlowProfile(1.0, np.ones(20)), -1.0)

    def test_vector_of_rates_matches_loop(self):
        p = build_profile(sample())
        rates = np.linspace(-0.1, 0.15, 51)
        got = npv(p, rates)
        expected = [npv_loop(p.initial_outlay, list(p.flows), r) for r in rates]
        np.testing.assert_allclose(got, expected, rtol=1e-12, atol=1e-8)

    @given(arrays(float, 20, elements=st.floats(1.0, 1e4)), st.floats(0, 1e5), st.floats(-0.5, 0.5), st.floats(1e-4, 0.5))
    def test_strictly_decreasing_for_positive_flows(self, flows, outlay, r, dr):
        p = CashFlowProfile(outlay, flows)
        assert npv(p, r + dr) < npv(p, r)

    @given(
        arrays(float, 20, elements=st.floats(-1e4, 1e4)),
        arrays(float, 20, elements=st.floats(-1e4, 1e4)),
        st.floats(-10, 10),
        st.floats(-10, 10),
        st.floats(-0.5, 0.5),
    )
    def test_linear_in_flows(self, f1, f2, a, b, r):
        p1, p2 = CashFlowProfile(0.0, f1), CashFlowProfile(0.0, f2)
        combined = npv(CashFlowProfile(0.0, a * f1 + b * f2), r)
        parts = a * npv(p1, r) + b * npv(p2, r)
        scale = (abs(a) * np.abs(f1).sum() + abs(b) * np.abs(f2).sum()) * max(1.0, 2.0**20) + 1.0
        assert abs(combined - parts) <= 1e-9 * scale
