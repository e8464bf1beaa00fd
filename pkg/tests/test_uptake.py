import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pvuptake.timeseries import AlignmentError, MonthIndex, MonthlyTimeSeries
from pvuptake.uptake import (
    BehavioralParams,
    deployment,
    exp_utility,
    prospect_utility,
    risk_adjusted_irr,
    utility_changes,
    value_function,
)

START = MonthIndex(2010, 1)
LINEAR = BehavioralParams(alpha=1.0, lam=1.0)


def ts(values, start=START):
    return MonthlyTimeSeries(start, np.asarray(values, dtype=float))


positive = st.floats(1e-6, 1e6)
utility_paths = arrays(float, st.integers(2, 60), elements=st.floats(0.01, 100.0))


class TestParams:
    @pytest.mark.parametrize("kw", [dict(kappa=0), dict(alpha=0), dict(alpha=1.1), dict(lam=0.9)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            BehavioralParams(**kw)

    def test_defaults(self):
        assert BehavioralParams() == BehavioralParams(20.0, 0.88, 2.25)


class TestRiskAdjusted:
    def test_difference(self):
        assert risk_adjusted_irr(ts([0.05]), ts([0.03])).values[0] == pytest.approx(0.02, abs=1e-15)

    def test_identities(self):
        m = ts([0.01, 0.07, -0.02])
        np.testing.assert_array_equal(risk_adjusted_irr(m, m).values, 0.0)
        np.testing.assert_array_equal(risk_adjusted_irr(m, ts([0, 0, 0])).values, m.values)

    def test_misaligned(self):
        with pytest.raises(AlignmentError):
            risk_adjusted_irr(ts([0.05, 0.05]), ts([0.03, 0.03], START + 1))


class TestExpUtility:
    def test_values(self):
        u = exp_utility(ts([0.0, 0.05, -0.05]), 20.0).values
        assert u[0] == 1.0
        assert u[1] == pytest.approx(2.718282, abs=1e-6)
        assert u[2] == pytest.approx(0.367879, abs=1e-6)

    def test_exponent_guard(self):
        with pytest.raises(ValueError, match="units"):
            exp_utility(ts([3.0]), 20.0)

    def test_kappa_positive(self):
        with pytest.raises(ValueError):
            exp_utility(ts([0.0]), 0.0)


class TestValueFunction:
    def test_anchors(self):
        assert value_function(0.0) == 0.0
        assert value_function(1.0) == 1.0
        assert value_function(-1.0) == -2.25
        assert value_function(2.0) == pytest.approx(1.8404, abs=1e-4)

    def test_vectorised(self):
        np.testing.assert_array_equal(value_function(np.array([-1.0, 0.0, 1.0])), [-2.25, 0.0, 1.0])

    @given(positive, st.floats(0.05, 1.0), st.floats(1.0, 5.0))
    def test_loss_aversion(self, x, alpha, lam):
        p = BehavioralParams(alpha=alpha, lam=lam)
        gain, loss = value_function(x, p), value_function(-x, p)
        assert loss == pytest.approx(-lam * gain, rel=1e-12)
        if lam > 1:
            assert abs(loss) > abs(gain)

    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
    def test_strictly_increasing(self, a, b):
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        assert value_function(lo) < value_function(hi)

    def test_continuous_at_zero(self):
        eps = np.array([1e-12, -1e-12])
        assert np.all(np.abs(value_function(eps)) < 1e-9)


class TestProspectUtility:
    def test_constant(self):
        np.testing.assert_array_equal(prospect_utility(ts([3.0] * 5)).values, 3.0)

    def test_cut_gives_spike_then_slump(self):
        big_u = prospect_utility(ts([2, 2, 1, 1])).values
        assert big_u[1] == pytest.approx(4.25, abs=1e-12)
        assert big_u[2] == pytest.approx(-1.25, abs=1e-12)
        assert big_u[0] == 2.0 and big_u[3] == 1.0

    def test_announced_gain_delays(self):
        big_u = prospect_utility(ts([1, 1, 2, 2])).values
        assert big_u[1] == pytest.approx(0.0, abs=1e-12)
        assert big_u[2] == pytest.approx(3.0, abs=1e-12)

    def test_too_short(self):
        with pytest.raises(ValueError):
            prospect_utility(ts([1.0]))

    @given(utility_paths)
    def test_boundaries_use_zero_change(self, u):
        fwd, back = utility_changes(ts(u))
        assert fwd[-1] == 0.0 and back[0] == 0.0

    @given(utility_paths)
    def test_forward_changes_telescope(self, u):
        fwd, back = utility_changes(ts(u))
        assert math.fsum(fwd) == pytest.approx(u[-1] - u[0], abs=1e-12 * max(1.0, np.abs(u).max()) * len(u))
        np.testing.assert_array_equal(fwd[:-1], back[1:])

    @given(utility_paths.filter(lambda u: len(u) >= 3))
    def test_linear_reduction(self, u):
        big_u = prospect_utility(ts(u), LINEAR).values
        expected = 3 * u[1:-1] - u[2:] - u[:-2]
        np.testing.assert_allclose(big_u[1:-1], expected, rtol=0, atol=1e-12 * np.abs(u).max() * 4)


class TestDeployment:
    def test_clamped(self):
        np.testing.assert_array_equal(deployment(ts([-1, 0, 2]), 10.0, clamp=True).values, [0, 0, 20])

    def test_scale_one_identity(self):
        np.testing.assert_array_equal(deployment(ts([0.5, 3.0]), 1.0, clamp=True).values, [0.5, 3.0])

    def test_proportional(self):
        d = deployment(ts([1.0, math.e]), 7.5, clamp=False).values
        np.testing.assert_array_equal(d, [7.5, 7.5 * math.e])

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            deployment(ts([1.0]), 0.0, clamp=True)

    @given(arrays(float, st.integers(2, 40), elements=st.floats(-0.2, 0.2)), st.floats(0.1, 1.0), st.floats(1.0, 4.0))
    def test_clamped_prospect_never_negative(self, pi, alpha, lam):
        p = BehavioralParams(alpha=alpha, lam=lam)
        big_u = prospect_utility(exp_utility(ts(pi), p.kappa), p)
        assert np.all(deployment(big_u, 3.0, clamp=True).values >= 0)
