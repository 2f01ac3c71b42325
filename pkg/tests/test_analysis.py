import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from voidlab import analysis
from voidlab.analysis import TimeSeries


class TestTimeSeries:
    def test_rejects_decreasing_times(self):
        with pytest.raises(ValueError):
            TimeSeries([1.0, 1.0, 2.0], [0.0, 0.0, 0.0])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            TimeSeries([1.0, 2.0], [np.inf, 0.0])


class TestGaussianSmooth:
    def test_constant_preserved(self):
        s = TimeSeries(np.arange(50.0), np.full(50, 3.7))
        out = analysis.gaussian_smooth(s, 2.5)
        np.testing.assert_allclose(out.values, 3.7, rtol=1e-12)

    def test_tiny_width_is_identity(self):
        rng = np.random.default_rng(0)
        s = TimeSeries(np.arange(30.0), rng.normal(size=30))
        out = analysis.gaussian_smooth(s, 1e-4)
        np.testing.assert_allclose(out.values, s.values, atol=1e-12)

    def test_rejects_bad_width(self):
        s = TimeSeries([0.0, 1.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            analysis.gaussian_smooth(s, 0.0)

    def test_metadata_records_width(self):
        s = TimeSeries(np.arange(10.0), np.ones(10))
        out = analysis.gaussian_smooth(s, 2.5)
        assert out.metadata["smoothing_width"] == 2.5

    @given(st.integers(0, 1000))
    @settings(max_examples=20, deadline=None)
    def test_linearity(self, seed):
        rng = np.random.default_rng(seed)
        t = np.arange(40.0)
        a, b = rng.normal(size=40), rng.normal(size=40)
        w = 3.0
        sa = analysis.gaussian_smooth(TimeSeries(t, a), w).values
        sb = analysis.gaussian_smooth(TimeSeries(t, b), w).values
        sab = analysis.gaussian_smooth(TimeSeries(t, 2 * a - 3 * b), w).values
        np.testing.assert_allclose(sab, 2 * sa - 3 * sb, atol=1e-10)

    def test_nonuniform_grid_constant(self):
        t = np.array([0.0, 1.0, 2.5, 3.1, 7.0])
        s = TimeSeries(t, np.full(5, 1.3))
        out = analysis.gaussian_smooth(s, 1.0)
        np.testing.assert_allclose(out.values, 1.3, rtol=1e-12)


class TestStretchExponent:
    def test_pure_stretched_recovers_exponent(self):
        t = np.geomspace(1.0, 1e4, 257)
        p = np.exp(-0.05 * t ** (2.0 / 3.0))
        s = TimeSeries(t, p)
        alpha = analysis.stretch_exponent(s, window=(1.0, 1e4))
        assert np.max(np.abs(alpha.values - 2.0 / 3.0)) < 1e-3

    def test_pure_exponential_gives_one(self):
        t = np.geomspace(1.0, 100.0, 200)
        s = TimeSeries(t, np.exp(-0.01 * t))
        alpha = analysis.stretch_exponent(s)
        assert np.max(np.abs(alpha.values - 1.0)) < 1e-3

    def test_domain_error_lists_indices(self):
        s = TimeSeries([1.0, 2.0, 3.0, 4.0], [0.5, 1.0, 0.2, 0.1])
        with pytest.raises(ValueError, match=r"\[1\]"):
            analysis.stretch_exponent(s)


class TestFitStretched:
    def test_recovers_half(self):
        t = np.geomspace(1.0, 1e4, 100)
        s = TimeSeries(t, np.exp(-0.3 * np.sqrt(t)))
        report = analysis.fit_stretched(s, (1.0, 1e4))
        assert abs(report.alpha - 0.5) < 1e-6
        assert abs(report.amplitude - 0.3) < 1e-6

    def test_exponential_gives_alpha_one(self):
        t = np.geomspace(1.0, 50.0, 64)
        s = TimeSeries(t, np.exp(-0.02 * t))
        report = analysis.fit_stretched(s, (1.0, 50.0))
        assert abs(report.alpha - 1.0) < 1e-6

    @given(st.floats(0.1, 10.0))
    @settings(max_examples=20, deadline=None)
    def test_time_rescaling_leaves_alpha_invariant(self, scale):
        t = np.geomspace(1.0, 1e3, 80)
        values = np.exp(-0.1 * t**0.7)
        a1 = analysis.fit_stretched(TimeSeries(t, values), (t[0], t[-1])).alpha
        a2 = analysis.fit_stretched(
            TimeSeries(scale * t, values), (scale * t[0], scale * t[-1])
        ).alpha
        assert abs(a1 - a2) < 1e-9

    def test_degenerate_window(self):
        t = np.geomspace(1.0, 100.0, 50)
        s = TimeSeries(t, np.exp(-0.1 * t))
        with pytest.raises(ValueError):
            analysis.fit_stretched(s, (200.0, 300.0))


class TestKubo:
    def test_zero_current(self):
        s = TimeSeries(np.arange(100.0), np.zeros(100))
        d, report = analysis.kubo_diffusivity(s, susceptibility=0.5)
        assert d == 0.0

    def test_synthetic_exponential(self):
        tau, c0, chi = 5.0, 2.0, 0.4
        t = np.arange(0.0, 100.0, 0.1)
        corr = c0 * np.exp(-t / tau)
        s = TimeSeries(t, corr, stderr=np.full(t.size, 1e-8))
        d, report = analysis.kubo_diffusivity(s, chi)
        assert abs(d - c0 * tau / chi) / (c0 * tau / chi) < 0.01

    def test_noise_tail_does_not_move_result(self):
        rng = np.random.default_rng(4)
        tau, c0, chi = 4.0, 1.0, 1.0
        t = np.arange(0.0, 60.0, 0.25)
        base = c0 * np.exp(-t / tau) + rng.normal(0, 1e-4, t.size)
        s1 = TimeSeries(t, base, stderr=np.full(t.size, 1e-4))
        d1, r1 = analysis.kubo_diffusivity(s1, chi)
        t2 = np.arange(0.0, 120.0, 0.25)
        tail = rng.normal(0, 1e-4, t2.size - t.size)
        s2 = TimeSeries(t2, np.concatenate([base, tail]),
                        stderr=np.full(t2.size, 1e-4))
        d2, r2 = analysis.kubo_diffusivity(s2, chi)
        assert abs(d1 - d2) <= 3 * (r1.residual + r2.residual + 1e-12)

    def test_no_plateau_raises_with_diagnostics(self):
        t = np.arange(0.0, 50.0, 1.0)
        s = TimeSeries(t, np.ones(50))  # never decays
        with pytest.raises(analysis.KuboPlateauError) as err:
            analysis.kubo_diffusivity(s, 1.0)
        assert isinstance(err.value.running_integral, TimeSeries)


class TestMsd:
    def test_delta_profile(self):
        x = np.arange(-5.0, 6.0)
        vals = np.zeros((3, 11))
        vals[:, 5] = 1.0
        prof = analysis.ProfileSeries([0.0, 1.0, 2.0], x, vals)
        out = analysis.msd(prof)
        np.testing.assert_allclose(out.values, 0.0)

    def test_shifted_delta(self):
        x = np.arange(-5.0, 6.0)
        vals = np.zeros((1, 11))
        vals[0, 7] = 2.0  # x = +2, unnormalized on purpose
        out = analysis.msd(analysis.ProfileSeries([1.0], x, vals))
        np.testing.assert_allclose(out.values, [4.0])

    def test_gaussian_slope(self):
        d_true = 0.7
        times = np.linspace(5.0, 50.0, 10)
        x = np.linspace(-60.0, 60.0, 601)
        vals = np.stack([
            np.exp(-(x**2) / (4 * d_true * t)) / np.sqrt(4 * np.pi * d_true * t)
            for t in times
        ])
        out = analysis.msd(analysis.ProfileSeries(times, x, vals))
        slope = np.polyfit(times, out.values, 1)[0]
        assert abs(slope - 2 * d_true) / (2 * d_true) < 0.01

    def test_zero_sum_slice(self):
        prof = analysis.ProfileSeries([0.0], np.arange(3.0), np.zeros((1, 3)))
        with pytest.raises(ValueError):
            analysis.msd(prof)
