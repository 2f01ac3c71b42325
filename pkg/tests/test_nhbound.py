import numpy as np
import pytest
import scipy.linalg as sla

from voidlab import nhbound


class TestVoidProfile:
    def test_center_value(self):
        prof = nhbound.void_profile(10.0, 50.0, n_points=401)
        center = nhbound._void_density(np.array([0.0]), 10.0, 50.0)[0]
        assert abs(center - 50.0 / 100.0) < 1e-14
        assert abs(prof.floor - 0.5) < 1e-14

    def test_quadratic_coefficient(self):
        ell, t = 14.0, 30.0
        prof = nhbound.void_profile(ell, t)
        x = np.array([1e-4])
        n0 = nhbound._void_density(np.array([0.0]), ell, t)[0]
        n1 = nhbound._void_density(x, ell, t)[0]
        numeric = (n1 - n0) / x[0] ** 2
        assert abs(numeric - prof.curvature) / prof.curvature < 1e-4
        assert abs(prof.curvature - 12.0 * t / ell**4) < 1e-14

    def test_symmetry(self):
        x = np.linspace(0.1, 4.0, 7)
        left = nhbound._void_density(-x, 12.0, 20.0)
        right = nhbound._void_density(x, 12.0, 20.0)
        np.testing.assert_allclose(left, right, rtol=1e-14)

    def test_minimum_at_center(self):
        prof = nhbound.void_profile(12.0, 20.0, n_points=801)
        assert np.all(prof.density >= prof.floor - 1e-12)

    def test_pole_domain_error(self):
        with pytest.raises(ValueError):
            nhbound._void_density(np.array([6.0]), 12.0, 20.0)
        with pytest.raises(ValueError):
            nhbound.void_profile(2.0, 10.0)


class TestQuasispectrum:
    def test_ladder_spacing(self):
        p = nhbound.OscillatorParams(m_star=2.0, k=3.0, floor=1.0)
        lam = nhbound.quasispectrum(p, 6)
        diffs = np.diff(lam)
        np.testing.assert_allclose(diffs, 2.0 * p.omega, rtol=1e-14)

    def test_ground_value_unit_params(self):
        p = nhbound.OscillatorParams(m_star=1.0, k=1.0, floor=0.0)
        lam = nhbound.quasispectrum(p, 0)
        assert abs(lam[0] - np.exp(-1j * np.pi / 4.0)) < 1e-14

    def test_omega_quadrant(self):
        p = nhbound.OscillatorParams(m_star=0.7, k=2.3, floor=0.1)
        assert p.omega.real > 0
        assert p.omega.imag < 0

    def test_finite_difference_oracle(self):
        p = nhbound.OscillatorParams(m_star=1.0, k=1.0, floor=0.7)
        lam = nhbound.quasispectrum(p, 3)
        _, mat = nhbound.discretized_operator(p, x_max=12.0, n_grid=1200)
        ev = np.linalg.eigvals(mat)
        for target in lam:
            err = np.min(np.abs(ev - target)) / abs(target)
            assert err < 0.01

    def test_finite_difference_oracle_void_params(self):
        p = nhbound.OscillatorParams.from_void(t=1e5, ell=40.0)
        lam = nhbound.quasispectrum(p, 3)
        _, mat = nhbound.discretized_operator(p, x_max=18.0, n_grid=1400)
        ev = np.linalg.eigvals(mat)
        for n, target in enumerate(lam):
            idx = np.argmin(np.abs(ev - target))
            assert abs(ev[idx] - target) / abs(target) < 0.01
            osc = ev[idx] + 1j * p.floor
            assert abs(osc - p.omega * (2 * n + 1)) / abs(p.omega * (2 * n + 1)) < 0.01

    def test_convergence_order_at_least_one(self):
        p = nhbound.OscillatorParams(m_star=1.0, k=1.0, floor=0.3)
        target = nhbound.quasispectrum(p, 0)[0]
        errors = []
        for n_grid in (200, 400, 800):
            _, mat = nhbound.discretized_operator(p, x_max=10.0, n_grid=n_grid)
            ev = np.linalg.eigvals(mat)
            errors.append(np.min(np.abs(ev - target)))
        order1 = np.log2(errors[0] / errors[1])
        order2 = np.log2(errors[1] / errors[2])
        assert order1 >= 1.0
        assert order2 >= 1.0

    def test_eigenfunction_shapes(self):
        p = nhbound.OscillatorParams(m_star=1.0, k=1.0, floor=0.0)
        psi0 = nhbound.eigenfunction(p, 0)
        psi1 = nhbound.eigenfunction(p, 1)
        x = np.linspace(-3, 3, 11)
        assert abs(psi1(np.array([0.0]))[0]) < 1e-12  # odd mode vanishes at 0
        assert np.all(np.abs(psi0(x)) > 0)


class TestSurvivalBound:
    def test_t_zero_is_one(self):
        assert nhbound.survival_lower_bound(0.0, 10.0) == 1.0

    def test_in_unit_interval_and_monotone(self):
        ts = np.linspace(0.5, 50.0, 40)
        vals = [nhbound.survival_lower_bound(t, 12.0) for t in ts]
        assert all(0.0 < v <= 1.0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_refinement_direction(self):
        for t, ell in [(1.0, 8.0), (10.0, 12.0), (50.0, 30.0)]:
            plain = nhbound.survival_lower_bound(t, ell)
            refined = nhbound.survival_lower_bound_refined(t, ell)
            assert plain <= refined

    def test_weyl_inequality_on_discretized_propagator(self):
        p = nhbound.OscillatorParams(m_star=1.0, k=1.0, floor=0.5)
        _, mat = nhbound.discretized_operator(p, x_max=8.0, n_grid=160)
        u = sla.expm(-1j * mat * 0.4)
        m = u.copy()
        for _ in range(3):
            sv = np.linalg.svd(m, compute_uv=False)
            ev = np.linalg.eigvals(m)
            assert (sv**2).sum() >= (np.abs(ev) ** 2).sum()
            m = m @ u


class TestOptimalVoid:
    def test_closed_form_example(self):
        opt = nhbound.optimal_void(8.0, 1.0, 1.0)
        assert abs(opt.ell_star - 2.0 ** (1.0 / 3.0) * 4.0) < 1e-12

    def test_grid_search_oracle(self):
        for t, a1, a2 in [(8.0, 1.0, 1.0), (100.0, 0.3, 2.0), (5.0, 4.0, 0.1)]:
            opt = nhbound.optimal_void(t, a1, a2)
            grid = np.linspace(opt.ell_star / 10, opt.ell_star * 10, 400001)
            vals = -a1 * grid - a2 * t**2 / grid**2
            best = grid[np.argmax(vals)]
            assert abs(best - opt.ell_star) / opt.ell_star < 1e-4
            assert vals.max() <= opt.log_bound + 1e-9
            # refine around the optimum for the tight tolerance
            local = np.linspace(best * 0.999, best * 1.001, 200001)
            lv = -a1 * local - a2 * t**2 / local**2
            assert abs(local[np.argmax(lv)] - opt.ell_star) / opt.ell_star < 1e-6

    def test_time_scaling(self):
        o1 = nhbound.optimal_void(3.0, 0.7, 1.1)
        o2 = nhbound.optimal_void(6.0, 0.7, 1.1)
        assert abs(o2.ell_star / o1.ell_star - 2.0 ** (2.0 / 3.0)) < 1e-12
        ratio1 = o1.log_bound / 3.0 ** (2.0 / 3.0)
        ratio2 = o2.log_bound / 6.0 ** (2.0 / 3.0)
        assert abs(ratio1 - ratio2) < 1e-12
        assert o1.time_exponent == o2.time_exponent
        assert float(o1.time_exponent) == pytest.approx(2.0 / 3.0)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            nhbound.optimal_void(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            nhbound.optimal_void(-1.0, 1.0, 1.0)


class TestSubleadingExponent:
    def test_first_order_at_two_thirds(self):
        exponent, sub = nhbound.subleading_exponent(1, 2.0 / 3.0)
        assert abs(exponent - 1.0 / 6.0) < 1e-14
        assert sub

    def test_second_order_vanishes(self):
        exponent, sub = nhbound.subleading_exponent(2, 2.0 / 3.0)
        assert exponent <= 0.0
        assert sub

    def test_half_alpha(self):
        exponent, sub = nhbound.subleading_exponent(1, 0.5)
        assert abs(exponent - 0.5) < 1e-14
        assert sub
