import numpy as np
import pytest
import scipy.linalg as sla

from voidlab import floquet as fq
from voidlab import qop
from voidlab.seeding import trajectory_rng


def total_sz(L):
    dim = 2**L
    basis = np.arange(dim)
    diag = np.zeros(dim)
    for x in range(L):
        diag += 1.0 - 2.0 * ((basis >> (L - 1 - x)) & 1)
    return diag


class TestBuildGate:
    def test_zero_couplings_identity(self):
        params = fq.FloquetParams(0.0, 0.0, 0.0, 0.0)
        gate = fq.build_gate(params, 0)
        np.testing.assert_allclose(gate, np.eye(4), atol=1e-14)

    def test_unitary(self):
        params = fq.FloquetParams.from_model("A")
        for bond in (0, 1):
            gate = fq.build_gate(params, bond)
            np.testing.assert_allclose(
                gate @ gate.conj().T, np.eye(4), atol=1e-12
            )

    def test_commutes_with_total_sz(self):
        params = fq.FloquetParams.from_model("C")
        sz = np.diag([2.0, 0.0, 0.0, -2.0])
        for bond in (0, 1):
            gate = fq.build_gate(params, bond)
            assert np.abs(gate @ sz - sz @ gate).max() < 1e-12

    def test_matrix_exponential_two_method_oracle(self):
        # eigendecomposition route vs scaling-and-squaring on the same H
        params = fq.FloquetParams.from_model("A")
        for bond in (0, 1):
            sign = -1.0 if bond % 2 else 1.0
            dd = params.Delta * (1.0 + params.delta * sign)
            gb = sign * params.g
            h = np.array(
                [
                    [dd, 0, 0, 0],
                    [0, -dd + 2 * gb, 2 * params.J, 0],
                    [0, 2 * params.J, -dd - 2 * gb, 0],
                    [0, 0, 0, dd],
                ]
            )
            expect = sla.expm(1j * h)
            np.testing.assert_allclose(fq.build_gate(params, bond), expect, atol=1e-12)

    def test_staggering_signs(self):
        params = fq.FloquetParams.from_model("A")
        g0 = fq.build_gate(params, 0)
        g1 = fq.build_gate(params, 1)
        assert not np.allclose(g0, g1)
        g2 = fq.build_gate(params, 2)
        np.testing.assert_allclose(g0, g2, atol=1e-15)

    def test_model_table(self):
        a = fq.FloquetParams.from_model("A")
        assert (a.J, a.Delta, a.delta, a.g) == (0.393, 0.177, 0.333, 0.3)
        b = fq.FloquetParams.from_model("B")
        assert (b.J, b.Delta, b.delta, b.g) == (0.393, 0.293, 0.0, 0.2)
        c = fq.FloquetParams.from_model("C")
        assert (c.J, c.Delta, c.delta, c.g) == (0.589, 0.514, 0.0, 0.45)
        with pytest.raises(ValueError):
            fq.FloquetParams.from_model("D")


class TestSampleU1Gate:
    def test_unitary_and_blocked(self):
        rng = trajectory_rng(0, "test:u1gate", 0)
        sz = np.diag([2.0, 0.0, 0.0, -2.0])
        for _ in range(20):
            gate = fq.sample_u1_gate(rng)
            np.testing.assert_allclose(gate @ gate.conj().T, np.eye(4), atol=1e-12)
            assert np.abs(gate @ sz - sz @ gate).max() < 1e-12
            assert gate[0, 1] == 0 and gate[1, 0] == 0

    def test_center_block_second_moment(self):
        rng = trajectory_rng(1, "test:u1gate", 1)
        n = 100_000
        acc = 0.0
        for _ in range(n):
            gate = fq.sample_u1_gate(rng)
            acc += abs(gate[1, 1]) ** 2
        # E|u11|^2 = 1/2 with per-sample std sqrt(1/12 - ...) < 0.3
        assert abs(acc / n - 0.5) < 3 * 0.3 / np.sqrt(n)


class TestChargedCorrelator:
    def test_initial_value_is_density(self):
        n = 0.2
        res = fq.charged_correlator(6, fq.FloquetParams.from_model("A"), 0,
                                    mu=fq.mu_for_density(n))
        assert res.values[0, 0] == pytest.approx(n, rel=1e-12)
        assert np.abs(res.values[0, 1:]).max() < 1e-14

    def test_light_cone(self):
        L = 12
        res = fq.charged_correlator(L, fq.FloquetParams.from_model("A"), 2, mu=0.0)
        for ti, t in enumerate(res.times.astype(int)):
            for x in range(L):
                dist = min(x, L - x)
                if dist > 2 * t:
                    assert abs(res.values[ti, x]) < 1e-13

    def test_two_site_translation_invariance(self):
        L = 8
        params = fq.FloquetParams.from_model("A")
        layers = fq._period_layers(L, params, "periodic")
        dim = 2**L
        rows0, cols0 = qop.raising_matrix_elements(L, 0)
        m = np.zeros((dim, dim), dtype=complex)
        rho = fq.gibbs_weights(L, 0.0)
        m[cols0, rows0] = rho[rows0]
        rows2, cols2 = qop.raising_matrix_elements(L, 2)
        m2 = np.zeros((dim, dim), dtype=complex)
        m2[cols2, rows2] = rho[rows2]
        for _ in range(3):
            for layer in layers:
                for i, j, g in layer:
                    m = qop.conjugate_two_site(m, g, L, i, j)
                    m2 = qop.conjugate_two_site(m2, g, L, i, j)
        c_from_0 = fq._trace_sp_x(m, L)
        c_from_2 = fq._trace_sp_x(m2, L)
        np.testing.assert_allclose(np.roll(c_from_2, -2), c_from_0, atol=1e-12)

    def test_typicality_matches_dense(self):
        L, t_max = 8, 12
        params = fq.FloquetParams.from_model("A")
        dense = fq.charged_correlator(L, params, t_max, mu=0.0, method="dense")
        typ = fq.charged_correlator(
            L, params, t_max, mu=0.0, method="typicality", samples=192, seed=5
        )
        err = np.maximum(typ.stderr, 1e-9)
        dev = np.abs(typ.values - dense.values) / err
        # a few 3-sigma outliers among ~100 points are expected
        assert np.quantile(dev, 0.95) < 3.0
        assert dev.max() < 5.0

    def test_capacity_error(self):
        with pytest.raises(ValueError):
            fq.charged_correlator(14, fq.FloquetParams.from_model("A"), 1)


class TestStructureFactor:
    def test_initial_connected_value(self):
        res = fq.structure_factor_zz(8, fq.FloquetParams.from_model("A"), 0)
        assert res.values[0, 0] == pytest.approx(1.0)
        assert np.abs(res.values[0, 1:]).max() < 1e-14

    def test_sum_rule_conserved(self):
        res = fq.structure_factor_zz(8, fq.FloquetParams.from_model("B"), 8)
        np.testing.assert_allclose(res.sum_rule, res.sum_rule[0], atol=1e-12)

    def test_variance_grows(self):
        res = fq.structure_factor_zz(10, fq.FloquetParams.from_model("A"), 8)
        assert res.diffusion_constant > 0
        assert res.variance[4] > res.variance[1]


class TestNoisyCorrelator:
    def test_zero_noise_matches_charged_correlator(self):
        L, t_max = 6, 6
        params = fq.FloquetParams.from_model("A")
        clean = fq.charged_correlator(L, params, t_max, mu=0.0)
        noisy = fq.noisy_correlator(L, params, t_max, gamma_z=0.0)
        # noisy tracks |C|^2 with the insertion evolved on the other side,
        # so compare squared magnitudes
        np.testing.assert_allclose(
            np.abs(noisy.values), np.abs(clean.values) ** 2, atol=1e-12
        )

    def test_superoperator_vs_trajectories(self):
        L, t_max, gz = 5, 5, 0.4
        params = fq.FloquetParams.from_model("A")
        exact = fq.noisy_correlator(
            L, params, t_max, gz, method="superoperator", boundary="open"
        )
        traj = fq.noisy_correlator(
            L, params, t_max, gz, method="trajectory", num_circuits=600,
            boundary="open", seed=3,
        )
        err = np.maximum(traj.stderr, 1e-9)
        dev = np.abs(traj.values.real - exact.values.real) / err
        assert np.quantile(dev, 0.95) < 3.0

    def test_haar_noisy_matches_replica_channel(self):
        # sampled noisy circuits against the exact replica + dephasing flow
        from voidlab import replica as rp

        L, t_max, gz = 4, 3, 0.4
        expect = rp.noisy_zsum(L, t_max, gz)
        res = fq.noisy_correlator(L, "haar", t_max, gz, method="superoperator",
                                  num_circuits=800, boundary="open", seed=9)
        sums = res.values.real.sum(axis=1)
        stderr = np.sqrt((res.stderr**2).sum(axis=1))
        dev = np.abs(sums - expect) / np.maximum(stderr, 1e-12)
        assert dev[1:].max() < 3.5

    def test_gibbs_weights_density_map(self):
        L = 6
        for n in (0.1, 0.5, 0.9):
            w = fq.gibbs_weights(L, fq.mu_for_density(n))
            charge = qop.charge_of_basis(L)
            assert (w * charge).sum() / L == pytest.approx(n, rel=1e-12)
