"""Classical stochastic gas with a dissipatively spectating quantum magnon.

Ballistic point particles on a ring carry momenta k with velocities sin(k)
and redraw k whenever two particles cross.  A single-particle wavefunction
rides on the same ring: each timestep it is propagated by a Bessel-function
hopping kernel and then damped site by site as exp(-gamma * n(x)) by the
instantaneous gas occupation.  The ensemble-averaged norm of the
wavefunction is the survival probability P(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import TimeSeries
from .seeding import trajectory_rng

__all__ = [
    "ParticleGas",
    "MagnonState",
    "MagnonConfig",
    "sample_gas",
    "advance_gas",
    "coarse_density",
    "bessel_kernel",
    "bessel_propagate",
    "dephase",
    "survival_probability",
    "density_correlator",
    "current_autocorrelation",
]

RNG_TAG = "gasmagnon"


@dataclass
class ParticleGas:
    """Positions in [0, L) and momenta in [-pi, pi) of the ring gas."""

    positions: np.ndarray
    momenta: np.ndarray
    length: float

    def __post_init__(self) -> None:
        self.positions = np.asarray(self.positions, dtype=float)
        self.momenta = np.asarray(self.momenta, dtype=float)
        if self.positions.shape != self.momenta.shape:
            raise ValueError("positions and momenta must align")

    @property
    def velocities(self) -> np.ndarray:
        return np.sin(self.momenta)

    @property
    def count(self) -> int:
        return self.positions.size


@dataclass
class MagnonState:
    """Complex amplitudes on the ring; the cached norm is sum |psi|^2."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class MagnonConfig:
    """Parameters of the survival-probability experiment."""

    length: int = 256
    density: float = 0.5
    gamma: float = 1.0
    dt: float = 1.0
    t_max: int = 300
    samples: int = 100_000
    seed: int = 0
    batch_size: int = 1024

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.samples < 1:
            raise ValueError("need at least one trajectory")
        if self.length < 2 or self.t_max < 0 or self.dt <= 0:
            raise ValueError("invalid geometry")


def sample_gas(config: MagnonConfig, rng: np.random.Generator) -> ParticleGas:
    """Equilibrium draw: uniform positions, uniform momenta."""
    n_particles = int(round(config.density * config.length))
    if config.density <= 0 or n_particles < 1:
        raise ValueError("density must give at least one particle")
    pos = rng.uniform(0.0, config.length, size=n_particles)
    k = rng.uniform(-np.pi, np.pi, size=n_particles)
    return ParticleGas(pos, k, float(config.length))


def _batched_advance(
    pos: np.ndarray,
    k: np.ndarray,
    length: float,
    dt: float,
    resample_draws: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Advance a (batch, particles) gas by dt; redraw momenta of crossed pairs.

    `resample_draws` supplies one uniform [-pi, pi) value per particle; it is
    consumed only where a collision happened, so the stream layout does not
    depend on the collision history.  Returns (pos, k, collided_mask).
    """
    b, m = pos.shape
    v = np.sin(k)
    order = np.argsort(pos, axis=1, kind="stable")
    p_s = np.take_along_axis(pos, order, axis=1)
    v_s = np.take_along_axis(v, order, axis=1)
    collided_s = np.zeros((b, m), dtype=bool)
    # Pairs can cross only if their gap is below the maximal relative drift.
    max_drift = 2.0 * dt
    shift = 1
    while shift < m:
        p_n = np.roll(p_s, -shift, axis=1)
        v_n = np.roll(v_s, -shift, axis=1)
        gap = p_n - p_s
        gap[:, m - shift:] += length
        if gap.min() > max_drift:
            break
        crossed = (v_s - v_n) * dt > gap
        collided_s |= crossed
        collided_s |= np.roll(crossed, shift, axis=1)
        shift += 1
    collided = np.zeros_like(collided_s)
    np.put_along_axis(collided, order, collided_s, axis=1)
    new_pos = np.mod(pos + v * dt, length)
    new_k = np.where(collided, resample_draws, k)
    return new_pos, new_k, collided


def advance_gas(
    gas: ParticleGas, dt: float, rng: np.random.Generator
) -> tuple[ParticleGas, np.ndarray]:
    """Advance positions by sin(k) * dt; resample momenta of crossing pairs.

    Any pair whose cyclic order swapped during the interval counts as one
    collision and both partners redraw k independently.  Returns the new gas
    and the collided mask.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    draws = rng.uniform(-np.pi, np.pi, size=gas.count)
    pos, k, collided = _batched_advance(
        gas.positions[None, :], gas.momenta[None, :], gas.length, dt, draws[None, :]
    )
    return ParticleGas(pos[0], k[0], gas.length), collided[0]


def coarse_density(gas: ParticleGas, length: int) -> np.ndarray:
    """Integer occupation per unit cell: particle positions floor-binned."""
    sites = np.floor(gas.positions).astype(int) % length
    return np.bincount(sites, minlength=length).astype(float)


def bessel_kernel(dt: float, cutoff_tol: float = 1e-14) -> np.ndarray:
    """Hopping amplitudes i^m J_m(dt) for m = 0..cutoff, by downward recurrence.

    The cutoff is the first order with |J_cutoff(dt)| below cutoff_tol.
    Miller's algorithm: run the two-term recurrence downward from well above
    the cutoff and normalize with J_0 + 2 sum J_2m = 1.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    # generous starting order: J_m(x) decays super-exponentially past m ~ x
    start = int(max(20, np.ceil(1.4 * dt + 36.0 * dt ** (1.0 / 3.0) + 20)))
    j = np.zeros(start + 2)
    j[start + 1] = 0.0
    j[start] = 1e-300
    for m in range(start, 0, -1):
        j[m - 1] = (2.0 * m / dt) * j[m] - j[m + 1]
        if abs(j[m - 1]) > 1e250:
            j[: m + 1] = 0.0
            j[m - 1] = 1e-300
    norm = j[0] + 2.0 * j[2::2].sum()
    j = j[: start + 1] / norm
    cutoff = int(np.argmax(np.abs(j) < cutoff_tol))
    if cutoff == 0:
        cutoff = start
    orders = np.arange(cutoff + 1)
    return (1j**orders) * j[: cutoff + 1]


def _ring_transfer(length: int, dt: float) -> np.ndarray:
    """FFT of the ring hopping kernel (circular convolution multiplier)."""
    half = bessel_kernel(dt)
    cutoff = half.size - 1
    if cutoff >= length // 2:
        # small ring: exact momentum-space product of the same unitary
        kk = 2.0 * np.pi * np.arange(length) / length
        return np.exp(1j * dt * np.cos(kk))
    kern = np.zeros(length, dtype=complex)
    kern[: cutoff + 1] = half
    # J_{-m} = (-1)^m J_m makes i^{-m} J_{-m} = i^m J_m: symmetric kernel
    kern[length - cutoff:] += half[1:][::-1]
    return np.fft.fft(kern)


_transfer_cache: dict[tuple[int, float], np.ndarray] = {}


def _cached_transfer(length: int, dt: float) -> np.ndarray:
    key = (length, float(dt))
    if key not in _transfer_cache:
        _transfer_cache[key] = _ring_transfer(length, dt)
    return _transfer_cache[key]


def bessel_propagate(psi: MagnonState, dt: float) -> MagnonState:
    """Hop on the ring: psi_x <- sum_m i^m J_m(dt) psi_{x-m} (norm preserving)."""
    transfer = _cached_transfer(psi.amplitudes.size, dt)
    out = np.fft.ifft(np.fft.fft(psi.amplitudes) * transfer)
    return MagnonState(out)


def dephase(psi: MagnonState, occupation: np.ndarray, gamma: float) -> MagnonState:
    """Damp site amplitudes by exp(-gamma * n(x))."""
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    return MagnonState(psi.amplitudes * np.exp(-gamma * np.asarray(occupation)))


def _batch_survival(
    config: MagnonConfig, first_index: int, batch: int
) -> tuple[np.ndarray, np.ndarray]:
    """Evolve `batch` trajectories; return per-step sums of P and P^2."""
    L, dt, gamma = config.length, config.dt, config.gamma
    m = int(round(config.density * L))
    rngs = [trajectory_rng(config.seed, RNG_TAG, first_index + i) for i in range(batch)]
    pos = np.empty((batch, m))
    k = np.empty((batch, m))
    for i, rng in enumerate(rngs):
        draw = rng.uniform(0.0, 1.0, size=2 * m)
        pos[i] = draw[:m] * L
        k[i] = draw[m:] * 2.0 * np.pi - np.pi
    psi = np.zeros((batch, L), dtype=complex)
    psi[:, L // 2] = 1.0
    transfer = _cached_transfer(L, dt)
    rows = np.repeat(np.arange(batch), m)
    p_sum = np.zeros(config.t_max + 1)
    p_sq = np.zeros(config.t_max + 1)
    p_sum[0] = batch
    p_sq[0] = batch
    for t in range(1, config.t_max + 1):
        psi = np.fft.ifft(np.fft.fft(psi, axis=1) * transfer[None, :], axis=1)
        draws = np.empty((batch, m))
        for i, rng in enumerate(rngs):
            draws[i] = rng.uniform(-np.pi, np.pi, size=m)
        pos, k, _ = _batched_advance(pos, k, float(L), dt, draws)
        sites = np.floor(pos).astype(int) % L
        occ = np.bincount((rows * L + sites.ravel()), minlength=batch * L).reshape(batch, L)
        psi *= np.exp(-gamma * occ)
        p_traj = np.einsum("ij,ij->i", psi.real, psi.real) + np.einsum(
            "ij,ij->i", psi.imag, psi.imag
        )
        p_sum[t] = p_traj.sum()
        p_sq[t] = (p_traj**2).sum()
    return p_sum, p_sq


def survival_probability(
    config: MagnonConfig,
    progress: Callable[[int, int], None] | None = None,
    n_workers: int = 1,
) -> TimeSeries:
    """Monte Carlo mean of the magnon norm over gas trajectories.

    Each trajectory starts from a fresh equilibrium gas and a delta-function
    magnon at the ring center, then repeats propagate / advance / dephase.
    Trajectory i has its own random stream keyed by (seed, i); per-batch
    partial sums are reduced in index order, so the result is bit-identical
    for a fixed batch size no matter how many workers run.
    """
    starts = list(range(0, config.samples, config.batch_size))
    jobs = [(s, min(config.batch_size, config.samples - s)) for s in starts]
    partials: list[tuple[np.ndarray, np.ndarray]] = []
    if n_workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            futures = [pool.submit(_batch_survival, config, s, b) for s, b in jobs]
            for i, fut in enumerate(futures):
                partials.append(fut.result())
                if progress is not None:
                    progress(i + 1, len(jobs))
    else:
        for i, (s, b) in enumerate(jobs):
            partials.append(_batch_survival(config, s, b))
            if progress is not None:
                progress(i + 1, len(jobs))
    total = np.sum([p for p, _ in partials], axis=0)
    total_sq = np.sum([q for _, q in partials], axis=0)
    n = config.samples
    mean = total / n
    var = np.maximum(total_sq / n - mean**2, 0.0)
    stderr = np.sqrt(var / n)
    times = np.arange(config.t_max + 1, dtype=float) * config.dt
    meta = {
        "module": "gasmagnon",
        "length": config.length,
        "density": config.density,
        "gamma": config.gamma,
        "dt": config.dt,
        "samples": config.samples,
        "seed": config.seed,
    }
    return TimeSeries(times, mean, stderr, meta)


def density_correlator(
    config: MagnonConfig,
    lags: list[int],
    n_trajectories: int = 20,
    t_equil: int | None = None,
    t_origins: int | None = None,
) -> dict[int, np.ndarray]:
    """Connected density-density correlator <n(x, t) n(0, 0)> - nbar^2 per lag.

    Averaged over ring positions, over `t_origins` stationary time origins
    within each trajectory, and over trajectories; nbar is the realized
    particle count per site.  The gas is pre-evolved for t_equil steps so
    the momentum distribution reaches its collision-tilted stationary form.
    """
    L = config.length
    if t_equil is None:
        t_equil = int(20.0 / max(config.density, 1e-6))
    horizon = max(lags)
    if t_origins is None:
        t_origins = 2 * horizon
    out = {lag: np.zeros(L) for lag in lags}
    nbar = None
    for traj in range(n_trajectories):
        rng = trajectory_rng(config.seed, RNG_TAG + ":corr", traj)
        gas = sample_gas(config, rng)
        nbar = gas.count / L
        for _ in range(t_equil):
            gas, _ = advance_gas(gas, config.dt, rng)
        spectra = np.empty((horizon + t_origins + 1, L // 2 + 1), dtype=complex)
        spectra[0] = np.fft.rfft(coarse_density(gas, L))
        for t in range(1, horizon + t_origins + 1):
            gas, _ = advance_gas(gas, config.dt, rng)
            spectra[t] = np.fft.rfft(coarse_density(gas, L))
        for lag in lags:
            cross = (
                spectra[lag : lag + t_origins + 1] * np.conj(spectra[: t_origins + 1])
            ).mean(axis=0)
            out[lag] += np.fft.irfft(cross, n=L) / L
    return {lag: out[lag] / n_trajectories - nbar**2 for lag in lags}


def current_autocorrelation(
    config: MagnonConfig,
    t_run: int,
    n_trajectories: int = 100,
    max_lag: int | None = None,
    t_equil: int | None = None,
) -> TimeSeries:
    """Autocorrelation of the total current J(t) = sum_i v_i(t), per site.

    Averaged over time origins (FFT estimator) and trajectories after an
    equilibration stretch; the per-trajectory mean current is subtracted
    before correlating.  The lag-t value is <J(t0 + t) J(t0)> / L.
    """
    L = config.length
    if max_lag is None:
        max_lag = t_run // 4
    if t_equil is None:
        t_equil = int(20.0 / max(config.density, 1e-6))
    acc = np.zeros(max_lag + 1)
    acc_sq = np.zeros(max_lag + 1)
    for traj in range(n_trajectories):
        rng = trajectory_rng(config.seed, RNG_TAG + ":kubo", traj)
        gas = sample_gas(config, rng)
        for _ in range(t_equil):
            gas, _ = advance_gas(gas, config.dt, rng)
        j_series = np.empty(t_run + 1)
        j_series[0] = gas.velocities.sum()
        for t in range(1, t_run + 1):
            gas, _ = advance_gas(gas, config.dt, rng)
            j_series[t] = gas.velocities.sum()
        j_series -= j_series.mean()
        n = j_series.size
        padded = np.concatenate([j_series, np.zeros(n)])
        spec = np.abs(np.fft.rfft(padded)) ** 2
        raw = np.fft.irfft(spec)[: max_lag + 1]
        norm = n - np.arange(max_lag + 1)
        corr = raw / norm / L
        acc += corr
        acc_sq += corr**2
    mean = acc / n_trajectories
    var = np.maximum(acc_sq / n_trajectories - mean**2, 0.0)
    stderr = np.sqrt(var / n_trajectories)
    times = np.arange(max_lag + 1, dtype=float) * config.dt
    return TimeSeries(
        times,
        mean,
        stderr,
        {"module": "gasmagnon", "observable": "current_autocorrelation",
         "density": config.density, "length": L, "trajectories": n_trajectories},
    )
