"""Two-species nonlinear lattice gas with density-dependent diffusivity D(n) ~ 1/n.

The model carries a left-moving and a right-moving density on a 1D chain.
One update consists of (i) a ballistic translation of each species by one
site and (ii) a pointwise interaction that exchanges density between the
species while conserving the total density at every site.  A melting
domain wall develops a self-similar tail n ~ eta^-2 in eta = x/sqrt(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "HydroParams",
    "DensityField",
    "init_domain_wall",
    "step",
    "evolve",
    "scaling_profile",
    "density_at_scaled_position",
]


@dataclass(frozen=True)
class HydroParams:
    """Couplings and geometry of the two-species chain.

    lam: intraspecies interaction strength (>= 0)
    sigma: interspecies interaction strength (>= 0)
    length: number of lattice sites (>= 2)
    boundary: "periodic" or "open" (open walls reflect, so mass is conserved)
    """

    lam: float
    sigma: float
    length: int
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.lam < 0 or self.sigma < 0:
            raise ValueError("interaction strengths must be non-negative")
        if self.length < 2:
            raise ValueError("need at least two sites")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"unknown boundary {self.boundary!r}")


@dataclass
class DensityField:
    """Per-site densities of the two species plus the integer step count."""

    n_left: np.ndarray
    n_right: np.ndarray
    time: int = 0

    def __post_init__(self) -> None:
        self.n_left = np.asarray(self.n_left, dtype=float)
        self.n_right = np.asarray(self.n_right, dtype=float)
        if self.n_left.shape != self.n_right.shape or self.n_left.ndim != 1:
            raise ValueError("species arrays must be 1D and equal length")
        if np.any(self.n_left < 0) or np.any(self.n_right < 0):
            raise ValueError("densities must be non-negative")

    @property
    def total(self) -> np.ndarray:
        return self.n_left + self.n_right

    @property
    def mass(self) -> float:
        return float(self.n_left.sum() + self.n_right.sum())

    def copy(self) -> "DensityField":
        return DensityField(self.n_left.copy(), self.n_right.copy(), self.time)


def init_domain_wall(
    params: HydroParams, n_hi: float, n_lo: float, wall: int
) -> DensityField:
    """High density on sites < wall, low density from the wall on.

    Both species start at half the local total density.
    """
    if not 0 <= n_lo <= n_hi:
        raise ValueError("need 0 <= n_lo <= n_hi")
    if not 0 <= wall < params.length:
        raise ValueError(f"wall {wall} outside [0, {params.length})")
    n = np.full(params.length, n_lo, dtype=float)
    n[:wall] = n_hi
    return DensityField(n_left=n / 2, n_right=n / 2, time=0)


def _translate(n_left: np.ndarray, n_right: np.ndarray, boundary: str):
    """Half-step (i): left movers shift one site left, right movers one right."""
    if boundary == "periodic":
        return np.roll(n_left, -1), np.roll(n_right, 1)
    # Reflecting walls: outgoing flux at an edge re-enters as the other species.
    new_left = np.empty_like(n_left)
    new_right = np.empty_like(n_right)
    new_left[:-1] = n_left[1:]
    new_left[-1] = n_right[-1]
    new_right[1:] = n_right[:-1]
    new_right[0] = n_left[0]
    return new_left, new_right


def step(field: DensityField, params: HydroParams) -> DensityField:
    """One full update: translation then the conserving interaction."""
    n_l, n_r = _translate(field.n_left, field.n_right, params.boundary)
    a = params.lam * n_l + params.sigma * n_r
    b = params.lam * n_r + params.sigma * n_l
    new_l = a / (1.0 + a) * n_r + n_l / (1.0 + b)
    new_r = b / (1.0 + b) * n_l + n_r / (1.0 + a)
    return DensityField(new_l, new_r, field.time + 1)


def evolve(
    field: DensityField,
    params: HydroParams,
    t_max: int,
    sample_times: Sequence[int],
) -> Iterator[DensityField]:
    """Yield snapshots at the requested times (sorted, <= t_max).

    Snapshots are yielded as the evolution passes them, so callers can
    stream them to disk instead of keeping the full history in memory.
    """
    samples = list(sample_times)
    if any(t1 >= t2 for t1, t2 in zip(samples, samples[1:])):
        raise ValueError("sample_times must be strictly increasing")
    if samples and (samples[0] < field.time or samples[-1] > t_max):
        raise ValueError("sample_times must lie in [current time, t_max]")
    pending = iter(samples)
    next_sample = next(pending, None)
    current = field.copy()
    while True:
        if next_sample is not None and current.time == next_sample:
            yield current.copy()
            next_sample = next(pending, None)
        if next_sample is None or current.time >= t_max:
            return
        current = step(current, params)


@dataclass
class CollapsedProfile:
    """Density against the rescaled coordinate eta = (x - wall)/sqrt(t)."""

    time: int
    eta: np.ndarray
    density: np.ndarray


@dataclass
class ScalingResult:
    profiles: list[CollapsedProfile]
    tail_slope: float
    tail_window: tuple[float, float]


def scaling_profile(
    snapshots: Iterable[DensityField],
    wall: int,
    eta_window: tuple[float, float] | None = None,
) -> ScalingResult:
    """Collapse snapshots onto eta = (x - wall)/sqrt(t) and fit the tail.

    The tail slope is the least-squares slope of log n against log eta over
    the given window, pooled across snapshots.  Snapshots must share one
    initial condition and have t > 0.
    """
    snaps = list(snapshots)
    if not snaps:
        raise ValueError("need at least one snapshot")
    profiles = []
    for snap in snaps:
        if snap.time <= 0:
            raise ValueError("snapshots must have t > 0")
        x = np.arange(snap.n_left.size, dtype=float) - wall
        keep = x > 0
        eta = x[keep] / np.sqrt(snap.time)
        profiles.append(CollapsedProfile(snap.time, eta, snap.total[keep]))
    if eta_window is None:
        eta_max = max(p.eta.max() for p in profiles)
        eta_window = (3.0, 0.5 * eta_max)
    lo, hi = eta_window
    log_eta, log_n = [], []
    for p in profiles:
        sel = (p.eta >= lo) & (p.eta <= hi) & (p.density > 0)
        log_eta.append(np.log(p.eta[sel]))
        log_n.append(np.log(p.density[sel]))
    le = np.concatenate(log_eta)
    ln = np.concatenate(log_n)
    # an unfittable window (fresh wall, no tail yet) reports nan, not an error
    slope = np.polyfit(le, ln, 1)[0] if le.size >= 2 else np.nan
    return ScalingResult(profiles, float(slope), eta_window)


def density_at_scaled_position(
    snapshots: Iterable[DensityField],
    wall: int,
    c: float,
    exponent: float = 2.0 / 3.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Track n at the moving position x = wall + c * t**exponent.

    Returns (times, densities) with the density linearly interpolated
    between neighboring sites.  Positions beyond the chain are dropped.
    """
    times, values = [], []
    for snap in snapshots:
        if snap.time <= 0:
            continue
        pos = wall + c * snap.time**exponent
        i = int(np.floor(pos))
        if i + 1 >= snap.n_left.size:
            continue
        frac = pos - i
        n = snap.total
        times.append(snap.time)
        values.append((1 - frac) * n[i] + frac * n[i + 1])
    return np.asarray(times, dtype=float), np.asarray(values, dtype=float)
