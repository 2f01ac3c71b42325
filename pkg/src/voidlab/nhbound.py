"""Analytic machinery for the damped-oscillator survival bound.

A particle confined to a slowly filling void sees an imaginary potential
with a flat floor and a quadratic curvature.  The resulting non-normal
operator has an equally spaced complex quasispectrum; its ground value
gives a survival lower bound whose optimum over void sizes produces the
t^(2/3) stretching exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "OscillatorParams",
    "VoidProfile",
    "void_profile",
    "quasispectrum",
    "eigenfunction",
    "discretized_operator",
    "survival_lower_bound",
    "survival_lower_bound_refined",
    "optimal_void",
    "OptimalVoid",
    "subleading_exponent",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Damped-oscillator data: mass, curvature, damping floor.

    When built from a void of size ell at time t, the curvature is
    k = 12 t / ell^4 and the floor is t / ell^2.
    """

    m_star: float
    k: float
    floor: float
    ell: float | None = None
    t: float | None = None

    def __post_init__(self) -> None:
        if self.m_star <= 0 or self.k <= 0:
            raise ValueError("m_star and k must be positive")

    @classmethod
    def from_void(cls, t: float, ell: float, m_star: float = 1.0) -> "OscillatorParams":
        if t <= 0 or ell <= 2:
            raise ValueError("need t > 0 and ell > 2")
        return cls(m_star=m_star, k=12.0 * t / ell**4, floor=t / ell**2, ell=ell, t=t)

    @property
    def omega(self) -> complex:
        """Complex frequency exp(-i pi/4) sqrt(k/m*), principal branch."""
        return np.exp(-1j * np.pi / 4.0) * np.sqrt(self.k / self.m_star)


@dataclass
class VoidProfile:
    """Density inside a void of size ell at time t, with its expansion."""

    ell: float
    t: float
    x: np.ndarray
    density: np.ndarray
    floor: float
    curvature: float


def void_profile(ell: float, t: float, n_points: int = 201, margin: float = 1e-3) -> VoidProfile:
    """Two-pole melt profile n(x) = (t/8) [(l/2 + x)^-2 + (l/2 - x)^-2].

    Sampled on x in (-ell/2, ell/2); the returned floor t/ell^2 and
    curvature 12 t/ell^4 are the constant and quadratic expansion
    coefficients about the center.
    """
    if t <= 0 or ell <= 2:
        raise ValueError("need t > 0 and ell > 2")
    half = ell / 2.0
    x = np.linspace(-half * (1 - margin), half * (1 - margin), n_points)
    density = _void_density(x, ell, t)
    return VoidProfile(ell, t, x, density, floor=t / ell**2, curvature=12.0 * t / ell**4)


def _void_density(x: np.ndarray, ell: float, t: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= ell / 2.0):
        raise ValueError("|x| must be below ell/2 (profile poles)")
    return (t / 8.0) * ((ell / 2.0 + x) ** -2 + (ell / 2.0 - x) ** -2)


def quasispectrum(params: OscillatorParams, n_max: int) -> np.ndarray:
    """Eigenvalues lambda_n = omega (2n + 1) - i * floor for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    n = np.arange(n_max + 1)
    return params.omega * (2 * n + 1) - 1j * params.floor


def eigenfunction(params: OscillatorParams, n: int):
    """Evaluator for psi_n(x) ~ exp(-z^2/2) H_n(z), z = e^{-i pi/8} (k m*)^(1/4) x.

    H_n is the Hermite polynomial generated by the raising operator
    z - d/dz; normalization is arbitrary (only shapes are meaningful).
    """
    scale = np.exp(-1j * np.pi / 8.0) * (params.k * params.m_star) ** 0.25
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    herm = np.polynomial.hermite.Hermite(coeffs)

    def psi(x):
        z = scale * np.asarray(x, dtype=complex)
        return np.exp(-(z**2) / 2.0) * herm(z)

    return psi


def discretized_operator(
    params: OscillatorParams, x_max: float, n_grid: int
) -> tuple[np.ndarray, np.ndarray]:
    """Finite-difference matrix of -(1/m*) d^2/dx^2 - i (floor + k x^2).

    Hard walls at +-x_max; second-order central differences.  Returns
    (grid, matrix).
    """
    x = np.linspace(-x_max, x_max, n_grid + 2)[1:-1]
    h = x[1] - x[0]
    main = 2.0 / (params.m_star * h**2) - 1j * (params.floor + params.k * x**2)
    off = -1.0 / (params.m_star * h**2)
    mat = np.diag(main) + off * (np.eye(n_grid, k=1) + np.eye(n_grid, k=-1))
    return x, mat


def survival_lower_bound(t: float, ell: float, m_star: float = 1.0) -> float:
    """Ground-mode bound exp(-sqrt(2k/m*) t - 2 t^2/ell^2) with k = 12 t/ell^4."""
    if t < 0 or ell <= 0:
        raise ValueError("need t >= 0 and ell > 0")
    if t == 0:
        return 1.0
    k = 12.0 * t / ell**4
    return float(np.exp(-np.sqrt(2.0 * k / m_star) * t - 2.0 * t**2 / ell**2))


def survival_lower_bound_refined(t: float, ell: float, m_star: float = 1.0) -> float:
    """Geometric-series refinement: the plain bound divided by 1 - e^{-sqrt(8k/m*) t}."""
    if t <= 0 or ell <= 0:
        raise ValueError("need t > 0 and ell > 0")
    k = 12.0 * t / ell**4
    plain = survival_lower_bound(t, ell, m_star)
    return float(plain / (1.0 - np.exp(-np.sqrt(8.0 * k / m_star) * t)))


@dataclass(frozen=True)
class OptimalVoid:
    ell_star: float
    log_bound: float
    time_exponent: Fraction = Fraction(2, 3)


def optimal_void(t: float, a1: float, a2: float) -> OptimalVoid:
    """Maximize -a1 * ell - a2 * t^2 / ell^2 over the void size ell.

    The optimum is ell* = (2 a2 / a1)^(1/3) t^(2/3) with value
    -(3 / 2^(2/3)) a1^(2/3) a2^(1/3) t^(2/3).
    """
    if a1 <= 0 or a2 <= 0 or t <= 0:
        raise ValueError("a1, a2, t must be positive")
    ell_star = (2.0 * a2 / a1) ** (1.0 / 3.0) * t ** (2.0 / 3.0)
    log_bound = -(3.0 / 2.0 ** (2.0 / 3.0)) * a1 ** (2.0 / 3.0) * a2 ** (1.0 / 3.0) * t ** (2.0 / 3.0)
    return OptimalVoid(ell_star=float(ell_star), log_bound=float(log_bound))


def subleading_exponent(m: int, alpha: float) -> tuple[float, bool]:
    """Time exponent 2 - m/2 - 2*alpha of the x^(2m) correction's integrated weight.

    Returns (exponent, is_subleading) where is_subleading compares against
    the leading contribution's exponent 2 - 2*alpha.
    """
    if m < 1:
        raise ValueError("order m must be >= 1")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    exponent = 2.0 - m / 2.0 - 2.0 * alpha
    return exponent, exponent < 2.0 - 2.0 * alpha
