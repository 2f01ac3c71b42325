"""Exact small-chain evolution of charge-conserving Floquet brickwork circuits.

One period applies the even-bond layer and then the odd-bond layer of a
fixed two-site gate exp(i H).  The same machinery drives the sampled
block-diagonal random gates used for noisy-circuit comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field


import numpy as np

from . import qop
from .seeding import trajectory_rng

__all__ = [
    "FloquetParams",
    "MODEL_TABLE",
    "build_gate",
    "sample_u1_gate",
    "haar_unitary_2x2",
    "CorrelatorResult",
    "charged_correlator",
    "StructureFactorResult",
    "structure_factor_zz",
    "noisy_correlator",
    "mu_for_density",
    "gibbs_weights",
    "brickwork_bonds",
]

MODEL_TABLE = {
    "A": (0.393, 0.177, 0.333, 0.3),
    "B": (0.393, 0.293, 0.0, 0.2),
    "C": (0.589, 0.514, 0.0, 0.45),
}


@dataclass(frozen=True)
class FloquetParams:
    """Gate couplings: hopping J, anisotropy Delta, its staggering delta,
    staggered field g.  Tags A, B, C select the reference parameter sets."""

    J: float
    Delta: float
    delta: float
    g: float
    model: str = "custom"

    @classmethod
    def from_model(cls, tag: str) -> "FloquetParams":
        if tag not in MODEL_TABLE:
            raise ValueError(f"unknown model tag {tag!r}; valid: A|B|C|custom")
        return cls(*MODEL_TABLE[tag], model=tag)


def build_gate(params: FloquetParams, bond_index: int) -> np.ndarray:
    """Two-site unitary exp(i H) on bond (x, x+1) with x = bond_index.

    The staggering signs follow (-1)^bond_index.  Basis: uu, ud, du, dd.
    The exponential is taken by eigendecomposition of the Hermitian H.
    """
    sign = -1.0 if bond_index % 2 else 1.0
    dd = params.Delta * (1.0 + params.delta * sign)
    gb = sign * params.g
    h = np.array(
        [
            [dd, 0.0, 0.0, 0.0],
            [0.0, -dd + 2.0 * gb, 2.0 * params.J, 0.0],
            [0.0, 2.0 * params.J, -dd - 2.0 * gb, 0.0],
            [0.0, 0.0, 0.0, dd],
        ]
    )
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def haar_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed U(2) via Ginibre QR with phase correction."""
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_u1_gate(rng: np.random.Generator) -> np.ndarray:
    """Random block-diagonal two-site gate conserving total magnetization:
    independent phases on uu and dd, a Haar U(2) on the ud/du block."""
    gate = np.zeros((4, 4), dtype=complex)
    gate[0, 0] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    gate[3, 3] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    gate[1:3, 1:3] = haar_unitary_2x2(rng)
    return gate


def brickwork_bonds(length: int, parity: str, boundary: str) -> list[tuple[int, int]]:
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    if boundary == "periodic" and length % 2:
        raise ValueError("periodic pairing needs even length")
    start = 0 if parity == "even" else 1
    bonds = [(x, x + 1) for x in range(start, length - 1, 2)]
    if boundary == "periodic" and parity == "odd":
        bonds.append((length - 1, 0))
    return bonds


def _period_layers(
    L: int, params: FloquetParams, boundary: str
) -> list[list[tuple[int, int, np.ndarray]]]:
    layers = []
    for parity in ("even", "odd"):
        bonds = brickwork_bonds(L, parity, boundary)
        layers.append([(i, j, build_gate(params, i)) for i, j in bonds])
    return layers


def mu_for_density(n: float) -> float:
    """Chemical potential with single-site up-spin probability n."""
    if not 0 < n < 1:
        raise ValueError("density must lie strictly in (0, 1)")
    return float(np.log(n / (1.0 - n)))


def gibbs_weights(L: int, mu: float) -> np.ndarray:
    """Diagonal of the product Gibbs state exp(mu * sum sz / 2), normalized."""
    charge = qop.charge_of_basis(L)
    p_up = np.exp(mu / 2.0)
    p_dn = np.exp(-mu / 2.0)
    w = p_up**charge * p_dn ** (L - charge)
    return w / w.sum()


@dataclass
class CorrelatorResult:
    """C(x, t) per period with the summed square and optional sampling error."""

    times: np.ndarray
    values: np.ndarray  # complex, shape (t_max + 1, L)
    method: str
    stderr: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def sumsq(self) -> np.ndarray:
        return (np.abs(self.values) ** 2).sum(axis=1)


DENSE_MAX_SITES = 12


def _dense_capacity(L: int) -> None:
    if L > DENSE_MAX_SITES:
        raise ValueError(
            f"dense operator evolution stores 4^L amplitudes; L={L} exceeds "
            f"{DENSE_MAX_SITES} (about {4.0**L:.2e} entries)"
        )


def _trace_sp_x(m: np.ndarray, L: int) -> np.ndarray:
    """Tr(sp_x m) for every site x."""
    out = np.empty(L, dtype=complex)
    for x in range(L):
        rows, cols = qop.raising_matrix_elements(L, x)
        out[x] = m[cols, rows].sum()
    return out


def charged_correlator(
    L: int,
    params: FloquetParams,
    t_max: int,
    mu: float = 0.0,
    method: str = "dense",
    samples: int = 64,
    boundary: str = "periodic",
    seed: int = 0,
) -> CorrelatorResult:
    """C(x, t) = <sp_x(t) sm_0> in the product Gibbs state at chemical
    potential mu (mu = 0 is infinite temperature at half filling).

    dense: evolves sm_0 rho as a 2^L x 2^L matrix, exact.
    typicality: averages over Gibbs-weighted Gaussian random states with a
    reported standard error.
    """
    if method == "dense":
        _dense_capacity(L)
        layers = _period_layers(L, params, boundary)
        rho = gibbs_weights(L, mu)
        rows, cols = qop.raising_matrix_elements(L, 0)
        m = np.zeros((2**L, 2**L), dtype=complex)
        m[cols, rows] = rho[rows]  # sm_0 rho: |down><up| weighted by rho at up
        values = np.empty((t_max + 1, L), dtype=complex)
        values[0] = _trace_sp_x(m, L)
        for t in range(1, t_max + 1):
            for layer in layers:
                for i, j, g in layer:
                    m = qop.conjugate_two_site(m, g, L, i, j)
            values[t] = _trace_sp_x(m, L)
        return CorrelatorResult(
            np.arange(t_max + 1, dtype=float),
            values,
            "dense",
            metadata={"L": L, "mu": mu, "model": params.model, "boundary": boundary},
        )
    if method != "typicality":
        raise ValueError("method must be dense or typicality")
    layers = _period_layers(L, params, boundary)
    rng = trajectory_rng(seed, "floquet:typicality", 0)
    sqrt_rho = np.sqrt(gibbs_weights(L, mu))
    rows, cols = qop.raising_matrix_elements(L, 0)
    acc = np.zeros((t_max + 1, L), dtype=complex)
    acc_sq = np.zeros((t_max + 1, L))
    for _ in range(samples):
        phi = (rng.normal(size=2**L) + 1j * rng.normal(size=2**L)) / np.sqrt(2.0)
        left = sqrt_rho * phi
        right = np.zeros_like(left)
        right[cols] = left[rows]  # sm_0 acting on the weighted state
        sample_vals = np.empty((t_max + 1, L), dtype=complex)
        for t in range(t_max + 1):
            if t > 0:
                for layer in layers:
                    for i, j, g in layer:
                        left = qop.apply_gate_state(left, g, L, i, j)
                        right = qop.apply_gate_state(right, g, L, i, j)
            for x in range(L):
                rx, cx = qop.raising_matrix_elements(L, x)
                sample_vals[t, x] = np.vdot(left[rx], right[cx])
        acc += sample_vals
        acc_sq += np.abs(sample_vals) ** 2
    mean = acc / samples
    var = np.maximum(acc_sq / samples - np.abs(mean) ** 2, 0.0)
    stderr = np.sqrt(var / samples)
    return CorrelatorResult(
        np.arange(t_max + 1, dtype=float),
        mean,
        "typicality",
        stderr=stderr,
        metadata={"L": L, "mu": mu, "model": params.model, "samples": samples},
    )


@dataclass
class StructureFactorResult:
    times: np.ndarray
    values: np.ndarray  # connected <sz_x(t) sz_0>_c, shape (t_max + 1, L)
    variance: np.ndarray
    sum_rule: np.ndarray
    diffusion_constant: float
    fit_window: tuple[int, int]


def structure_factor_zz(
    L: int,
    params: FloquetParams,
    t_max: int,
    boundary: str = "periodic",
    fit_window: tuple[int, int] | None = None,
) -> StructureFactorResult:
    """Connected <sz_x(t) sz_0> at infinite temperature, its spatial variance
    per period, and the diffusion constant from the variance slope / 2."""
    _dense_capacity(L)
    layers = _period_layers(L, params, boundary)
    dim = 2**L
    basis = np.arange(dim)
    z_signs = [1.0 - 2.0 * ((basis >> (L - 1 - x)) & 1) for x in range(L)]
    m = np.zeros((dim, dim), dtype=complex)
    np.fill_diagonal(m, z_signs[0])
    x_rel = ((np.arange(L) - 0 + L // 2) % L) - L // 2  # minimal image around 0
    values = np.empty((t_max + 1, L))
    for t in range(t_max + 1):
        if t > 0:
            for layer in layers:
                for i, j, g in layer:
                    m = qop.conjugate_two_site(m, g, L, i, j)
        diag = np.real(np.diagonal(m))
        values[t] = np.array([(z_signs[x] * diag).sum() for x in range(L)]) / dim
    variance = (values * x_rel[None, :] ** 2).sum(axis=1)
    sum_rule = values.sum(axis=1)
    if fit_window is None:
        fit_window = (max(1, t_max // 6), max(2, t_max // 2))
    lo, hi = min(fit_window[0], t_max), min(fit_window[1], t_max)
    if hi - lo >= 1:
        slope = np.polyfit(np.arange(lo, hi + 1), variance[lo : hi + 1], 1)[0]
    else:
        slope = np.nan
    return StructureFactorResult(
        np.arange(t_max + 1, dtype=float),
        values,
        variance,
        sum_rule,
        float(slope / 2.0),
        fit_window,
    )


def _dephase_damping(L: int, gamma_z: float) -> np.ndarray:
    """Elementwise damping exp(-2 gamma_z * hamming(r xor c)) of one period
    of z-dephasing acting on a Heisenberg-picture operator."""
    basis = np.arange(2**L)
    ham = np.zeros((2**L, 2**L))
    for bit in range(L):
        differs = (((basis[:, None] ^ basis[None, :]) >> bit) & 1).astype(float)
        ham += differs
    return np.exp(-2.0 * gamma_z * ham)


def noisy_correlator(
    L: int,
    params_or_haar: FloquetParams | str,
    t_max: int,
    gamma_z: float,
    method: str = "superoperator",
    num_circuits: int = 100,
    boundary: str = "periodic",
    seed: int = 0,
) -> CorrelatorResult:
    """E|C(x, t)|^2 with one unit of z-dephasing interleaved per period.

    params_or_haar: fixed Floquet couplings, or "haar" to draw fresh
    block-conserving random gates per bond and layer.

    superoperator: applies the exact dephasing map (elementwise damping of
    the operator matrix) after each period; exact per circuit.
    trajectory: unravels the channel into random sz kicks with probability
    p = (1 - exp(-2 gamma_z))/2 per site per period; |C|^2 is estimated
    without bias from products of independent unravelings.
    """
    if L > 7 and method == "superoperator" and gamma_z > 0:
        raise ValueError("superoperator dephasing is limited to L <= 7")
    _dense_capacity(L)
    haar = isinstance(params_or_haar, str)
    if haar and params_or_haar != "haar":
        raise ValueError("string gate spec must be 'haar'")
    rng = trajectory_rng(seed, "floquet:noisy", 0)
    dim = 2**L
    rows0, cols0 = qop.raising_matrix_elements(L, 0)
    damping = _dephase_damping(L, gamma_z) if gamma_z > 0 else None
    p_kick = 0.5 * (1.0 - np.exp(-2.0 * gamma_z))
    fixed_layers = None if haar else _period_layers(L, params_or_haar, boundary)
    bonds = [brickwork_bonds(L, "even", boundary), brickwork_bonds(L, "odd", boundary)]
    basis = np.arange(dim)
    z_sign_bits = [1.0 - 2.0 * ((basis >> (L - 1 - x)) & 1) for x in range(L)]

    acc = np.zeros((t_max + 1, L))
    acc_sq = np.zeros((t_max + 1, L))
    n_rep = num_circuits if (haar or method == "trajectory") else 1
    for _ in range(n_rep):
        circuit = (
            [[(i, j, sample_u1_gate(rng)) for i, j in layer] for layer in bonds * t_max]
            if haar
            else None
        )
        if method == "superoperator":
            m = np.zeros((dim, dim), dtype=complex)
            m[rows0, cols0] = 1.0  # sp_0, infinite-temperature insertion
            vals = np.empty((t_max + 1, L), dtype=complex)
            vals[0] = trace_all_from_sp(m, L, dim)
            for t in range(1, t_max + 1):
                layer_list = (
                    circuit[2 * (t - 1) : 2 * t] if haar else fixed_layers
                )
                for layer in layer_list:
                    for i, j, g in layer:
                        m = qop.conjugate_two_site(m, g, L, i, j)
                if damping is not None:
                    m = m * damping
                vals[t] = trace_all_from_sp(m, L, dim)
            acc += np.abs(vals) ** 2
            acc_sq += np.abs(vals) ** 4
        else:
            pair_vals = []
            for _ in range(2):
                m = np.zeros((dim, dim), dtype=complex)
                m[rows0, cols0] = 1.0
                vals = np.empty((t_max + 1, L), dtype=complex)
                vals[0] = trace_all_from_sp(m, L, dim)
                for t in range(1, t_max + 1):
                    layer_list = (
                        circuit[2 * (t - 1) : 2 * t] if haar else fixed_layers
                    )
                    for layer in layer_list:
                        for i, j, g in layer:
                            m = qop.conjugate_two_site(m, g, L, i, j)
                    if p_kick > 0:
                        kicks = rng.random(L) < p_kick
                        for x in np.nonzero(kicks)[0]:
                            sign = z_sign_bits[x]
                            m = m * sign[:, None] * sign[None, :]
                    vals[t] = trace_all_from_sp(m, L, dim)
                pair_vals.append(vals)
            prod = np.real(pair_vals[0] * np.conj(pair_vals[1]))
            acc += prod
            acc_sq += prod**2
    mean = acc / n_rep
    var = np.maximum(acc_sq / n_rep - mean**2, 0.0)
    stderr = np.sqrt(var / n_rep) if n_rep > 1 else None
    return CorrelatorResult(
        np.arange(t_max + 1, dtype=float),
        mean.astype(complex),
        f"noisy-{method}",
        stderr=stderr,
        metadata={
            "L": L,
            "gamma_z": gamma_z,
            "gates": "haar" if haar else params_or_haar.model,
            "num_circuits": n_rep,
        },
    )


def trace_all_from_sp(m: np.ndarray, L: int, dim: int) -> np.ndarray:
    """C(x) = Tr(sm_x m)/dim for the Heisenberg-evolved sp insertion."""
    out = np.empty(L, dtype=complex)
    for x in range(L):
        rx, cx = qop.raising_matrix_elements(L, x)
        out[x] = m[rx, cx].sum()
    return out / dim
