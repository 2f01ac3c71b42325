"""Two-replica transfer matrix for charge-conserving random brickwork circuits.

Averaging U (x) U* (x) U (x) U* over one layer of two-site gates projects the
four-contour operator space onto a six-state-per-site subspace: the four
projector pairs (P_s, P_s') and the two bound charged pairs (sp, sm) and
(sm, sp).  Powers of the resulting transfer matrix propagate the circuit
average of |<sp_x(t) sm_0>|^2 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass


import numpy as np

from . import qop
from .floquet import sample_u1_gate
from .seeding import trajectory_rng

__all__ = [
    "N_LOCAL",
    "CHARGED_CODES",
    "local_operator_pair",
    "TwoSiteTransfer",
    "build_two_site_transfer",
    "ReplicaVector",
    "identity_state",
    "charged_insertion_state",
    "polarized_walker_state",
    "void_vector_state",
    "brickwork_bonds",
    "apply_brickwork",
    "dephasing_layer",
    "second_moment",
    "second_moment_profile",
    "haar_oracle",
    "HaarEstimate",
    "pair_walk_distribution",
    "walk_diffusivity",
    "void_bound",
    "VoidBound",
    "void_summand",
    "NORMALIZATION",
]

N_LOCAL = 6
CHARGED_CODES = (4, 5)

# Constant relating the raw transfer-matrix contraction to the sampled
# circuit average; pinned against the sampling estimate at L=4, t in {0, 1}.
NORMALIZATION = 1.0

_P_UP = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_P_DN = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
_SP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |up><down|
_SM = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

_LOCAL_PAIRS = (
    (_P_UP, _P_UP),
    (_P_UP, _P_DN),
    (_P_DN, _P_UP),
    (_P_DN, _P_DN),
    (_SP, _SM),
    (_SM, _SP),
)


def local_operator_pair(code: int) -> tuple[np.ndarray, np.ndarray]:
    """The (slot-1, slot-2) single-site operators of one basis code."""
    return _LOCAL_PAIRS[code]


@dataclass(frozen=True)
class TwoSiteTransfer:
    """36x36 bond transfer matrix; also exposed as a (6,6,6,6) tensor."""

    matrix: np.ndarray

    @property
    def tensor(self) -> np.ndarray:
        return self.matrix.reshape(6, 6, 6, 6)


def _bond_vectors() -> list[tuple[float, np.ndarray, np.ndarray]]:
    """The projector decomposition: (weight, ket, bra) triples in the 36 basis."""

    def basis(a: int, b: int) -> np.ndarray:
        v = np.zeros(36)
        v[6 * a + b] = 1.0
        return v

    def vec(*pairs: tuple[int, int]) -> np.ndarray:
        v = np.zeros(36)
        for a, b in pairs:
            v += basis(a, b)
        return v

    terms: list[tuple[float, np.ndarray, np.ndarray]] = []
    # fully aligned projector pairs, weight 1
    for c in range(4):
        v = basis(c, c)
        terms.append((1.0, v, v))
    # aligned charged pairs: both replica slots carry the same two-site
    # charge-2 operator, whose block phases cancel between the slots, so
    # the gate average leaves these states fixed
    for c in (4, 5):
        v = basis(c, c)
        terms.append((1.0, v, v))
    # one-flip and bound-pair symmetric vectors, weight 1/2 (norm^2 = 2)
    plus = [
        vec((0, 1), (1, 0)),
        vec((2, 3), (3, 2)),
        vec((0, 2), (2, 0)),
        vec((1, 3), (3, 1)),
    ]
    minus = [
        vec((0, 5), (5, 0)),
        vec((3, 4), (4, 3)),
        vec((0, 4), (4, 0)),
        vec((3, 5), (5, 3)),
    ]
    for v in plus + minus:
        terms.append((0.5, v, v))
    # the two-flip block mixes the projector and bound-pair channels
    i_plus = vec((0, 3), (3, 0), (1, 2), (2, 1))
    i_minus = vec((0, 3), (3, 0), (4, 5), (5, 4))
    terms.append((1.0 / 3.0, i_plus, i_plus))
    terms.append((1.0 / 3.0, i_minus, i_minus))
    terms.append((-1.0 / 6.0, i_plus, i_minus))
    terms.append((-1.0 / 6.0, i_minus, i_plus))
    return terms


def build_two_site_transfer() -> TwoSiteTransfer:
    """Assemble the bond transfer matrix from its projector decomposition."""
    mat = np.zeros((36, 36))
    for w, ket, bra in _bond_vectors():
        mat += w * np.outer(ket, bra)
    return TwoSiteTransfer(mat)


_TRANSFER = None


def _transfer_tensor() -> np.ndarray:
    global _TRANSFER
    if _TRANSFER is None:
        _TRANSFER = build_two_site_transfer()
    return _TRANSFER.tensor


DENSE_MAX_SITES = 9


@dataclass
class ReplicaVector:
    """Coefficients over the six-per-site product basis.

    Dense backend: a (6,)*L array.  Sparse backend: a dict mapping site-code
    tuples to coefficients (useful when the initial support is small, e.g.
    polarized backgrounds).  `prefactor` scales every coefficient.
    """

    length: int
    dense: np.ndarray | None = None
    sparse: dict | None = None
    prefactor: float = 1.0

    def __post_init__(self) -> None:
        if self.length < 2:
            raise ValueError("chain length must be >= 2")
        if (self.dense is None) == (self.sparse is None):
            raise ValueError("exactly one backend must be set")

    @property
    def backend(self) -> str:
        return "dense" if self.dense is not None else "sparse"

    def copy(self) -> "ReplicaVector":
        return ReplicaVector(
            self.length,
            None if self.dense is None else self.dense.copy(),
            None if self.sparse is None else dict(self.sparse),
            self.prefactor,
        )

    def coefficient(self, config: tuple[int, ...]) -> float:
        if self.dense is not None:
            return self.prefactor * float(self.dense[config])
        return self.prefactor * self.sparse.get(config, 0.0)


def _check_dense_capacity(length: int) -> None:
    if length > DENSE_MAX_SITES:
        raise ValueError(
            f"dense backend holds 6^L coefficients; L={length} exceeds the "
            f"limit of {DENSE_MAX_SITES} (about {6.0**length:.2e} entries)"
        )


def to_sparse(state: ReplicaVector) -> ReplicaVector:
    """Expand a dense state into the hash-map backend (small chains only)."""
    if state.sparse is not None:
        return state.copy()
    entries = {}
    it = np.nditer(state.dense, flags=["multi_index"])
    for value in it:
        if value != 0.0:
            entries[it.multi_index] = float(value)
    return ReplicaVector(state.length, sparse=entries, prefactor=state.prefactor)


def identity_state(length: int) -> ReplicaVector:
    """Product state (1,1) on every site: codes 0-3 with unit coefficients."""
    _check_dense_capacity(length)
    site = np.array([1.0, 1.0, 1.0, 1.0, 0.0, 0.0])
    dense = site
    for _ in range(length - 1):
        dense = np.multiply.outer(dense, site)
    return ReplicaVector(length, dense=dense)


def charged_insertion_state(length: int, site: int) -> ReplicaVector:
    """(sp, sm) at one site, identity pairs elsewhere."""
    _check_dense_capacity(length)
    if not 0 <= site < length:
        raise ValueError("insertion site outside chain")
    vecs = []
    for x in range(length):
        v = np.array([1.0, 1.0, 1.0, 1.0, 0.0, 0.0])
        if x == site:
            v = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
        vecs.append(v)
    dense = vecs[0]
    for v in vecs[1:]:
        dense = np.multiply.outer(dense, v)
    return ReplicaVector(length, dense=dense)


def polarized_walker_state(length: int, site: int) -> ReplicaVector:
    """(sp, sm) at one site in an all-(P_dn, P_dn) background (sparse)."""
    if not 0 <= site < length:
        raise ValueError("walker site outside chain")
    config = tuple(4 if x == site else 3 for x in range(length))
    return ReplicaVector(length, sparse={config: 1.0})


def void_vector_state(length: int, center: int, radius: int) -> ReplicaVector:
    """Normalized void vector: charged pair at `center` inside a polarized
    region of size 2 * radius + 1, infinite-temperature pairs outside."""
    _check_dense_capacity(length)
    ell = 2 * radius + 1
    if ell > length:
        raise ValueError("void larger than the chain")
    void_sites = {(center + d) % length for d in range(-radius, radius + 1)}
    vecs = []
    for x in range(length):
        if x == center:
            v = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
        elif x in void_sites:
            v = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 0.0])
        else:
            v = np.array([0.25, 0.25, 0.25, 0.25, 0.0, 0.0])
        vecs.append(v)
    dense = vecs[0]
    for v in vecs[1:]:
        dense = np.multiply.outer(dense, v)
    return ReplicaVector(length, dense=dense, prefactor=float(2.0 ** (length - ell)))


def brickwork_bonds(length: int, parity: str, boundary: str) -> list[tuple[int, int]]:
    """Disjoint bonds of one layer; `parity` is "even" or "odd"."""
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    if boundary == "periodic" and length % 2:
        raise ValueError("periodic pairing needs an even number of sites")
    start = 0 if parity == "even" else 1
    bonds = [(x, x + 1) for x in range(start, length - 1, 2)]
    if boundary == "periodic" and parity == "odd":
        bonds.append((length - 1, 0))
    return bonds


def _apply_bond_dense(state: np.ndarray, tensor: np.ndarray, i: int, j: int) -> np.ndarray:
    ndim = state.ndim
    moved = np.moveaxis(state, (i, j), (ndim - 2, ndim - 1))
    shape = moved.shape
    out = moved.reshape(-1, 36) @ tensor.reshape(36, 36).T
    return np.moveaxis(out.reshape(shape), (ndim - 2, ndim - 1), (i, j))


_COLUMNS = None


def _transfer_columns():
    """Nonzero (output pair, amplitude) lists per input pair, for sparse flow."""
    global _COLUMNS
    if _COLUMNS is None:
        mat = _transfer_tensor().reshape(36, 36)
        cols = []
        for ab in range(36):
            rows = np.nonzero(mat[:, ab])[0]
            cols.append([(int(r) // 6, int(r) % 6, float(mat[r, ab])) for r in rows])
        _COLUMNS = cols
    return _COLUMNS


def _apply_bond_sparse(state: dict, i: int, j: int) -> dict:
    cols = _transfer_columns()
    out: dict = {}
    for config, amp in state.items():
        ab = 6 * config[i] + config[j]
        for a_new, b_new, w in cols[ab]:
            new = list(config)
            new[i] = a_new
            new[j] = b_new
            key = tuple(new)
            out[key] = out.get(key, 0.0) + w * amp
    return {k: v for k, v in out.items() if v != 0.0}


def apply_brickwork(
    state: ReplicaVector, steps: int, boundary: str = "open"
) -> ReplicaVector:
    """Apply `steps` full periods: the even-bond layer, then the odd-bond layer."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    tensor = _transfer_tensor()
    out = state.copy()
    layers = [
        brickwork_bonds(state.length, "even", boundary),
        brickwork_bonds(state.length, "odd", boundary),
    ]
    for _ in range(steps):
        for bonds in layers:
            if out.dense is not None:
                for i, j in bonds:
                    out.dense = _apply_bond_dense(out.dense, tensor, i, j)
            else:
                for i, j in bonds:
                    out.sparse = _apply_bond_sparse(out.sparse, i, j)
    return out


_CHARGE_COUNTS: dict[int, np.ndarray] = {}


def _charged_count_dense(length: int) -> np.ndarray:
    if length not in _CHARGE_COUNTS:
        ind = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 1.0])
        count = np.zeros((6,) * length)
        for axis in range(length):
            shape = [1] * length
            shape[axis] = 6
            count = count + ind.reshape(shape)
        _CHARGE_COUNTS[length] = count
    return _CHARGE_COUNTS[length]


def dephasing_layer(state: ReplicaVector, gamma_z: float) -> ReplicaVector:
    """Damp each configuration by exp(-4 gamma_z m), m = number of charged sites.

    One unit of z-dephasing multiplies every off-diagonal single-site
    operator by exp(-2 gamma_z); a charged site carries one such factor in
    each replica slot.
    """
    if gamma_z < 0:
        raise ValueError("gamma_z must be non-negative")
    out = state.copy()
    if out.dense is not None:
        out.dense = out.dense * np.exp(-4.0 * gamma_z * _charged_count_dense(out.length))
    else:
        out.sparse = {
            cfg: amp * np.exp(-4.0 * gamma_z * sum(c in CHARGED_CODES for c in cfg))
            for cfg, amp in out.sparse.items()
        }
    return out


def _contract_charged_bra(state: ReplicaVector, site: int) -> float:
    """Inner product with the bra carrying (sp, sm) at `site`, identities elsewhere."""
    if state.dense is None:
        total = 0.0
        for config, amp in state.sparse.items():
            if config[site] == 4 and all(
                c in (0, 1, 2, 3) for i, c in enumerate(config) if i != site
            ):
                total += amp
        return state.prefactor * total
    vec = state.dense
    ident = np.array([1.0, 1.0, 1.0, 1.0, 0.0, 0.0])
    charged = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
    for axis in range(state.length - 1, -1, -1):
        sel = charged if axis == site else ident
        vec = np.tensordot(vec, sel, axes=([axis], [0]))
    return state.prefactor * float(vec)


def second_moment(
    L: int, x: int, t: int, boundary: str = "open", base_site: int = 0
) -> float:
    """Z(x, t): circuit-averaged |<sp_x(t) sm_0>|^2 from the transfer matrix."""
    if not 0 <= base_site < L:
        raise ValueError("base site outside chain")
    if not -L < x < L:
        raise ValueError("separation outside chain")
    return second_moment_profile(L, t, boundary, base_site)[x % L]


def second_moment_profile(
    L: int, t: int, boundary: str = "open", base_site: int = 0
) -> np.ndarray:
    """Z(x, t) for every x (index = target site), normalized by 2^(2L)."""
    state = charged_insertion_state(L, base_site)
    evolved = apply_brickwork(state, t, boundary)
    z = np.array([_contract_charged_bra(evolved, s) for s in range(L)])
    z = np.roll(z, -base_site)
    return NORMALIZATION * z / 4.0**L


def noisy_zsum(
    L: int, t_max: int, gamma_z: float, boundary: str = "open", base_site: int = 0
) -> np.ndarray:
    """sum_x Z(x, t) for t = 0..t_max with a dephasing layer per period."""
    state = charged_insertion_state(L, base_site)
    out = np.empty(t_max + 1)
    for t in range(t_max + 1):
        z = np.array([_contract_charged_bra(state, s) for s in range(L)])
        out[t] = z.sum() / 4.0**L
        if t < t_max:
            state = apply_brickwork(state, 1, boundary)
            state = dephasing_layer(state, gamma_z)
    return out


@dataclass
class HaarEstimate:
    """Sampled circuit average of |C(x, t)|^2 with its standard error."""

    mean: np.ndarray
    stderr: np.ndarray
    num_circuits: int


def haar_oracle(
    L: int,
    t: int,
    num_circuits: int,
    rng: np.random.Generator | None = None,
    seed: int = 0,
    boundary: str = "open",
    base_site: int = 0,
) -> HaarEstimate:
    """Monte Carlo estimate of E_U |C(x, t)|^2 by direct operator evolution.

    Gates are drawn independently per bond and per layer; the observable is
    C(x, t) = Tr(U(t)^dag sm_x U(t) sp_0) / 2^L evaluated in the Heisenberg
    picture at 2^L x 2^L matrix cost, so L <= 12.
    """
    if L > 12:
        raise ValueError("statevector oracle limited to L <= 12")
    if rng is None:
        rng = trajectory_rng(seed, "replica:haar", 0)
    dim = 2**L
    rows0, cols0 = qop.raising_matrix_elements(L, base_site)
    layers = [
        brickwork_bonds(L, "even", boundary),
        brickwork_bonds(L, "odd", boundary),
    ]
    acc = np.zeros(L)
    acc_sq = np.zeros(L)
    for _ in range(num_circuits):
        a = np.zeros((dim, dim), dtype=complex)
        a[rows0, cols0] = 1.0  # sp at the base site
        for _ in range(t):
            for bonds in layers:
                for i, j in bonds:
                    a = qop.conjugate_two_site(a, sample_u1_gate(rng), L, i, j)
        c_abs2 = np.empty(L)
        for x in range(L):
            rx, cx = qop.raising_matrix_elements(L, x)
            c_abs2[x] = abs(a[rx, cx].sum() / dim) ** 2
        c_abs2 = np.roll(c_abs2, -base_site)
        acc += c_abs2
        acc_sq += c_abs2**2
    mean = acc / num_circuits
    var = np.maximum(acc_sq / num_circuits - mean**2, 0.0)
    return HaarEstimate(mean, np.sqrt(var / num_circuits), num_circuits)


def pair_walk_distribution(L: int, t: int, boundary: str = "periodic") -> np.ndarray:
    """Weight of the bound charged pair per site after t periods in a
    polarized background (starts at the center site)."""
    state = polarized_walker_state(L, L // 2)
    evolved = apply_brickwork(state, t, boundary)
    weights = np.zeros(L)
    for config, amp in evolved.sparse.items():
        for site, code in enumerate(config):
            if code == 4:
                weights[site] += amp
                break
    return weights


def walk_diffusivity(L: int = 32, t_max: int = 6) -> float:
    """Variance slope / 2 of the polarized-background pair walk."""
    centers = []
    variances = []
    for t in range(1, t_max + 1):
        w = pair_walk_distribution(L, t)
        x = np.arange(L) - L // 2
        w = w / w.sum()
        mean = (w * x).sum()
        variances.append(((x - mean) ** 2 * w).sum())
        centers.append(t)
    slope = np.polyfit(centers, variances, 1)[0]
    return float(slope / 2.0)


@dataclass(frozen=True)
class VoidBound:
    """Analytic lower bound 2^(-ell_R) * exp(-D k^2 t) and its pieces."""

    value: float
    void_probability: float
    gaussian_factor: float
    ell_r: float


def void_bound(
    t: float, alpha: float, D: float, k_momentum: float, c: float = 1.0
) -> VoidBound:
    """Rare-region bound with void size ell_R = c * t^alpha.

    Requires alpha > 1/2 so the void outlives the diffusive smearing of its
    edges; the walk diffusivity D is pinned by `walk_diffusivity`.
    """
    if alpha <= 0.5:
        raise ValueError("bound needs alpha > 1/2 (void must outlive smearing)")
    if t <= 0 or c <= 0 or D < 0:
        raise ValueError("need t > 0, c > 0, D >= 0")
    ell_r = c * t**alpha
    p_void = float(2.0 ** (-ell_r))
    gauss = float(np.exp(-D * k_momentum**2 * t))
    return VoidBound(p_void * gauss, p_void, gauss, ell_r)


def void_summand(L: int, radius: int, t: int, boundary: str = "open") -> float:
    """sum_y |B_{v_y}(t)|^2 for the orthonormal void-vector family.

    B_v = <v| T^(t/2) |charged insertion> / 2^L; only even t is meaningful.
    """
    if t % 2:
        raise ValueError("void summand needs even t (uses T^(t/2))")
    state = charged_insertion_state(L, 0)
    half = apply_brickwork(state, t // 2, boundary)
    total = 0.0
    for y in range(L):
        v = void_vector_state(L, y, radius)
        overlap = _overlap(v, half) / 2.0**L
        total += overlap**2
    return total


def _overlap(bra: ReplicaVector, ket: ReplicaVector) -> float:
    if bra.dense is None or ket.dense is None:
        raise ValueError("overlap implemented for dense states")
    return float(
        bra.prefactor * ket.prefactor * np.tensordot(bra.dense, ket.dense, axes=bra.dense.ndim)
    )
