"""Dense qubit-chain operator helpers shared by the circuit modules.

Site 0 is the most significant bit of the computational-basis index.
Two-site gates are 4x4 in the basis |uu>, |ud>, |du>, |dd>.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "apply_gate_state",
    "apply_gate_rows",
    "apply_gate_cols",
    "conjugate_two_site",
    "charge_of_basis",
    "raising_matrix_elements",
]


def apply_gate_state(psi: np.ndarray, gate: np.ndarray, L: int, i: int, j: int) -> np.ndarray:
    """Apply a two-site gate to a 2^L statevector (or batch of columns)."""
    extra = psi.shape[1:]
    t = psi.reshape((2,) * L + extra)
    g = gate.reshape(2, 2, 2, 2)
    t = np.tensordot(g, t, axes=([2, 3], [i, j]))
    t = np.moveaxis(t, (0, 1), (i, j))
    return t.reshape(psi.shape)


def apply_gate_rows(a: np.ndarray, gate: np.ndarray, L: int, i: int, j: int) -> np.ndarray:
    """Left-multiply a 2^L x 2^L matrix by an embedded two-site gate."""
    return apply_gate_state(a, gate, L, i, j)


def apply_gate_cols(a: np.ndarray, gate: np.ndarray, L: int, i: int, j: int) -> np.ndarray:
    """Right-multiply by the embedded gate's dagger: a <- a @ U^dag."""
    t = a.reshape((a.shape[0],) + (2,) * L)
    g = gate.conj().reshape(2, 2, 2, 2)
    t = np.tensordot(g, t, axes=([2, 3], [1 + i, 1 + j]))
    t = np.moveaxis(t, (0, 1), (1 + i, 1 + j))
    return t.reshape(a.shape)


def conjugate_two_site(a: np.ndarray, gate: np.ndarray, L: int, i: int, j: int) -> np.ndarray:
    """Conjugate a matrix by an embedded two-site gate: U a U^dag."""
    return apply_gate_cols(apply_gate_rows(a, gate, L, i, j), gate, L, i, j)


def charge_of_basis(L: int) -> np.ndarray:
    """Number of up spins of every computational-basis state."""
    basis = np.arange(2**L)
    counts = np.zeros(2**L, dtype=int)
    for bit in range(L):
        counts += (basis >> bit) & 1
    return counts


def raising_matrix_elements(L: int, site: int) -> tuple[np.ndarray, np.ndarray]:
    """(rows, cols) such that sp_site = sum |rows><cols| (up at site vs down)."""
    basis = np.arange(2**L)
    mask = 1 << (L - 1 - site)
    cols = basis[(basis & mask) == 0]
    rows = cols | mask
    return rows, cols
