"""Shared fixtures and an independent dense-matrix oracle.

The helpers here deliberately avoid ``agassi_sim.paulis.to_matrix`` so that
matrix-level assertions check the package against an implementation that
shares no code with it.
"""

from functools import reduce

import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SPLUS = 0.5 * (SX + 1j * SY)
SMINUS = 0.5 * (SX - 1j * SY)

_LETTER = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def dense_string(letters: str, coefficient: complex = 1.0) -> np.ndarray:
    """Independent kron expansion of a Pauli string (qubit 1 leftmost)."""
    return coefficient * reduce(np.kron, [_LETTER[c] for c in letters])


def dense_sum(pauli_sum) -> np.ndarray:
    """Independent dense matrix of a PauliSum."""
    dim = 2**pauli_sum.n
    out = np.zeros((dim, dim), dtype=complex)
    for term in pauli_sum.terms:
        out += dense_string(term.letters, term.coefficient)
    return out


def dense_jw_annihilation(mode: int, n: int) -> np.ndarray:
    """Independent JW image of c_mode: sigma^-_mode followed by trailing Z."""
    mats = [I2] * n
    mats[mode - 1] = SMINUS
    for k in range(mode, n):
        mats[k] = SZ
    return reduce(np.kron, mats)


def dense_expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h via an independent eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
