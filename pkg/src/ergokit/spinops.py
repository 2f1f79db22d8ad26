"""Angular-momentum operators and the closed-form unitaries both models use.

Basis convention: the spin-j space uses the |j, m> basis ordered by descending
m = j, j-1, ..., -j, so Jz = diag(j, ..., -j).  Spin chains use unscaled Pauli
matrices (eigenvalues +-1) with site 1 as the most significant tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import hermitian_eig, kron_all

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _check_half_integer(j: float) -> float:
    two_j = 2 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise ValueError(f"spin must be a non-negative half-integer, got {j}")
    return round(two_j) / 2


@dataclass(frozen=True)
class SpinOperators:
    """Jz, Jy and ladder operators for one spin-j factor."""

    j: float
    dim: int
    jz: np.ndarray
    jy: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray

    @property
    def jx(self) -> np.ndarray:
        return (self.jplus + self.jminus) / 2


def spin_operators(j: float) -> SpinOperators:
    """Build the spin-j operator set in the descending-m basis."""
    j = _check_half_integer(j)
    dim = int(round(2 * j)) + 1
    m = j - np.arange(dim)
    jz = np.diag(m).astype(complex)
    # <j, m+1| J+ |j, m> = sqrt(j(j+1) - m(m+1)); m+1 sits one row above m
    raising = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jplus = np.zeros((dim, dim), dtype=complex)
    jplus[np.arange(dim - 1), np.arange(1, dim)] = raising
    jminus = jplus.conj().T
    jy = (jplus - jminus) / 2j
    return SpinOperators(j=j, dim=dim, jz=jz, jy=jy, jplus=jplus, jminus=jminus)


def rotation_y(j: float, alpha: float) -> np.ndarray:
    """exp(-i alpha Jy) via exact eigendecomposition of Jy."""
    ops = spin_operators(j)
    w, v = hermitian_eig(ops.jy)
    return (v * np.exp(-1j * alpha * w)) @ v.conj().T


def diagonal_phase(diag_values: np.ndarray, prefactor: float) -> np.ndarray:
    """Diagonal unitary with entries exp(-i prefactor * diag_values_k)."""
    phases = np.exp(-1j * prefactor * np.asarray(diag_values, dtype=float))
    return np.diag(phases)


def kick_site_unitary(m_strength: float, theta: float) -> np.ndarray:
    """exp(-i m (cos(theta) sx + sin(theta) sz)) for one chain site.

    Uses (n.sigma)^2 = I, so the exponential is cos(m) I - i sin(m) n.sigma.
    """
    n_sigma = np.cos(theta) * SIGMA_X + np.sin(theta) * SIGMA_Z
    return np.cos(m_strength) * np.eye(2, dtype=complex) - 1j * np.sin(m_strength) * n_sigma


def embed_site(op: np.ndarray, site: int, length: int) -> np.ndarray:
    """Place a 2x2 operator at ``site`` (1-based, most significant first)."""
    if not 1 <= site <= length:
        raise ValueError(f"site {site} out of range 1..{length}")
    if length > 12:
        raise ValueError(f"chain length {length} exceeds cap 12")
    factors = [np.eye(2, dtype=complex)] * length
    factors[site - 1] = op
    return kron_all(factors)
