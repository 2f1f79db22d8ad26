"""Entanglement and spectral chaos diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import as_density_matrix, dagger, is_unitary


def linear_entropy(rho: np.ndarray) -> float:
    """1 - Tr(rho^2); zero iff pure, 1 - 1/d when maximally mixed."""
    rho = as_density_matrix(rho)
    return float(1.0 - np.real(np.vdot(rho, rho)))


def s_rmt(d_s: int, d_a: int) -> float:
    """Random-matrix average of the bipartite linear entropy.

    1 - (d_s + d_a) / (1 + d_s d_a): the Haar-average purity of either
    reduction of a joint random pure state.
    """
    if d_s < 2 or d_a < 2:
        raise ValueError("both dimensions must be >= 2")
    return 1.0 - (d_s + d_a) / (1.0 + d_s * d_a)


@dataclass(frozen=True)
class SpectralSample:
    """Sorted eigenphases of a unitary, principal branch (-pi, pi]."""

    eigenphases: np.ndarray

    def __post_init__(self):
        phases = np.sort(np.asarray(self.eigenphases, dtype=float))
        if phases.size and (phases[0] <= -np.pi - 1e-12 or phases[-1] > np.pi + 1e-12):
            raise ValueError("eigenphases must lie in (-pi, pi]")
        object.__setattr__(self, "eigenphases", phases)

    def __len__(self) -> int:
        return self.eigenphases.size


def eigenphases(u: np.ndarray, tol: float = 1e-9) -> SpectralSample:
    """Phases of the eigenvalues of a unitary matrix."""
    u = np.asarray(u)
    if not is_unitary(u, 1e-10):
        raise ValueError("matrix is not unitary within 1e-10")
    vals = np.linalg.eigvals(u)
    if np.max(np.abs(np.abs(vals) - 1.0)) > tol:
        raise ValueError("eigenvalue moduli deviate from 1 beyond tolerance")
    return SpectralSample(eigenphases=np.angle(vals))


def mean_spacing_ratio(sample: SpectralSample, degenerate_tol: float = 1e-12) -> float:
    """Mean r = <min(s_i, s_{i+1}) / max(s_i, s_{i+1})> over cyclic spacings.

    The wrap-around spacing closes the circle, giving as many spacings (and
    ratios) as there are phases.  Ratios touching a near-degenerate spacing
    (below ``degenerate_tol``) are skipped.
    """
    phases = sample.eigenphases
    if phases.size < 10:
        raise ValueError(f"need at least 10 eigenphases, got {phases.size}")
    spacings = np.diff(phases)
    wrap = phases[0] + 2 * np.pi - phases[-1]
    spacings = np.append(spacings, wrap)
    nxt = np.roll(spacings, -1)
    ok = (spacings > degenerate_tol) & (nxt > degenerate_tol)
    if not np.any(ok):
        raise ValueError("spectrum is entirely degenerate")
    ratios = np.minimum(spacings[ok], nxt[ok]) / np.maximum(spacings[ok], nxt[ok])
    return float(np.mean(ratios))


def split_by_symmetry(
    u: np.ndarray, hermitian_symmetry: np.ndarray, tol: float = 1e-9
) -> list[np.ndarray]:
    """Project a unitary onto the eigenspaces of a commuting Hermitian operator.

    Used to desymmetrize spectra before spacing statistics: a conserved
    reflection or parity splits the spectrum into independent blocks whose
    superposition would otherwise wash out level repulsion.
    """
    u = np.asarray(u)
    w, v = np.linalg.eigh(hermitian_symmetry)
    if np.max(np.abs(u @ hermitian_symmetry - hermitian_symmetry @ u)) > tol:
        raise ValueError("operator does not commute with the proposed symmetry")
    blocks: list[np.ndarray] = []
    start = 0
    for i in range(1, w.size + 1):
        if i == w.size or abs(w[i] - w[start]) > 1e-8:
            basis = v[:, start:i]
            blocks.append(dagger(basis) @ u @ basis)
            start = i
    return blocks
