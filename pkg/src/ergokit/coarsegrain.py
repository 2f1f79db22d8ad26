"""Coarse-grained measurements, state reconstruction and observational entropy.

A coarse-graining is an ordered partition of an orthonormal measurement basis
into cells; the cell projectors are Pi_i = sum_{k in cell_i} |b_k><b_k| with
volume V_i = |cell_i|.  Reconstruction replaces the state by the block-uniform
mixture consistent with the observed cell probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import as_density_matrix, dagger, partial_trace, reduced_density
from .workcore import AncillaMeasurement, Hamiltonian, _passive_energy, _resolve_factors, conditional_states


@dataclass(frozen=True)
class CoarseGraining:
    """Measured basis (columns) plus an ordered partition of its indices."""

    basis: np.ndarray
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.basis.shape[0]
        if self.basis.shape != (d, d):
            raise ValueError("basis must be square with orthonormal columns")
        if np.max(np.abs(dagger(self.basis) @ self.basis - np.eye(d))) > 1e-10:
            raise ValueError("basis columns are not orthonormal within 1e-10")
        flat = [k for cell in self.cells for k in cell]
        if sorted(flat) != list(range(d)):
            raise ValueError("cells must partition the basis indices exactly")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def volumes(self) -> tuple[int, ...]:
        return tuple(len(cell) for cell in self.cells)

    @property
    def cell_index(self) -> np.ndarray:
        idx = np.empty(self.dim, dtype=int)
        for i, cell in enumerate(self.cells):
            for k in cell:
                idx[k] = i
        return idx

    def projector(self, i: int) -> np.ndarray:
        cols = self.basis[:, list(self.cells[i])]
        return cols @ dagger(cols)


def uniform_coarse_graining(d: int, n: int, basis: np.ndarray) -> CoarseGraining:
    """d/n consecutive cells of size n over the given basis ordering."""
    if n < 1 or d % n:
        raise ValueError(f"cell size {n} must divide dimension {d}")
    cells = tuple(tuple(range(i, i + n)) for i in range(0, d, n))
    return CoarseGraining(basis=np.asarray(basis, dtype=complex), cells=cells)


def energy_basis(h: Hamiltonian) -> np.ndarray:
    """Measurement basis ordered by ascending energy.

    For a diagonal Hamiltonian the basis is computational, permuted by a
    stable sort of the diagonal, so degenerate levels keep the register
    order.  Otherwise the cached eigenvectors are used as-is.
    """
    mat = h.matrix
    if np.max(np.abs(mat - np.diag(np.diag(mat)))) < 1e-12:
        order = np.argsort(np.diag(mat).real, kind="stable")
        return np.eye(h.dim, dtype=complex)[:, order]
    return h.vectors


def basis_populations(rho: np.ndarray, cg: CoarseGraining) -> np.ndarray:
    """Diagonal of rho in the measured basis, clipped to be non-negative."""
    rho = as_density_matrix(rho)
    if rho.shape[0] != cg.dim:
        raise ValueError(f"state dim {rho.shape[0]} != coarse-graining dim {cg.dim}")
    q = np.real(np.einsum("ik,ij,jk->k", cg.basis.conj(), rho, cg.basis))
    return np.clip(q, 0.0, None)


def coarse_probabilities(rho: np.ndarray, cg: CoarseGraining) -> np.ndarray:
    """Cell probabilities p_i = Tr(Pi_i rho)."""
    q = basis_populations(rho, cg)
    return np.array([q[list(cell)].sum() for cell in cg.cells])


def _weights(probs: np.ndarray, cg: CoarseGraining) -> np.ndarray:
    """Per-basis-index eigenvalues p_i / V_i of the reconstructed state."""
    vols = np.asarray(cg.volumes, dtype=float)
    return (probs / vols)[cg.cell_index]


def reconstruct(rho: np.ndarray, cg: CoarseGraining) -> np.ndarray:
    """Block-uniform state sum_i p_i Pi_i / V_i inferred from cell outcomes."""
    w = _weights(coarse_probabilities(rho, cg), cg)
    return (cg.basis * w) @ dagger(cg.basis)


def observational_entropy(rho: np.ndarray, cg: CoarseGraining) -> float:
    """H_chi(rho) = -sum_i p_i log(p_i / V_i), in nats; 0 log 0 := 0."""
    probs = coarse_probabilities(rho, cg)
    vols = np.asarray(cg.volumes, dtype=float)
    mask = probs > 0.0
    return float(-np.sum(probs[mask] * np.log(probs[mask] / vols[mask])))


def _system_state(joint, dims, keep):
    joint = np.asarray(joint)
    if joint.ndim == 1:
        return reduced_density(joint, dims, keep)
    return partial_trace(joint, dims, keep)


def protocol1_work(
    joint: np.ndarray,
    h_s: Hamiltonian,
    meas: AncillaMeasurement,
    cg: CoarseGraining,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> tuple[float, float]:
    """Work from per-outcome reconstruction, plus the outcome-averaged entropy.

    Each ancilla outcome's conditional state is reconstructed from its own
    coarse statistics and taken to its passive state.  Returns
    ``(work, oe)`` where ``oe`` is the p_a-weighted mean of H_chi over
    outcomes.  Work may be negative and is returned unclamped.
    """
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    rho_s = _system_state(joint, dims, keep)
    work = h_s.expectation(rho_s)
    oe = 0.0
    for p, rho_a in conditional_states(joint, meas, dims, measured, keep):
        if rho_a is None:
            continue
        probs = coarse_probabilities(rho_a, cg)
        work -= p * _passive_energy(_weights(probs, cg), h_s.energies)
        mask = probs > 0.0
        vols = np.asarray(cg.volumes, dtype=float)
        oe += p * float(-np.sum(probs[mask] * np.log(probs[mask] / vols[mask])))
    return work, oe


def protocol2_work(
    joint: np.ndarray,
    h_s: Hamiltonian,
    meas: AncillaMeasurement,
    cg: CoarseGraining,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> tuple[float, float]:
    """Work when the reconstructed conditionals are averaged before extraction.

    Returns ``(work, oe)`` with ``oe`` the observational entropy of the
    averaged reconstructed state; never exceeds the protocol-1 work.
    """
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    rho_s = _system_state(joint, dims, keep)
    avg_probs = np.zeros(len(cg.cells))
    for p, rho_a in conditional_states(joint, meas, dims, measured, keep):
        if rho_a is None:
            continue
        avg_probs += p * coarse_probabilities(rho_a, cg)
    work = h_s.expectation(rho_s) - _passive_energy(_weights(avg_probs, cg), h_s.energies)
    vols = np.asarray(cg.volumes, dtype=float)
    mask = avg_probs > 0.0
    oe = float(-np.sum(avg_probs[mask] * np.log(avg_probs[mask] / vols[mask])))
    return work, oe


def protocol1_strict_work(
    joint: np.ndarray,
    h_s: Hamiltonian,
    meas: AncillaMeasurement,
    cg: CoarseGraining,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> float:
    """Diagnostic variant: the reconstruction-optimal unitary acts on the
    true conditional state, so the reported work is what that unitary would
    actually extract rather than the reconstruction's own energy drop."""
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    rho_s = _system_state(joint, dims, keep)
    work = h_s.expectation(rho_s)
    for p, rho_a in conditional_states(joint, meas, dims, measured, keep):
        if rho_a is None:
            continue
        q = basis_populations(rho_a, cg)
        w = _weights(coarse_probabilities(rho_a, cg), cg)
        # optimal unitary for the reconstruction maps basis index order
        # (descending w) onto ascending energies; apply that map to q
        order = np.argsort(-w, kind="stable")
        work -= p * float(np.dot(h_s.energies, q[order]))
    return work
