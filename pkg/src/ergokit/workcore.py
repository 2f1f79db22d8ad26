"""Passive states, ergotropy and measurement-assisted (daemonic) ergotropy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qcore import (
    as_density_matrix,
    dagger,
    hermitian_eig,
    kron_all,
    partial_trace,
    reduced_density,
)

ZERO_OUTCOME_TOL = 1e-12


@dataclass(frozen=True)
class Hamiltonian:
    """Hermitian observable with its spectrum cached at construction.

    ``energies`` are ascending; ``vectors`` holds the matching eigenvectors as
    columns.  The cache is what every passive-state pairing consumes.
    """

    matrix: np.ndarray
    energies: np.ndarray = field(default=None)  # type: ignore[assignment]
    vectors: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.energies is None or self.vectors is None:
            energies, vectors = hermitian_eig(self.matrix)
            object.__setattr__(self, "energies", energies)
            object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, state: np.ndarray) -> float:
        state = np.asarray(state)
        if state.ndim == 1:
            return float(np.real(np.vdot(state, self.matrix @ state)))
        return float(np.real(np.trace(self.matrix @ state)))


def spin_z_hamiltonian(j: float, sign: float = -1.0) -> Hamiltonian:
    """sign * J_z for one spin-j system (default -J_z, ground state m = j)."""
    from .spinops import spin_operators

    return Hamiltonian(matrix=sign * spin_operators(j).jz)


def collective_z_hamiltonian(n_sites: int, sign: float = -1.0) -> Hamiltonian:
    """sign * (1/2) sum_i sigma_z^(i) on an n-site qubit register."""
    from .models import _site_z_columns

    diag = sign * 0.5 * _site_z_columns(n_sites).sum(axis=1)
    return Hamiltonian(matrix=np.diag(diag).astype(complex))


@dataclass(frozen=True)
class AncillaMeasurement:
    """Complete orthogonal projector set on one tensor factor."""

    projectors: tuple[np.ndarray, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.projectors:
            raise ValueError("measurement needs at least one projector")
        dim = self.projectors[0].shape[0]
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.projectors))))
        total = np.zeros((dim, dim), dtype=complex)
        for i, p in enumerate(self.projectors):
            if p.shape != (dim, dim):
                raise ValueError("projectors must share one square shape")
            for q in self.projectors[i + 1 :]:
                if np.max(np.abs(p @ q)) > 1e-10:
                    raise ValueError("projectors are not mutually orthogonal")
            total += p
        if np.max(np.abs(total - np.eye(dim))) > 1e-10:
            raise ValueError("projectors do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @classmethod
    def computational(cls, dim: int) -> "AncillaMeasurement":
        """Rank-1 projectors onto the register (z) basis."""
        eye = np.eye(dim, dtype=complex)
        projs = tuple(np.outer(eye[:, k], eye[:, k].conj()) for k in range(dim))
        return cls(projectors=projs)

    @classmethod
    def trivial(cls, dim: int) -> "AncillaMeasurement":
        return cls(projectors=(np.eye(dim, dtype=complex),))


def passive_state(rho: np.ndarray, h: Hamiltonian) -> np.ndarray:
    """Lowest-energy state unitarily reachable from ``rho``.

    Eigenvalues of rho sorted descending are paired with the ascending energy
    eigenvectors; ties keep their original index order (stable sorts), which
    never changes the passive energy.
    """
    rho = as_density_matrix(rho)
    if rho.shape[0] != h.dim:
        raise ValueError(f"state dim {rho.shape[0]} != Hamiltonian dim {h.dim}")
    r = np.linalg.eigvalsh(rho)[::-1]  # eigh ascending -> reversed is descending
    v = h.vectors
    return (v * r) @ dagger(v)


def _passive_energy(populations: np.ndarray, energies: np.ndarray) -> float:
    """Energy of the passive rearrangement of a known spectrum."""
    r = np.sort(np.clip(populations, 0.0, None))[::-1]
    return float(np.dot(r, energies))


def ergotropy(rho: np.ndarray, h: Hamiltonian) -> float:
    """Maximal unitarily extractable work Tr(rho H) - Tr(passive H); >= 0."""
    rho = as_density_matrix(rho)
    if rho.shape[0] != h.dim:
        raise ValueError(f"state dim {rho.shape[0]} != Hamiltonian dim {h.dim}")
    populations = np.linalg.eigvalsh(rho)
    value = h.expectation(rho) - _passive_energy(populations, h.energies)
    if value < -1e-10:
        raise AssertionError(f"ergotropy {value} violates non-negativity")
    return value


def _resolve_factors(
    joint: np.ndarray,
    meas: AncillaMeasurement,
    dims: tuple[int, ...] | None,
    measured: int | None,
    keep: tuple[int, ...] | int | None,
) -> tuple[tuple[int, ...], int, tuple[int, ...]]:
    joint_dim = joint.shape[0]
    if dims is None:
        # bipartite default: system (x) ancilla with the measured factor last
        d_a = meas.dim
        if joint_dim % d_a:
            raise ValueError(f"joint dim {joint_dim} not divisible by ancilla dim {d_a}")
        dims = (joint_dim // d_a, d_a)
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != joint_dim:
        raise ValueError(f"dims {dims} do not match joint dim {joint_dim}")
    measured = len(dims) - 1 if measured is None else int(measured)
    if dims[measured] != meas.dim:
        raise ValueError(
            f"measured factor dim {dims[measured]} != projector dim {meas.dim}"
        )
    if keep is None:
        keep = tuple(i for i in range(len(dims)) if i != measured)[:1]
    elif isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    else:
        keep = tuple(int(k) for k in keep)
    if measured in keep:
        raise ValueError("measured factor cannot be kept")
    return dims, measured, keep


def conditional_states(
    joint: np.ndarray,
    meas: AncillaMeasurement,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> list[tuple[float, np.ndarray | None]]:
    """Post-measurement reduced states of the kept factors, one per outcome.

    Returns ``(p_a, rho)`` pairs in outcome order.  Outcomes with probability
    below 1e-12 are reported as ``(0.0, None)`` and must be skipped in
    averages.  Probabilities sum to 1.
    """
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    n = len(dims)
    keep_sorted = sorted(keep)
    d_keep = int(np.prod([dims[k] for k in keep_sorted]))
    out: list[tuple[float, np.ndarray | None]] = []
    if joint.ndim == 1:
        tensor = joint.reshape(dims)
        rest = [i for i in range(n) if i not in keep_sorted]
        for proj in meas.projectors:
            branch = np.moveaxis(
                np.tensordot(proj, tensor, axes=([1], [measured])), 0, measured
            )
            p = float(np.real(np.vdot(branch, branch)))
            if p < ZERO_OUTCOME_TOL:
                out.append((0.0, None))
                continue
            m = branch.transpose(keep_sorted + rest).reshape(d_keep, -1)
            out.append((p, (m @ m.conj().T) / p))
    else:
        for proj in meas.projectors:
            embedded = kron_all(
                [proj if i == measured else np.eye(dims[i]) for i in range(n)]
            )
            clipped = embedded @ joint @ embedded
            p = float(np.real(np.trace(clipped)))
            if p < ZERO_OUTCOME_TOL:
                out.append((0.0, None))
                continue
            out.append((p, partial_trace(clipped / p, dims, keep_sorted)))
    total = sum(p for p, _ in out)
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"outcome probabilities sum to {total}, not 1")
    return out


def daemonic_ergotropy(
    joint: np.ndarray,
    h_s: Hamiltonian,
    meas: AncillaMeasurement,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> float:
    """Work extractable when the unitary may depend on the ancilla outcome."""
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    if joint.ndim == 1:
        rho_s = reduced_density(joint, dims, keep)
    else:
        rho_s = partial_trace(joint, dims, keep)
    avg_passive = 0.0
    for p, rho_a in conditional_states(joint, meas, dims, measured, keep):
        if rho_a is None:
            continue
        avg_passive += p * _passive_energy(np.linalg.eigvalsh(rho_a), h_s.energies)
    return h_s.expectation(rho_s) - avg_passive


def work_gain(
    joint: np.ndarray,
    h_s: Hamiltonian,
    meas: AncillaMeasurement,
    dims: tuple[int, ...] | None = None,
    measured: int | None = None,
    keep: tuple[int, ...] | int | None = None,
) -> float:
    """Daemonic minus plain ergotropy of the reduced state; >= 0 up to 1e-9."""
    joint = np.asarray(joint)
    dims, measured, keep = _resolve_factors(joint, meas, dims, measured, keep)
    if joint.ndim == 1:
        rho_s = reduced_density(joint, dims, keep)
    else:
        rho_s = partial_trace(joint, dims, keep)
    gain = daemonic_ergotropy(joint, h_s, meas, dims, measured, keep) - ergotropy(
        rho_s, h_s
    )
    if gain < -1e-9:
        raise AssertionError(f"work gain {gain} violates daemonic dominance")
    return gain
