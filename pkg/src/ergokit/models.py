"""Floquet operators for the kicked top and the kicked Ising chain.

Both builders return a :class:`FloquetOperator` carrying the unitary together
with the tensor-factor layout (dimensions and system/ancilla/auxiliary roles),
which downstream measurement and trace operations rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qcore import MAX_DIM, kron, kron_all
from .spinops import _check_half_integer, diagonal_phase, kick_site_unitary, rotation_y, spin_operators

PAPER_TILTS_L8 = tuple(np.array([7, 7, 8, 8, 8, 8, 7, 7]) * np.pi / 32)

SYSTEM = "system"
ANCILLA = "ancilla"
AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class KickedTopParams:
    kappa: float
    j_system: float = 19 / 2
    j_ancilla: float = 1.0
    j_aux: float | None = None
    alpha: float = math.pi / 2
    c1: float = 1.0
    c2: float = 1.0


@dataclass(frozen=True)
class IsingParams:
    m_strength: float
    length: int = 8
    coupling: float = 0.8
    tilts: tuple[float, ...] | None = None
    ancilla_sites: tuple[int, ...] | None = None
    tripartite: bool = False
    c1: float = 1.0
    c2: float = 1.0

    def resolved_tilts(self) -> tuple[float, ...]:
        if self.tilts is not None:
            if len(self.tilts) != self.length:
                raise ValueError(
                    f"need {self.length} tilt angles, got {len(self.tilts)}"
                )
            return tuple(float(t) for t in self.tilts)
        if self.length == 8:
            return PAPER_TILTS_L8
        raise ValueError(f"no default tilts for length {self.length}; pass tilts")

    def resolved_ancilla_sites(self) -> tuple[int, ...]:
        sites = self.ancilla_sites
        if sites is None:
            sites = (self.length - 1, self.length)
        sites = tuple(sorted(int(s) for s in sites))
        if not sites or any(s < 1 or s > self.length for s in sites):
            raise ValueError(f"ancilla sites {sites} outside 1..{self.length}")
        if any(b - a != 1 for a, b in zip(sites, sites[1:])):
            raise ValueError(f"ancilla sites {sites} must be one contiguous block")
        if len(sites) >= self.length:
            raise ValueError("ancilla cannot cover the whole chain")
        return sites


@dataclass(frozen=True)
class FloquetOperator:
    """One-period unitary plus the tensor-factor layout it acts on."""

    u: np.ndarray
    factor_dims: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if int(np.prod(self.factor_dims)) != self.u.shape[0]:
            raise ValueError(
                f"factor dims {self.factor_dims} do not match matrix dim {self.u.shape[0]}"
            )

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    def indices_of(self, label: str) -> tuple[int, ...]:
        return tuple(i for i, lab in enumerate(self.labels) if lab == label)

    @property
    def ancilla_index(self) -> int:
        idx = self.indices_of(ANCILLA)
        if len(idx) != 1:
            raise ValueError(f"expected one ancilla factor, found {idx}")
        return idx[0]

    @property
    def system_indices(self) -> tuple[int, ...]:
        return self.indices_of(SYSTEM)

    def dim_of(self, label: str) -> int:
        return int(np.prod([self.factor_dims[i] for i in self.indices_of(label)]))


def _top_torsion_diag(spins: list[float], coeffs: list[float]) -> np.ndarray:
    """Diagonal of (sum_k c_k J_kz)^2 on the product Dicke basis."""
    total = np.zeros(1)
    for j, c in zip(spins, coeffs):
        m = j - np.arange(int(round(2 * j)) + 1)
        total = np.add.outer(total, c * m).ravel()
    return total**2


def build_kicked_top(params: KickedTopParams) -> FloquetOperator:
    """Torsion-then-rotation Floquet unitary on system (x) ancilla."""
    if params.j_aux is not None:
        raise ValueError("bipartite builder got j_aux; use build_kicked_top_tripartite")
    j_s = _check_half_integer(params.j_system)
    j_a = _check_half_integer(params.j_ancilla)
    d_s, d_a = int(round(2 * j_s)) + 1, int(round(2 * j_a)) + 1
    if d_s * d_a > MAX_DIM:
        raise ValueError(f"joint dimension {d_s * d_a} exceeds cap {MAX_DIM}")
    j_tot = j_s + j_a
    prefactor = params.kappa / (2 * j_tot) if j_tot > 0 else 0.0
    torsion = diagonal_phase(_top_torsion_diag([j_s, j_a], [1.0, 1.0]), prefactor)
    rot = kron(rotation_y(j_s, params.alpha), rotation_y(j_a, params.alpha))
    return FloquetOperator(
        u=torsion @ rot, factor_dims=(d_s, d_a), labels=(SYSTEM, ANCILLA)
    )


def build_kicked_top_tripartite(params: KickedTopParams) -> FloquetOperator:
    """Kicked top with measured ancilla A and unmeasured auxiliary B.

    The torsion exponent becomes (J_Sz + c1 J_Az + c2 J_Bz)^2 with the
    collective normalization j = j_S + j_A + j_B; every spin precesses by the
    same alpha.
    """
    if params.j_aux is None:
        raise ValueError("tripartite builder needs j_aux")
    spins = [
        _check_half_integer(params.j_system),
        _check_half_integer(params.j_ancilla),
        _check_half_integer(params.j_aux),
    ]
    dims = tuple(int(round(2 * j)) + 1 for j in spins)
    if int(np.prod(dims)) > MAX_DIM:
        raise ValueError(f"joint dimension {np.prod(dims)} exceeds cap {MAX_DIM}")
    j_tot = sum(spins)
    prefactor = params.kappa / (2 * j_tot) if j_tot > 0 else 0.0
    torsion = diagonal_phase(
        _top_torsion_diag(spins, [1.0, params.c1, params.c2]), prefactor
    )
    rot = kron_all([rotation_y(j, params.alpha) for j in spins])
    return FloquetOperator(
        u=torsion @ rot, factor_dims=dims, labels=(SYSTEM, ANCILLA, AUXILIARY)
    )


def _site_z_columns(length: int) -> np.ndarray:
    """(2^L, L) array of sigma_z values per basis state; site 1 is the MSB."""
    idx = np.arange(2**length)
    bits = (idx[:, None] >> (length - 1 - np.arange(length))) & 1
    return 1 - 2 * bits


def _ising_factors(params: IsingParams) -> tuple[tuple[int, ...], tuple[str, ...]]:
    length = params.length
    if params.tripartite:
        if length < 3:
            raise ValueError("tripartite chain needs at least 3 sites")
        return (2, 2 ** (length - 2), 2), (ANCILLA, SYSTEM, AUXILIARY)
    sites = params.resolved_ancilla_sites()
    lo, hi = sites[0], sites[-1]
    dims: list[int] = []
    labels: list[str] = []
    if lo > 1:
        dims.append(2 ** (lo - 1))
        labels.append(SYSTEM)
    dims.append(2 ** (hi - lo + 1))
    labels.append(ANCILLA)
    if hi < length:
        dims.append(2 ** (length - hi))
        labels.append(SYSTEM)
    return tuple(dims), tuple(labels)


def build_kicked_ising(params: IsingParams) -> FloquetOperator:
    """Symmetric-splitting Floquet unitary for the open tilted-field chain.

    U = exp(-i H_free / 2) exp(-i H_kick) exp(-i H_free / 2) with
    H_free = C sum_i g_i sz_i sz_{i+1} (g_i = 1, except the two edge bonds
    carry c1 and c2 in the tripartite variant) and a per-site kick of
    strength M tilted by theta_i in the x-z plane.
    """
    length = params.length
    if length < 2:
        raise ValueError("chain needs at least 2 sites")
    if 2**length > MAX_DIM:
        raise ValueError(f"chain length {length} exceeds cap (dim > {MAX_DIM})")
    tilts = params.resolved_tilts()
    z = _site_z_columns(length)
    bond_weights = np.ones(length - 1)
    if params.tripartite:
        bond_weights[0] = params.c1
        bond_weights[-1] = params.c2
    free_diag = params.coupling * (z[:, :-1] * z[:, 1:]) @ bond_weights
    half_free = diagonal_phase(free_diag, 0.5)
    kick = kron_all([kick_site_unitary(params.m_strength, t) for t in tilts])
    dims, labels = _ising_factors(params)
    return FloquetOperator(u=half_free @ kick @ half_free, factor_dims=dims, labels=labels)


def evolve(state: np.ndarray, floquet: FloquetOperator, t: int) -> np.ndarray:
    """Apply ``t`` kick periods to a pure state."""
    state = np.asarray(state).ravel()
    if state.shape[0] != floquet.dim:
        raise ValueError(f"state dim {state.shape[0]} != operator dim {floquet.dim}")
    if t < 0 or int(t) != t:
        raise ValueError(f"time steps must be a non-negative integer, got {t}")
    out = state.astype(complex)
    for _ in range(int(t)):
        out = floquet.u @ out
    return out
