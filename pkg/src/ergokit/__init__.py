"""Ergotropy and work-extraction simulations for quantum-chaotic Floquet models."""

from .chaosdiag import (
    SpectralSample,
    eigenphases,
    linear_entropy,
    mean_spacing_ratio,
    s_rmt,
    split_by_symmetry,
)
from .coarsegrain import (
    CoarseGraining,
    coarse_probabilities,
    energy_basis,
    observational_entropy,
    protocol1_strict_work,
    protocol1_work,
    protocol2_work,
    reconstruct,
    uniform_coarse_graining,
)
from .harness import (
    RegressionResult,
    SweepConfig,
    SweepRecord,
    linear_fit,
    run_ancilla_scaling,
    run_coarse_scan,
    run_experiment,
    run_known_sweep,
    run_spectral,
    run_tripartite_sweep,
    run_unknown_sweep,
    sample_product_state,
)
from .models import (
    FloquetOperator,
    IsingParams,
    KickedTopParams,
    build_kicked_ising,
    build_kicked_top,
    build_kicked_top_tripartite,
    evolve,
)
from .qcore import (
    fidelity,
    haar_state,
    hermitian_eig,
    kron,
    partial_trace,
    reduced_density,
    vn_entropy,
)
from .spinops import (
    SpinOperators,
    diagonal_phase,
    embed_site,
    kick_site_unitary,
    rotation_y,
    spin_operators,
)
from .workcore import (
    AncillaMeasurement,
    Hamiltonian,
    collective_z_hamiltonian,
    conditional_states,
    daemonic_ergotropy,
    ergotropy,
    passive_state,
    spin_z_hamiltonian,
    work_gain,
)

__all__ = [name for name in dir() if not name.startswith("_")]
