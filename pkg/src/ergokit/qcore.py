"""Dense complex linear algebra and state utilities shared by all modules.

Conventions used throughout the package:

* joint Hilbert spaces are ordered system (x) ancilla (x) auxiliary, row-major,
  so the first tensor factor carries the most significant index;
* density matrices are Hermitian within 1e-10, unit trace within 1e-10, with
  eigenvalues >= -1e-10 (small negative eigenvalues are clipped to 0 before
  any log);
* entropies are in nats (natural logarithm).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 4096

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_CLIP = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def kron(a: np.ndarray, b: np.ndarray, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product with the first factor as the most significant index.

    Accepts matrices or vectors.  Rejects results whose leading dimension
    would exceed ``max_dim``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[0] * b.shape[0] > max_dim:
        raise ValueError(
            f"kron result dimension {a.shape[0] * b.shape[0]} exceeds cap {max_dim}"
        )
    return np.kron(a, b)


def kron_all(factors: Iterable[np.ndarray], max_dim: int = MAX_DIM) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of matrices or vectors."""
    out = None
    for f in factors:
        out = np.asarray(f) if out is None else kron(out, f, max_dim=max_dim)
    if out is None:
        raise ValueError("kron_all needs at least one factor")
    return out


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def is_unitary(u: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    d = u.shape[0]
    return bool(np.max(np.abs(dagger(u) @ u - np.eye(d))) <= tol)


def check_density_matrix(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    """Raise ValueError unless ``rho`` satisfies the density-matrix invariants."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.real)) or not np.all(np.isfinite(rho.imag)):
        raise ValueError("density matrix has non-finite entries")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > tol or abs(np.trace(rho).imag) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho)} != 1")
    evals = np.linalg.eigvalsh(rho)
    if evals[0] < -EIG_CLIP:
        raise ValueError(f"density matrix has negative eigenvalue {evals[0]}")


def pure_to_dm(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi).ravel()
    return np.outer(psi, psi.conj())


def as_density_matrix(state: np.ndarray) -> np.ndarray:
    """Promote a state vector to a projector; pass matrices through."""
    state = np.asarray(state)
    return pure_to_dm(state) if state.ndim == 1 else state


def partial_trace(
    rho: np.ndarray, dims: Sequence[int], keep: Sequence[int] | int
) -> np.ndarray:
    """Reduce a density matrix to the factors in ``keep``.

    ``dims`` lists the factor dimensions in tensor order; kept factors stay in
    their original relative order.
    """
    rho = np.asarray(rho)
    dims = [int(d) for d in dims]
    if isinstance(keep, (int, np.integer)):
        keep = [int(keep)]
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if int(np.prod(dims)) != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"dims {dims} do not match matrix shape {rho.shape}")
    if not keep or any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep {keep} must be a non-empty subset of 0..{n - 1}")

    tensor = rho.reshape(dims + dims)
    # einsum subscript: traced factors share a letter between row and column slots
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out_idx = keep + [i + n for i in keep]
    reduced = np.einsum(tensor, row + col, out_idx)
    d_keep = int(np.prod([dims[k] for k in keep]))
    return np.ascontiguousarray(reduced.reshape(d_keep, d_keep))


def reduced_density(
    psi: np.ndarray, dims: Sequence[int], keep: Sequence[int] | int
) -> np.ndarray:
    """Reduced density matrix of a pure state without forming the joint matrix."""
    psi = np.asarray(psi).ravel()
    dims = [int(d) for d in dims]
    if isinstance(keep, (int, np.integer)):
        keep = [int(keep)]
    keep = sorted(set(int(k) for k in keep))
    rest = [i for i in range(len(dims)) if i not in keep]
    tensor = psi.reshape(dims).transpose(keep + rest)
    d_keep = int(np.prod([dims[k] for k in keep]))
    m = tensor.reshape(d_keep, -1)
    return m @ m.conj().T


def hermitian_eig(h: np.ndarray, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Returns ``(values, vectors)`` with eigenvectors as columns.  Rejects
    inputs that deviate from Hermiticity by more than ``tol``.
    """
    h = np.asarray(h)
    if not is_hermitian(h, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh(h)
    return values, vectors


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1]."""
    rho = as_density_matrix(rho)
    sigma = as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("fidelity needs equal-dimension states")
    w, v = hermitian_eig(rho)
    w = np.clip(w, 0.0, None)
    sq = (v * np.sqrt(w)) @ dagger(v)
    lam = np.linalg.eigvalsh(sq @ sigma @ sq)
    # eigenvalues at the numerical noise floor would contribute sqrt(eps)
    # each; zero them before the square root
    floor = max(lam.max(), 0.0) * lam.size * np.finfo(float).eps
    lam = np.where(lam > floor, lam, 0.0)
    val = float(np.sum(np.sqrt(lam)) ** 2)
    return min(max(val, 0.0), 1.0)


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state: normalized complex standard-normal vector."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    re = rng.standard_normal(dim)
    im = rng.standard_normal(dim)
    vec = re + 1j * im
    return vec / np.linalg.norm(vec)


def vn_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in nats, with 0 log 0 := 0."""
    rho = as_density_matrix(rho)
    lam = np.linalg.eigvalsh(rho)
    lam = np.clip(lam, 0.0, None)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log(lam)))
