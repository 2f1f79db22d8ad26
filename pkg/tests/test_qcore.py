import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergokit.qcore import (
    check_density_matrix,
    fidelity,
    haar_state,
    hermitian_eig,
    kron,
    kron_all,
    partial_trace,
    pure_to_dm,
    reduced_density,
    vn_entropy,
)


def random_complex(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(rng, dim):
    g = random_complex(rng, dim, dim)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal(self):
        out = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
        assert np.allclose(out, np.diag([3.0, 4.0, 6.0, 8.0]))

    def test_index_formula_oracle(self):
        # (A (x) B)[i q + k, j q + l] = A[i, j] B[k, l]
        rng = np.random.default_rng(7)
        for _ in range(50):
            p, q = rng.integers(2, 5, size=2)
            a = random_complex(rng, p, p)
            b = random_complex(rng, q, q)
            out = kron(a, b)
            expected = np.empty((p * q, p * q), dtype=complex)
            for i in range(p):
                for j in range(p):
                    for k in range(q):
                        for l in range(q):
                            expected[i * q + k, j * q + l] = a[i, j] * b[k, l]
            assert np.max(np.abs(out - expected)) < 1e-12

    def test_dimension_cap(self):
        with pytest.raises(ValueError, match="exceeds cap"):
            kron(np.eye(100), np.eye(100))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 3), st.integers(2, 3), st.integers(2, 3))
    def test_associativity(self, seed, da, db, dc):
        rng = np.random.default_rng(seed)
        a, b, c = (random_complex(rng, d, d) for d in (da, db, dc))
        left = kron(kron(a, b), c)
        right = kron(a, kron(b, c))
        assert np.allclose(left, right, atol=1e-12)

    def test_kron_all_matches_pairwise(self):
        rng = np.random.default_rng(1)
        mats = [random_complex(rng, 2, 2) for _ in range(3)]
        assert np.allclose(kron_all(mats), kron(kron(mats[0], mats[1]), mats[2]))


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(3)
        rho_a = random_density(rng, 3)
        rho_b = random_density(rng, 2)
        joint = kron(rho_a, rho_b)
        assert np.allclose(partial_trace(joint, [3, 2], [0]), rho_a, atol=1e-12)
        assert np.allclose(partial_trace(joint, [3, 2], [1]), rho_b, atol=1e-12)

    def test_bell_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / np.sqrt(2)
        rho = pure_to_dm(bell)
        for keep in (0, 1):
            assert np.allclose(partial_trace(rho, [2, 2], [keep]), np.eye(2) / 2, atol=1e-12)

    def _summation_oracle(self, rho, dims, keep):
        # explicit double-index summation over the traced factors
        n = len(dims)
        traced = [i for i in range(n) if i not in keep]
        d_keep = int(np.prod([dims[k] for k in keep]))
        out = np.zeros((d_keep, d_keep), dtype=complex)
        tensor = rho.reshape(dims + dims)
        for row in np.ndindex(*dims):
            for col in np.ndindex(*dims):
                if any(row[t] != col[t] for t in traced):
                    continue
                ri = np.ravel_multi_index([row[k] for k in keep], [dims[k] for k in keep])
                ci = np.ravel_multi_index([col[k] for k in keep], [dims[k] for k in keep])
                out[ri, ci] += tensor[row + col]
        return out

    def test_three_factor_oracle(self):
        rng = np.random.default_rng(11)
        dims = [2, 3, 2]
        for _ in range(100):
            psi = haar_state(12, rng)
            rho = pure_to_dm(psi)
            for keep in ([0], [1], [2], [0, 2], [1, 2]):
                got = partial_trace(rho, dims, keep)
                want = self._summation_oracle(rho, dims, keep)
                assert np.max(np.abs(got - want)) < 1e-12

    def test_keep_all_is_identity(self):
        rng = np.random.default_rng(5)
        rho = random_density(rng, 6)
        assert np.allclose(partial_trace(rho, [2, 3], [0, 1]), rho, atol=1e-14)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32))
    def test_trace_preserved(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, 12)
        red = partial_trace(rho, [2, 3, 2], [1])
        assert abs(np.trace(red).real - 1.0) < 1e-10
        check_density_matrix(red)

    def test_dims_mismatch_rejected(self):
        with pytest.raises(ValueError, match="do not match"):
            partial_trace(np.eye(4) / 4, [2, 3], [0])

    def test_reduced_density_matches_partial_trace(self):
        rng = np.random.default_rng(17)
        psi = haar_state(12, rng)
        rho = pure_to_dm(psi)
        for keep in ([0], [1, 2], [0, 2]):
            assert np.allclose(
                reduced_density(psi, [2, 3, 2], keep),
                partial_trace(rho, [2, 3, 2], keep),
                atol=1e-12,
            )


class TestHermitianEig:
    def test_diagonal_sorted(self):
        values, _ = hermitian_eig(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(values, [1.0, 2.0, 3.0])

    def test_pauli_x(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        values, vectors = hermitian_eig(sx)
        assert np.allclose(values, [-1.0, 1.0])
        minus = (np.array([1, -1]) / np.sqrt(2)).astype(complex)
        plus = (np.array([1, 1]) / np.sqrt(2)).astype(complex)
        assert abs(abs(np.vdot(minus, vectors[:, 0])) - 1) < 1e-12
        assert abs(abs(np.vdot(plus, vectors[:, 1])) - 1) < 1e-12

    def test_spectral_reconstruction(self):
        rng = np.random.default_rng(23)
        g = random_complex(rng, 20, 20)
        h = g + g.conj().T
        values, vectors = hermitian_eig(h)
        rebuilt = (vectors * values) @ vectors.conj().T
        assert np.max(np.abs(rebuilt - h)) < 1e-9 * max(1.0, np.max(np.abs(h)))
        assert abs(values.sum() - np.trace(h).real) < 1e-9
        gram = vectors.conj().T @ vectors
        assert np.max(np.abs(gram - np.eye(20))) < 1e-10

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestFidelity:
    def test_identical_states(self):
        rng = np.random.default_rng(2)
        rho = random_density(rng, 4)
        assert abs(fidelity(rho, rho) - 1.0) < 1e-10

    def test_orthogonal_pure(self):
        zero = pure_to_dm(np.array([1, 0], dtype=complex))
        one = pure_to_dm(np.array([0, 1], dtype=complex))
        assert fidelity(zero, one) < 1e-12

    def test_pure_state_reduction_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            psi = haar_state(4, rng)
            sigma = random_density(rng, 4)
            want = float(np.real(np.vdot(psi, sigma @ psi)))
            assert abs(fidelity(pure_to_dm(psi), sigma) - want) < 1e-10

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32))
    def test_symmetric_and_bounded(self, seed):
        rng = np.random.default_rng(seed)
        rho, sigma = random_density(rng, 3), random_density(rng, 3)
        f1, f2 = fidelity(rho, sigma), fidelity(sigma, rho)
        assert abs(f1 - f2) < 1e-8
        assert 0.0 <= f1 <= 1.0

    def test_one_iff_equal(self):
        rng = np.random.default_rng(29)
        rho = random_density(rng, 3)
        sigma = random_density(rng, 3)
        if np.max(np.abs(rho - sigma)) > 1e-8:
            assert fidelity(rho, sigma) < 1.0 - 1e-12


class TestHaarState:
    def test_normalized(self):
        rng = np.random.default_rng(0)
        for dim in (1, 2, 7, 64):
            assert abs(np.linalg.norm(haar_state(dim, rng)) - 1.0) < 1e-12

    def test_deterministic_for_seed(self):
        a = haar_state(5, np.random.default_rng(42))
        b = haar_state(5, np.random.default_rng(42))
        assert np.array_equal(a, b)

    def test_bloch_isotropy(self):
        rng = np.random.default_rng(101)
        bloch = np.zeros(3)
        n = 10_000
        for _ in range(n):
            a, b = haar_state(2, rng)
            bloch += [2 * np.real(np.conj(a) * b), 2 * np.imag(np.conj(a) * b), abs(a) ** 2 - abs(b) ** 2]
        assert np.max(np.abs(bloch / n)) < 0.05

    def test_invalid_dim(self):
        with pytest.raises(ValueError):
            haar_state(0, np.random.default_rng(0))


class TestVnEntropy:
    def test_pure_state(self):
        assert vn_entropy(pure_to_dm(np.array([1, 0], dtype=complex))) == 0.0

    def test_maximally_mixed(self):
        for d in (2, 3, 8):
            assert abs(vn_entropy(np.eye(d) / d) - np.log(d)) < 1e-12

    def test_two_level_uniform(self):
        rho = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        assert abs(vn_entropy(rho) - np.log(2)) < 1e-12
