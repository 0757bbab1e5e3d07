import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmat import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, tensor, partial_trace, swap_qubits, hermitian_eigen, \
    matrix_function, qubit_spectrum, shannon_entropy, binary_entropy, von_neumann_entropy, check_density_matrix
from utils import ConvergenceError, DimensionError, DomainError, HermiticityError, PositivityError
from conftest import random_density_matrix, random_hermitian, random_unitary, werner_state

float_args = {"min_value": -10.0, "max_value": 10.0, "allow_nan": False, "allow_infinity": False}


def test_pauli_algebra():
    for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert np.allclose(sigma @ sigma, IDENTITY_2)
    assert np.allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)


def test_tensor_is_kronecker_product():
    assert np.array_equal(tensor(SIGMA_X, SIGMA_Z), np.kron(SIGMA_X, SIGMA_Z))
    assert tensor(SIGMA_Y, IDENTITY_2).shape == (4, 4)


def test_tensor_rejects_wrong_dimension():
    with pytest.raises(DimensionError):
        tensor(np.eye(3), IDENTITY_2)


def test_partial_trace_of_product(rng):
    a = random_density_matrix(rng, 2)
    b = random_density_matrix(rng, 2)

    assert np.allclose(partial_trace(np.kron(a, b), "A"), a, atol=1e-14)
    assert np.allclose(partial_trace(np.kron(a, b), "B"), b, atol=1e-14)


def test_partial_trace_of_bell_state(bell_state):
    assert np.allclose(partial_trace(bell_state, "A"), IDENTITY_2 / 2)
    assert np.allclose(partial_trace(bell_state, "B"), IDENTITY_2 / 2)


def test_partial_trace_rejects_unknown_subsystem():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4) / 4, "C")


def test_partial_trace_rejects_single_qubit():
    with pytest.raises(DimensionError):
        partial_trace(IDENTITY_2 / 2)


def test_swap_qubits_exchanges_factors(rng):
    a = random_density_matrix(rng, 2)
    b = random_density_matrix(rng, 2)
    assert np.allclose(swap_qubits(np.kron(a, b)), np.kron(b, a), atol=1e-14)


@pytest.mark.parametrize("dim", [2, 4])
def test_hermitian_eigen_matches_reference(rng, dim):
    for _ in range(25):
        m = random_hermitian(rng, dim, scale=rng.uniform(0.1, 100.0))
        system = hermitian_eigen(m)

        tol = 1e-12 * max(1.0, np.linalg.norm(m))
        assert np.all(np.diff(system.eigenvalues) >= 0)
        assert np.allclose(system.eigenvalues, np.linalg.eigvalsh(m), atol=tol)
        assert np.allclose(system.reconstruct(), m, atol=tol)
        assert np.allclose(system.eigenvectors.conj().T @ system.eigenvectors, np.eye(dim), atol=1e-12)


def test_hermitian_eigen_degenerate_spectrum(rng):
    u = np.kron(random_unitary(rng), random_unitary(rng))
    m = u @ np.diag([1.0, 1.0, 1.0, -3.0]) @ u.conj().T
    system = hermitian_eigen(m)

    assert np.allclose(system.eigenvalues, [-3.0, 1.0, 1.0, 1.0], atol=1e-12)
    assert np.allclose(system.reconstruct(), m, atol=1e-12)


def test_hermitian_eigen_diagonal_input_needs_no_rotation():
    system = hermitian_eigen(np.diag([3.0, -1.0, 2.0, 0.0]))
    assert np.array_equal(system.eigenvalues, [-1.0, 0.0, 2.0, 3.0])


def test_hermitian_eigen_large_entries():
    m = 200 * (tensor(SIGMA_X, SIGMA_X) + tensor(SIGMA_Y, SIGMA_Y) + tensor(SIGMA_Z, SIGMA_Z)) / 4
    assert np.allclose(hermitian_eigen(m).eigenvalues, [-150.0, 50.0, 50.0, 50.0], atol=1e-10)


def test_hermitian_eigen_converges_on_singlet_hamiltonian():
    j = 0.8
    m = j * (tensor(SIGMA_X, SIGMA_X) + tensor(SIGMA_Y, SIGMA_Y) + tensor(SIGMA_Z, SIGMA_Z)) / 4
    system = hermitian_eigen(m)

    assert np.allclose(system.eigenvalues, [-0.75 * j, 0.25 * j, 0.25 * j, 0.25 * j], atol=1e-14)
    assert np.allclose(system.reconstruct(), m, atol=1e-14)


def test_hermitian_eigen_converges_on_werner_state():
    system = hermitian_eigen(werner_state(0.8))
    assert np.allclose(system.eigenvalues, [0.05, 0.05, 0.05, 0.85], atol=1e-14)


def test_hermitian_eigen_resolves_tiny_off_diagonal():
    # off-diagonal far below sqrt(eps) relative to the diagonal
    m = np.diag([1.0, 2.0, 3.0, 4.0]).astype(np.complex128)
    m[0, 1], m[1, 0] = 1e-10, 1e-10
    system = hermitian_eigen(m)

    assert system.eigenvalues[0] == pytest.approx(1.0 - 1e-20, abs=1e-15)
    assert abs(system.eigenvectors[1, 0]) == pytest.approx(1e-10, rel=1e-6)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_eigen_rejects_wrong_dimension():
    with pytest.raises(DimensionError):
        hermitian_eigen(np.eye(3))


def test_hermitian_eigen_sweep_cap(monkeypatch):
    monkeypatch.setattr("qmat.linalg.JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        hermitian_eigen(tensor(SIGMA_X, SIGMA_X))


@settings(max_examples=200, deadline=None)
@given(st.floats(**float_args), st.floats(**float_args), st.floats(**float_args), st.floats(**float_args))
def test_qubit_spectrum_matches_jacobi(a, d, re, im):
    m = np.array([[a, re + 1j * im], [re - 1j * im, d]])
    assert np.allclose(qubit_spectrum(m), hermitian_eigen(m).eigenvalues, atol=1e-12 * max(1.0, np.linalg.norm(m)))


def test_qubit_spectrum_is_batched(rng):
    stack = np.stack([random_hermitian(rng, 2) for _ in range(6)]).reshape(2, 3, 2, 2)
    spectra = qubit_spectrum(stack)

    assert spectra.shape == (2, 3, 2)
    assert np.allclose(spectra[1, 2], np.linalg.eigvalsh(stack[1, 2]))


def test_matrix_function_square_root(rng):
    rho = random_density_matrix(rng)
    root = matrix_function(rho, np.sqrt)
    assert np.allclose(root @ root, rho, atol=1e-12)


def test_shannon_and_binary_entropy():
    assert shannon_entropy(np.array([0.25] * 4)) == pytest.approx(2.0)
    assert shannon_entropy(np.array([1.0, 0.0])) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(binary_entropy(0.89))


@pytest.mark.parametrize("rho, expected", [
    (np.eye(4) / 4, 2.0),
    (np.eye(2) / 2, 1.0),
    (np.diag([1.0, 0.0, 0.0, 0.0]), 0.0),
    (np.diag([0.5, 0.5, 0.0, 0.0]), 1.0),
])
def test_von_neumann_entropy_known_values(rho, expected):
    assert von_neumann_entropy(rho) == pytest.approx(expected, abs=1e-12)


def test_von_neumann_entropy_pure_state(bell_state):
    assert von_neumann_entropy(bell_state) == pytest.approx(0.0, abs=1e-12)


def test_von_neumann_entropy_unitary_invariance(rng):
    rho = random_density_matrix(rng)
    u = random_unitary(rng, 4)
    assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


def test_von_neumann_entropy_rejects_negative_state():
    with pytest.raises(PositivityError):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_von_neumann_entropy_tolerates_float_noise():
    assert von_neumann_entropy(np.diag([1.0 + 1e-12, -1e-12])) == pytest.approx(0.0, abs=1e-10)


def test_check_density_matrix_trace():
    with pytest.raises(DomainError):
        check_density_matrix(np.eye(2))
    assert check_density_matrix(np.eye(2) / 2).dtype == np.complex128


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=math.pi / 2))
def test_entropy_of_reduced_pure_state_is_symmetric(t):
    psi = np.array([math.cos(t), 0.0, 0.0, math.sin(t)])
    rho = np.outer(psi, psi)
    assert von_neumann_entropy(partial_trace(rho, "A")) == pytest.approx(
        von_neumann_entropy(partial_trace(rho, "B")), abs=1e-12)
