import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from utils import HERMITIAN_TOL, JACOBI_TOL, JACOBI_MAX_SWEEPS, NEGATIVE_EIGENVALUE_TOL, TRACE_TOL, SUBSYSTEM_A, \
    SUBSYSTEM_B, DimensionError, HermiticityError, ConvergenceError, PositivityError, DomainError

# Standard basis ordering {|00>, |01>, |10>, |11>}, qubit A is the left tensor factor.
IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SWAP = np.array([[1, 0, 0, 0],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1]], dtype=np.complex128)

ALLOWED_DIMS = (2, 4)


@dataclass(frozen=True)
class HermitianEigenSystem:
    """
    Eigendecomposition of a Hermitian matrix.

    Attributes:
        eigenvalues (np.ndarray): Real eigenvalues in ascending order.
        eigenvectors (np.ndarray): Orthonormal eigenvectors stored as columns, matching `eigenvalues`.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def as_matrix(m, dims: Tuple[int, ...] = ALLOWED_DIMS) -> np.ndarray:
    """
    Convert the input to a complex square matrix and check its dimension.

    Args:
        m: Array-like square matrix.
        dims (tuple of int): Accepted dimensions.

    Returns:
        np.ndarray: The matrix as complex128.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise DimensionError(f"expected a square matrix of dimension {' or '.join(str(d) for d in dims)}, "
                             f"got shape {m.shape}.")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2).conj()


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def tensor(a, b) -> np.ndarray:
    """
    Kronecker product of two single-qubit operators, with `a` acting on qubit A (left factor).

    Args:
        a: 2x2 operator on qubit A.
        b: 2x2 operator on qubit B.

    Returns:
        np.ndarray: The 4x4 operator a ⊗ b.
    """
    return np.kron(as_matrix(a, dims=(2,)), as_matrix(b, dims=(2,)))


def partial_trace(rho, keep: str = SUBSYSTEM_A) -> np.ndarray:
    """
    Reduce a two-qubit operator to one of its subsystems.

    Args:
        rho: 4x4 two-qubit operator.
        keep (str): Subsystem to keep, "A" (left factor) or "B" (right factor).

    Returns:
        np.ndarray: The 2x2 reduced operator.
    """
    rho = as_matrix(rho, dims=(4,)).reshape(2, 2, 2, 2)

    if keep == SUBSYSTEM_A:
        return np.einsum("ijkj->ik", rho)
    if keep == SUBSYSTEM_B:
        return np.einsum("ijil->jl", rho)

    raise ValueError(f"subsystem: '{keep}' not supported. Try '{SUBSYSTEM_A}' or '{SUBSYSTEM_B}'.")


def swap_qubits(rho) -> np.ndarray:
    rho = as_matrix(rho, dims=(4,))
    return SWAP @ rho @ SWAP


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Apply one complex Jacobi rotation annihilating a[p, q].

    The phase of a[p, q] is absorbed first, leaving a real symmetric 2x2 pivot block that a plane
    rotation diagonalizes.
    """
    g = abs(a[p, q])
    if g == 0.0:
        return a, v

    phase = a[p, q] / g
    zeta = (a[q, q].real - a[p, p].real) / (2.0 * g)
    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    rotation = np.eye(a.shape[0], dtype=np.complex128)
    rotation[p, p] = c
    rotation[p, q] = s
    rotation[q, p] = -phase.conjugate() * s
    rotation[q, q] = phase.conjugate() * c

    a = rotation.conj().T @ a @ rotation
    a[p, q] = a[q, p] = 0.0
    return a, v @ rotation


def hermitian_eigen(m) -> HermitianEigenSystem:
    """
    Eigendecomposition of a 2x2 or 4x4 Hermitian matrix by cyclic Jacobi rotations.

    Sweeps run over all (p, q) pivots until the off-diagonal Frobenius norm drops below
    JACOBI_TOL * max(1, ||m||_F).

    Args:
        m: Hermitian matrix.

    Returns:
        HermitianEigenSystem: Ascending eigenvalues and orthonormal eigenvector columns.
    """
    a = as_matrix(m)
    deviation = np.max(np.abs(a - a.conj().T))
    if deviation > HERMITIAN_TOL:
        raise HermiticityError(f"matrix is not Hermitian: max |m - m^H| = {deviation:.3e} > {HERMITIAN_TOL}.")

    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_diagonal_norm(a) >= threshold:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps "
                                   f"(off-diagonal norm {_off_diagonal_norm(a):.3e}).")
        for p in range(n - 1):
            for q in range(p + 1, n):
                a, v = _jacobi_rotate(a, v, p, q)
        sweeps += 1

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(eigenvalues, kind="stable")
    return HermitianEigenSystem(eigenvalues=eigenvalues[order], eigenvectors=v[:, order])


def matrix_function(m, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """
    Apply a scalar function to a Hermitian matrix through its eigendecomposition: V f(Λ) V^H.

    Args:
        m: Hermitian matrix.
        f (callable): Vectorized function applied to the eigenvalues.

    Returns:
        np.ndarray: f(m).
    """
    system = hermitian_eigen(m)
    return (system.eigenvectors * f(system.eigenvalues)) @ system.eigenvectors.conj().T


def qubit_spectrum(m: np.ndarray) -> np.ndarray:
    """
    Closed-form eigenvalues of a stack of 2x2 Hermitian matrices.

    Args:
        m (np.ndarray): Array of shape (..., 2, 2).

    Returns:
        np.ndarray: Array of shape (..., 2) with ascending eigenvalues.
    """
    m = np.asarray(m)
    if m.shape[-2:] != (2, 2):
        raise DimensionError(f"expected a stack of 2x2 matrices, got shape {m.shape}.")

    half_trace = (m[..., 0, 0].real + m[..., 1, 1].real) / 2
    radius = np.hypot((m[..., 0, 0].real - m[..., 1, 1].real) / 2, np.abs(m[..., 0, 1]))
    return np.stack([half_trace - radius, half_trace + radius], axis=-1)


def shannon_entropy(p: np.ndarray, axis: int = -1) -> np.ndarray:
    """
    Shannon entropy in bits along `axis`, with 0 log 0 = 0 and probabilities clipped to [0, 1].
    """
    p = np.clip(np.asarray(p, dtype=np.float64), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return np.sum(terms, axis=axis)


def binary_entropy(x):
    x = np.asarray(x, dtype=np.float64)
    h = shannon_entropy(np.stack([x, 1 - x], axis=-1))
    return float(h) if h.ndim == 0 else h


def check_density_matrix(rho) -> np.ndarray:
    """
    Check that `rho` is Hermitian with unit trace.

    Args:
        rho: Candidate density matrix.

    Returns:
        np.ndarray: The matrix as complex128.
    """
    rho = as_matrix(rho)
    if not is_hermitian(rho):
        raise HermiticityError(f"density matrix is not Hermitian within {HERMITIAN_TOL}.")

    trace = np.trace(rho).real
    if abs(trace - 1.0) > TRACE_TOL:
        raise DomainError(f"density matrix trace is {trace:.12g}, expected 1 within {TRACE_TOL}.")
    return rho


def clamp_spectrum(eigenvalues: np.ndarray) -> np.ndarray:
    """
    Clamp float-noise negative eigenvalues to zero.

    Eigenvalues below -NEGATIVE_EIGENVALUE_TOL raise a PositivityError.
    """
    smallest = float(np.min(eigenvalues))
    if smallest < -NEGATIVE_EIGENVALUE_TOL:
        raise PositivityError(f"state has eigenvalue {smallest:.3e} < -{NEGATIVE_EIGENVALUE_TOL}.")
    return np.clip(eigenvalues, 0.0, 1.0)


def von_neumann_entropy(rho) -> float:
    """
    Von Neumann entropy S(rho) = -Tr(rho log2 rho) in bits.

    Args:
        rho: 2x2 or 4x4 density matrix.

    Returns:
        float: Entropy in [0, log2(dim)].
    """
    rho = check_density_matrix(rho)
    eigenvalues = clamp_spectrum(hermitian_eigen(rho).eigenvalues)
    return float(shannon_entropy(eigenvalues))
