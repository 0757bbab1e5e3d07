import math
from dataclasses import dataclass

import numpy as np

from models import XStateElements
from qmat import SIGMA_Y, tensor, hermitian_eigen, matrix_function, check_density_matrix, binary_entropy
from utils import EOF_DOMAIN_TOL, DomainError

SIGMA_YY = tensor(SIGMA_Y, SIGMA_Y)

BRANCH_NONE = "none"
BRANCH_LAMBDA1 = "lambda1"
BRANCH_LAMBDA2 = "lambda2"


@dataclass(frozen=True)
class ConcurrenceBreakdown:
    """
    X-form concurrence C = 2 max{0, Λ1, Λ2} / Z.

    Attributes:
        lambda1 (float): Λ1 = |B12| - sqrt(A11 A22), in the units of the unnormalized elements.
        lambda2 (float): Λ2 = |A12| - B11.
        concurrence (float): C in [0, 1].
        branch (str): Which of "none", "lambda1", "lambda2" attained the maximum.
    """
    lambda1: float
    lambda2: float
    concurrence: float
    branch: str


def concurrence_x(x: XStateElements) -> ConcurrenceBreakdown:
    lambda1 = abs(x.b12) - math.sqrt(max(x.a11 * x.a22, 0.0))
    lambda2 = abs(x.a12) - x.b11

    if max(lambda1, lambda2) <= 0:
        return ConcurrenceBreakdown(lambda1=lambda1, lambda2=lambda2, concurrence=0.0, branch=BRANCH_NONE)

    branch = BRANCH_LAMBDA1 if lambda1 >= lambda2 else BRANCH_LAMBDA2
    concurrence = min(2 * max(lambda1, lambda2) / x.z, 1.0)
    return ConcurrenceBreakdown(lambda1=lambda1, lambda2=lambda2, concurrence=concurrence, branch=branch)


def wootters_lambdas(rho) -> np.ndarray:
    """
    Square roots of the eigenvalues of rho rho~, in decreasing order, with rho~ = (σy⊗σy) rho* (σy⊗σy).

    They are taken from the Hermitian product sqrt(rho) rho~ sqrt(rho). For a real rho that product is
    the square of the Hermitian matrix sqrt(rho) (σy⊗σy) sqrt(rho), whose eigenvalue magnitudes are used
    directly so that near-zero values are not square-rooted float noise.

    Args:
        rho: 4x4 density matrix.

    Returns:
        np.ndarray: λ1 >= λ2 >= λ3 >= λ4 >= 0.
    """
    rho = check_density_matrix(rho)
    sqrt_rho = matrix_function(rho, lambda e: np.sqrt(np.clip(e, 0.0, None)))

    if np.max(np.abs(rho.imag)) == 0.0:
        sqrt_rho = sqrt_rho.real.astype(np.complex128)
        m = sqrt_rho @ SIGMA_YY @ sqrt_rho
        lambdas = np.abs(hermitian_eigen((m + m.conj().T) / 2).eigenvalues)
    else:
        rho_tilde = SIGMA_YY @ rho.conj() @ SIGMA_YY
        m = sqrt_rho @ rho_tilde @ sqrt_rho
        lambdas = np.sqrt(np.clip(hermitian_eigen((m + m.conj().T) / 2).eigenvalues, 0.0, None))

    return np.sort(lambdas)[::-1]


def concurrence_general(rho) -> float:
    """
    Wootters concurrence C = max{0, λ1 - λ2 - λ3 - λ4} of an arbitrary two-qubit state.

    Args:
        rho: 4x4 density matrix.

    Returns:
        float: C in [0, 1].
    """
    lambdas = wootters_lambdas(rho)
    return float(min(max(0.0, lambdas[0] - np.sum(lambdas[1:])), 1.0))


def eof_from_concurrence(c: float) -> float:
    """
    Entanglement of formation from the concurrence: EoF = h((1 + sqrt(1 - C^2)) / 2), h the binary entropy.

    Args:
        c (float): Concurrence in [0, 1]; values within EOF_DOMAIN_TOL outside are clamped.

    Returns:
        float: EoF in bits, in [0, 1].
    """
    if not (-EOF_DOMAIN_TOL <= c <= 1 + EOF_DOMAIN_TOL):
        raise DomainError(f"concurrence must lie in [0, 1], got {c}.")

    c = min(max(c, 0.0), 1.0)
    f = (1 + math.sqrt(1 - c * c)) / 2
    return float(binary_entropy(f))
