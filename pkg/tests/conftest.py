import math

import numpy as np
import pytest

from models import ModelParams


def ket(*amplitudes) -> np.ndarray:
    return np.array(amplitudes, dtype=np.complex128)


def projector(psi: np.ndarray) -> np.ndarray:
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


PHI_PLUS = ket(1, 0, 0, 1) / math.sqrt(2)
PHI_MINUS = ket(1, 0, 0, -1) / math.sqrt(2)
PSI_PLUS = ket(0, 1, 1, 0) / math.sqrt(2)
PSI_MINUS = ket(0, 1, -1, 0) / math.sqrt(2)
BELL_STATES = [PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS]


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng: np.random.Generator, dim: int = 4, scale: float = 1.0) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (z + z.conj().T) / 2


def random_density_matrix(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def bell_diagonal_state(weights) -> np.ndarray:
    return sum(w * projector(psi) for w, psi in zip(weights, BELL_STATES))


def werner_state(p: float) -> np.ndarray:
    return p * projector(PSI_MINUS) + (1 - p) * np.eye(4, dtype=np.complex128) / 4


@pytest.fixture
def rng():
    return np.random.default_rng(20100701)


@pytest.fixture(params=range(len(BELL_STATES)), ids=["phi+", "phi-", "psi+", "psi-"])
def bell_state(request):
    return projector(BELL_STATES[request.param])


@pytest.fixture
def product_state():
    a = np.array([[0.7, 0.2], [0.2, 0.3]], dtype=np.complex128)
    b = np.array([[0.4, 0.1j], [-0.1j, 0.6]], dtype=np.complex128)
    return np.kron(a, b)


@pytest.fixture
def xxz_rise_params():
    return ModelParams.xxz(j=0.4, jz=-0.5)
