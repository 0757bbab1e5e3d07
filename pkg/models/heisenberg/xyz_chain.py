import math
from dataclasses import dataclass, replace

import numpy as np

from qmat import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, tensor, hermitian_eigen
from utils import DomainError

SPIN_X = SIGMA_X / 2
SPIN_Y = SIGMA_Y / 2
SPIN_Z = SIGMA_Z / 2


@dataclass(frozen=True)
class ModelParams:
    """
    Physical inputs of the two-qubit XYZ chain in a field along z, dimensionless with hbar = k = 1.

    Attributes:
        jx (float): Coupling of the S_x S_x term.
        jy (float): Coupling of the S_y S_y term.
        jz (float): Coupling of the S_z S_z term.
        b (float): Magnetic field acting on both qubits.
        kT (float): Temperature times Boltzmann's constant, strictly positive.
    """
    jx: float = 0.0
    jy: float = 0.0
    jz: float = 0.0
    b: float = 0.0
    kT: float = 1.0

    def __post_init__(self):
        for name in ("jx", "jy", "jz", "b", "kT"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}.")
            object.__setattr__(self, name, float(value))

        if self.kT <= 0:
            raise DomainError(f"kT must be strictly positive, got {self.kT}.")

    @classmethod
    def xxx(cls, j: float, b: float = 0.0, kT: float = 1.0) -> "ModelParams":
        return cls(jx=j, jy=j, jz=j, b=b, kT=kT)

    @classmethod
    def xxz(cls, j: float, jz: float, b: float = 0.0, kT: float = 1.0) -> "ModelParams":
        return cls(jx=j, jy=j, jz=jz, b=b, kT=kT)

    @classmethod
    def ising(cls, j: float, b: float = 0.0, kT: float = 1.0) -> "ModelParams":
        return cls(jx=j, b=b, kT=kT)

    def swapped_xy(self) -> "ModelParams":
        return replace(self, jx=self.jy, jy=self.jx)

    def as_dict(self) -> dict:
        return {"jx": self.jx, "jy": self.jy, "jz": self.jz, "b": self.b, "kT": self.kT}


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """
    H = B (S_z ⊗ I + I ⊗ S_z) + Jx S_x ⊗ S_x + Jy S_y ⊗ S_y + Jz S_z ⊗ S_z, with S = sigma / 2.

    Args:
        p (ModelParams): Couplings and field.

    Returns:
        np.ndarray: The 4x4 Hamiltonian in the standard basis.
    """
    return (p.b * (tensor(SPIN_Z, IDENTITY_2) + tensor(IDENTITY_2, SPIN_Z))
            + p.jx * tensor(SPIN_X, SPIN_X)
            + p.jy * tensor(SPIN_Y, SPIN_Y)
            + p.jz * tensor(SPIN_Z, SPIN_Z))


def thermal_state_spectral(p: ModelParams) -> np.ndarray:
    """
    Gibbs state exp(-H/kT)/Z built from the eigendecomposition of H.

    The lowest energy is factored out of the Boltzmann weights so that no exponential overflows.

    Args:
        p (ModelParams): Model parameters.

    Returns:
        np.ndarray: The normalized 4x4 thermal state.
    """
    system = hermitian_eigen(build_hamiltonian(p))
    weights = np.exp(-(system.eigenvalues - system.eigenvalues[0]) / p.kT)
    rho = (system.eigenvectors * (weights / np.sum(weights))) @ system.eigenvectors.conj().T
    return (rho + rho.conj().T) / 2
