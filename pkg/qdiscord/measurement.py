import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils import COARSE_THETA_POINTS, COARSE_PHI_POINTS, REFINEMENT_ROUNDS, REFINEMENT_WINDOW, REFINEMENT_SHRINK, \
    DomainError

TWO_PI = 2 * math.pi

# (theta, phi) of the z, x and y measurement axes
PAULI_CANDIDATES = ((0.0, 0.0), (math.pi / 2, 0.0), (math.pi / 2, math.pi / 2))


@dataclass(frozen=True)
class MeasurementBasis:
    """
    Von Neumann measurement on one qubit along the Bloch direction (theta, phi).

    The projectors are Π1 = |v><v| and Π2 = |v⊥><v⊥| with |v> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>.
    """
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise DomainError(f"measurement angles must be finite, got ({self.theta}, {self.phi}).")
        if not (-1e-12 <= self.theta <= math.pi + 1e-12):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}.")

        object.__setattr__(self, "theta", float(min(max(self.theta, 0.0), math.pi)))
        phi = float(self.phi % TWO_PI)
        object.__setattr__(self, "phi", 0.0 if phi >= TWO_PI else phi)

    def vectors(self) -> np.ndarray:
        return basis_vectors(np.array([self.theta]), np.array([self.phi]))[0]

    def projectors(self) -> Tuple[np.ndarray, np.ndarray]:
        v, v_perp = self.vectors()
        return np.outer(v, v.conj()), np.outer(v_perp, v_perp.conj())


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Settings of the measurement search: a uniform coarse grid over θ ∈ [0, π] and φ ∈ [0, 2π), then rounds
    of local grid refinement around the incumbent, shrinking the step by `shrink` each round.
    """
    coarse_theta: int = COARSE_THETA_POINTS
    coarse_phi: int = COARSE_PHI_POINTS
    rounds: int = REFINEMENT_ROUNDS
    window: int = REFINEMENT_WINDOW
    shrink: float = REFINEMENT_SHRINK

    def __post_init__(self):
        if self.coarse_theta < 2 or self.coarse_phi < 1:
            raise ValueError("coarse grid needs at least 2 theta points and 1 phi point.")
        if self.rounds < 0 or self.window < 1 or self.shrink <= 1:
            raise ValueError("refinement needs rounds >= 0, window >= 1 and shrink > 1.")


def basis_vectors(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """
    Measurement vectors for arrays of angles.

    Args:
        theta (np.ndarray): Polar angles, shape (n,).
        phi (np.ndarray): Azimuthal angles, shape (n,).

    Returns:
        np.ndarray: Shape (n, 2, 2); [k, 0] is |v> and [k, 1] is |v⊥> for the k-th angle pair.
    """
    cos = np.cos(np.asarray(theta, dtype=np.float64) / 2)
    sin = np.sin(np.asarray(theta, dtype=np.float64) / 2)
    phase = np.exp(1j * np.asarray(phi, dtype=np.float64))

    vectors = np.empty(cos.shape + (2, 2), dtype=np.complex128)
    vectors[..., 0, 0] = cos
    vectors[..., 0, 1] = phase * sin
    vectors[..., 1, 0] = -phase.conj() * sin
    vectors[..., 1, 1] = cos
    return vectors


def coarse_grid(cfg: OptimizerConfig) -> Tuple[np.ndarray, np.ndarray]:
    theta, phi = np.meshgrid(np.linspace(0.0, math.pi, cfg.coarse_theta),
                             np.linspace(0.0, TWO_PI, cfg.coarse_phi, endpoint=False), indexing="ij")
    return theta.ravel(), phi.ravel()


def refinement_grid(theta: float, phi: float, theta_step: float, phi_step: float,
                    window: int) -> Tuple[np.ndarray, np.ndarray]:
    offsets = np.arange(window) - (window - 1) / 2
    thetas, phis = np.meshgrid(np.clip(theta + offsets * theta_step, 0.0, math.pi),
                               np.mod(phi + offsets * phi_step, TWO_PI), indexing="ij")
    return thetas.ravel(), phis.ravel()
