from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from entanglement import concurrence_general, eof_from_concurrence
from qmat import partial_trace, swap_qubits, von_neumann_entropy, qubit_spectrum, shannon_entropy, \
    check_density_matrix
from utils import PROBABILITY_FLOOR, DISCORD_CLAMP_TOL, SUBSYSTEM_A, SUBSYSTEM_B, PositivityError
from .measurement import MeasurementBasis, OptimizerConfig, PAULI_CANDIDATES, basis_vectors, coarse_grid, \
    refinement_grid, TWO_PI


@dataclass(frozen=True)
class CorrelationReport:
    """
    Correlations of a two-qubit state, all entropic quantities in bits.

    Attributes:
        mutual_info (float): I(rho) = S(rho_A) + S(rho_B) - S(rho).
        classical_corr (float): Q(rho), the maximum over von Neumann measurements of S(rho_A) - S(rho|{Π_j}).
        discord (float): D(rho) = I(rho) - Q(rho).
        optimal_basis (MeasurementBasis): Measurement attaining Q(rho).
        concurrence (float): Wootters concurrence.
        eof (float): Entanglement of formation.
    """
    mutual_info: float
    classical_corr: float
    discord: float
    optimal_basis: MeasurementBasis
    concurrence: float
    eof: float

    def as_dict(self) -> dict:
        return {"mutual_info": self.mutual_info, "classical_corr": self.classical_corr, "discord": self.discord,
                "concurrence": self.concurrence, "eof": self.eof,
                "theta_opt": self.optimal_basis.theta, "phi_opt": self.optimal_basis.phi}


def _measured_on_b(rho, measured: str) -> np.ndarray:
    rho = check_density_matrix(rho)

    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit density matrix, got shape {rho.shape}.")
    if measured == SUBSYSTEM_B:
        return rho
    if measured == SUBSYSTEM_A:
        return swap_qubits(rho)

    raise ValueError(f"measured subsystem: '{measured}' not supported. Try '{SUBSYSTEM_A}' or '{SUBSYSTEM_B}'.")


def conditional_entropies(rho: np.ndarray, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """
    S(rho|{Π_j}) = Σ_j p_j S(rho_j) for many measurements on qubit B at once.

    The conditional state of qubit A for outcome j is (I ⊗ <v_j|) rho (I ⊗ |v_j>) / p_j; outcomes with
    p_j < PROBABILITY_FLOOR contribute nothing.

    Args:
        rho (np.ndarray): 4x4 density matrix, already validated.
        theta (np.ndarray): Polar angles, shape (n,).
        phi (np.ndarray): Azimuthal angles, shape (n,).

    Returns:
        np.ndarray: Conditional entropies, shape (n,).
    """
    vectors = basis_vectors(theta, phi)
    blocks = rho.reshape(2, 2, 2, 2)
    # unnormalized conditional states of A, indexed [n, outcome, a, a']
    states = np.einsum("njb,abcd,njd->njac", vectors.conj(), blocks, vectors)

    probabilities = np.real(states[..., 0, 0] + states[..., 1, 1])
    spectra = np.clip(qubit_spectrum(states), 0.0, None)
    resolved = probabilities >= PROBABILITY_FLOOR
    safe = np.where(resolved, probabilities, 1.0)
    entropies = np.where(resolved, probabilities * shannon_entropy(spectra / safe[..., None]), 0.0)
    return np.sum(entropies, axis=-1)


def mutual_information(rho) -> float:
    rho = check_density_matrix(rho)
    value = (von_neumann_entropy(partial_trace(rho, SUBSYSTEM_A))
             + von_neumann_entropy(partial_trace(rho, SUBSYSTEM_B))
             - von_neumann_entropy(rho))
    return max(value, 0.0)


def conditional_entropy(rho, m: MeasurementBasis, measured: str = SUBSYSTEM_B) -> float:
    rho = _measured_on_b(rho, measured)
    return float(conditional_entropies(rho, np.array([m.theta]), np.array([m.phi]))[0])


def classical_correlation(rho, cfg: Optional[OptimizerConfig] = None,
                          measured: str = SUBSYSTEM_B) -> Tuple[float, MeasurementBasis]:
    """
    Q(rho) = max over von Neumann measurements {Π_j} on the measured qubit of S(rho_A) - S(rho|{Π_j}).

    The three Pauli axes and a uniform coarse grid are evaluated first; the best of them is then refined
    with `cfg.rounds` local window grids.

    Args:
        rho: 4x4 density matrix.
        cfg (OptimizerConfig, optional): Search settings, defaults if None.
        measured (str): Measured qubit, "B" (default) or "A".

    Returns:
        tuple: The classical correlation in bits and the measurement attaining it.
    """
    cfg = cfg if cfg is not None else OptimizerConfig()
    rho = _measured_on_b(rho, measured)
    unmeasured_entropy = von_neumann_entropy(partial_trace(rho, SUBSYSTEM_A))

    pauli_theta, pauli_phi = (np.array(angles) for angles in zip(*PAULI_CANDIDATES))
    grid_theta, grid_phi = coarse_grid(cfg)
    theta = np.concatenate([pauli_theta, grid_theta])
    phi = np.concatenate([pauli_phi, grid_phi])

    values = unmeasured_entropy - conditional_entropies(rho, theta, phi)
    best = int(np.argmax(values))
    best_value, best_theta, best_phi = float(values[best]), float(theta[best]), float(phi[best])

    theta_step = np.pi / (cfg.coarse_theta - 1)
    phi_step = TWO_PI / cfg.coarse_phi
    for _ in range(cfg.rounds):
        theta_step /= cfg.shrink
        phi_step /= cfg.shrink
        theta, phi = refinement_grid(best_theta, best_phi, theta_step, phi_step, cfg.window)
        values = unmeasured_entropy - conditional_entropies(rho, theta, phi)
        best = int(np.argmax(values))
        if values[best] > best_value:
            best_value, best_theta, best_phi = float(values[best]), float(theta[best]), float(phi[best])

    return best_value, MeasurementBasis(theta=best_theta, phi=best_phi)


def quantum_discord(rho, cfg: Optional[OptimizerConfig] = None, measured: str = SUBSYSTEM_B) -> CorrelationReport:
    """
    Quantum discord D = I - Q together with the classical correlation, concurrence and EoF.

    Discord in [-DISCORD_CLAMP_TOL, 0) is optimizer slack and is clamped to 0; anything lower raises.

    Args:
        rho: 4x4 density matrix.
        cfg (OptimizerConfig, optional): Measurement search settings.
        measured (str): Measured qubit, "B" (default) or "A".

    Returns:
        CorrelationReport: All correlation quantities of the state.
    """
    rho = _measured_on_b(rho, measured)
    mutual_info = mutual_information(rho)
    classical_corr, basis = classical_correlation(rho, cfg)

    discord = mutual_info - classical_corr
    if discord < -DISCORD_CLAMP_TOL:
        raise PositivityError(f"discord {discord:.3e} is below -{DISCORD_CLAMP_TOL}: I = {mutual_info:.12g}, "
                              f"Q = {classical_corr:.12g}.")
    discord = max(discord, 0.0)

    concurrence = concurrence_general(rho)
    return CorrelationReport(mutual_info=mutual_info, classical_corr=classical_corr, discord=discord,
                             optimal_basis=basis, concurrence=concurrence, eof=eof_from_concurrence(concurrence))
