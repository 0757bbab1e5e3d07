import math
from dataclasses import dataclass, replace
from typing import Callable, List

import numpy as np
import pandas as pd
from tqdm import tqdm

from entanglement import concurrence_general, concurrence_x
from models import ModelParams, CLOSED_FORM, SPECTRAL, thermal_state, thermal_state_closed_form, to_density_matrix
from qdiscord import PAULI_CANDIDATES, CorrelationReport, OptimizerConfig, classical_correlation, \
    conditional_entropies, quantum_discord
from qmat import binary_entropy, partial_trace, von_neumann_entropy
from utils import SUBSYSTEM_A

ORACLE_DRAWS = 1000
ORACLE_TOL = 1e-10
LIMIT_COUPLING = 200.0
LIMIT_TOL = 1e-3
PURE_STATE_POINTS = 15
PURE_STATE_TOL = 1e-6
OPTIMIZER_STATES = 50
SHORTCUT_STATES = 200
SHORTCUT_TOL = 1e-6
PAULI_TOL = 1e-9
DENSE_GRID_POINTS = 256
DENSE_GRID_TOL = 1e-4
SYMMETRY_STATES = 100
SYMMETRY_TOL = 1e-7
REPORT_MEASURES = ("mutual_info", "classical_corr", "discord", "concurrence", "eof")
CONCURRENCE_ROUTE_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_model_params(rng: np.random.Generator) -> ModelParams:
    """Couplings in [-3, 3], field in [0, 3], kT in [0.05, 5]."""
    jx, jy, jz = rng.uniform(-3.0, 3.0, size=3)
    return ModelParams(jx=jx, jy=jy, jz=jz, b=rng.uniform(0.0, 3.0), kT=rng.uniform(0.05, 5.0))


def random_x_state(rng: np.random.Generator) -> np.ndarray:
    """
    Random two-qubit X-state with complex coherences.

    The coherences are drawn inside the positivity bounds |rho_14|^2 <= rho_11 rho_44 and
    |rho_23|^2 <= rho_22 rho_33.
    """
    diagonal = rng.dirichlet(np.ones(4))
    outer = rng.uniform(0.0, 1.0) * math.sqrt(diagonal[0] * diagonal[3]) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
    inner = rng.uniform(0.0, 1.0) * math.sqrt(diagonal[1] * diagonal[2]) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))

    rho = np.diag(diagonal).astype(np.complex128)
    rho[0, 3], rho[3, 0] = outer, np.conj(outer)
    rho[1, 2], rho[2, 1] = inner, np.conj(inner)
    return rho


def pure_state(t: float) -> np.ndarray:
    """cos t |00> + sin t |11>."""
    psi = np.array([math.cos(t), 0.0, 0.0, math.sin(t)], dtype=np.complex128)
    return np.outer(psi, psi.conj())


def pauli_maximum(rho: np.ndarray) -> float:
    """Best classical correlation over the three Pauli-axis measurements on qubit B."""
    theta, phi = (np.array(angles) for angles in zip(*PAULI_CANDIDATES))
    unmeasured_entropy = von_neumann_entropy(partial_trace(rho, SUBSYSTEM_A))
    return float(np.max(unmeasured_entropy - conditional_entropies(rho, theta, phi)))


def report_deviation(a: CorrelationReport, b: CorrelationReport) -> float:
    """Largest difference between the correlation measures of two reports, measurement angles excluded."""
    return max(abs(getattr(a, name) - getattr(b, name)) for name in REPORT_MEASURES)


def dense_grid_maximum(rho: np.ndarray, points: int = DENSE_GRID_POINTS) -> float:
    theta, phi = np.meshgrid(np.linspace(0.0, math.pi, points), np.linspace(0.0, 2 * math.pi, points, endpoint=False),
                             indexing="ij")
    unmeasured_entropy = von_neumann_entropy(partial_trace(rho, SUBSYSTEM_A))
    return float(np.max(unmeasured_entropy - conditional_entropies(rho, theta.ravel(), phi.ravel())))


def check_oracle(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(ORACLE_DRAWS):
        p = random_model_params(rng)
        worst = max(worst, float(np.max(np.abs(thermal_state(p, CLOSED_FORM) - thermal_state(p, SPECTRAL)))))
    return CheckResult("closed form vs spectral Gibbs state", worst <= ORACLE_TOL,
                       f"max entry deviation {worst:.3e} over {ORACLE_DRAWS} draws")


def check_limits(rng: np.random.Generator) -> CheckResult:
    ferro = quantum_discord(thermal_state(ModelParams.xxx(-LIMIT_COUPLING)))
    antiferro = quantum_discord(thermal_state(ModelParams.xxx(LIMIT_COUPLING)))
    passed = (abs(ferro.discord - 1 / 3) <= LIMIT_TOL and ferro.eof <= LIMIT_TOL
              and abs(antiferro.discord - 1) <= LIMIT_TOL and abs(antiferro.eof - 1) <= LIMIT_TOL)
    return CheckResult("strong coupling limits", passed,
                       f"J=-{LIMIT_COUPLING:g}: D={ferro.discord:.6f}, EoF={ferro.eof:.6f}; "
                       f"J=+{LIMIT_COUPLING:g}: D={antiferro.discord:.6f}, EoF={antiferro.eof:.6f}")


def check_pure_states(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for t in np.linspace(0.0, math.pi / 2, PURE_STATE_POINTS):
        entanglement_entropy = float(binary_entropy(math.cos(t) ** 2))
        worst = max(worst, abs(quantum_discord(pure_state(t)).discord - entanglement_entropy))
    return CheckResult("pure states: discord equals entanglement entropy", worst < PURE_STATE_TOL,
                       f"max deviation {worst:.3e}")


def check_optimizer(rng: np.random.Generator) -> CheckResult:
    cfg = OptimizerConfig()
    worst_pauli, worst_grid = math.inf, math.inf
    for _ in range(OPTIMIZER_STATES):
        rho = random_x_state(rng)
        value, _ = classical_correlation(rho, cfg)

        worst_pauli = min(worst_pauli, value - pauli_maximum(rho))
        worst_grid = min(worst_grid, value - dense_grid_maximum(rho))

    return CheckResult("measurement optimizer soundness", worst_pauli >= -PAULI_TOL and worst_grid >= -DENSE_GRID_TOL,
                       f"min margin over Pauli axes {worst_pauli:.3e}, over dense grid {worst_grid:.3e}")


def check_pauli_shortcut(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(SHORTCUT_STATES):
        rho = thermal_state(replace(random_model_params(rng), b=0.0))
        value, _ = classical_correlation(rho)
        worst = max(worst, abs(value - pauli_maximum(rho)))
    return CheckResult("Pauli-axis shortcut on zero-field states", worst < SHORTCUT_TOL,
                       f"max gap to full optimization {worst:.3e} over {SHORTCUT_STATES} states")


def check_symmetries(rng: np.random.Generator) -> CheckResult:
    worst_xy, worst_swap = 0.0, 0.0
    for _ in range(SYMMETRY_STATES):
        p = random_model_params(rng)
        rho = thermal_state(p)
        measured_b = quantum_discord(rho)

        worst_xy = max(worst_xy, report_deviation(quantum_discord(thermal_state(p.swapped_xy())), measured_b))
        worst_swap = max(worst_swap, abs(quantum_discord(rho, measured=SUBSYSTEM_A).discord - measured_b.discord))

    return CheckResult("Jx <-> Jy and qubit swap symmetries", worst_xy < SYMMETRY_TOL and worst_swap < SYMMETRY_TOL,
                       f"max change {worst_xy:.3e} (Jx <-> Jy), {worst_swap:.3e} (qubit swap)")


def check_concurrence_routes(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(SYMMETRY_STATES):
        x = thermal_state_closed_form(random_model_params(rng))
        worst = max(worst, abs(concurrence_x(x).concurrence - concurrence_general(to_density_matrix(x))))
    return CheckResult("X-form vs general concurrence", worst < CONCURRENCE_ROUTE_TOL, f"max deviation {worst:.3e}")


CHECKS: List[Callable[[np.random.Generator], CheckResult]] = [
    check_oracle, check_limits, check_pure_states, check_optimizer, check_pauli_shortcut, check_symmetries,
    check_concurrence_routes,
]


def run_selftest(seed: int = 0, progress: bool = True) -> List[CheckResult]:
    """
    Run the oracle-agreement and invariant checks.

    Args:
        seed (int): Seed of the random draws.
        progress (bool): Whether to show a tqdm progress bar.

    Returns:
        list of CheckResult: One result per check; a check that raises counts as failed.
    """
    rng = np.random.default_rng(seed)
    results = []
    for check in tqdm(CHECKS, desc="Running self-test", disable=not progress):
        try:
            results.append(check(rng))
        except Exception as e:
            results.append(CheckResult(check.__name__, False, f"{type(e).__name__}: {e}"))
    return results


def results_table(results: List[CheckResult]) -> str:
    frame = pd.DataFrame([{"check": r.name, "status": "PASS" if r.passed else "FAIL", "detail": r.detail}
                          for r in results])
    return frame.to_string(index=False)
