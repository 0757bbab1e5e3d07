import math
import os
from typing import Final

# Matrix checks
HERMITIAN_TOL: Final[float] = 1e-10
TRACE_TOL: Final[float] = 1e-9
NEGATIVE_EIGENVALUE_TOL: Final[float] = 1e-9

# Jacobi eigensolver
JACOBI_TOL: Final[float] = 1e-13
JACOBI_MAX_SWEEPS: Final[int] = 100

# Thermal state
LOG_SCALE_THRESHOLD: Final[float] = 700 * math.log(2)

# Entanglement
EOF_DOMAIN_TOL: Final[float] = 1e-12

# Discord
PROBABILITY_FLOOR: Final[float] = 1e-14
DISCORD_CLAMP_TOL: Final[float] = 1e-7
COARSE_THETA_POINTS: Final[int] = 64
COARSE_PHI_POINTS: Final[int] = 128
REFINEMENT_ROUNDS: Final[int] = 6
REFINEMENT_WINDOW: Final[int] = 9
REFINEMENT_SHRINK: Final[float] = 4.0
SUBSYSTEM_A: Final[str] = "A"
SUBSYSTEM_B: Final[str] = "B"

# Sweeps
MIN_AXIS_POINTS: Final[int] = 2
AXIS_ZERO_SNAP: Final[float] = 1e-12
MUTUAL_INFO: Final[str] = "mutual"
CLASSICAL: Final[str] = "classical"
DISCORD: Final[str] = "discord"
CONCURRENCE: Final[str] = "concurrence"
EOF: Final[str] = "eof"
ALLOWED_QUANTITIES = [DISCORD, CLASSICAL, MUTUAL_INFO, CONCURRENCE, EOF]
ALLOWED_AXES = ["jx", "jy", "jz", "j", "jxyz", "delta", "b", "kT"]

# Detectors
KINK_MIN_POINTS: Final[int] = 5
KINK_FACTOR: Final[float] = 10.0
KINK_FLOOR: Final[float] = 1e-3
UNIFORM_STEP_RTOL: Final[float] = 1e-9
REGROWTH_MIN_POINTS: Final[int] = 20
REGROWTH_NONZERO_MIN: Final[float] = 1e-4
REGROWTH_REBOUND: Final[float] = 1e-3
QPT_ZERO_TOL: Final[float] = 1e-9
QPT_NEIGHBOR_TOL: Final[float] = 1e-4

# Output
CSV_SIGNIFICANT_DIGITS: Final[int] = 12
CSV_FLOAT_FORMAT: Final[str] = f"%.{CSV_SIGNIFICANT_DIGITS}g"
REPORT_COLUMNS = ["mutual_info", "classical_corr", "discord", "concurrence", "eof", "theta_opt", "phi_opt"]

# Presets
CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "cli", "configs")
FIGURES_CONFIG_FILE = "figures.yaml"

# Exit codes
EXIT_OK: Final[int] = 0
EXIT_RUNTIME_ERROR: Final[int] = 1
EXIT_USAGE_ERROR: Final[int] = 2

VERSION: Final[str] = "1.0.0"
