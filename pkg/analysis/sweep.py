import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from models import ModelParams, thermal_state
from qdiscord import CorrelationReport, OptimizerConfig, quantum_discord
from utils import ALLOWED_AXES, ALLOWED_QUANTITIES, MIN_AXIS_POINTS, MUTUAL_INFO, CLASSICAL, DISCORD, CONCURRENCE, \
    EOF, REPORT_COLUMNS, DomainError, SweepSpecError, SweepEvaluationError, build_axis

# report attribute holding each sweep quantity
QUANTITY_COLUMNS = {
    DISCORD: "discord",
    CLASSICAL: "classical_corr",
    MUTUAL_INFO: "mutual_info",
    CONCURRENCE: "concurrence",
    EOF: "eof",
}


@dataclass(frozen=True)
class SweepAxis:
    """
    One uniform sweep axis.

    Attributes:
        name (str): One of jx, jy, jz, j, jxyz, delta, b, kT. "j" moves jx = jy and leaves jz alone; "jxyz"
            moves jx = jy = jz; "delta" moves jx = (Σ + Δ)/2 and jy = (Σ - Δ)/2 at the base Σ = jx + jy.
        start (float): First value.
        stop (float): Last value, greater than start.
        count (int): Number of points, at least 2.
    """
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in ALLOWED_AXES:
            raise SweepSpecError(f"axis: '{self.name}' not supported. Try one of {', '.join(ALLOWED_AXES)}.")
        if int(self.count) != self.count or self.count < MIN_AXIS_POINTS:
            raise SweepSpecError(f"axis '{self.name}' needs an integer count >= {MIN_AXIS_POINTS}, got {self.count}.")
        if not self.start < self.stop:
            raise SweepSpecError(f"axis '{self.name}' needs start < stop, got [{self.start}, {self.stop}].")

        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "stop", float(self.stop))
        object.__setattr__(self, "count", int(self.count))

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.count - 1)

    def values(self) -> np.ndarray:
        return build_axis(self.start, self.stop, self.count)

    def as_dict(self) -> dict:
        return {"name": self.name, "start": self.start, "stop": self.stop, "count": self.count}


def apply_assignments(base: ModelParams, assignments: Dict[str, float]) -> ModelParams:
    """
    Move a base parameter set along named sweep axes.

    Args:
        base (ModelParams): Parameters the sweep starts from.
        assignments (dict): Axis name -> value, applied in insertion order.

    Returns:
        ModelParams: The moved parameters.
    """
    params = base
    for name, value in assignments.items():
        if name == "j":
            params = replace(params, jx=value, jy=value)
        elif name == "jxyz":
            params = replace(params, jx=value, jy=value, jz=value)
        elif name == "delta":
            sigma = base.jx + base.jy
            params = replace(params, jx=(sigma + value) / 2, jy=(sigma - value) / 2)
        elif name in ALLOWED_AXES:
            params = replace(params, **{name: value})
        else:
            raise SweepSpecError(f"axis: '{name}' not supported. Try one of {', '.join(ALLOWED_AXES)}.")
    return params


@dataclass(frozen=True)
class SweepSpec:
    """
    A one- or two-axis grid of model parameters.

    Attributes:
        base (ModelParams): Parameters not moved by the axes.
        axis1 (SweepAxis): Outer axis.
        axis2 (SweepAxis, optional): Inner axis.
        quantities (tuple of str): Quantities of interest, a subset of discord, classical, mutual, concurrence, eof.
    """
    base: ModelParams
    axis1: SweepAxis
    axis2: Optional[SweepAxis] = None
    quantities: Tuple[str, ...] = tuple(ALLOWED_QUANTITIES)

    def __post_init__(self):
        object.__setattr__(self, "quantities", tuple(self.quantities))
        unknown = [q for q in self.quantities if q not in ALLOWED_QUANTITIES]
        if unknown or not self.quantities:
            raise SweepSpecError(f"quantities must be a non-empty subset of {', '.join(ALLOWED_QUANTITIES)}, "
                                 f"got {', '.join(self.quantities) or 'nothing'}.")
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise SweepSpecError(f"axis '{self.axis1.name}' given twice.")

        # every corner of the grid must be a valid parameter set
        for corner in itertools.product(*[(axis.start, axis.stop) for axis in self.axes]):
            try:
                apply_assignments(self.base, dict(zip(self.axis_names, corner)))
            except DomainError as e:
                raise SweepSpecError(f"invalid sweep range: {e}")

    @property
    def axes(self) -> List[SweepAxis]:
        return [self.axis1] if self.axis2 is None else [self.axis1, self.axis2]

    @property
    def axis_names(self) -> List[str]:
        return [axis.name for axis in self.axes]

    def grid(self) -> List[Tuple[float, ...]]:
        """Grid points in lexicographic order, axis1 outermost."""
        return [tuple(float(v) for v in point) for point in itertools.product(*[axis.values() for axis in self.axes])]

    def params_at(self, point: Tuple[float, ...]) -> ModelParams:
        return apply_assignments(self.base, dict(zip(self.axis_names, point)))

    def as_dict(self) -> dict:
        return {"base": self.base.as_dict(), "axis1": self.axis1.as_dict(),
                "axis2": None if self.axis2 is None else self.axis2.as_dict(),
                "quantities": list(self.quantities)}


@dataclass(frozen=True)
class SweepRow:
    values: Tuple[float, ...]
    params: ModelParams
    report: CorrelationReport


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: List[SweepRow] = field(default_factory=list)

    def axis_column(self, index: int = 0) -> np.ndarray:
        return np.array([row.values[index] for row in self.rows])

    def column(self, quantity: str) -> np.ndarray:
        """
        Values of one quantity over the rows.

        Args:
            quantity (str): Sweep quantity (discord, classical, ...) or report column (mutual_info, theta_opt, ...).

        Returns:
            np.ndarray: One value per row.
        """
        name = QUANTITY_COLUMNS.get(quantity, quantity)
        if name not in REPORT_COLUMNS:
            raise ValueError(f"quantity: '{quantity}' not supported. Try one of {', '.join(ALLOWED_QUANTITIES)}.")
        return np.array([row.report.as_dict()[name] for row in self.rows])

    def to_frame(self, quantities: Optional[List[str]] = None) -> pd.DataFrame:
        """
        Rows as a DataFrame: one column per axis, then the requested report columns (all by default).
        """
        columns = REPORT_COLUMNS if quantities is None else [QUANTITY_COLUMNS[q] for q in quantities]
        records = []
        for row in self.rows:
            record = dict(zip(self.spec.axis_names, row.values))
            report = row.report.as_dict()
            record.update({column: report[column] for column in columns})
            records.append(record)
        return pd.DataFrame.from_records(records, columns=self.spec.axis_names + list(columns))


def evaluate_point(params: ModelParams, cfg: Optional[OptimizerConfig] = None) -> CorrelationReport:
    return quantum_discord(thermal_state(params), cfg)


def run_sweep(spec: SweepSpec, threads: int = 1, cfg: Optional[OptimizerConfig] = None,
              progress: bool = False, desc: Optional[str] = None) -> SweepResult:
    """
    Evaluate the correlation report at every grid point of a sweep.

    Points are evaluated by a thread pool; rows are assembled in grid order whatever the completion order.

    Args:
        spec (SweepSpec): The sweep.
        threads (int): Number of worker threads.
        cfg (OptimizerConfig, optional): Measurement search settings.
        progress (bool): Whether to show a tqdm progress bar.
        desc (str, optional): Progress bar description.

    Returns:
        SweepResult: One row per grid point.
    """
    points = spec.grid()

    def evaluate(point: Tuple[float, ...]) -> SweepRow:
        try:
            params = spec.params_at(point)
            return SweepRow(values=point, params=params, report=evaluate_point(params, cfg))
        except Exception as e:
            raise SweepEvaluationError(dict(zip(spec.axis_names, point)), e) from e

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        rows = list(tqdm(executor.map(evaluate, points), total=len(points), disable=not progress,
                         desc=desc or f"Sweeping {' x '.join(spec.axis_names)}"))

    return SweepResult(spec=spec, rows=rows)
