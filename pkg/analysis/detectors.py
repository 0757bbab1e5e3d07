from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from utils import DISCORD, KINK_MIN_POINTS, KINK_FACTOR, KINK_FLOOR, UNIFORM_STEP_RTOL, REGROWTH_MIN_POINTS, \
    REGROWTH_NONZERO_MIN, REGROWTH_REBOUND, QPT_ZERO_TOL, QPT_NEIGHBOR_TOL, DetectorInputError, \
    SignatureNotFoundError
from .sweep import SweepResult


@dataclass(frozen=True)
class KinkReport:
    """
    A jump in the first derivative of a series.

    Attributes:
        location (float): Axis value of the kink.
        left_slope (float): Two-point slope on the left of the kink.
        right_slope (float): Two-point slope on the right of the kink.
        strength (float): |right_slope - left_slope|.
    """
    location: float
    left_slope: float
    right_slope: float
    strength: float


@dataclass(frozen=True)
class RegrowthReport:
    """
    Decrease of a quantity with temperature to a nonzero minimum followed by an increase.

    Attributes:
        t_min (float): Temperature of the interior minimum.
        d_min (float): Value at the minimum.
        rebound (float): Largest later value minus d_min.
    """
    t_min: float
    d_min: float
    rebound: float


@dataclass(frozen=True)
class TrendInterval:
    start: float
    stop: float


def single_axis_series(series: SweepResult, quantity: str) -> Tuple[np.ndarray, np.ndarray]:
    if series.spec.axis2 is not None:
        raise DetectorInputError(f"detectors need a single-axis sweep, got axes {', '.join(series.spec.axis_names)}.")
    return series.axis_column(0), series.column(quantity)


def uniform_step(x: np.ndarray) -> float:
    steps = np.diff(x)
    h = float(np.mean(steps))
    if h <= 0 or np.max(np.abs(steps - h)) > UNIFORM_STEP_RTOL * max(abs(h), np.max(np.abs(x))):
        raise DetectorInputError("detectors need a uniform, increasing axis.")
    return h


def detect_kinks(series: SweepResult, quantity: str = DISCORD, factor: float = KINK_FACTOR,
                 floor: float = KINK_FLOOR) -> List[KinkReport]:
    """
    Flag interior points where the one-sided slopes of a series jump.

    At each interior point the left and right two-point slopes are compared; the point is a kink when
    |right - left| > factor * max(floor * h, median jump), h being the axis step. Smooth curvature gives
    jumps of order h |f''|, well below the threshold set by the median.

    Args:
        series (SweepResult): Single-axis sweep with a uniform step.
        quantity (str): Quantity to analyse.
        factor (float): Multiple of the reference jump above which a jump is a kink.
        floor (float): Lower bound of the reference jump, in units of h.

    Returns:
        list of KinkReport: Kinks sorted by decreasing strength.
    """
    x, y = single_axis_series(series, quantity)
    if len(x) < KINK_MIN_POINTS:
        raise DetectorInputError(f"kink detection needs at least {KINK_MIN_POINTS} points, got {len(x)}.")

    h = uniform_step(x)
    slopes = np.diff(y) / h
    jumps = np.abs(np.diff(slopes))
    threshold = factor * max(floor * h, float(np.median(jumps)))

    kinks = [KinkReport(location=float(x[i + 1]), left_slope=float(slopes[i]), right_slope=float(slopes[i + 1]),
                        strength=float(jumps[i]))
             for i in np.flatnonzero(jumps > threshold)]
    return sorted(kinks, key=lambda kink: kink.strength, reverse=True)


def detect_regrowth(series: SweepResult, quantity: str = DISCORD, nonzero_min: float = REGROWTH_NONZERO_MIN,
                    rebound_min: float = REGROWTH_REBOUND) -> Optional[RegrowthReport]:
    """
    Look for regrowth: a decrease with temperature to a strictly positive interior minimum, then an increase.

    Interior local minima are considered; a minimum qualifies when its value exceeds `nonzero_min` (so that
    a vanishing quantity coming back to life does not count) and the largest later value exceeds it by more
    than `rebound_min`. The qualifying minimum with the largest rebound is reported.

    Args:
        series (SweepResult): Single-axis kT sweep with at least REGROWTH_MIN_POINTS points.
        quantity (str): Quantity to analyse.
        nonzero_min (float): Smallest admissible value at the minimum.
        rebound_min (float): Smallest admissible rebound.

    Returns:
        RegrowthReport or None: The regrowth, if any.
    """
    if series.spec.axis1.name != "kT":
        raise DetectorInputError(f"regrowth detection needs a kT sweep, got '{series.spec.axis1.name}'.")

    t, d = single_axis_series(series, quantity)
    if len(t) < REGROWTH_MIN_POINTS:
        raise DetectorInputError(f"regrowth detection needs at least {REGROWTH_MIN_POINTS} points, got {len(t)}.")

    best = None
    for i in range(1, len(d) - 1):
        if not (d[i] < d[i - 1] and d[i] <= d[i + 1]) or d[i] <= nonzero_min:
            continue

        rebound = float(np.max(d[i + 1:]) - d[i])
        if rebound > rebound_min and (best is None or rebound > best.rebound):
            best = RegrowthReport(t_min=float(t[i]), d_min=float(d[i]), rebound=rebound)

    return best


def qpt_signature(series: SweepResult, quantity: str = DISCORD, zero_tol: float = QPT_ZERO_TOL,
                  neighbor_tol: float = QPT_NEIGHBOR_TOL) -> float:
    """
    Locate the isolated zero of a quantity along a coupling sweep.

    Args:
        series (SweepResult): Single-axis sweep crossing the critical point.
        quantity (str): Quantity to analyse.
        zero_tol (float): Values below this count as zero.
        neighbor_tol (float): Both neighbors of the zero must exceed this.

    Returns:
        float: Axis value of the unique zero.
    """
    x, y = single_axis_series(series, quantity)
    zeros = np.flatnonzero(y < zero_tol)

    if len(zeros) != 1:
        raise SignatureNotFoundError(f"{quantity} vanishes at {len(zeros)} points, expected exactly one.")

    i = int(zeros[0])
    if i == 0 or i == len(y) - 1:
        raise SignatureNotFoundError(f"{quantity} vanishes at the sweep boundary {x[i]:.12g}.")
    if y[i - 1] <= neighbor_tol or y[i + 1] <= neighbor_tol:
        raise SignatureNotFoundError(f"{quantity} at {x[i]:.12g} is not an isolated zero: neighbors are "
                                     f"{y[i - 1]:.3e} and {y[i + 1]:.3e}.")
    return float(x[i])


def _runs(mask: np.ndarray) -> List[Tuple[int, int]]:
    """Inclusive (first, last) index pairs of the runs of True in `mask`."""
    runs, start = [], None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))
    return runs


def vanishing_interval(series: SweepResult, quantity: str, tol: float = QPT_ZERO_TOL) -> List[TrendInterval]:
    """Maximal axis intervals on which a quantity stays at or below `tol`."""
    x, y = single_axis_series(series, quantity)
    return [TrendInterval(start=float(x[first]), stop=float(x[last])) for first, last in _runs(y <= tol)]


def detect_opposite_trends(series: SweepResult, rising: str, falling: str) -> List[TrendInterval]:
    """
    Maximal axis intervals where `rising` strictly increases while `falling` strictly decreases.

    Args:
        series (SweepResult): Single-axis sweep.
        rising (str): Quantity expected to increase.
        falling (str): Quantity expected to decrease.

    Returns:
        list of TrendInterval: The intervals, in axis order.
    """
    x, up = single_axis_series(series, rising)
    _, down = single_axis_series(series, falling)
    opposite = (np.diff(up) > 0) & (np.diff(down) < 0)
    return [TrendInterval(start=float(x[first]), stop=float(x[last + 1])) for first, last in _runs(opposite)]
