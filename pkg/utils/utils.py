import os
from typing import Any, Dict

import numpy as np
import yaml

from .constants import AXIS_ZERO_SNAP, CSV_SIGNIFICANT_DIGITS
from .exceptions import SweepSpecError


def build_axis(start: float, stop: float, count: int) -> np.ndarray:
    """
    Build a uniform axis including both end points.

    Values within AXIS_ZERO_SNAP * (stop - start) of zero are snapped to exactly 0.0, so that sweeps
    crossing a critical point evaluate it exactly.

    Args:
        start (float): First axis value.
        stop (float): Last axis value.
        count (int): Number of points.

    Returns:
        np.ndarray: The axis values.
    """
    values = np.linspace(start, stop, count)
    values[np.abs(values) <= AXIS_ZERO_SNAP * abs(stop - start)] = 0.0
    return values


def load_flat_config(config_file: str) -> Dict[str, Any]:
    """
    Load a flat key-value YAML file whose keys mirror the long command-line flags.

    Args:
        config_file (str): Path to the config file.

    Returns:
        dict: Mapping from flag name (dashes replaced by underscores) to value.
    """
    if not os.path.exists(config_file):
        raise SweepSpecError(f"config file: '{config_file}' does not exist.")

    with open(config_file, "r") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SweepSpecError(f"config file: '{config_file}' is not valid YAML: {e}")

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise SweepSpecError(f"config file: '{config_file}' must contain a flat mapping of flag names to values.")

    config = {}
    for key, value in data.items():
        if isinstance(value, (dict, list)):
            raise SweepSpecError(f"config key '{key}' must map to a scalar value.")
        config[str(key).lstrip("-").replace("-", "_")] = value

    return config


def format_number(value: float) -> str:
    return f"{value:.{CSV_SIGNIFICANT_DIGITS}g}"


def default_threads() -> int:
    return os.cpu_count() or 1
