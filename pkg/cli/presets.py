import os
from dataclasses import dataclass, replace
from typing import Dict, List

import yaml

from analysis import SweepAxis, SweepSpec
from models import ModelParams
from utils import CONFIG_DIR, FIGURES_CONFIG_FILE, SweepSpecError

PARAM_KEYS = ("jx", "jy", "jz", "b", "kT")


@dataclass(frozen=True)
class PresetCurve:
    """
    One curve (or heatmap panel) of a figure preset.

    Attributes:
        label (str): Curve label, used in the output file name.
        spec (SweepSpec): The bound sweep.
    """
    label: str
    spec: SweepSpec

    def file_name(self, preset_name: str, ext: str = "csv") -> str:
        return f"{preset_name}_{self.label}.{ext}"


@dataclass(frozen=True)
class FigurePreset:
    name: str
    description: str
    curves: List[PresetCurve]


def _params(data: dict, where: str) -> Dict[str, float]:
    unknown = [key for key in data if key not in PARAM_KEYS]
    if unknown:
        raise SweepSpecError(f"{where}: unknown parameter(s) {', '.join(unknown)}. Try one of {', '.join(PARAM_KEYS)}.")
    return {key: float(value) for key, value in data.items()}


def _axis(data: dict, where: str) -> SweepAxis:
    try:
        return SweepAxis(name=data["name"], start=data["start"], stop=data["stop"], count=data["count"])
    except KeyError as e:
        raise SweepSpecError(f"{where}: axis is missing {e}.")


def parse_preset(name: str, data: dict) -> FigurePreset:
    """
    Build a figure preset from its YAML mapping.

    Each curve entry holds a label plus parameter overrides applied to the preset base.

    Args:
        name (str): Preset name.
        data (dict): The preset mapping (description, base, axis1, optional axis2, quantities, curves).

    Returns:
        FigurePreset: The preset with one bound SweepSpec per curve.
    """
    base = ModelParams(**_params(data.get("base", {}), name))
    axis1 = _axis(data["axis1"], name)
    axis2 = _axis(data["axis2"], name) if data.get("axis2") else None

    curves = []
    for curve in data["curves"]:
        overrides = dict(curve)
        label = str(overrides.pop("label"))
        spec = SweepSpec(base=replace(base, **_params(overrides, f"{name}/{label}")), axis1=axis1, axis2=axis2,
                         quantities=tuple(data["quantities"]))
        curves.append(PresetCurve(label=label, spec=spec))

    return FigurePreset(name=name, description=data.get("description", ""), curves=curves)


def load_presets(config_file: str = os.path.join(CONFIG_DIR, FIGURES_CONFIG_FILE)) -> Dict[str, FigurePreset]:
    with open(config_file, "r") as stream:
        data = yaml.safe_load(stream)

    return {name: parse_preset(name, preset) for name, preset in data.items()}


def get_preset(name: str, config_file: str = os.path.join(CONFIG_DIR, FIGURES_CONFIG_FILE)) -> FigurePreset:
    presets = load_presets(config_file)

    if name not in presets:
        raise SweepSpecError(f"preset: '{name}' not supported. Try one of {', '.join(presets)}.")
    return presets[name]
