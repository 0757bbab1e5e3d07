import json
import os
from typing import List, Optional, TextIO

import pandas as pd

from analysis import QUANTITY_COLUMNS, SweepResult, SweepSpec, detect_kinks, detect_regrowth, qpt_signature, \
    vanishing_interval
from models import ModelParams
from qdiscord import CorrelationReport
from utils import CSV_FLOAT_FORMAT, REPORT_COLUMNS, VERSION, SignatureNotFoundError, format_number
from .presets import FigurePreset

KINKS = "kinks"
REGROWTH = "regrowth"
QPT = "qpt"
DETECTORS = [KINKS, REGROWTH, QPT]

CSV = "csv"
JSON = "json"
FORMATS = [CSV, JSON]


def _params_text(params: ModelParams) -> str:
    return ", ".join(f"{key}={format_number(value)}" for key, value in params.as_dict().items())


def metadata_lines(spec: SweepSpec, label: Optional[str] = None) -> List[str]:
    lines = [f"# thermal_discord {VERSION}"]
    if label is not None:
        lines.append(f"# curve: {label}")
    lines.append(f"# base: {_params_text(spec.base)}")
    for i, axis in enumerate(spec.axes, start=1):
        lines.append(f"# axis{i}: {axis.name} from {format_number(axis.start)} to {format_number(axis.stop)}, "
                     f"{axis.count} points")
    lines.append(f"# quantities: {', '.join(spec.quantities)}")
    return lines


def detection_lines(result: SweepResult, detectors: List[str]) -> List[str]:
    """
    Run the requested detectors on every quantity of a sweep and format their findings as comment lines.

    Args:
        result (SweepResult): A single-axis sweep.
        detectors (list of str): Subset of kinks, regrowth, qpt.

    Returns:
        list of str: '#'-prefixed summary lines.
    """
    lines = []
    for detector in detectors:
        for quantity in result.spec.quantities:
            if detector == KINKS:
                kinks = detect_kinks(result, quantity)
                lines.append(f"# kinks {quantity}: {len(kinks)}")
                lines.extend(f"#   at {format_number(k.location)}: left_slope={format_number(k.left_slope)}, "
                             f"right_slope={format_number(k.right_slope)}, strength={format_number(k.strength)}"
                             for k in kinks)
            elif detector == REGROWTH:
                regrowth = detect_regrowth(result, quantity)
                if regrowth is None:
                    lines.append(f"# regrowth {quantity}: none")
                else:
                    lines.append(f"# regrowth {quantity}: t_min={format_number(regrowth.t_min)}, "
                                 f"d_min={format_number(regrowth.d_min)}, rebound={format_number(regrowth.rebound)}")
            elif detector == QPT:
                try:
                    lines.append(f"# qpt {quantity}: zero at {format_number(qpt_signature(result, quantity))}")
                except SignatureNotFoundError as e:
                    lines.append(f"# qpt {quantity}: not found ({e})")
                lines.extend(f"#   vanishes on [{format_number(i.start)}, {format_number(i.stop)}]"
                             for i in vanishing_interval(result, quantity))
            else:
                raise ValueError(f"detector: '{detector}' not supported. Try one of {', '.join(DETECTORS)}.")
    return lines


def write_csv(result: SweepResult, stream: TextIO, metadata: Optional[List[str]] = None,
              summary: Optional[List[str]] = None):
    """
    Write a sweep as CSV: metadata comments, header, one row per grid point, then the detector summary.

    Args:
        result (SweepResult): The sweep.
        stream (TextIO): Destination.
        metadata (list of str, optional): '#' lines written before the header.
        summary (list of str, optional): '#' lines written after the data.
    """
    for line in metadata or []:
        stream.write(line + "\n")

    result.to_frame().to_csv(stream, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")

    for line in summary or []:
        stream.write(line + "\n")


def write_json(result: SweepResult, stream: TextIO, summary: Optional[List[str]] = None):
    payload = {"version": VERSION, "spec": result.spec.as_dict(),
               "rows": result.to_frame().to_dict(orient="records")}
    if summary:
        payload["detections"] = [line.lstrip("# ") for line in summary]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def point_record(params: ModelParams, report: CorrelationReport) -> dict:
    return {**params.as_dict(), **report.as_dict()}


def write_point(params: ModelParams, report: CorrelationReport, stream: TextIO, fmt: str = JSON):
    record = point_record(params, report)

    if fmt == JSON:
        json.dump(record, stream, indent=2)
        stream.write("\n")
    elif fmt == CSV:
        stream.write(f"# thermal_discord {VERSION}\n")
        pd.DataFrame([record]).to_csv(stream, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    else:
        raise ValueError(f"format: '{fmt}' not supported. Try one of {', '.join(FORMATS)}.")


def write_gnuplot(preset: FigurePreset, out_dir: str) -> str:
    """
    Write a gnuplot script plotting every quantity of a preset from its CSV files.

    One-axis presets give one plot per quantity with a line per curve; two-axis presets give one pm3d map per
    quantity and curve.

    Args:
        preset (FigurePreset): The preset whose CSV files were written to `out_dir`.
        out_dir (str): Directory holding the CSV files; the script is written there too.

    Returns:
        str: Path of the script.
    """
    lines = ["set datafile separator ','", "set datafile commentschars '#'", "set key autotitle columnhead",
             "set terminal pngcairo size 800,600", ""]

    spec = preset.curves[0].spec
    axis_count = len(spec.axes)
    for quantity in spec.quantities:
        column = axis_count + REPORT_COLUMNS.index(QUANTITY_COLUMNS[quantity]) + 1

        if axis_count == 1:
            lines.append(f"set output '{preset.name}_{quantity}.png'")
            lines.append(f"set xlabel '{spec.axis1.name}'")
            lines.append(f"set ylabel '{quantity}'")
            plots = [f"'{curve.file_name(preset.name)}' using 1:{column} with lines title '{curve.label}'"
                     for curve in preset.curves]
            lines.append("plot " + ", \\\n     ".join(plots))
        else:
            lines.append("set pm3d map")
            lines.append(f"set dgrid3d {spec.axis2.count},{spec.axis1.count}")
            lines.append(f"set xlabel '{spec.axis1.name}'")
            lines.append(f"set ylabel '{spec.axis2.name}'")
            for curve in preset.curves:
                lines.append(f"set output '{preset.name}_{curve.label}_{quantity}.png'")
                lines.append(f"splot '{curve.file_name(preset.name)}' using 1:2:{column} with pm3d title '{quantity}'")
            lines.append("unset dgrid3d")
        lines.append("")

    path = os.path.join(out_dir, f"{preset.name}.gp")
    with open(path, "w") as f:
        f.write("\n".join(lines))
    return path
