"""Plot-ready CSV and JSON outputs."""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..ldforce import f_ld_at, four_force
from ..qshift import WindowFunction, amplitude_direct, amplitude_ibp, spectral_density
from ..trajectory import Trajectory

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ("t", "z", "zdot", "zddot", "zdddot", "gamma", "f_ld", "F_t", "F_z")
SPECTRUM_COLUMNS = (
    "k",
    "cos_theta",
    "re_A_t",
    "im_A_t",
    "re_A_z",
    "im_A_z",
    "spectral_density",
    "form_difference",
)
SWEEP_COLUMNS = (
    "parameter",
    "value",
    "dz_classical_closed",
    "dz_classical_green",
    "dz_oracle_linear_response",
    "dzq_reduced",
    "dzq_angular",
    "dzq_angular_fd",
    "max_rel_diff",
    "passed",
)

Row = Sequence[Any]


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def format_csv(columns: Sequence[str], rows: Iterable[Row]) -> str:
    """Comma-separated text with a header row and LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Row]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_csv(columns, rows), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def format_json(payload: Dict[str, Any]) -> str:
    """UTF-8 JSON keeping insertion order; floats round-trip exactly."""
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False) + "\n"


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_json(payload), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def trajectory_rows(traj: Trajectory) -> List[Row]:
    """One row per uniform sample of the worldline."""
    pts = traj.samples
    alpha_c = traj.particle.alpha_c
    f_ld = f_ld_at(pts, alpha_c).f_ld
    F_t, F_z = four_force(pts, alpha_c)
    columns = np.broadcast_arrays(pts.t, pts.z, pts.zdot, pts.zddot, pts.zdddot, pts.gamma, f_ld, F_t, F_z)
    return [tuple(float(v) for v in row) for row in zip(*columns)]


def trajectory_summary(traj: Trajectory) -> Dict[str, Any]:
    """Scalar facts about the worldline."""
    return {
        "t_entry": traj.t_entry,
        "t_exit": traj.t_exit,
        "t_start": traj.t_start,
        "t_end": traj.t_end,
        "t_min": traj.t_min,
        "zdot0": traj.velocity_out,
        "zdot_in": traj.velocity_in,
        "E": traj.particle.energy,
        "samples": traj.config.sample_count,
    }


def spectrum_rows(
    traj: Trajectory, k_values: Sequence[float], cos_values: Sequence[float], window: WindowFunction
) -> Tuple[List[Row], float]:
    """
    Both amplitude forms on the (k, cos theta) grid.

    Returns:
        Tuple of (rows, largest form difference)
    """
    rows: List[Row] = []
    worst = 0.0
    for k in k_values:
        for c in cos_values:
            ibp = amplitude_ibp(traj, float(k), float(c), window)
            direct = amplitude_direct(traj, float(k), float(c), window)
            diff = ibp.difference(direct)
            worst = max(worst, diff)
            rows.append(
                (
                    float(k),
                    float(c),
                    ibp.A_t.real,
                    ibp.A_t.imag,
                    ibp.A_z.real,
                    ibp.A_z.imag,
                    spectral_density(ibp),
                    diff,
                )
            )
    logger.info(f"Spectrum: {len(rows)} points, largest form difference {worst:.2e}")
    return rows, worst
