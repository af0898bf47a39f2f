"""Report assembly, verification suite and file export."""

from .export import (
    SPECTRUM_COLUMNS,
    SWEEP_COLUMNS,
    TRAJECTORY_COLUMNS,
    format_csv,
    format_json,
    spectrum_rows,
    trajectory_rows,
    trajectory_summary,
    write_csv,
    write_json,
)
from .shift_report import build_shift_report
from .verification import Check, Verifier, run_verification

__all__ = [
    "Check",
    "SPECTRUM_COLUMNS",
    "SWEEP_COLUMNS",
    "TRAJECTORY_COLUMNS",
    "Verifier",
    "build_shift_report",
    "format_csv",
    "format_json",
    "run_verification",
    "spectrum_rows",
    "trajectory_rows",
    "trajectory_summary",
    "write_csv",
    "write_json",
]
