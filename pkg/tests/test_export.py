"""Tests for the CSV and JSON writers."""

import json

import numpy as np

from ld_shift.qshift import WindowFunction
from ld_shift.report import (
    SPECTRUM_COLUMNS,
    TRAJECTORY_COLUMNS,
    format_csv,
    format_json,
    spectrum_rows,
    trajectory_rows,
    trajectory_summary,
    write_csv,
)


class TestFormats:
    def test_csv_cells(self):
        text = format_csv(("a", "b", "c", "d"), [(0.1, True, None, "x")])
        assert text == "a,b,c,d\n0.10000000000000001,true,,x\n"

    def test_csv_numpy_values(self):
        text = format_csv(("a", "b"), [(np.float64(2.5), np.bool_(False))])
        assert text.splitlines()[1] == "2.5,false"

    def test_json_plain_types(self):
        payload = {"x": np.float64(1.5), "flag": np.bool_(True), "n": np.int64(3), "v": np.array([1.0, 2.0])}
        text = format_json(payload)
        assert text.endswith("\n")
        assert json.loads(text) == {"x": 1.5, "flag": True, "n": 3, "v": [1.0, 2.0]}

    def test_json_keeps_order_and_unicode(self):
        text = format_json({"b": 1, "a": "θ"})
        assert list(json.loads(text)) == ["b", "a"]
        assert "θ" in text

    def test_write_creates_directories(self, tmp_path):
        path = write_csv(tmp_path / "nested" / "out.csv", ("a",), [(1.0,)])
        assert path.read_text(encoding="utf-8") == "a\n1\n"


class TestRows:
    def test_trajectory_rows(self, traj):
        rows = trajectory_rows(traj)
        assert len(rows) == traj.config.sample_count
        assert all(len(row) == len(TRAJECTORY_COLUMNS) for row in rows)
        assert rows[-1][0] == 0.0 and rows[-1][1] == 0.0

    def test_trajectory_summary(self, traj):
        summary = trajectory_summary(traj)
        assert summary["t_entry"] == traj.t_entry
        assert summary["zdot0"] == traj.velocity_out
        assert summary["E"] == traj.particle.energy

    def test_spectrum_rows(self, traj):
        window = WindowFunction.for_trajectory(traj)
        rows, worst = spectrum_rows(traj, [1.0, 2.0], [-0.5, 0.5], window)
        assert len(rows) == 4
        assert all(len(row) == len(SPECTRUM_COLUMNS) for row in rows)
        assert worst <= 1e-6
        assert worst == max(row[-1] for row in rows)
