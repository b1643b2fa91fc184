"""Tests for metrics, latency and histogram tables and the fit table reader."""

import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from aerofilter.evaluation import EvalMetrics, LatencyRow
from aerofilter.exceptions.data import CloudFormatError
from aerofilter.filters import WeibullParams, intensity_histogram
from aerofilter.io import HISTOGRAM_COLUMNS, LATENCY_COLUMNS, METRICS_COLUMNS, read_fit_table, write_histogram_csv, write_json_report, write_latency_csv, write_metrics_csv


def _rows(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


class TestMetricsTable:
    """Tests for write_metrics_csv."""

    def test_columns_and_values(self, tmp_path: Path) -> None:
        """One row per scene/config pair with exact ratios."""
        path = tmp_path / "metrics.csv"
        write_metrics_csv([("scene-0", "default", EvalMetrics.from_counts(9, 1, 1, 89))], path)
        rows = _rows(path)
        assert tuple(rows[0]) == METRICS_COLUMNS
        assert rows[0]["tp"] == "9" and float(rows[0]["f1"]) == pytest.approx(0.9)

    def test_append_writes_header_once(self, tmp_path: Path) -> None:
        """Appending adds rows without repeating the header."""
        path = tmp_path / "metrics.csv"
        m = EvalMetrics.from_counts(1, 0, 0, 1)
        write_metrics_csv([("a", "c", m)], path, append=True)
        write_metrics_csv([("b", "c", m)], path, append=True)
        assert [r["scene"] for r in _rows(path)] == ["a", "b"]
        assert path.read_text().count("scene,config") == 1


class TestOtherTables:
    """Tests for latency, histogram and JSON outputs."""

    def test_latency(self, tmp_path: Path) -> None:
        """Latency rows keep full precision."""
        path = tmp_path / "latency.csv"
        write_latency_csv([LatencyRow(1000, 1.25, 2.5, 800.0)], path)
        rows = _rows(path)
        assert tuple(rows[0]) == LATENCY_COLUMNS
        assert (rows[0]["size"], float(rows[0]["hz"])) == ("1000", 800.0)

    def test_histogram_with_fit(self, tmp_path: Path) -> None:
        """Each bin row carries the fitted density and the fit parameters."""
        fit = WeibullParams(0.77, 3.6)
        path = tmp_path / "hist.csv"
        write_histogram_csv(intensity_histogram(np.linspace(0.1, 2.0, 100), 10, fit), path)
        rows = _rows(path)
        assert len(rows) == 10
        assert tuple(rows[0]) == HISTOGRAM_COLUMNS
        assert sum(int(r["count"]) for r in rows) == 100
        assert float(rows[0]["alpha"]) == 0.77
        assert all(r["fitted_pdf"] for r in rows)

    def test_histogram_without_fit(self, tmp_path: Path) -> None:
        """Fitted columns are blank without a fit."""
        path = tmp_path / "hist.csv"
        write_histogram_csv(intensity_histogram(np.arange(5.0), 5), path)
        assert all(r["fitted_pdf"] == "" and r["alpha"] == "" for r in _rows(path))

    def test_json_report(self, tmp_path: Path) -> None:
        """Reports are indented JSON with a trailing newline."""
        path = tmp_path / "report.json"
        write_json_report({"frames": [{"input_count": 3}], "s_th": math.nan}, path)
        text = path.read_text()
        assert text.endswith("}\n")
        assert json.loads(text)["frames"][0]["input_count"] == 3


class TestFitTable:
    """Tests for read_fit_table."""

    def test_reads_reference_fits(self, fixtures_dir: Path) -> None:
        """The recorded field-trial fits parse into parameters."""
        fits = read_fit_table(fixtures_dir / "field_trial_fits.csv")
        assert len(fits) == 3
        assert fits[0].params == WeibullParams(0.771938, 3.613051, 0.0)
        assert fits[0].i_th == pytest.approx(1.873639)
        assert all(f.classes > 0 for f in fits)

    def test_missing_column(self, tmp_path: Path) -> None:
        """Every column is required."""
        path = tmp_path / "fits.csv"
        path.write_text("name,alpha,gamma\nx,1,2\n")
        with pytest.raises(CloudFormatError, match="mu"):
            read_fit_table(path)

    def test_malformed_value(self, tmp_path: Path) -> None:
        """Bad numbers and invalid parameters report their row."""
        path = tmp_path / "fits.csv"
        path.write_text("name,alpha,gamma,mu,i_th,classes\na,1,2,0,1,51\nb,-1,2,0,1,51\n")
        with pytest.raises(CloudFormatError) as info:
            read_fit_table(path)
        assert info.value.row == 1
