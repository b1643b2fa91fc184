"""Tabular outputs: metrics, latency, histogram CSVs, JSON reports and reference fits."""

from __future__ import annotations

import csv
import json
import pathlib
from typing import Any, Iterable, Sequence, Union

import numpy as np

from aerofilter.evaluation import EvalMetrics, LatencyRow
from aerofilter.exceptions.data import CloudFormatError
from aerofilter.filters.intensity import IntensityHistogram, ReferenceFit, WeibullParams

__all__: list[str] = [
    "METRICS_COLUMNS",
    "LATENCY_COLUMNS",
    "HISTOGRAM_COLUMNS",
    "FIT_TABLE_COLUMNS",
    "MetricsRow",
    "write_metrics_csv",
    "write_latency_csv",
    "write_histogram_csv",
    "write_json_report",
    "read_fit_table",
]

PathLike = Union[str, pathlib.Path]

METRICS_COLUMNS = ("scene", "config", "tp", "fp", "fn", "tn", "precision", "recall", "f1")
LATENCY_COLUMNS = ("size", "median_ms", "p95_ms", "hz")
HISTOGRAM_COLUMNS = ("bin_left", "bin_right", "count", "density", "fitted_pdf", "alpha", "gamma", "mu")
FIT_TABLE_COLUMNS = ("name", "alpha", "gamma", "mu", "i_th", "classes")

MetricsRow = tuple[str, str, EvalMetrics]
"""``(scene, config, metrics)``."""


def _write_rows(path: PathLike, columns: Sequence[str], rows: Iterable[Sequence[Any]], *, append: bool = False) -> None:
    path = pathlib.Path(path)
    write_header = not (append and path.exists() and path.stat().st_size > 0)
    try:
        with open(path, "a" if append else "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            if write_header:
                writer.writerow(columns)
            writer.writerows(rows)
    except OSError as e:
        raise CloudFormatError(f"Cannot write table: {e}", path=path) from e


def write_metrics_csv(rows: Iterable[MetricsRow], path: PathLike, *, append: bool = False) -> None:
    """Write one metrics row per scene/config pair; ``append`` adds to an existing table."""
    _write_rows(
        path,
        METRICS_COLUMNS,
        ((scene, config, m.tp, m.fp, m.fn, m.tn, repr(m.precision), repr(m.recall), repr(m.f1)) for scene, config, m in rows),
        append=append,
    )


def write_latency_csv(rows: Iterable[LatencyRow], path: PathLike) -> None:
    """Write the benchmark table."""
    _write_rows(path, LATENCY_COLUMNS, ((r.size, repr(r.median_ms), repr(r.p95_ms), repr(r.hz)) for r in rows))


def write_histogram_csv(histogram: IntensityHistogram, path: PathLike) -> None:
    """
    Write one row per bin with the fitted density at its centre.

    The fit parameters repeat on every row; without a fit the fitted columns are empty.
    """
    fit = histogram.fit
    fitted = histogram.fitted_pdf if histogram.fitted_pdf is not None else np.full(histogram.counts.shape[0], np.nan)
    params: tuple[Any, Any, Any] = fit.as_tuple() if fit is not None else ("", "", "")

    def cell(value: float) -> str:
        return "" if np.isnan(value) else repr(float(value))

    _write_rows(
        path,
        HISTOGRAM_COLUMNS,
        (
            (repr(float(left)), repr(float(right)), int(count), repr(float(density)), cell(pdf), *params)
            for left, right, count, density, pdf in zip(histogram.edges[:-1], histogram.edges[1:], histogram.counts, histogram.density, fitted)
        ),
    )


def write_json_report(payload: Any, path: PathLike) -> None:
    """Write a JSON document, indented, with a trailing newline."""
    path = pathlib.Path(path)
    try:
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise CloudFormatError(f"Cannot write report: {e}", path=path) from e


def read_fit_table(path: PathLike) -> list[ReferenceFit]:
    """
    Read recorded Weibull fits from a ``name,alpha,gamma,mu,i_th,classes`` CSV.

    Raises
    ------
    CloudFormatError
        If the file cannot be read, a column is missing or a value is malformed.
    """
    path = pathlib.Path(path)
    fits: list[ReferenceFit] = []
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            missing = [c for c in FIT_TABLE_COLUMNS if c not in (reader.fieldnames or [])]
            if missing:
                raise CloudFormatError(f"Fit table lacks column(s): {', '.join(missing)}", path=path)
            for row, record in enumerate(reader):
                try:
                    params = WeibullParams(float(record["alpha"]), float(record["gamma"]), float(record["mu"]))
                    fits.append(ReferenceFit(record["name"], params, float(record["i_th"]), int(record["classes"])))
                except (TypeError, ValueError) as e:
                    raise CloudFormatError(f"Malformed fit row: {e}", path=path, row=row) from e
    except OSError as e:
        raise CloudFormatError(f"Cannot read fit table: {e}", path=path) from e
    return fits
