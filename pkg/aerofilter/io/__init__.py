"""
File formats for clouds, labels and result tables.

Clouds are read and written as PCD (ASCII or binary) or CSV through
`read_cloud`/`write_cloud`; ground truth travels in ``index,label``
sidecars; evaluation and benchmark results are written as CSV tables.
`load_config` is re-exported for callers that only touch this package.
"""

from aerofilter.config import load_config

from .csv_cloud import read_csv_cloud, write_csv_cloud
from .dispatch import CLOUD_SUFFIXES, CloudFormat, detect_format, read_cloud, write_cloud
from .labels import read_labels, write_labels
from .pcd import REQUIRED_FIELDS, PcdHeader, read_pcd, read_pcd_header, write_pcd
from .tables import (
    FIT_TABLE_COLUMNS,
    HISTOGRAM_COLUMNS,
    LATENCY_COLUMNS,
    METRICS_COLUMNS,
    MetricsRow,
    read_fit_table,
    write_histogram_csv,
    write_json_report,
    write_latency_csv,
    write_metrics_csv,
)

__all__: list[str] = [
    "CloudFormat",
    "CLOUD_SUFFIXES",
    "detect_format",
    "read_cloud",
    "write_cloud",
    "PcdHeader",
    "REQUIRED_FIELDS",
    "read_pcd",
    "read_pcd_header",
    "write_pcd",
    "read_csv_cloud",
    "write_csv_cloud",
    "read_labels",
    "write_labels",
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
    "load_config",
]
