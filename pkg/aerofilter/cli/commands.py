"""Subcommand implementations; each takes the parsed arguments and returns an exit code."""

from __future__ import annotations

import argparse
import logging as logging_mod
import pathlib
import re
from typing import Iterator, Optional

from aerofilter.cloud import PointCloud
from aerofilter.config import FileProvider, PipelineConfig, load_config
from aerofilter.evaluation import (
    MIN_REPETITIONS,
    LabeledCloud,
    benchmark,
    default_scene_spec,
    generate_scene,
    match_points,
    scene_spec_from_mapping,
    score,
)
from aerofilter.exceptions.data import CloudFormatError
from aerofilter.filters.intensity import clip_to_lowest, fit_weibull, intensity_histogram
from aerofilter.io import (
    CloudFormat,
    read_cloud,
    read_labels,
    write_cloud,
    write_histogram_csv,
    write_json_report,
    write_labels,
    write_latency_csv,
    write_metrics_csv,
)
from aerofilter.pipeline import FrameResult, process_frame, run_stream

__all__: list[str] = [
    "DEFAULT_CONFIG_NOTE",
    "FRAME_PATTERN",
    "parse_sizes",
    "parse_repetitions",
    "frame_files",
    "cmd_filter",
    "cmd_synth",
    "cmd_eval",
    "cmd_bench",
    "cmd_hist",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

DEFAULT_CONFIG_NOTE = "no config supplied; initial parameter values in effect"
FRAME_PATTERN = re.compile(r"^frame_.*\.(pcd|csv)$", re.IGNORECASE)


def parse_sizes(text: str) -> list[int]:
    """Parse ``"10000,30000"`` into non-negative counts."""
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or any(s < 0 for s in sizes):
        raise argparse.ArgumentTypeError(f"expected non-negative sizes, got {text!r}")
    return sizes


def parse_repetitions(text: str) -> int:
    """Parse a benchmark repetition count of at least ``MIN_REPETITIONS``."""
    try:
        count = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if count < MIN_REPETITIONS:
        raise argparse.ArgumentTypeError(f"at least {MIN_REPETITIONS} repetitions are needed, got {count}")
    return count


def _config(path: Optional[str]) -> tuple[PipelineConfig, str, tuple[str, ...]]:
    if path is None:
        return PipelineConfig(), "initial values", (DEFAULT_CONFIG_NOTE,)
    return load_config(path), str(path), ()


def frame_files(directory: pathlib.Path) -> list[pathlib.Path]:
    """Files named ``frame_*.pcd`` or ``frame_*.csv``, in ascending name order."""
    files = [p for p in directory.iterdir() if p.is_file()]
    for skipped in sorted(p.name for p in files if not FRAME_PATTERN.match(p.name)):
        logger.warning("Skipping %s: not a frame_*.pcd or frame_*.csv file", skipped)
    return sorted(p for p in files if FRAME_PATTERN.match(p.name))


def _output_name(source: pathlib.Path, fmt: Optional[str]) -> str:
    if fmt is None:
        return source.name
    suffix = ".csv" if CloudFormat(fmt) is CloudFormat.CSV else ".pcd"
    return source.stem + suffix


def _filter_directory(args: argparse.Namespace, cfg: PipelineConfig, source: str, notes: tuple[str, ...]) -> list[FrameResult]:
    directory = pathlib.Path(args.input)
    files = frame_files(directory)
    output = pathlib.Path(args.output)
    output.mkdir(parents=True, exist_ok=True)
    rejected_dir = pathlib.Path(args.rejected) if args.rejected else None
    if rejected_dir is not None:
        rejected_dir.mkdir(parents=True, exist_ok=True)

    def frames() -> Iterator[PointCloud]:
        for position, path in enumerate(files):
            yield read_cloud(path, timestamp=position * cfg.frame_period)

    results: list[FrameResult] = []
    for path, result in zip(files, run_stream(frames(), cfg, config_source=source, notes=notes)):
        write_cloud(result.filtered, output / _output_name(path, args.format), args.format)
        if rejected_dir is not None:
            write_cloud(result.rejected, rejected_dir / _output_name(path, args.format), args.format)
        results.append(result)
    return results


def cmd_filter(args: argparse.Namespace) -> int:
    """Filter a cloud file, or every frame of a directory through one adaptive stream."""
    cfg, source, notes = _config(args.config)
    source_path = pathlib.Path(args.input)
    if source_path.is_dir():
        results = _filter_directory(args, cfg, source, notes)
        if args.report:
            write_json_report({"frames": [r.report.to_dict() for r in results]}, args.report)
    else:
        cloud = read_cloud(source_path)
        result = process_frame(cloud, cfg, now=0.0, config_source=source, notes=notes)
        write_cloud(result.filtered, args.output, args.format)
        if args.rejected:
            write_cloud(result.rejected, args.rejected, args.format)
        if args.report:
            write_json_report(result.report.to_dict(), args.report)
        results = [result]
    total = sum(r.report.input_count for r in results)
    kept = sum(r.report.kept_count for r in results)
    print(f"filtered {len(results)} frame(s): kept {kept} of {total} points, rejected {total - kept}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    """Write a synthetic scene and its label sidecar."""
    if args.scene_spec:
        document = FileProvider(args.scene_spec).load()
        if args.seed is not None:
            document["seed"] = args.seed
        spec = scene_spec_from_mapping(document)
    else:
        spec = default_scene_spec(args.seed if args.seed is not None else 0)
    scene = generate_scene(spec)
    output = pathlib.Path(args.output)
    labels = pathlib.Path(args.labels) if args.labels else output.with_name(f"{output.stem}.labels.csv")
    write_cloud(scene.cloud, output, args.format)
    write_labels(scene.labels, labels)
    print(f"wrote {len(scene)} points ({scene.aerosol_count} aerosol) to {output} and labels to {labels}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    """Score a rejected cloud against labelled input and append a metrics row."""
    cloud = read_cloud(args.input)
    truth = LabeledCloud(cloud, read_labels(args.labels, expected_count=len(cloud)))
    rejected = read_cloud(args.rejected)
    if len(rejected) > len(cloud):
        raise CloudFormatError(f"Rejected cloud holds {len(rejected)} points, input only {len(cloud)}", path=args.rejected)
    positions = match_points(cloud, rejected)
    metrics = score(cloud.subset(positions), truth)
    name = args.name or pathlib.Path(args.input).stem
    write_metrics_csv([(name, args.config_name, metrics)], args.output, append=True)
    print(f"{name}: precision {metrics.precision:.4f} recall {metrics.recall:.4f} f1 {metrics.f1:.4f}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    """Benchmark the configured pipeline and write the latency table."""
    cfg, _, _ = _config(args.config)
    rows = benchmark(args.sizes, cfg, args.repetitions, seed=args.seed, parallel=args.parallel)
    write_latency_csv(rows, args.output)
    for row in rows:
        print(f"{row.size} points: median {row.median_ms:.2f} ms, p95 {row.p95_ms:.2f} ms, {row.hz:.1f} Hz")
    return 0


def cmd_hist(args: argparse.Namespace) -> int:
    """Write the intensity histogram with the fitted Weibull density."""
    cloud = read_cloud(args.input)
    fit = fit_weibull(cloud.intensity, args.bins, clip_fraction=args.clip_fraction, location=args.location)
    sample = cloud.intensity if args.clip_fraction is None else clip_to_lowest(cloud.intensity, args.clip_fraction, args.bins)
    histogram = intensity_histogram(sample, args.bins, fit)
    write_histogram_csv(histogram, args.output)
    print(f"fitted alpha={fit.alpha:.6f} gamma={fit.gamma:.6f} mu={fit.mu:.6f} over {args.bins} bins")
    return 0

