"""Tests for the PCD reader and writer."""

from pathlib import Path

import numpy as np
import pytest

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.data import CloudFormatError
from aerofilter.io import read_pcd, read_pcd_header, write_pcd
from aerofilter.testing import create_random_cloud

HEADER = """# .PCD v0.7
VERSION 0.7
FIELDS {fields}
SIZE {sizes}
TYPE {types}
COUNT {counts}
WIDTH {n}
HEIGHT 1
VIEWPOINT 0 0 0 1 0 0 0
POINTS {n}
DATA {data}
"""


def _ascii_pcd(path: Path, rows: list[str], *, fields: str = "x y z intensity", sizes: str = "4 4 4 4", types: str = "F F F F", counts: str = "1 1 1 1", n: int | None = None) -> Path:
    text = HEADER.format(fields=fields, sizes=sizes, types=types, counts=counts, n=len(rows) if n is None else n, data="ascii")
    path.write_text(text + "\n".join(rows) + "\n", encoding="ascii")
    return path


class TestRoundTrip:
    """Writing then reading preserves the float32 values."""

    @pytest.mark.parametrize("binary", [True, False])
    def test_values_preserved(self, tmp_path: Path, binary: bool) -> None:
        """Coordinates and intensities survive at float32 precision."""
        cloud = create_random_cloud(500, seed=2)
        path = tmp_path / "frame.pcd"
        write_pcd(cloud, path, binary=binary)
        back = read_pcd(path)
        np.testing.assert_array_equal(back.xyz, cloud.xyz.astype(np.float32).astype(np.float64))
        np.testing.assert_array_equal(back.intensity, cloud.intensity.astype(np.float32).astype(np.float64))
        assert back.frame_id == "frame"

    def test_header_written(self, tmp_path: Path) -> None:
        """The header announces four float32 fields."""
        path = tmp_path / "a.pcd"
        write_pcd(create_random_cloud(7), path, binary=False)
        header = read_pcd_header(path)
        assert header.fields == ["x", "y", "z", "intensity"]
        assert header.points == 7
        assert header.data == "ascii"

    def test_empty_cloud(self, tmp_path: Path) -> None:
        """An empty cloud writes and reads back empty."""
        path = tmp_path / "empty.pcd"
        write_pcd(PointCloud.empty(), path)
        assert len(read_pcd(path)) == 0

    def test_metadata_arguments(self, tmp_path: Path) -> None:
        """frame_id and timestamp can be supplied."""
        path = tmp_path / "a.pcd"
        write_pcd(create_random_cloud(3), path)
        cloud = read_pcd(path, frame_id="f1", timestamp=2.5)
        assert (cloud.frame_id, cloud.timestamp) == ("f1", 2.5)


class TestReading:
    """Tests for layouts written by other tools."""

    def test_extra_fields_ignored(self, tmp_path: Path) -> None:
        """Fields beyond x y z intensity are skipped, whatever their order."""
        path = _ascii_pcd(
            tmp_path / "rgb.pcd",
            ["7 1.0 2.0 3.0 4.5 0 0", "8 5.0 6.0 7.0 0.5 1 1"],
            fields="ring x y z intensity normal",
            sizes="2 4 4 4 4 4",
            types="U F F F F F",
            counts="1 1 1 1 1 2",
        )
        cloud = read_pcd(path)
        np.testing.assert_array_equal(cloud.xyz, [[1, 2, 3], [5, 6, 7]])
        np.testing.assert_array_equal(cloud.intensity, [4.5, 0.5])

    def test_binary_with_double_and_padding_fields(self, tmp_path: Path) -> None:
        """Binary records with float64 coordinates and extra fields decode."""
        dtype = np.dtype([("x", "<f8"), ("y", "<f8"), ("z", "<f8"), ("intensity", "<f4"), ("t", "<u4")])
        records = np.zeros(3, dtype=dtype)
        records["x"] = [1.0, 2.0, 3.0]
        records["intensity"] = [10.0, 11.0, 12.0]
        header = HEADER.format(fields="x y z intensity t", sizes="8 8 8 4 4", types="F F F F U", counts="1 1 1 1 1", n=3, data="binary")
        path = tmp_path / "wide.pcd"
        path.write_bytes(header.encode("ascii") + records.tobytes())
        cloud = read_pcd(path)
        np.testing.assert_array_equal(cloud.xyz[:, 0], [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(cloud.intensity, [10.0, 11.0, 12.0])


class TestErrors:
    """Malformed files raise CloudFormatError with context."""

    def test_missing_intensity(self, tmp_path: Path) -> None:
        """A required field must be present."""
        path = _ascii_pcd(tmp_path / "a.pcd", ["1 2 3"], fields="x y z", sizes="4 4 4", types="F F F", counts="1 1 1")
        with pytest.raises(CloudFormatError, match="intensity"):
            read_pcd(path)

    def test_negative_intensity_names_row(self, tmp_path: Path) -> None:
        """Invariant violations report the offending row."""
        path = _ascii_pcd(tmp_path / "a.pcd", ["1 2 3 4", "1 2 3 -1"])
        with pytest.raises(CloudFormatError) as info:
            read_pcd(path)
        assert info.value.row == 1
        assert info.value.path == str(path)

    def test_short_row(self, tmp_path: Path) -> None:
        """Rows with too few values are rejected."""
        with pytest.raises(CloudFormatError, match="Expected 4 values") as info:
            read_pcd(_ascii_pcd(tmp_path / "a.pcd", ["1 2 3 4", "1 2 3"]))
        assert info.value.row == 1

    def test_point_count_mismatch(self, tmp_path: Path) -> None:
        """The POINTS line must match the data."""
        with pytest.raises(CloudFormatError, match="announces 3 points"):
            read_pcd(_ascii_pcd(tmp_path / "a.pcd", ["1 2 3 4"], n=3))

    def test_truncated_binary(self, tmp_path: Path) -> None:
        """A short binary payload is detected."""
        path = tmp_path / "a.pcd"
        write_pcd(create_random_cloud(10), path)
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(CloudFormatError, match="bytes"):
            read_pcd(path)

    def test_unsupported_data_mode(self, tmp_path: Path) -> None:
        """Compressed payloads are not supported."""
        path = tmp_path / "a.pcd"
        path.write_text(HEADER.format(fields="x y z intensity", sizes="4 4 4 4", types="F F F F", counts="1 1 1 1", n=0, data="binary_compressed"))
        with pytest.raises(CloudFormatError, match="DATA mode"):
            read_pcd(path)

    def test_header_without_data_line(self, tmp_path: Path) -> None:
        """A header that never reaches DATA is truncated."""
        path = tmp_path / "a.pcd"
        path.write_text("VERSION 0.7\nFIELDS x y z intensity\n")
        with pytest.raises(CloudFormatError, match="end of file"):
            read_pcd(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """I/O failures are wrapped."""
        with pytest.raises(CloudFormatError, match="Cannot read"):
            read_pcd(tmp_path / "absent.pcd")
