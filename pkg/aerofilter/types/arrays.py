"""Array type aliases shared across the package."""

from typing import TypeAlias

import numpy as np
import numpy.typing as npt

FloatArray: TypeAlias = npt.NDArray[np.float64]
"""Float64 array (coordinates, ranges, intensities, distances)."""

IndexArray: TypeAlias = npt.NDArray[np.int64]
"""Int64 array of point positions or original indices."""

BoolArray: TypeAlias = npt.NDArray[np.bool_]
"""Boolean mask over the points of a cloud."""

__all__: list[str] = ["FloatArray", "IndexArray", "BoolArray"]
