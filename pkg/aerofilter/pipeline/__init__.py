"""
The aerosol filtration pipeline.

`process_frame` filters one frame and returns the next `PipelineState`;
`run_stream` threads that state through a timestamped sequence of frames.
"""

from .orchestrator import FrameResult, process_frame, run_stream
from .report import FRAME_BRANCH, FilterReport, StageReport
from .state import PipelineState

__all__: list[str] = [
    "PipelineState",
    "FilterReport",
    "StageReport",
    "FRAME_BRANCH",
    "FrameResult",
    "process_frame",
    "run_stream",
]
