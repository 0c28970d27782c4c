"""Deterministic synthetic underwater multi-object tracking toolkit.

Thin Python surface over the C++ core: dataset generation, the baseline
tracker, MOT metrics, and the complexity-based train/test split.
"""

from synthmot._core import (
    IoError,
    ValidationError,
    __version__,
    evaluate,
    generate_dataset,
    iou,
    parse_gt,
    score_file,
    split,
    track_file,
    turbidity_alpha,
    validate_config,
)

__all__ = [
    "IoError",
    "ValidationError",
    "__version__",
    "evaluate",
    "generate_dataset",
    "iou",
    "parse_gt",
    "score_file",
    "split",
    "track_file",
    "turbidity_alpha",
    "validate_config",
]
