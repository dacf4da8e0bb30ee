"""Sub-region compressive tracker."""

from ._core import (
    BoundingBox,
    Error,
    InvalidConfig,
    InvalidInput,
    IoError,
    OutOfBounds,
    Tracker,
    TrackerConfig,
    TrackingLost,
    cle,
    generate_synthetic,
    overlap,
    run_ope,
)

__all__ = [
    "BoundingBox",
    "Error",
    "InvalidConfig",
    "InvalidInput",
    "IoError",
    "OutOfBounds",
    "Tracker",
    "TrackerConfig",
    "TrackingLost",
    "cle",
    "generate_synthetic",
    "overlap",
    "run_ope",
]
