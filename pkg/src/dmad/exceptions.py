"""Exception types shared across the toolkit."""


class DmadError(Exception):
    """Base class for all toolkit errors."""

    category = "error"


class ConfigError(DmadError):
    """Invalid or inconsistent configuration."""

    category = "config"


class DataError(DmadError):
    """Missing, empty, or malformed input data."""

    category = "data"


class ShapeError(DmadError):
    """Image or tensor shape does not match the pipeline contract."""

    category = "shape"


class GeometryError(DmadError):
    """Landmark sets are unusable (cardinality mismatch, out of bounds)."""

    category = "geometry"


class ParameterError(DmadError):
    """Operation parameter outside its valid range."""

    category = "parameter"


class BackendError(DmadError):
    """Comparator backend failed (unreachable, bad reply)."""

    category = "backend"


class CheckpointError(DmadError):
    """Checkpoint file is corrupt or unreadable."""

    category = "checkpoint"


class CheckpointVersionError(CheckpointError):
    """Checkpoint was written with an unsupported format version."""

    category = "checkpoint-version"


class TrainingDivergedError(DmadError):
    """Training produced a non-finite loss.

    Carries the epoch where divergence happened and the last finite
    loss triple for diagnosis.
    """

    category = "training"

    def __init__(self, epoch, last_finite):
        self.epoch = epoch
        self.last_finite = last_finite
        super().__init__(
            f"non-finite loss at epoch {epoch}; last finite losses "
            f"(adv_g, l1, adv_d) = {last_finite}"
        )
