"""Exception types shared across the engine."""


class VidmodError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(VidmodError):
    """A corpus, taxonomy, or review file could not be parsed."""


class ValidationError(VidmodError):
    """A record, label, or configuration value violates its invariants."""


class ConfigError(VidmodError):
    """A generator or service configuration value is unusable."""


class TaxonomyError(VidmodError):
    """An annotation references a tag id the taxonomy does not define."""


class DomainError(VidmodError):
    """An operation was asked for a value that is mathematically undefined."""


class ShapeError(VidmodError):
    """Feature vectors passed to the projector have inconsistent lengths."""


class ModelError(VidmodError):
    """A filter model and a feature vector do not fit together."""


class TrainingError(VidmodError):
    """The review set cannot be trained on (e.g. only one class present)."""


class EvaluationError(VidmodError):
    """Reviews cannot be scored against ground truth (missing entries)."""


class DuplicateReviewError(VidmodError):
    """A (video, moderator) pair was reviewed twice; past reviews are final."""
