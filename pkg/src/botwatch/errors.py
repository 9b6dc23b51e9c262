"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: configuration errors exit 1, data
errors exit 2, network errors exit 3.
"""


class BotwatchError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(BotwatchError):
    """Bad parameters, missing columns, invalid windows, unknown axes."""


class DataError(BotwatchError):
    """Unusable input data: empty graphs, corrupt caches, missing nodes."""


class NetworkError(BotwatchError):
    """Scoring-service failures that abort a batch (e.g. bad credentials)."""
