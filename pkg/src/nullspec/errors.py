"""Shared exception types."""


class NullspecError(Exception):
    """Base class for engine errors."""


class EnumerationCapExceeded(NullspecError):
    """An exhaustive enumeration would exceed its configured cap.

    Raised explicitly rather than truncating; carries a human-readable
    description of the offending enumeration.
    """


class ZeroObjectError(NullspecError):
    """A predicate that requires a nonzero object was given the zero object."""


class BackendMismatch(NullspecError):
    """Two objects from different backends (or different p) were combined."""


class ConfigError(NullspecError):
    """Invalid run configuration (CLI or library level)."""
