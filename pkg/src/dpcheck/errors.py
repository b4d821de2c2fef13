"""Exception taxonomy shared by the library and the command line front end."""


class DpCheckError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DpCheckError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(DpCheckError, ValueError):
    """A tuning knob or configuration value violates its constraints."""


class DataError(DomainError):
    """Input data is missing, unreadable, or incompatible with the requested model."""


class DegeneracyError(DpCheckError, RuntimeError):
    """A numeric procedure collapsed, e.g. all weights underflowed or a fit has zero spread."""
