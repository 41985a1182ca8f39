"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
numerical failures with 3.
"""


class EchosimError(Exception):
    """Base class for all package errors."""


class ConfigError(EchosimError):
    """Invalid configuration, parameters, or preconditions."""


class NumericalError(EchosimError):
    """Eigensolver or fitting failure with diagnostic context."""
