"""Exception hierarchy shared by all plmc modules.

The CLI maps these onto exit codes: parameter/contract problems exit 2,
an exact-solver size refusal exits 3, and a reduction that cannot be
realized for the requested exponent exits 4.
"""


class PlmcError(Exception):
    """Base class for all errors raised by plmc."""


class DomainError(PlmcError, ValueError):
    """A numeric argument lies outside the operation's domain."""


class RangeError(DomainError):
    """A degree or interval index is out of range for the given parameters."""


class ContractError(PlmcError, ValueError):
    """Structurally invalid input (size mismatch, wrong graph shape, ...)."""


class GraphFormatError(PlmcError, ValueError):
    """A graph or cut file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleSizeError(PlmcError):
    """The exact solver refused an instance over its vertex limit."""


class InfeasibleReductionError(PlmcError):
    """The leaf-based embedding cannot be realized at the chosen exponent."""


class ResourceLimitError(PlmcError):
    """An operation would exceed the configured memory budget."""
