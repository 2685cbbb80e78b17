"""Exception hierarchy shared by the complex, field, region and routing layers."""

from typing import Optional


class MorseError(ValueError):
    """Root of every domain error raised by the toolkit."""


class MalformedInputError(MorseError):
    """Input data (facets, rasters, values, JSON) cannot be interpreted."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class NotPseudoManifoldError(MorseError):
    """A codimension-1 cell has more than two top-dimensional cofaces."""


class NotMorseFunctionError(MorseError):
    """Some cell has an a- or b-count above one."""

    def __init__(self, message: str, cell: int):
        self.cell = cell
        super().__init__(message)


class MorseContradictionError(MorseError):
    """A cell has a(τ) = b(τ) = 1, which no discrete Morse function allows."""

    def __init__(self, message: str, cell: int):
        self.cell = cell
        super().__init__(message)


class NotCancellableError(MorseError):
    """No V-path joins the boundary of σ to τ."""


class AmbiguousCancellationError(MorseError):
    """More than one V-path joins the boundary of σ to τ."""

    def __init__(self, message: str, path_count: int):
        self.path_count = path_count
        super().__init__(message)


class OrderingError(MorseError):
    """Regions were requested before the lower-dimensional regions they depend on."""


class FieldContractError(MorseError):
    """Two fields that must agree (or a field and its input) are incompatible."""


class CannotPushError(MorseError):
    """The star of a merge point lacks the disjoint paths the push-out needs."""


class NoRouteError(MorseError):
    """The target maximum cannot be reached through the saddle graph."""


def describe(error: MorseError) -> dict:
    """
    Convert an error into the structured payload written by the CLI.

    Args:
        error: Any toolkit error

    Returns:
        Dict with ``type``, ``message`` and the error's extra fields
    """
    payload = {"type": type(error).__name__, "message": str(error)}
    for field in ("path", "line", "cell", "path_count"):
        value = getattr(error, field, None)
        if value is not None:
            payload[field] = value
    return payload
