"""Exception hierarchy shared by the library and the CLI."""


class DessinForgeError(Exception):
    """Base class for every error raised by dessin_forge."""


class InvalidParameters(DessinForgeError, ValueError):
    """Group or family parameters violate their admissibility constraints."""


class SpecParseError(DessinForgeError, ValueError):
    """A group-spec string could not be parsed.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class ValidationError(DessinForgeError):
    """A constructed group failed its own validation (a collection-rule bug)."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class OrderCapExceeded(DessinForgeError):
    """A closure or table would exceed the configured order cap."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NotGenerating(DessinForgeError, ValueError):
    """A pair of elements does not generate the group."""


class UnsupportedInput(DessinForgeError, ValueError):
    """The operation is not defined for the given group."""
