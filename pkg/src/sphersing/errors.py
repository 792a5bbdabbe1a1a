"""Exception types raised by sphersing.

Every error carries a short machine-readable ``code`` (the class name) so the
CLI can report it without parsing messages.
"""


class SphersingError(ValueError):
    @property
    def code(self) -> str:
        return type(self).__name__


class ZeroVector(SphersingError):
    pass


class DependentFamily(SphersingError):
    pass


class NotSaturated(SphersingError):
    pass


class NotPointed(SphersingError):
    pass


class UnboundedTruncation(SphersingError):
    pass


class CoverageUndecided(SphersingError):
    pass


class InconsistentSphericalRoots(SphersingError):
    pass


class InvalidRootData(SphersingError):
    pass


class NotCartier(SphersingError):
    pass


class NotComplete(SphersingError):
    pass


class RayNotInSupport(SphersingError):
    pass


class NotQGorenstein(SphersingError):
    pass


class NotQCartier(SphersingError):
    pass


class NotEffective(SphersingError):
    pass


class RenderRankUnsupported(SphersingError):
    pass


class InvalidInput(SphersingError):
    """Malformed or inconsistent input document; ``pointer`` is a JSON pointer."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class ContractViolation(AssertionError):
    """Internal consistency check failed; this is a bug, never a verdict."""


class MalformedDocument(InvalidInput):
    """The document is not JSON or does not match the input schema."""
