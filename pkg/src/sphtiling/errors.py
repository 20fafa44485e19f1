"""Exception types raised by the library."""


class SphTilingError(Exception):
    """Base class for all library errors."""


class DomainError(SphTilingError, ValueError):
    """An argument lies outside the interval where the operation is defined."""


class InconsistentAVC(SphTilingError, ValueError):
    """Corner totals of an AVC cannot come from whole tiles."""


class CatalogMiss(SphTilingError, KeyError):
    """Unknown protoset identifier."""


class FormulaBranch(SphTilingError, ArithmeticError):
    """A complex-radical closed form left a non-negligible imaginary part."""


class RegistryMiss(SphTilingError, KeyError):
    """Unknown tiling identifier."""


class SiteNotFlippable(SphTilingError, ValueError):
    """The requested flip site does not match the hexagonal module pattern."""


class ClosureFailure(SphTilingError, RuntimeError):
    """Vertex positions reached along different paths disagree."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect
