class DoodleError(ValueError):
    """Root of every error raised for bad doodle input."""


class DiagramError(DoodleError):
    pass


class UnrealizableCodeError(DoodleError):
    pass


class CodeError(DoodleError):
    pass


class DualGraphError(DoodleError):
    pass


class ClassificationError(DoodleError):
    pass


class CycleCodeError(DoodleError):
    pass


class TwinWordError(DoodleError):
    pass


class CatalogError(DoodleError):
    pass


class InvariantError(AssertionError):
    """An internal consistency check failed; this is a bug, not bad input."""
