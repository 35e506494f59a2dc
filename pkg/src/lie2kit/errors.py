"""Exception hierarchy.

Every error raised by the library derives from :class:`Lie2KitError` and
carries enough structured data to be rendered into a report.
"""


class Lie2KitError(ValueError):
    """Base class for all library errors."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class DimensionError(Lie2KitError):
    """Shapes of the operands do not fit together."""


class NotAnIdealError(Lie2KitError):
    pass


class NotClosedError(Lie2KitError):
    """A subspace is not closed under the bracket."""


class NotComposableError(Lie2KitError):
    pass


class MismatchError(Lie2KitError):
    """Two structures that must agree (e.g. the middle of a composite) do not."""


class InvalidStructureError(Lie2KitError):
    """Input fails its axiom check; ``report`` holds the failed verification."""

    def __init__(self, message, report=None, **details):
        super().__init__(message, **details)
        self.report = report


class SizeGuardError(Lie2KitError):
    pass
