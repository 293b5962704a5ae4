"""Exception hierarchy shared by every module."""


class FFKError(Exception):
    """Base class; ``kind`` is the stable name used in CLI error objects."""

    kind = "error"

    def __init__(self, detail="", **info):
        super().__init__(detail)
        self.detail = detail
        self.info = info


class MalformedNotation(FFKError):
    kind = "MalformedNotation"


class InconsistentDiagram(FFKError):
    kind = "InconsistentDiagram"


class DegenerateDiagram(FFKError):
    kind = "DegenerateDiagram"


class InvalidParameter(FFKError, ValueError):
    kind = "InvalidParameter"


class BudgetExceeded(FFKError):
    kind = "BudgetExceeded"


class NotStabilized(FFKError):
    """Raised when the level scan ends without a confirmed class count.

    The partial scan is kept in ``info["report"]``.
    """

    kind = "NotStabilized"
