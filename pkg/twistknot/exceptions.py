from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from .gauss import Violation


class TwistKnotException(Exception):
    """Base class for twistknot exceptions"""


class GaussCodeError(TwistKnotException):
    """Base class for malformed Gauss codes"""

    def __init__(self, message: str, violations: Optional[List["Violation"]] = None):
        super().__init__(message)
        self.violations = violations or []


class GaussSyntaxError(GaussCodeError):
    """"""


class PairingError(GaussCodeError):
    """"""


class SignMismatch(GaussCodeError):
    """"""


class UnknownChord(TwistKnotException):
    """"""


class MoveError(TwistKnotException):
    """Base class for move exceptions"""


class StaleMove(MoveError):
    """"""


class NotApplicable(MoveError):
    """"""


class TraceFormatError(MoveError):
    """"""


class BudgetExhausted(TwistKnotException):
    """Raised when a search hits its node cap before deciding"""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class BoundInconsistency(TwistKnotException):
    """An upper bound fell below a proven lower bound"""


class InvalidN(TwistKnotException):
    """"""


class ConfigError(TwistKnotException):
    """Base class for config exceptions"""


class UnknownOptionError(ConfigError):
    """"""


class ConfigValueError(ConfigError):
    """"""


class ExportError(TwistKnotException):
    """"""
