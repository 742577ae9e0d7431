from typing import Tuple, List
from typing_extensions import TypedDict


class FastEscapeException(Exception):
    """Base class for fastescape exceptions. Contains the exit status reported by the command line.

    Attributes:
        status: process exit status
    """

    def __init__(self, message: str, status: int):
        """Inits FastEscapeException

        Args:
            message: Exception message.
            status: Exit status.
        """
        super().__init__(message)
        self.status = status

    @property
    def code(self) -> str:
        """Returns exception code used for i18n

        Returns:
            Exception code.
        """
        return getattr(self, '_code', self.__class__.__name__)

    @code.setter
    def code(self, code: str):
        """Sets error code, used for i18n

        Args:
            code: Error code for i18n.
        """
        self._code = code

    @property
    def arguments(self) -> Tuple:
        """Returns message arguments for i18n

        Returns:
            Message arguments for i18n.
        """
        return self.args

    @arguments.setter
    def arguments(self, args: Tuple):
        """Set message arguments for i18n

        Args:
            args: Arguments for i18n.
        """
        self.args = args


class ValidationDetail(TypedDict, total=False):
    """Validation failure of a single parameter."""

    parameter: str
    """Parameter name."""
    message: str
    """Failure description."""
    range: str
    """Admissible range of the parameter."""


class ValidationException(FastEscapeException):
    """Represents validation exception. Throwing this exception results in exit status 2.

    Attributes:
        _details: Validation exception details
    """

    def __init__(self, message: str, details: List[ValidationDetail] = None):
        """Inits validation error.

        Args:
            message: Exception message.
            details: Exception data.
        """
        super().__init__(message + ', check error.details for more information', 2)
        self._details = details

    @property
    def details(self) -> List[ValidationDetail]:
        """Returns validation exception details.

        Returns:
            Validation exception details.
        """
        return self._details


class RegimeOverflowException(FastEscapeException):
    """Thrown when a value leaves the range of its representation, even at log scale."""

    def __init__(self, message: str):
        """Inits regime overflow exception.

        Args:
            message: Exception message.
        """
        super().__init__(message, 3)


class SingularDerivativeException(FastEscapeException):
    """Thrown when f' vanishes to tolerance at an evaluation point."""

    def __init__(self, message: str):
        """Inits singular derivative exception.

        Args:
            message: Exception message.
        """
        super().__init__(message, 3)


class PreconditionViolatedException(FastEscapeException):
    """Thrown when a lemma check is requested outside of the hypotheses of the lemma."""

    def __init__(self, message: str):
        """Inits precondition violated exception.

        Args:
            message: Exception message.
        """
        super().__init__(message, 3)


class ChainBrokenException(FastEscapeException):
    """Thrown when consecutive squares of a chain are not nested under f."""

    def __init__(self, message: str, index: int = None):
        """Inits chain broken exception.

        Args:
            message: Exception message.
            index: Index of the first square whose image does not contain its successor.
        """
        super().__init__(message, 3)
        self.index = index


class ShiftNotFoundException(FastEscapeException):
    """Thrown when no iterate shift makes the maximal modulus comparison hold."""

    def __init__(self, message: str):
        """Inits shift not found exception.

        Args:
            message: Exception message.
        """
        super().__init__(message, 3)


class InadmissibleSquareException(FastEscapeException):
    """Thrown when a grid square is not contained in the half-planes the density bounds are proved for."""

    def __init__(self, message: str, square: dict = None):
        """Inits inadmissible square exception.

        Args:
            message: Exception message.
            square: Offending square.
        """
        super().__init__(message, 3)
        self.square = square


class InversionFailureException(FastEscapeException):
    """Thrown when Newton inversion of f does not converge."""

    def __init__(self, message: str):
        """Inits inversion failure exception.

        Args:
            message: Exception message.
        """
        super().__init__(message, 3)
