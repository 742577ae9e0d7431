import cmath
import math
from dataclasses import dataclass
from typing import Union
from .thresholdTower import TowerNumber
from ..errorHandler import RegimeOverflowException
SWITCH_THRESHOLD = 300.0
MAX_ARGUMENT_ERROR = 1e-3
FLOAT_LOG_LIMIT = 709.0


def reduce_argument(angle: float) -> float:
    """Reduces an angle to (-pi, pi]."""
    reduced = math.remainder(angle, 2 * math.pi)
    return math.pi if reduced == -math.pi else reduced


@dataclass(frozen=True)
class Exact:
    """Complex number stored in double precision."""

    re: float
    im: float

    @staticmethod
    def from_complex(z: complex) -> 'Exact':
        z = complex(z)
        return Exact(z.real, z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def log_modulus(self) -> float:
        """Returns log |z|, -inf at 0."""
        modulus = math.hypot(self.re, self.im)
        if modulus == 0:
            return -math.inf
        if math.isinf(modulus):
            scale = max(abs(self.re), abs(self.im))
            return math.log(scale) + math.log(math.hypot(self.re / scale, self.im / scale))
        return math.log(modulus)

    def magnitude(self) -> TowerNumber:
        """Returns |z|."""
        modulus = math.hypot(self.re, self.im)
        if math.isinf(modulus):
            return TowerNumber.from_log(self.log_modulus())
        return TowerNumber(0, modulus)

    def to_dict(self) -> dict:
        return {'kind': 'exact', 're': self.re, 'im': self.im}


@dataclass(frozen=True)
class LogMag:
    """Complex number exp(logModulus + i argument) whose modulus exceeds the double range of the orbit.

    argError bounds the absolute error of argument; the argument is trusted while argError <= 1e-3.
    """

    logModulus: float
    argument: float
    argTrusted: bool = True
    argError: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'argument', reduce_argument(self.argument))

    @staticmethod
    def from_error(logModulus: float, argument: float, argError: float) -> 'LogMag':
        """Creates a value whose trust flag follows from the argument error bound."""
        return LogMag(logModulus, argument, argError <= MAX_ARGUMENT_ERROR, argError)

    def log_modulus(self) -> float:
        return self.logModulus

    def magnitude(self) -> TowerNumber:
        """Returns |z|."""
        return TowerNumber.from_log(self.logModulus)

    def to_complex(self) -> complex:
        """Converts to a double precision complex number.

        Raises:
            RegimeOverflowException: If the modulus overflows doubles.
        """
        if self.logModulus > FLOAT_LOG_LIMIT:
            raise RegimeOverflowException(f'Modulus exp({self.logModulus:g}) overflows double precision')
        return cmath.rect(math.exp(self.logModulus), self.argument)

    def to_dict(self) -> dict:
        return {'kind': 'logMag', 'logModulus': self.logModulus, 'argument': self.argument,
                'argTrusted': self.argTrusted, 'argError': self.argError}


ExtendedComplex = Union[Exact, LogMag]
