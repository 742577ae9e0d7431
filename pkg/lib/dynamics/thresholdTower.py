import math
from typing import Union
from typing_extensions import Literal
from ..errorHandler import ValidationException

Ordering = Literal['<', '=', '>']
COMPARE_TOLERANCE = 1e-12
LOG_LIMIT = 709.78
EXP_LIMIT = math.exp(LOG_LIMIT)


class TowerNumber:
    """Nonnegative magnitude exp∘height(top), normalized so that exp(top) overflows whenever height > 0.

    Normalization makes the order of magnitudes the lexicographic order of (height, top).
    """

    __slots__ = ('height', 'top')

    def __init__(self, height: int, top: float):
        """Inits tower number.

        Args:
            height: Number of exponentials applied to top.
            top: Innermost value.
        """
        if height < 0:
            raise ValidationException('Parameter height cannot be lower than 0', [{
                'parameter': 'height', 'message': 'cannot be lower than 0', 'range': '[0, inf)'}])
        if math.isnan(top):
            raise ValidationException('Parameter top must be a number', [{
                'parameter': 'top', 'message': 'must be a number'}])
        while height > 0 and top <= LOG_LIMIT:
            top = math.exp(top)
            height -= 1
        if height == 0 and top > EXP_LIMIT:
            top = math.log(top)
            height = 1
        self.height = height
        self.top = top

    @staticmethod
    def from_log(log_value: float) -> 'TowerNumber':
        """Creates the magnitude whose logarithm is log_value."""
        return TowerNumber(1, log_value)

    def exp(self) -> 'TowerNumber':
        """Returns exp of the magnitude."""
        return TowerNumber(self.height + 1, self.top)

    def log(self) -> 'TowerNumber':
        """Returns log of the magnitude, which must exceed 0 at height 0."""
        if self.height > 0:
            return TowerNumber(self.height - 1, self.top)
        if self.top <= 0:
            raise ValidationException('Logarithm of a non-positive magnitude', [{
                'parameter': 'top', 'message': 'must be positive', 'range': '(0, inf)'}])
        return TowerNumber(0, math.log(self.top))

    def mul(self, factor: float) -> 'TowerNumber':
        """Multiplies by a positive constant. Above height 1 the change lies below double resolution."""
        if factor <= 0:
            raise ValidationException('Parameter factor must be bigger than 0', [{
                'parameter': 'factor', 'message': 'must be bigger than 0', 'range': '(0, inf)'}])
        if self.height == 0:
            product = self.top * factor
            if math.isinf(product) and not math.isinf(self.top):
                return TowerNumber(1, math.log(self.top) + math.log(factor))
            return TowerNumber(0, product)
        if self.height == 1:
            return TowerNumber(1, self.top + math.log(factor))
        return self

    def add(self, term: float) -> 'TowerNumber':
        """Adds a constant. Above height 0 the change lies below double resolution."""
        if self.height == 0:
            total = self.top + term
            if math.isinf(total) and not math.isinf(self.top):
                return TowerNumber(1, math.log(self.top) + math.log1p(term / self.top))
            return TowerNumber(0, total)
        return self

    def compare(self, other: 'TowerNumber') -> Ordering:
        """Compares two magnitudes, reporting '=' for tops within relative tolerance 1e-12."""
        if self.height != other.height:
            return '>' if self.height > other.height else '<'
        if self.top == other.top or math.isclose(self.top, other.top, rel_tol=COMPARE_TOLERANCE):
            return '='
        return '>' if self.top > other.top else '<'

    def to_float(self) -> float:
        """Returns the magnitude as a float, inf above height 0."""
        return self.top if self.height == 0 else math.inf

    def to_dict(self) -> dict:
        return {'height': self.height, 'top': self.top}

    def __eq__(self, other):
        return isinstance(other, TowerNumber) and self.height == other.height and self.top == other.top

    def __repr__(self):
        return f'TowerNumber({self.height}, {self.top!r})'


class ThresholdTower:
    """Threshold sequence x_k = 2 exp∘k(x0/2), stored symbolically.

    The recurrence x_{k+1} = 2 exp(x_k / 2) serves both the real part thresholds of the nesting argument
    and the modulus thresholds of the fast escaping criterion.
    """

    def __init__(self, x0: float, k: int = 0):
        """Inits threshold tower.

        Args:
            x0: Initial threshold, positive.
            k: Default level.
        """
        if isinstance(x0, bool) or not isinstance(x0, (int, float)) or not (x0 > 0) or math.isinf(x0):
            raise ValidationException('Parameter x0 must be bigger than 0', [{
                'parameter': 'x0', 'message': 'must be bigger than 0', 'range': '(0, inf)'}])
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ValidationException('Parameter k must be a non-negative integer', [{
                'parameter': 'k', 'message': 'must be a non-negative integer', 'range': '[0, inf)'}])
        self._x0 = float(x0)
        self._k = k

    @property
    def x0(self) -> float:
        return self._x0

    @property
    def k(self) -> int:
        return self._k

    @property
    def admissible(self) -> bool:
        """Returns whether x0 satisfies the floor x0 >= 6 log 2 of the nesting argument."""
        return self._x0 >= 6 * math.log(2)

    def at(self, level: int) -> 'ThresholdTower':
        """Returns the tower pointing at another level."""
        return ThresholdTower(self._x0, level)

    def value(self, level: int = None) -> TowerNumber:
        """Returns x_level as a tower number.

        Args:
            level: Level, defaults to k.
        """
        level = self._k if level is None else level
        if level == 0:
            return TowerNumber(0, self._x0)
        number = TowerNumber(0, self._x0 / 2)
        for _ in range(level):
            number = number.exp()
        return number.mul(2)

    def log_value(self, level: int = None) -> TowerNumber:
        """Returns log x_level as a tower number, log x_{k+1} = log 2 + x_k / 2.

        Args:
            level: Level, defaults to k.
        """
        level = self._k if level is None else level
        if level == 0:
            return TowerNumber(0, self._x0).log()
        return self.value(level - 1).mul(0.5).add(math.log(2))

    def log_float(self, level: int = None) -> float:
        """Returns log x_level as a float, inf when it is not representable."""
        return self.log_value(level).to_float()

    def log_log_float(self, level: int = None) -> float:
        """Returns log log x_level as a float, inf when it is not representable and -inf when x_level <= 1."""
        log_value = self.log_value(level)
        if log_value.height == 0 and log_value.top <= 0:
            return -math.inf
        return log_value.log().to_float()

    def compare(self, magnitude: Union[float, TowerNumber], level: int = None) -> Ordering:
        """Compares a magnitude against x_level without materializing x_level.

        Args:
            magnitude: Nonnegative float or tower number.
            level: Level, defaults to k.

        Returns:
            '<', '=' or '>'.
        """
        if not isinstance(magnitude, TowerNumber):
            magnitude = TowerNumber(0, float(magnitude))
        return magnitude.compare(self.value(level))

    def __repr__(self):
        return f'ThresholdTower(x0={self._x0!r}, k={self._k})'


def threshold_compare(v, tower: ThresholdTower) -> Ordering:
    """Compares a magnitude against x_k of a tower.

    Args:
        v: Float, tower number or extended complex value, whose modulus is compared.
        tower: Threshold tower.

    Returns:
        '<', '=' or '>'.
    """
    if isinstance(v, TowerNumber):
        magnitude = v
    elif hasattr(v, 'magnitude'):
        magnitude = v.magnitude()
    else:
        magnitude = TowerNumber(0, abs(float(v)))
    return tower.compare(magnitude)
