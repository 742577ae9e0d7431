import math
from dataclasses import dataclass
from typing import List, Tuple
import numpy as np
from ..errorHandler import ValidationException
from ..optionsValidator import OptionsValidator
validator = OptionsValidator()


@dataclass(frozen=True)
class GridSquare:
    """Closed grid square [m r, (m + 1) r] x [n r, (n + 1) r]."""

    m: int
    """Column index."""
    n: int
    """Row index."""
    r: float
    """Side length."""

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)) or \
                isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ValidationException('Grid square indices must be integers', [{
                'parameter': 'm, n', 'message': 'must be integers'}])
        validator.validate_non_zero(self.r, None, 'r')
        object.__setattr__(self, 'm', int(self.m))
        object.__setattr__(self, 'n', int(self.n))
        if not all(math.isfinite(v) for v in (self.re0, self.re1, self.im0, self.im1)):
            raise ValidationException('Grid square corners must be finite', [{
                'parameter': 'm, n', 'message': 'corners must be finite'}])

    @staticmethod
    def containing(z: complex, r: float) -> 'GridSquare':
        """Returns the grid square of side r whose lower left corner is the nearest grid point below z."""
        return GridSquare(math.floor(z.real / r), math.floor(z.imag / r), r)

    @property
    def re0(self) -> float:
        return self.m * self.r

    @property
    def re1(self) -> float:
        return (self.m + 1) * self.r

    @property
    def im0(self) -> float:
        return self.n * self.r

    @property
    def im1(self) -> float:
        return (self.n + 1) * self.r

    @property
    def center(self) -> complex:
        return complex((self.m + 0.5) * self.r, (self.n + 0.5) * self.r)

    @property
    def diameter(self) -> float:
        return self.r * math.sqrt(2)

    @property
    def corners(self) -> List[complex]:
        """Corners in counterclockwise order starting at the lower left one."""
        return [complex(self.re0, self.im0), complex(self.re1, self.im0), complex(self.re1, self.im1),
                complex(self.re0, self.im1)]

    @property
    def inner_abs_re(self) -> float:
        """Smallest |Re z| over the square."""
        if self.re0 <= 0 <= self.re1:
            return 0.0
        return min(abs(self.re0), abs(self.re1))

    def inside_lambda(self, x: float) -> bool:
        """Checks whether the square lies in the closure of {|Re z| > x}."""
        return self.inner_abs_re >= x

    def contains(self, z) -> np.ndarray:
        """Checks which points lie in the closed square."""
        z = np.asarray(z)
        return (z.real >= self.re0) & (z.real <= self.re1) & (z.imag >= self.im0) & (z.imag <= self.im1)

    def indices(self) -> Tuple[int, int]:
        return self.m, self.n

    def to_dict(self) -> dict:
        return {'m': self.m, 'n': self.n, 'r': self.r}


def lattice(Q: GridSquare, s: int) -> np.ndarray:
    """Builds the sample lattice of a square. s subdivisions per side give (s + 1)^2 points including the
    corners, the lattice for s is contained in the one for 2 s, and s = 0 gives the centre only.

    Args:
        Q: Grid square.
        s: Number of subdivisions per side.

    Returns:
        Flat complex array of lattice points.
    """
    s = validator.validate_integer(s, None, 'gridSamples')
    if s == 0:
        return np.array([Q.center])
    steps = np.arange(s + 1) / s
    re = Q.re0 + Q.r * steps
    im = Q.im0 + Q.r * steps
    return (re[np.newaxis, :] + 1j * im[:, np.newaxis]).ravel()


def boundary(Q: GridSquare, perSide: int) -> np.ndarray:
    """Samples the boundary of a square counterclockwise, perSide points per side, without closing the loop.

    Args:
        Q: Grid square.
        perSide: Points per side, the step is r / perSide.

    Returns:
        Complex array of boundary points.
    """
    perSide = validator.validate_integer(perSide, None, 'perSide', 1)
    steps = Q.r * np.arange(perSide) / perSide
    return np.concatenate([
        Q.re0 + steps + 1j * Q.im0,
        Q.re1 + 1j * (Q.im0 + steps),
        Q.re1 - steps + 1j * Q.im1,
        Q.re0 + 1j * (Q.im1 - steps)
    ])
