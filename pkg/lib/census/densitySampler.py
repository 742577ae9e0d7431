import math
from typing import Tuple
import numpy as np
from typing_extensions import TypedDict
from ..distortion.gridSquare import GridSquare
from ..dynamics.escapeLevels import ClassifierOpts, CERTIFIED, INDETERMINATE
from ..dynamics.orbitClassifier import OrbitClassifier
from ..dynamics.thresholdTower import ThresholdTower
from ..errorHandler import InadmissibleSquareException
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import compute_constants, rho_k, density_floor
from ..polyCore.polynomial import Polynomial
DEFAULT_DEPTH = 3
DEFAULT_SAMPLES = 4096
validator = OptionsValidator()


DensityReport = TypedDict('DensityReport', {
    'square': dict,
    'depth': int,
    'samples': int,
    'seed': int,
    'x': float,
    'certifiedFraction': float,
    'indeterminateFraction': float,
    'bandAssumedFraction': float,
    'standardError': float,
    'boundProduct': float,
    'boundExp': float,
    'pass': bool
}, total=False)
"""Sampled density of certified escaping points in a grid square. standardError is the binomial error at the
larger of boundProduct, the product of rho_j over j < depth, and boundExp = exp(-8 c1 e^4 e^(-x/2)). pass tells
whether certified plus indeterminate fractions reach the larger bound minus 3 standard errors. bandAssumedFraction
is the share of samples certified only under the assumption that their arguments avoid the excluded angle bands."""


def _zigzag(value: int) -> int:
    return 2 * value if value >= 0 else -2 * value - 1


def square_seed(seed: int, m: int, n: int) -> np.random.SeedSequence:
    """Derives the random stream of a square from the run seed and the square indices, so results do not
    depend on the order squares are processed in."""
    return np.random.SeedSequence([seed, _zigzag(m), _zigzag(n)])


def sample_points(Q: GridSquare, samples: int, seed: int) -> np.ndarray:
    """Draws uniform points of a square from its own random stream.

    Args:
        Q: Grid square.
        samples: Number of points.
        seed: Run seed.

    Returns:
        Complex array of points.
    """
    rng = np.random.default_rng(square_seed(seed, Q.m, Q.n))
    u = rng.random((2, samples))
    return (Q.re0 + Q.r * u[0]) + 1j * (Q.im0 + Q.r * u[1])


def classify_square(P: Polynomial, tower: ThresholdTower, depth: int, samples: int, seed: int,
                    opts: ClassifierOpts, Q: GridSquare) -> Tuple[float, float, float]:
    """Classifies uniform samples of a square.

    Returns:
        Tuple of certified, indeterminate and band assumed fractions.
    """
    batch = OrbitClassifier(P, tower, opts).classify_many(sample_points(Q, samples, seed), depth)
    certified = batch['status'] == CERTIFIED
    return (float(np.mean(certified)), float(np.mean(batch['status'] == INDETERMINATE)),
            float(np.mean(certified & (batch['untrustedSteps'] > 0))))


def density_bounds(c1: float, x: float, depth: int) -> Tuple[float, float]:
    """Returns the product of rho_j over j < depth and exp(-8 c1 e^4 e^(-x/2))."""
    return math.prod((rho_k(c1, x, j) for j in range(depth)), start=1.0), density_floor(c1, x)


def sample_square_density(P: Polynomial, Q0: GridSquare, depth: int = DEFAULT_DEPTH, samples: int = DEFAULT_SAMPLES,
                          seed: int = 1, x: float = None, opts: ClassifierOpts = None) -> DensityReport:
    """Estimates the density of points of Q0 certified to depth and compares it with the nesting bounds.

    Args:
        P: Polynomial.
        Q0: Grid square with side r <= 1/(4N) in Lambda(x*).
        depth: Certification depth.
        samples: Number of uniform samples.
        seed: Run seed.
        x: Tower start, defaults to x*.
        opts: Classifier options.

    Returns:
        Density report.

    Raises:
        InadmissibleSquareException: If Q0 does not lie in Lambda(x*).
    """
    depth = validator.validate_integer(depth, DEFAULT_DEPTH, 'depth')
    samples = validator.validate_integer(samples, DEFAULT_SAMPLES, 'samples', 1)
    seed = validator.validate_integer(seed, 1, 'seed')
    constants = compute_constants(P, Q0.r)
    c1, xStar = constants['c1'], constants['xStar']
    if not Q0.inside_lambda(xStar):
        raise InadmissibleSquareException(f'Square {Q0.to_dict()} does not lie in Lambda({xStar})', Q0.to_dict())
    x = validator.validate_range(x, xStar, 'x', xStar, Q0.inner_abs_re, low_inclusive=True)
    tower = ThresholdTower(x)
    certified, indeterminate, bandAssumed = classify_square(P, tower, depth, samples, seed, opts, Q0)
    product, floor = density_bounds(c1, x, depth)
    bound = max(product, floor)
    error = math.sqrt(bound * (1 - bound) / samples)
    return {
        'square': Q0.to_dict(),
        'depth': depth,
        'samples': samples,
        'seed': seed,
        'x': x,
        'certifiedFraction': certified,
        'indeterminateFraction': indeterminate,
        'bandAssumedFraction': bandAssumed,
        'standardError': error,
        'boundProduct': product,
        'boundExp': floor,
        'pass': certified + indeterminate >= bound - 3 * error
    }
