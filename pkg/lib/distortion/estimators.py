import math
import numpy as np
from typing_extensions import TypedDict
from .gridSquare import GridSquare, lattice
from ..dynamics.exponentialSum import log_derivative_ratio_array, log_abs_f_prime
from ..errorHandler import PreconditionViolatedException
from ..logger import LoggerManager
from ..polyCore.constants import radii
from ..polyCore.polynomial import Polynomial
DEFAULT_GRID_SAMPLES = 64
SAMPLING_SLACK = 0.02


class DistortionEstimate(TypedDict, total=False):
    """Sampled distortion and nonlinearity of f on a grid square."""

    L: float
    """Ratio of the largest and the smallest sampled |f'|, at least 1."""
    Nnl: float
    """Largest sampled |f''/f'| times the diameter of the square."""
    samples: int
    """Number of lattice points."""
    square: dict
    """Grid square."""
    inDomain: bool
    """Whether the square lies in Lambda(R6) where |f''/f'| < N holds."""


def nonlinearity(P: Polynomial, Q: GridSquare, gridSamples: int = DEFAULT_GRID_SAMPLES) -> float:
    """Estimates N(f|Q) = sup |f''/f'| diam(Q) over the sample lattice.

    Args:
        P: Polynomial.
        Q: Grid square.
        gridSamples: Subdivisions per side of the sample lattice.

    Returns:
        Nonlinearity estimate.

    Raises:
        SingularDerivativeException: If f' vanishes at a lattice point.
    """
    ratio = log_derivative_ratio_array(P, lattice(Q, gridSamples))
    return float(np.max(np.abs(ratio))) * Q.diameter


def distortion(P: Polynomial, Q: GridSquare, gridSamples: int = DEFAULT_GRID_SAMPLES) -> float:
    """Estimates L(f|Q) = sup |f'| / inf |f'| over the sample lattice. Squares are convex, so this is the
    distortion of f on Q up to sampling.

    Args:
        P: Polynomial.
        Q: Grid square.
        gridSamples: Subdivisions per side of the sample lattice.

    Returns:
        Distortion estimate, at least 1.

    Raises:
        SingularDerivativeException: If f' vanishes at a lattice point.
    """
    log_derivative = log_abs_f_prime(P, lattice(Q, gridSamples))
    return math.exp(float(np.max(log_derivative) - np.min(log_derivative)))


def in_domain(P: Polynomial, Q: GridSquare) -> bool:
    """Checks whether Q lies in Lambda(R6)."""
    return Q.inside_lambda(radii(P).R6)


def estimate(P: Polynomial, Q: GridSquare, gridSamples: int = DEFAULT_GRID_SAMPLES) -> DistortionEstimate:
    """Estimates distortion and nonlinearity together, flagging squares outside Lambda(R6).

    Args:
        P: Polynomial.
        Q: Grid square.
        gridSamples: Subdivisions per side of the sample lattice.

    Returns:
        Distortion estimate.
    """
    points = lattice(Q, gridSamples)
    inside = in_domain(P, Q)
    if not inside:
        logger = LoggerManager.get_logger('Estimators')
        logger.warning(f'Square {Q.to_dict()} lies outside Lambda(R6), the estimate is reported out of domain')
    log_derivative = log_abs_f_prime(P, points)
    ratio = log_derivative_ratio_array(P, points)
    return {
        'L': math.exp(float(np.max(log_derivative) - np.min(log_derivative))),
        'Nnl': float(np.max(np.abs(ratio))) * Q.diameter,
        'samples': len(points),
        'square': Q.to_dict(),
        'inDomain': inside
    }


def check_LN(P: Polynomial, Q: GridSquare, gridSamples: int = DEFAULT_GRID_SAMPLES) -> dict:
    """Checks L(f|Q) <= 1 + 2 N(f|Q) with 2% relative sampling slack.

    Args:
        P: Polynomial.
        Q: Grid square.
        gridSamples: Subdivisions per side of the sample lattice.

    Returns:
        Report with keys N, L, bound, slack, square and pass.

    Raises:
        PreconditionViolatedException: If the sampled nonlinearity is at least 1.
    """
    result = estimate(P, Q, gridSamples)
    N = result['Nnl']
    if N >= 1:
        raise PreconditionViolatedException(f'Nonlinearity {N} on square {Q.to_dict()} is not below 1')
    bound = 1 + 2 * N
    return {
        'N': N,
        'L': result['L'],
        'bound': bound,
        'slack': (bound - result['L']) / bound,
        'square': Q.to_dict(),
        'pass': result['L'] <= bound * (1 + SAMPLING_SLACK)
    }
