import math
from typing import List, Sequence
import numpy as np
from .estimators import distortion, DEFAULT_GRID_SAMPLES
from .gridSquare import GridSquare, boundary
from ..dynamics.exponentialSum import derivative_coefficients, evaluate_exact
from ..dynamics.thresholdTower import ThresholdTower
from ..errorHandler import ChainBrokenException, PreconditionViolatedException, ValidationException
from ..logger import LoggerManager
from ..polyCore.constants import radii, validate_r
from ..polyCore.polynomial import Polynomial
BOUNDARY_STEPS = 64
TARGET_STEPS = 4
INDEXABLE = 2.0 ** 52
CHAIN_BOUND = math.exp(2)


def winding_numbers(curve: np.ndarray, points) -> np.ndarray:
    """Computes winding numbers of a closed polygon around points.

    Args:
        curve: Polygon vertices, the last vertex is joined to the first one.
        points: Complex points off the polygon.

    Returns:
        Integer array of winding numbers.
    """
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    relative = curve[np.newaxis, :] - points[:, np.newaxis]
    turns = np.angle(np.roll(relative, -1, axis=1) / relative).sum(axis=1)
    return np.rint(turns / (2 * math.pi)).astype(int)


def image_boundary(P: Polynomial, Q: GridSquare, perSide: int = BOUNDARY_STEPS) -> np.ndarray:
    """Maps the sampled boundary of Q by f."""
    return evaluate_exact(derivative_coefficients(P), boundary(Q, perSide))


def contains_square(P: Polynomial, Q: GridSquare, target: GridSquare, perSide: int = BOUNDARY_STEPS) -> bool:
    """Checks target in f(Q) through the winding of f(dQ) around the sampled boundary of target.

    Args:
        P: Polynomial.
        Q: Grid square on which f is conformal.
        target: Candidate square.
        perSide: Boundary samples per side of Q.

    Returns:
        Whether every sampled boundary point of target is enclosed by f(dQ).
    """
    curve = image_boundary(P, Q, perSide)
    if not np.all(np.isfinite(curve)):
        return False
    return bool(np.all(winding_numbers(curve, boundary(target, TARGET_STEPS)) != 0))


def _validate_chain(P: Polynomial, chain: Sequence[GridSquare], tower: ThresholdTower or None):
    r = chain[0].r
    if any(Q.r != r for Q in chain):
        raise ValidationException('Chain squares must share the grid side', [{
            'parameter': 'chain', 'message': 'squares must share the grid side'}])
    validate_r(P, r)
    R6 = radii(P).R6
    for i, Q in enumerate(chain):
        if not Q.inside_lambda(R6):
            raise PreconditionViolatedException(f'Chain square {i} {Q.to_dict()} does not lie in Lambda(R6)')
    if tower is not None and not chain[0].inside_lambda(tower.x0):
        raise PreconditionViolatedException(f'First chain square does not lie in Lambda({tower.x0})')


def chain_distortion(P: Polynomial, chain: Sequence[GridSquare], tower: ThresholdTower = None,
                     gridSamples: int = DEFAULT_GRID_SAMPLES) -> dict:
    """Estimates the distortion of the composition along a chain Q_1, ..., Q_n with Q_{i+1} in f(Q_i) by the
    product of the sampled distortions of f on each square, and compares it against e^2.

    Args:
        P: Polynomial.
        chain: Grid squares of one side r <= 1/(4N) in Lambda(R6).
        tower: Optional tower whose x0 the first square has to clear.
        gridSamples: Subdivisions per side of the sample lattices.

    Returns:
        Report with keys length, steps, Lest, bound and pass.

    Raises:
        ChainBrokenException: If a square is not contained in the image of its predecessor.
        PreconditionViolatedException: If a square leaves Lambda(R6).
    """
    chain = list(chain)
    if not len(chain):
        return {'length': 0, 'steps': [], 'Lest': 1.0, 'bound': CHAIN_BOUND, 'pass': True}
    _validate_chain(P, chain, tower)
    for i in range(len(chain) - 1):
        if not contains_square(P, chain[i], chain[i + 1]):
            raise ChainBrokenException(f'Square {chain[i + 1].to_dict()} is not contained in the image of '
                                       f'{chain[i].to_dict()}', i + 1)
    steps = [distortion(P, Q, gridSamples) for Q in chain]
    estimate = float(np.prod(steps))
    return {'length': len(chain), 'steps': steps, 'Lest': estimate, 'bound': CHAIN_BOUND,
            'pass': estimate <= CHAIN_BOUND}


def build_chain(P: Polynomial, Q0: GridSquare, depth: int) -> List[GridSquare]:
    """Builds a chain by forward packing: the next square is the grid square containing the image of the
    centre, as long as it lies in Lambda(R6), is contained in the image and stays exactly indexable.

    Args:
        P: Polynomial.
        Q0: First square.
        depth: Number of forward steps.

    Returns:
        Chain Q0, ..., Q_k with k <= depth.
    """
    logger = LoggerManager.get_logger('ChainDistortion')
    R6 = radii(P).R6
    coeffs = derivative_coefficients(P)
    chain = [Q0]
    for _ in range(depth):
        Q = chain[-1]
        center = complex(evaluate_exact(coeffs, Q.center))
        if not (math.isfinite(center.real) and math.isfinite(center.imag)) or \
                max(abs(center.real), abs(center.imag)) >= INDEXABLE * Q.r:
            logger.debug(f'Chain from {Q0.to_dict()} stops at length {len(chain)}, the image leaves the grid')
            break
        target = GridSquare.containing(center, Q.r)
        if not target.inside_lambda(R6) or not contains_square(P, Q, target):
            logger.debug(f'Chain from {Q0.to_dict()} stops at length {len(chain)}, no admissible square')
            break
        chain.append(target)
    return chain
