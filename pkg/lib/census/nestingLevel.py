from typing import Tuple
import numpy as np
from typing_extensions import TypedDict
from ..distortion.chainDistortion import INDEXABLE
from ..distortion.gridSquare import GridSquare
from ..dynamics.exponentialSum import derivative_coefficients, evaluate_exact
from ..dynamics.thresholdTower import ThresholdTower
from ..errorHandler import InadmissibleSquareException, RegimeOverflowException, InversionFailureException
from ..logger import LoggerManager
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import compute_constants, rho_k
from ..polyCore.polynomial import Polynomial
MAX_LEVEL = 2
NEWTON_STEPS = 100
NEWTON_TOLERANCE = 1e-12
DEFAULT_CELLS = 64
validator = OptionsValidator()


class PackingReport(TypedDict, total=False):
    """Packing of the k-th nesting level inside a grid square."""

    square: dict
    """Grid square Q0."""
    level: int
    """Nesting level k."""
    cells: int
    """Preimage cells per side."""
    x: float
    """Tower start x0."""
    xLevel: float
    """Threshold x_k the packed image squares lie beyond."""
    packedSquares: int
    """Distinct image squares found in the packing."""
    packedCells: int
    """Cells whose image square belongs to the packing."""
    flaggedSquares: int
    """Image squares excluded because the inverse branch could not be evaluated."""
    density: float
    """Fraction of Q0 covered by the pulled back packing."""
    rho: float
    """Nesting density bound rho_0 at x0."""


def cell_centres(Q: GridSquare, s: int) -> np.ndarray:
    """Returns the centres of the s x s cells of a square, row by row."""
    t = (np.arange(s) + 0.5) / s
    re, im = np.meshgrid(Q.re0 + Q.r * t, Q.im0 + Q.r * t)
    return (re + 1j * im).ravel()


def _iterate(coeffs: np.ndarray, z: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    derivative = np.ones(z.shape, dtype=complex)
    for _ in range(k):
        derivative = derivative * evaluate_exact(coeffs[1], z)
        z = evaluate_exact(coeffs[0], z)
    return z, derivative


def newton_inverse(P: Polynomial, targets: np.ndarray, starts: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Solves f^k(z) = target by Newton's method from nearby starting points, which selects the inverse branch.

    Args:
        P: Polynomial.
        targets: Points to pull back.
        starts: Starting points, f^k(start) close to target.
        k: Number of iterates.

    Returns:
        Tuple of preimages and a mask of the points that converged to 1e-12 within 100 steps.
    """
    coeffs = [derivative_coefficients(P), derivative_coefficients(P, 1)]
    shape = np.shape(starts)
    z = np.asarray(starts, dtype=complex).ravel().copy()
    targets = np.broadcast_to(np.asarray(targets, dtype=complex), shape).ravel()
    converged = np.zeros(z.shape, dtype=bool)
    active = np.ones(z.shape, dtype=bool)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        for _ in range(NEWTON_STEPS):
            value, derivative = _iterate(coeffs, z[active], k)
            step = (value - targets[active]) / derivative
            finite = np.isfinite(step)
            z[active] = np.where(finite, z[active] - step, z[active])
            done = finite & (np.abs(step) <= NEWTON_TOLERANCE * np.maximum(1, np.abs(z[active])))
            indices = np.flatnonzero(active)
            converged[indices[done]] = True
            active[indices[done | ~finite]] = False
            if not active.any():
                break
    return z.reshape(shape), converged.reshape(shape)


def pull_back(P: Polynomial, targets: np.ndarray, starts: np.ndarray, k: int = 1) -> np.ndarray:
    """Pulls points back by the inverse branch of f^k selected by the starting points.

    Raises:
        InversionFailureException: If Newton's method does not converge to 1e-12 in 100 steps.
    """
    z, converged = newton_inverse(P, targets, starts, k)
    if not converged.all():
        raise InversionFailureException(f'Inverse branch did not converge at {np.count_nonzero(~converged)} '
                                        f'points in {NEWTON_STEPS} steps')
    return z


def build_nesting_level(P: Polynomial, Q0: GridSquare, k: int = 1, s: int = DEFAULT_CELLS,
                        x: float = None) -> PackingReport:
    """Builds the k-th nesting level inside Q0 by explicit packing.

    The image grid squares are enumerated through an s x s lattice of preimage cells of Q0. An image square
    belongs to the packing if it lies in Lambda(x_k) and the inverse branch maps all of its corners into Q0. The
    density is the fraction of cells whose image square is packed.

    Args:
        P: Polynomial.
        Q0: Grid square in Lambda(x*).
        k: Nesting level, at most 2.
        s: Cells per side.
        x: Tower start x0, defaults to x*.

    Returns:
        Packing report.

    Raises:
        InadmissibleSquareException: If Q0 does not lie in Lambda(x*).
        RegimeOverflowException: If image squares cannot be indexed exactly in double precision.
    """
    k = validator.validate_range(validator.validate_integer(k, 1, 'k'), 1, 'k', 0, MAX_LEVEL, low_inclusive=True)
    s = validator.validate_integer(s, DEFAULT_CELLS, 's', 1)
    constants = compute_constants(P, Q0.r)
    xStar = constants['xStar']
    if not Q0.inside_lambda(xStar):
        raise InadmissibleSquareException(f'Square {Q0.to_dict()} does not lie in Lambda({xStar})', Q0.to_dict())
    x = validator.validate_range(x, xStar, 'x', xStar, Q0.inner_abs_re, low_inclusive=True)
    tower = ThresholdTower(x)
    xLevel = tower.value(k).to_float()
    report: PackingReport = {
        'square': Q0.to_dict(),
        'level': k,
        'cells': s,
        'x': x,
        'xLevel': xLevel,
        'rho': rho_k(constants['c1'], x, 0)
    }
    if k == 0:
        return {**report, 'packedSquares': 1, 'packedCells': s * s, 'flaggedSquares': 0, 'density': 1.0}
    centres = cell_centres(Q0, s)
    coeffs = [derivative_coefficients(P), derivative_coefficients(P, 1)]
    with np.errstate(over='ignore', invalid='ignore'):
        images, _ = _iterate(coeffs, centres, k)
    if not np.all(np.isfinite(images)) or np.max(np.abs(images)) >= INDEXABLE * Q0.r:
        raise RegimeOverflowException(f'Level {k} image squares of {Q0.to_dict()} cannot be indexed in double '
                                      'precision')
    m = np.floor(images.real / Q0.r).astype(np.int64)
    n = np.floor(images.imag / Q0.r).astype(np.int64)
    keys, first, inverse = np.unique(np.stack([m, n], axis=1), axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    squares = [GridSquare(int(mi), int(ni), Q0.r) for mi, ni in keys]
    candidates = np.array([T.inside_lambda(xLevel) for T in squares])
    packed = np.zeros(len(squares), dtype=bool)
    flagged = 0
    if candidates.any():
        chosen = np.flatnonzero(candidates)
        starts = centres[first[chosen]]
        corners = np.array([squares[i].corners for i in chosen])
        preimages, converged = newton_inverse(P, corners, np.repeat(starts[:, None], 4, axis=1), k)
        valid = converged.all(axis=1)
        flagged = int(np.count_nonzero(~valid))
        if flagged:
            logger = LoggerManager.get_logger('NestingLevel')
            logger.warning(f'Excluding {flagged} image squares from the packing of {Q0.to_dict()}, the inverse '
                           'branch did not converge')
        packed[chosen] = valid & Q0.contains(preimages).all(axis=1)
    return {
        **report,
        'packedSquares': int(np.count_nonzero(packed)),
        'packedCells': int(np.count_nonzero(packed[inverse])),
        'flaggedSquares': flagged,
        'density': float(np.mean(packed[inverse]))
    }

