import math
from typing import Set, Tuple
import numpy as np
from .chainDistortion import BOUNDARY_STEPS
from .estimators import distortion, DEFAULT_GRID_SAMPLES
from .gridSquare import GridSquare, boundary
from ..dynamics.exponentialSum import derivative_coefficients, evaluate_exact, log_abs_f_prime
from ..errorHandler import PreconditionViolatedException
from ..optionsValidator import OptionsValidator
from ..polyCore.polynomial import Polynomial
MAX_BOUNDARY_SAMPLES = 2 ** 21
validator = OptionsValidator()


def _point_indices(points, r: float) -> np.ndarray:
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    u, v = points.real / r, points.imag / r
    m, n = np.floor(u), np.floor(v)
    on_column = u == m
    on_row = v == n
    both = on_column & on_row
    return np.concatenate([
        np.stack([m, n], axis=1),
        np.stack([m[on_column] - 1, n[on_column]], axis=1),
        np.stack([m[on_row], n[on_row] - 1], axis=1),
        np.stack([m[both] - 1, n[both] - 1], axis=1)
    ]).astype(np.int64)


def _chord_indices(curve: np.ndarray, r: float, closed: bool) -> np.ndarray:
    """Squares crossed between consecutive samples closer than r that change both column and row. The chord
    passes through the square beside the corner it cuts, or through both when it hits the corner."""
    start = curve if closed else curve[:-1]
    end = np.roll(curve, -1) if closed else curve[1:]
    ms, ns = np.floor(start.real / r), np.floor(start.imag / r)
    me, ne = np.floor(end.real / r), np.floor(end.imag / r)
    diagonal = (ms != me) & (ns != ne)
    start, end = start[diagonal], end[diagonal]
    ms, ns, me, ne = ms[diagonal], ns[diagonal], me[diagonal], ne[diagonal]
    tx = (r * np.maximum(ms, me) - start.real) / (end.real - start.real)
    ty = (r * np.maximum(ns, ne) - start.imag) / (end.imag - start.imag)
    via_column = tx <= ty
    via_row = ty <= tx
    return np.concatenate([
        np.stack([me[via_column], ns[via_column]], axis=1),
        np.stack([ms[via_row], ne[via_row]], axis=1)
    ]).astype(np.int64)


def _as_set(indices: np.ndarray) -> Set[Tuple[int, int]]:
    return {(int(m), int(n)) for m, n in indices}


def squares_of_points(points, r: float) -> Set[Tuple[int, int]]:
    """Collects the closed grid squares of side r containing the points. A point on a grid line belongs to the
    squares on both sides.

    Args:
        points: Complex points.
        r: Grid side.

    Returns:
        Set of (m, n) indices.
    """
    return _as_set(_point_indices(points, r))


def _segment_indices(a: complex, b: complex, r: float) -> np.ndarray:
    count = int(math.ceil(abs(b - a) / (r / 4))) + 1
    points = a + (b - a) * np.linspace(0, 1, count)
    return np.concatenate([_point_indices(points, r), _chord_indices(points, r, False)])


def segment_squares(a: complex, b: complex, r: float) -> Set[Tuple[int, int]]:
    """Collects the grid squares met by the segment [a, b]. The segment is sampled with step at most r / 4 and
    the squares crossed between two samples are added from the chord.

    Args:
        a: Start point.
        b: End point.
        r: Grid side.

    Returns:
        Set of (m, n) indices.
    """
    r = validator.validate_non_zero(r, None, 'r')
    return _as_set(_segment_indices(a, b, r))


def _refined_image(P: Polynomial, Q: GridSquare, perSide: int) -> np.ndarray:
    coeffs = derivative_coefficients(P)
    preimage = boundary(Q, perSide)
    step = Q.r / 4
    while True:
        image = evaluate_exact(coeffs, preimage)
        if not np.all(np.isfinite(image)):
            raise PreconditionViolatedException(f'Image of square {Q.to_dict()} overflows double precision')
        gaps = np.abs(np.roll(image, -1) - image)
        if np.all(gaps <= step):
            return image
        pieces = np.maximum(np.ceil(gaps / step).astype(np.int64), 1)
        total = int(pieces.sum())
        if total > MAX_BOUNDARY_SAMPLES:
            raise PreconditionViolatedException(f'Image boundary of square {Q.to_dict()} needs more than '
                                                f'{MAX_BOUNDARY_SAMPLES} samples')
        offsets = np.arange(total) - np.repeat(np.cumsum(pieces) - pieces, pieces)
        preimage = np.repeat(preimage, pieces) + np.repeat((np.roll(preimage, -1) - preimage) / pieces, pieces) \
            * offsets


def _line_intervals(curve: np.ndarray, X: float) -> list:
    """Intervals of Im z on the line Re z = X inside a closed polygon, by the even-odd rule."""
    start, end = curve, np.roll(curve, -1)
    crossing = (start.real - X) * (end.real - X) < 0
    crossing |= (start.real == X) & (end.real != X)
    t = (X - start.real[crossing]) / (end.real[crossing] - start.real[crossing])
    heights = np.sort(start.imag[crossing] + t * (end.imag[crossing] - start.imag[crossing]))
    return [(heights[i], heights[i + 1]) for i in range(0, len(heights) - 1, 2)]


def count_boundary_squares(P: Polynomial, Q: GridSquare, x: float, gridSamples: int = DEFAULT_GRID_SAMPLES,
                           perSide: int = BOUNDARY_STEPS) -> dict:
    """Counts grid squares of side r meeting the boundary of f(Q) or the part of the boundary of Lambda(x)
    inside f(Q), and compares the count against c = 16 + 12 sqrt(2) L(f|Q) |f'(z0)| at the centre z0.

    Args:
        P: Polynomial.
        Q: Grid square on which f is conformal.
        x: Threshold of Lambda(x).
        gridSamples: Subdivisions per side of the distortion lattice.
        perSide: Initial boundary samples per side of Q.

    Returns:
        Report with keys count, boundaryCount, c, square, x and pass.

    Raises:
        PreconditionViolatedException: If the image boundary cannot be sampled densely enough.
    """
    x = validator.validate_number(x, None, 'x')
    image = _refined_image(P, Q, perSide)
    parts = [_point_indices(image, Q.r), _chord_indices(image, Q.r, True)]
    boundary_count = len(np.unique(np.concatenate(parts), axis=0))
    for X in (x, -x):
        for low, high in _line_intervals(image, X):
            parts.append(_segment_indices(complex(X, low), complex(X, high), Q.r))
    count = len(np.unique(np.concatenate(parts), axis=0))
    L = distortion(P, Q, gridSamples)
    derivative = math.exp(float(log_abs_f_prime(P, np.array([Q.center]))[0]))
    c = 16 + 12 * math.sqrt(2) * L * derivative
    return {'count': count, 'boundaryCount': boundary_count, 'c': c, 'square': Q.to_dict(), 'x': x,
            'pass': count <= c}
