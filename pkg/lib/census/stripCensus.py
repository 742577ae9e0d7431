import math
from functools import partial
from typing import List, Optional
import numpy as np
from typing_extensions import TypedDict
from .densitySampler import classify_square, DEFAULT_DEPTH
from ..distortion.gridSquare import GridSquare
from ..dynamics.escapeLevels import ClassifierOpts, validate_classifier_opts
from ..dynamics.thresholdTower import ThresholdTower
from ..logger import LoggerManager
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import compute_constants
from ..polyCore.polynomial import Polynomial
from ..tileScheduler import TileScheduler
DEFAULT_X_MAX = 40.0
DEFAULT_SAMPLES_PER_SQUARE = 1024
validator = OptionsValidator()


class CensusOpts(TypedDict, total=False):
    """Strip census options."""

    stripImOffset: float
    """Lower edge of the strip offset <= Im z <= offset + 2 pi, default 0."""
    r: float
    """Grid side, default min{1/8, 1/(4N)}."""
    xMax: float
    """Half width of the sampled part of the strip, at least x*. Defaults to max{40, x*}."""
    depth: int
    """Certification depth, default 3."""
    samplesPerSquare: int
    """Uniform samples per grid square, default 1024."""
    seed: int
    """Run seed, default 1."""


class CertifiedStatistics(TypedDict):
    """Summary of the certified fraction over the sampled squares."""

    count: int
    """Number of sampled squares."""
    min: Optional[float]
    """Smallest certified fraction."""
    max: Optional[float]
    """Largest certified fraction."""
    average: Optional[float]
    """Mean certified fraction."""
    stddev: Optional[float]
    """Sample standard deviation, None below two squares."""


class SquareRow(TypedDict):
    """Census result of one sampled grid square."""

    m: int
    """Column index."""
    n: int
    """Row index."""
    certifiedFraction: float
    """Fraction of samples certified to depth."""
    indeterminateFraction: float
    """Fraction of samples whose angle could not be trusted."""
    bandAssumedFraction: float
    """Fraction of samples certified under the angle band assumption."""


class StripCensus(TypedDict, total=False):
    """Upper estimate of the area of the non fast escaping part of a period strip."""

    stripImOffset: float
    """Lower edge of the strip."""
    r: float
    """Grid side."""
    xMax: float
    """Half width of the sampled part of the strip."""
    depth: int
    """Certification depth."""
    samplesPerSquare: int
    """Uniform samples per grid square."""
    seed: int
    """Run seed."""
    xStar: float
    """Initial threshold x*."""
    columns: int
    """Columns per half-strip inside |Re z| <= xMax."""
    rows: int
    """Rows covering the strip, n0 + 1."""
    inadmissibleSquares: int
    """Squares not contained in Lambda(x*), counted with full area."""
    sampledSquares: int
    """Squares classified by sampling."""
    truncatedArea: float
    """Area of the non certified set in |Re z| <= xMax."""
    tailBound: float
    """Analytic bound for |Re z| > xMax."""
    totalUpper: float
    """truncatedArea + tailBound."""
    paperBound: float
    """Area bound (4 pi + 4r)(x* + r + 8 c1 e^(4 - x*/2) r / (1 - e^(-r/2)))."""
    indeterminateFraction: float
    """Mean fraction of indeterminate samples over the sampled squares."""
    bandAssumedFraction: float
    """Mean fraction of samples certified under the angle band assumption."""
    certifiedStatistics: CertifiedStatistics
    """Statistics of the certified fraction over the sampled squares."""
    squares: List[SquareRow]
    """Sampled squares sorted by (m, n)."""
    withinBound: bool
    """Whether totalUpper is below paperBound."""


def certified_statistics(fractions: np.ndarray) -> CertifiedStatistics:
    """Summarizes certified fractions of the sampled squares."""
    if not fractions.size:
        return {'count': 0, 'min': None, 'max': None, 'average': None, 'stddev': None}
    return {
        'count': int(fractions.size),
        'min': float(fractions.min()),
        'max': float(fractions.max()),
        'average': float(fractions.mean()),
        'stddev': float(fractions.std(ddof=1)) if fractions.size > 1 else None
    }


def validate_census_opts(P: Polynomial, opts: CensusOpts = None) -> CensusOpts:
    """Validates census options and fills in defaults.

    Args:
        P: Polynomial.
        opts: Options or None.

    Returns:
        Complete options.

    Raises:
        ValidationException: If an option is invalid, in particular if xMax < x*.
    """
    opts = opts or {}
    constants = compute_constants(P, opts.get('r'))
    xStar = constants['xStar']
    return {
        'stripImOffset': validator.validate_range(opts.get('stripImOffset'), 0.0, 'stripImOffset', -math.inf,
                                                   math.inf, high_inclusive=False),
        'r': constants['r'],
        'xMax': validator.validate_range(opts.get('xMax'), max(DEFAULT_X_MAX, xStar), 'xMax', xStar, math.inf,
                                         low_inclusive=True, high_inclusive=False),
        'depth': validator.validate_integer(opts.get('depth'), DEFAULT_DEPTH, 'depth'),
        'samplesPerSquare': validator.validate_integer(opts.get('samplesPerSquare'), DEFAULT_SAMPLES_PER_SQUARE,
                                                       'samplesPerSquare', 1),
        'seed': validator.validate_integer(opts.get('seed'), 1, 'seed')
    }


def strip_squares(r: float, stripImOffset: float, columns: int, n0: int) -> List[GridSquare]:
    """Lists the grid squares of the strip inside |Re z| <= columns * r, sorted by (m, n).

    Rows run from floor(offset / r) to floor(offset / r) + n0. Column k of the right half-strip is m = k, column k
    of the left half-strip is m = -k - 1, both with inner edge |Re z| = k r.
    """
    first = int(math.floor(stripImOffset / r))
    ms = sorted([k for k in range(columns)] + [-k - 1 for k in range(columns)])
    return [GridSquare(m, n, r) for m in ms for n in range(first, first + n0 + 1)]


def tail_bound(c1: float, r: float, n0: int, columns: int) -> float:
    """Bounds the non fast escaping area of both half-strips beyond column `columns` in closed form.

    Sums 2 (n0 + 1) r^2 min{1, 8 c1 e^4 e^(-k r / 2)} over k >= columns. Columns whose bound saturates at 1 are
    counted directly, the rest as a geometric series.
    """
    a = 8 * c1 * math.exp(4)
    q = math.exp(-r / 2)
    saturated = max(columns, int(math.floor(2 * math.log(a) / r)) + 1)
    while a * q ** saturated >= 1:
        saturated += 1
    while saturated > columns and a * q ** (saturated - 1) < 1:
        saturated -= 1
    series = a * q ** saturated / -math.expm1(-r / 2)
    return 2 * (n0 + 1) * r * r * ((saturated - columns) + series)


async def strip_census(P: Polynomial, stripImOffset: float = None, r: float = None, xMax: float = None,
                       depth: int = None, samplesPerSquare: int = None, seed: int = None,
                       classifierOpts: ClassifierOpts = None, scheduler: TileScheduler = None) -> StripCensus:
    """Estimates the area of the non fast escaping part of a period strip from above.

    Squares inside Lambda(x*) are sampled and contribute their uncertified fraction of r^2, squares meeting
    {|Re z| < x*} contribute their full area. The part beyond xMax is covered by the analytic tail bound.

    Args:
        P: Polynomial.
        stripImOffset: Lower edge of the strip.
        r: Grid side.
        xMax: Half width of the sampled part, at least x*.
        depth: Certification depth.
        samplesPerSquare: Uniform samples per square.
        seed: Run seed.
        classifierOpts: Classifier options.
        scheduler: Tile scheduler, a default one is created if omitted.

    Returns:
        Strip census.
    """
    logger = LoggerManager.get_logger('StripCensus')
    opts = validate_census_opts(P, {'stripImOffset': stripImOffset, 'r': r, 'xMax': xMax, 'depth': depth,
                                    'samplesPerSquare': samplesPerSquare, 'seed': seed})
    classifierOpts = validate_classifier_opts(classifierOpts)
    scheduler = scheduler or TileScheduler()
    r = opts['r']
    constants = compute_constants(P, r)
    xStar, n0 = constants['xStar'], constants['n0']
    columns = int(math.floor(opts['xMax'] / r))
    squares = strip_squares(r, opts['stripImOffset'], columns, n0)
    sampled = [Q for Q in squares if Q.inside_lambda(xStar)]
    inadmissible = len(squares) - len(sampled)
    if inadmissible:
        logger.info(f'Counting {inadmissible} squares outside Lambda({xStar:.6g}) with full area')
    worker = partial(classify_square, P, ThresholdTower(xStar), opts['depth'], opts['samplesPerSquare'],
                     opts['seed'], classifierOpts)
    fractions = await scheduler.map(worker, sampled)
    rows: List[SquareRow] = [
        {'m': Q.m, 'n': Q.n, 'certifiedFraction': certified, 'indeterminateFraction': indeterminate,
         'bandAssumedFraction': bandAssumed}
        for Q, (certified, indeterminate, bandAssumed) in zip(sampled, fractions)
    ]
    table = np.array([[row['certifiedFraction'], row['indeterminateFraction'], row['bandAssumedFraction']]
                      for row in rows]).reshape(-1, 3)
    area = r * r
    truncated = math.fsum([inadmissible * area] + [(1 - row['certifiedFraction']) * area for row in rows])
    tail = tail_bound(constants['c1'], r, n0, columns)
    total = truncated + tail
    logger.info(f'Strip census at depth {opts["depth"]}: truncated area {truncated:.6g}, tail {tail:.6g}, '
                f'bound {constants["areaBound"]:.6g}')
    return {
        **opts,
        'xStar': xStar,
        'columns': columns,
        'rows': n0 + 1,
        'inadmissibleSquares': inadmissible,
        'sampledSquares': len(rows),
        'truncatedArea': truncated,
        'tailBound': tail,
        'totalUpper': total,
        'paperBound': constants['areaBound'],
        'indeterminateFraction': float(table[:, 1].mean()) if rows else 0.0,
        'bandAssumedFraction': float(table[:, 2].mean()) if rows else 0.0,
        'certifiedStatistics': certified_statistics(table[:, 0]),
        'squares': rows,
        'withinBound': total < constants['areaBound']
    }
