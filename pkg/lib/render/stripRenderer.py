import math
from functools import partial
import numpy as np
from .renderSpec import RenderSpec, validate_render_spec
from ..dynamics.escapeLevels import CERTIFIED, FAILED, INDETERMINATE
from ..dynamics.exponentialSum import derivative_coefficients, evaluate_exact
from ..dynamics.orbitClassifier import OrbitClassifier
from ..dynamics.thresholdTower import ThresholdTower
from ..logger import LoggerManager
from ..polyCore.constants import compute_constants
from ..polyCore.polynomial import Polynomial
from ..tileScheduler import TileScheduler
PERIOD = 2 * math.pi
WHITE = 255
GRAY = 128
LATE_FAILURE = 200
ENTRY_SHADE = 8
ENTRY_SHADES = 12


def pixel_row(spec: RenderSpec, row: int) -> np.ndarray:
    """Returns the z values of the pixel centres of an image row, the top row first.

    The window is reduced modulo 2 pi along the period before the pixel centres are placed, so windows that
    differ by a multiple of 2 pi i (2 pi in the conjugate view) give identical points.
    """
    re0, re1, im0, im1 = spec['window']
    width, height = spec['widthPx'], spec['heightPx']
    if spec['conjugateView']:
        re1, re0 = re1 - re0 + re0 % PERIOD, re0 % PERIOD
    else:
        im1, im0 = im1 - im0 + im0 % PERIOD, im0 % PERIOD
    u = re0 + (np.arange(width) + 0.5) * ((re1 - re0) / width)
    v = im1 - (row + 0.5) * ((im1 - im0) / height)
    points = u + 1j * v
    if spec['conjugateView']:
        return -1j * points - spec['beta']
    return points


def grayscale_row(P: Polynomial, tower: ThresholdTower, spec: RenderSpec, row: int) -> np.ndarray:
    """Shades an image row by the iteration at which the orbit of each pixel entered Lambda(x0).

    Orbits that are certified to depth from the entry point are dark, darker the earlier they entered.
    Indeterminate verdicts are mid gray. An orbit that fails after entering keeps iterating, and orbits that never
    enter within maxIterations are white.
    """
    classifier = OrbitClassifier(P, tower)
    coeffs = derivative_coefficients(P)
    x0 = tower.x0
    z = pixel_row(spec, row)
    shade = np.full(z.shape, WHITE, dtype=np.uint8)
    active = np.ones(z.shape, dtype=bool)
    for t in range(spec['maxIterations'] + 1):
        lost = active & ~np.isfinite(z)
        shade[lost] = GRAY
        active &= ~lost
        entering = np.flatnonzero(active & (np.abs(z.real) >= x0))
        if entering.size:
            status = classifier.classify_many(z[entering], spec['depth'])['status']
            certified = entering[status == CERTIFIED]
            indeterminate = entering[status == INDETERMINATE]
            shade[certified] = ENTRY_SHADE * min(t, ENTRY_SHADES)
            shade[indeterminate] = GRAY
            active[certified] = False
            active[indeterminate] = False
        if not active.any() or t == spec['maxIterations']:
            break
        with np.errstate(over='ignore', invalid='ignore'):
            z[active] = evaluate_exact(coeffs, z[active])
    return shade


def fail_depth_row(P: Polynomial, tower: ThresholdTower, spec: RenderSpec, row: int) -> np.ndarray:
    """Shades an image row by the verdict of each pixel: certified black, indeterminate mid gray, failing at
    level 0 or 1 white and failing later light gray."""
    batch = OrbitClassifier(P, tower).classify_many(pixel_row(spec, row), spec['depth'])
    shade = np.full(batch['status'].shape, LATE_FAILURE, dtype=np.uint8)
    shade[batch['status'] == CERTIFIED] = 0
    shade[batch['status'] == INDETERMINATE] = GRAY
    shade[(batch['status'] == FAILED) & (batch['depth'] <= 1)] = WHITE
    return shade


async def render_strip(P: Polynomial, spec: RenderSpec, scheduler: TileScheduler = None) -> np.ndarray:
    """Renders an escape depth image of a window.

    Args:
        P: Polynomial.
        spec: Render specification.
        scheduler: Tile scheduler, rows are rendered in parallel.

    Returns:
        Grayscale image of shape (heightPx, widthPx), dtype uint8.
    """
    spec = validate_render_spec(spec)
    scheduler = scheduler or TileScheduler()
    tower = ThresholdTower(spec['x0'] if 'x0' in spec else compute_constants(P)['xStar'])
    shade = grayscale_row if spec['palette'] == 'grayscale' else fail_depth_row
    logger = LoggerManager.get_logger('StripRenderer')
    logger.debug(f'Rendering {spec["widthPx"]}x{spec["heightPx"]} pixels at depth {spec["depth"]}')
    rows = await scheduler.map(partial(shade, P, tower, spec), range(spec['heightPx']))
    return np.stack(rows)


def white_area(image: np.ndarray, spec: RenderSpec) -> float:
    """Returns the area of the white pixels of an image of a window."""
    re0, re1, im0, im1 = spec['window']
    return float(np.count_nonzero(image == WHITE)) / image.size * (re1 - re0) * (im1 - im0)
