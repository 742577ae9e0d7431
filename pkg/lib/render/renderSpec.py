import math
from typing import Tuple
from typing_extensions import TypedDict, Literal
from ..errorHandler import ValidationException
from ..optionsValidator import OptionsValidator
Palette = Literal['grayscale', 'failDepth']
PALETTES = ('grayscale', 'failDepth')


class RenderSpec(TypedDict, total=False):
    """Strip rendering specification."""

    window: Tuple[float, float, float, float]
    """Rectangle (re0, re1, im0, im1) in the plane of z, or of the sine family when conjugateView is set."""
    widthPx: int
    """Image width in pixels."""
    heightPx: int
    """Image height in pixels."""
    depth: int
    """Certification depth, default 3."""
    palette: Palette
    """grayscale colours certified pixels by the iteration the orbit entered Lambda(x0), failDepth by the
    verdict of the pixel itself. Default grayscale."""
    conjugateView: bool
    """Whether the window lies in the plane of the sine family, mapped to z by u -> -i u - beta. Default False."""
    beta: complex
    """Phase shift of the conjugation, default 0."""
    maxIterations: int
    """Iterations an orbit may take to enter Lambda(x0) in the grayscale palette, default 48."""
    x0: float
    """Tower start, defaults to x*."""


def validate_render_spec(spec: RenderSpec) -> RenderSpec:
    """Validates a render specification and fills in defaults.

    Args:
        spec: Render specification.

    Returns:
        Complete specification.

    Raises:
        ValidationException: If the specification is invalid.
    """
    validator = OptionsValidator()
    window = spec.get('window')
    if window is None or len(window) != 4 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in window):
        raise ValidationException('Parameter window must be four finite numbers re0, re1, im0, im1', [{
            'parameter': 'window', 'message': 'must be four finite numbers re0, re1, im0, im1'}])
    re0, re1, im0, im1 = (float(v) for v in window)
    if not (re0 < re1 and im0 < im1):
        raise ValidationException('Parameter window must satisfy re0 < re1 and im0 < im1', [{
            'parameter': 'window', 'message': 'must satisfy re0 < re1 and im0 < im1'}])
    palette = spec.get('palette', 'grayscale')
    if palette not in PALETTES:
        raise ValidationException('Parameter palette must be one of grayscale, failDepth', [{
            'parameter': 'palette', 'message': 'must be one of grayscale, failDepth'}])
    beta = spec.get('beta', 0)
    if isinstance(beta, bool) or not isinstance(beta, (int, float, complex)) or not math.isfinite(abs(beta)):
        raise ValidationException('Parameter beta must be a finite complex number', [{
            'parameter': 'beta', 'message': 'must be a finite complex number'}])
    for name in ('widthPx', 'heightPx'):
        if spec.get(name) is None:
            raise ValidationException(f'Parameter {name} is required', [{
                'parameter': name, 'message': 'is required', 'range': '[1, inf)'}])
    x0 = spec.get('x0')
    return {
        'window': (re0, re1, im0, im1),
        'widthPx': validator.validate_integer(spec.get('widthPx'), None, 'widthPx', 1),
        'heightPx': validator.validate_integer(spec.get('heightPx'), None, 'heightPx', 1),
        'depth': validator.validate_integer(spec.get('depth'), 3, 'depth'),
        'palette': palette,
        'conjugateView': validator.validate_boolean(spec.get('conjugateView'), False, 'conjugateView'),
        'beta': complex(beta),
        'maxIterations': validator.validate_integer(spec.get('maxIterations'), 48, 'maxIterations'),
        **({} if x0 is None else {'x0': validator.validate_non_zero(x0, None, 'x0')})
    }
