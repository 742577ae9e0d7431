import math
from typing import List
from typing_extensions import TypedDict
from .thresholdTower import TowerNumber
from ..errorHandler import ShiftNotFoundException, ValidationException
from ..optionsValidator import OptionsValidator
from ..logger import LoggerManager
MAX_SHIFT = 10 ** 6


class MaxModulusSequences(TypedDict):
    """Comparison sequences of the fast escaping criterion."""

    u: List[TowerNumber]
    """u_0 = R, u_n = R exp(R u_{n-1})."""
    v: List[TowerNumber]
    """v_n = exp(v_{n-1}), from the shifted start v_shift on."""
    shift: int
    """Minimal index with v_shift >= 2 R^2."""
    verified: bool
    """Whether v_{n+shift} >= 2 R u_n held for every n <= nMax."""


def max_modulus_sequences(R: float, v0: float, nMax: int) -> MaxModulusSequences:
    """Computes the sequences u_n, v_n and the minimal shift after which v dominates 2R u.

    Args:
        R: Positive constant.
        v0: Initial value of v.
        nMax: Number of verified indices.

    Returns:
        Sequences with u_0..u_nMax, v_shift..v_{shift+nMax}, the shift and the verification result.

    Raises:
        ShiftNotFoundException: If no shift up to 10^6 exists.
    """
    validator = OptionsValidator()
    R = validator.validate_non_zero(R, None, 'R')
    nMax = validator.validate_integer(nMax, None, 'nMax')
    if R is None or nMax is None or math.isinf(R):
        raise ValidationException('Parameters R and nMax are required', [{
            'parameter': 'R' if R is None or math.isinf(R) else 'nMax', 'message': 'is required'}])
    if isinstance(v0, bool) or not isinstance(v0, (int, float)) or math.isinf(v0):
        raise ValidationException('Parameter v0 must be a finite number', [{
            'parameter': 'v0', 'message': 'must be a finite number'}])
    if math.isnan(v0):
        raise ShiftNotFoundException('No shift exists for v0=nan')
    target = TowerNumber(0, 2 * R * R)
    v = TowerNumber(0, float(v0))
    shift = 0
    while v.compare(target) == '<':
        shift += 1
        if shift > MAX_SHIFT:
            raise ShiftNotFoundException(f'No shift up to {MAX_SHIFT} makes v dominate 2R^2 for R={R!r}')
        v = v.exp()
    us = [TowerNumber(0, float(R))]
    vs = [v]
    for _ in range(nMax):
        us.append(us[-1].mul(R).exp().mul(R))
        vs.append(vs[-1].exp())
    verified = all(vn.compare(un.mul(2 * R)) != '<' for un, vn in zip(us, vs))
    if not verified:
        logger = LoggerManager.get_logger('MaxModulus')
        logger.warning(f'v does not dominate 2R u for R={R!r} and v0={v0!r}')
    return {'u': us, 'v': vs, 'shift': shift, 'verified': verified}
