import math
from typing import List, NamedTuple, Sequence, Tuple
from typing_extensions import TypedDict
from .polynomial import Polynomial
from ..dynamics.thresholdTower import ThresholdTower
from ..errorHandler import ValidationException, PreconditionViolatedException
from ..optionsValidator import OptionsValidator
SIX_LOG_TWO = 6 * math.log(2)
RHO_COUNT = 10
RELATIVE_TOLERANCE = 1e-12
validator = OptionsValidator()


class Radii(NamedTuple):
    """Radii of the polynomial estimates. R1, R4 are outer radii in the w-plane, R2, R5 inner radii, r0 the
    width of the univalence sector, R3 and R6 the real part thresholds of the lifted estimates."""
    r0: float
    R1: float
    R2: float
    R3: float
    R4: float
    R5: float
    R6: float


class ConstantSet(TypedDict, total=False):
    """Named constants of the fast escaping area bound."""

    N: int
    """Degree of P."""
    K: float
    """Largest coefficient modulus."""
    K0: float
    """min{|a_0|, |a_N|}."""
    r0: float
    """Univalence sector width pi / (N - 1)."""
    R1: float
    """Outer univalence radius."""
    R2: float
    """Inner univalence radius."""
    R3: float
    """Conformality threshold log(2 + 8K / K0)."""
    R4: float
    """Outer derivative estimate radius."""
    R5: float
    """Inner derivative estimate radius."""
    R6: float
    """Expansion threshold max{log R4, -log R5}."""
    r: float
    """Grid side."""
    c0: float
    """Distortion constant."""
    c1: float
    """Chosen constant, c1 >= c0."""
    xPrime: float
    """max{R3, R6, 6 log 2}."""
    xStar: float
    """Initial threshold x*."""
    areaBound: float
    """Upper bound of the area of the non fast escaping part of a period strip."""
    m0: int
    """First column of squares inside the right half-plane Re z >= x*."""
    n0: int
    """Number of rows minus one covering a period strip."""
    rho: List[float]
    """Nesting densities rho_0..rho_9 at x*."""
    productBound: float
    """Product of rho_0..rho_9 at x*."""
    densityFloor: float
    """exp(-8 c1 e^4 e^(-x*/2))."""


def coefficient_bounds(P: Polynomial) -> Tuple[float, float]:
    """Returns (K, K0) with K = max |a_i| and K0 = min{|a_0|, |a_N|}.

    Args:
        P: Polynomial.

    Returns:
        Tuple (K, K0).
    """
    moduli = [abs(c) for c in P.coeffs]
    return max(moduli), min(moduli[0], moduli[-1])


def radii(P: Polynomial) -> Radii:
    """Computes the minimal admissible radii of the polynomial estimates.

    Args:
        P: Polynomial.

    Returns:
        Radii r0, R1..R6.
    """
    N = P.degree
    K, K0 = coefficient_bounds(P)
    a0, aN = abs(P.constant), abs(P.leading)
    r0 = math.pi / (N - 1)
    R1 = 1 + 4 * K / aN
    R2 = a0 / (4 * K + a0)
    R3 = math.log(2 + 8 * K / K0)
    R4 = 1 + max((2 * K + 4) / aN, K / aN * (2 * N * N / (N - 1) + 1))
    R5 = min(a0 / (2 * (K * N + 2)), math.sqrt(a0 / K) / (2 * N))
    R6 = max(math.log(R4), -math.log(R5))
    return Radii(r0, R1, R2, R3, R4, R5, R6)


def default_r(P: Polynomial) -> float:
    """Returns the default grid side min{1/8, 1/(4N)}."""
    return min(1 / 8, 1 / (4 * P.degree))


def validate_r(P: Polynomial, r: float or None) -> float:
    """Validates a grid side against 0 < r <= 1/(4N), falling back to the default side.

    Args:
        P: Polynomial.
        r: Grid side or None.

    Returns:
        Validated grid side.
    """
    return validator.validate_range(r, default_r(P), 'r', 0, 1 / (4 * P.degree))


def distortion_constant_c0(P: Polynomial, r: float) -> float:
    """Computes c0 = 32 sqrt(2) / (K0 r) + 1 / (4 K0^2) + 12 sqrt(2) / K0.

    Args:
        P: Polynomial.
        r: Grid side in (0, 1/(4N)].

    Returns:
        Distortion constant c0.
    """
    r = validate_r(P, r)
    K0 = coefficient_bounds(P)[1]
    return 32 * math.sqrt(2) / (K0 * r) + 1 / (4 * K0 * K0) + 12 * math.sqrt(2) / K0


def minimal_x_star(R3: float, R6: float, c1: float) -> float:
    """Returns max{R3, R6, 6 log 2, 12 + 2 log c1}."""
    return max(R3, R6, SIX_LOG_TWO, 12 + 2 * math.log(c1))


def x_prime(P: Polynomial) -> float:
    """Returns max{R3, R6, 6 log 2}, the threshold floor before the distortion term."""
    rad = radii(P)
    return max(rad.R3, rad.R6, SIX_LOG_TWO)


def x_star(P: Polynomial, c1: float) -> float:
    """Returns the minimal admissible initial threshold for a given c1.

    Args:
        P: Polynomial.
        c1: Constant c1 > 0.

    Returns:
        max{R3, R6, 6 log 2, 12 + 2 log c1}.
    """
    c1 = validator.validate_non_zero(c1, None, 'c1')
    rad = radii(P)
    return minimal_x_star(rad.R3, rad.R6, c1)


def log_one_minus_rho(c1: float, x0: float, k: int) -> float:
    """Computes log(1 - rho_k) = log c1 + 4 + log x_{k+1} - x_k = log c1 + 4 + log 2 - x_k / 2.

    Args:
        c1: Constant c1.
        x0: Initial threshold.
        k: Level.

    Returns:
        log(1 - rho_k), -inf once x_k overflows.
    """
    x_k = ThresholdTower(x0).value(k).to_float()
    return math.log(c1) + 4 + math.log(2) - x_k / 2


def rho_k(c1: float, x0: float, k: int) -> float:
    """Computes the nesting density rho_k = 1 - c1 e^4 x_{k+1} / e^{x_k} at log scale.

    Args:
        c1: Constant c1.
        x0: Initial threshold, at least 6 log 2.
        k: Level.

    Returns:
        rho_k in (0, 1], saturating at 1.

    Raises:
        ValidationException: If x0 < 6 log 2 or k is not a non-negative integer.
        PreconditionViolatedException: If x0 is too small for rho_k to be positive.
    """
    validator.validate_integer(k, None, 'k')
    if isinstance(x0, bool) or not isinstance(x0, (int, float)) or not (x0 >= SIX_LOG_TWO):
        raise ValidationException('Parameter x0 must be at least 6 log 2', [{
            'parameter': 'x0', 'message': 'must be at least 6 log 2', 'range': f'[{SIX_LOG_TWO:g}, inf)'}])
    log_value = log_one_minus_rho(c1, x0, k)
    if log_value >= 0:
        raise PreconditionViolatedException(f'rho_{k} is not positive for x0={x0!r} and c1={c1!r}')
    return -math.expm1(log_value)


def product_of_rho(c1: float, x0: float, count: int = RHO_COUNT) -> float:
    """Returns rho_0 rho_1 ... rho_{count-1}."""
    log_product = 0.0
    for k in range(count):
        log_value = log_one_minus_rho(c1, x0, k)
        if log_value >= 0:
            raise PreconditionViolatedException(f'rho_{k} is not positive for x0={x0!r} and c1={c1!r}')
        log_product += math.log1p(-math.exp(log_value))
    return math.exp(log_product)


def density_floor(c1: float, x: float) -> float:
    """Returns exp(-8 c1 e^4 e^(-x/2)), the density of fast escaping points in a square of Lambda(x)."""
    return math.exp(-math.exp(math.log(8 * c1) + 4 - x / 2))


def area_bound(P: Polynomial, r: float, c1: float, xStar: float) -> float:
    """Computes (4 pi + 4r)(x* + r + 8 c1 e^(4 - x*/2) r / (1 - e^(-r/2))).

    Args:
        P: Polynomial.
        r: Grid side.
        c1: Constant c1 >= c0.
        xStar: Initial threshold, at least the minimal x*.

    Returns:
        Upper bound of the area of the non fast escaping part of a period strip.

    Raises:
        ValidationException: If a parameter is not admissible.
    """
    c0 = distortion_constant_c0(P, r)
    _validate_c1(c0, c1)
    _validate_x_star(x_star(P, c1), xStar)
    tail = 8 * math.exp(math.log(c1) + 4 - xStar / 2) * r / -math.expm1(-r / 2)
    return (4 * math.pi + 4 * r) * (xStar + r + tail)


def compute_constants(P: Polynomial, r: float = None, c1: float = None, xStar: float = None) -> ConstantSet:
    """Computes every named constant of the area bound.

    Args:
        P: Polynomial.
        r: Grid side, defaults to min{1/8, 1/(4N)}.
        c1: Constant c1 >= c0, defaults to c0.
        xStar: Initial threshold, defaults to its minimal admissible value.

    Returns:
        Constant set.
    """
    r = validate_r(P, r)
    K, K0 = coefficient_bounds(P)
    rad = radii(P)
    c0 = distortion_constant_c0(P, r)
    c1 = c0 if c1 is None else _validate_c1(c0, c1)
    minimal = minimal_x_star(rad.R3, rad.R6, c1)
    xStar = minimal if xStar is None else _validate_x_star(minimal, xStar)
    return {
        'N': P.degree,
        'K': K,
        'K0': K0,
        **rad._asdict(),
        'r': r,
        'c0': c0,
        'c1': c1,
        'xPrime': max(rad.R3, rad.R6, SIX_LOG_TWO),
        'xStar': xStar,
        'areaBound': area_bound(P, r, c1, xStar),
        'm0': int(math.floor(xStar / r)) + 1,
        'n0': int(math.floor(2 * math.pi / r)) + 1,
        'rho': [rho_k(c1, xStar, k) for k in range(RHO_COUNT)],
        'productBound': product_of_rho(c1, xStar),
        'densityFloor': density_floor(c1, xStar)
    }


def sine_family_constants(alpha: complex, beta: complex) -> ConstantSet:
    """Computes the constants for f conjugate to alpha sin(z + beta), with r = 1/8 and
    c1 = 536 sqrt(2) / |alpha| + 1 / |alpha|^2.

    Args:
        alpha: Nonzero scale.
        beta: Phase shift.

    Returns:
        Constant set.
    """
    P = Polynomial.sine_family(alpha, beta)
    scale = abs(complex(alpha))
    K = coefficient_bounds(P)[0]
    c1 = 536 * math.sqrt(2) / scale + 1 / scale ** 2
    displayed = max(math.log(1 + 18 * K / scale), math.log(8 * (K + 1) / scale), SIX_LOG_TWO,
                    12 + 2 * math.log(c1))
    return compute_constants(P, 1 / 8, c1, max(displayed, x_star(P, c1)))


def r_sweep(P: Polynomial, rs: Sequence[float]) -> List[dict]:
    """Evaluates the area bound with c1 = c0(r) and minimal x* for several grid sides.

    Args:
        P: Polynomial.
        rs: Admissible grid sides.

    Returns:
        List of dictionaries with r, c0, xStar and areaBound.
    """
    result = []
    for r in rs:
        c0 = distortion_constant_c0(P, r)
        star = x_star(P, c0)
        result.append({'r': r, 'c0': c0, 'xStar': star, 'areaBound': area_bound(P, r, c0, star)})
    return result


def _validate_c1(c0: float, c1: float) -> float:
    c1 = validator.validate_non_zero(c1, None, 'c1')
    if c1 < c0 * (1 - RELATIVE_TOLERANCE):
        raise ValidationException(f'Parameter c1 must be at least c0={c0:g}', [{
            'parameter': 'c1', 'message': f'must be at least c0={c0:g}', 'range': f'[{c0:g}, inf)'}])
    return c1


def _validate_x_star(minimal: float, xStar: float) -> float:
    xStar = validator.validate_non_zero(xStar, None, 'xStar')
    if xStar < minimal * (1 - RELATIVE_TOLERANCE):
        raise ValidationException(f'Parameter xStar must be at least {minimal:g}', [{
            'parameter': 'xStar', 'message': f'must be at least {minimal:g}', 'range': f'[{minimal:g}, inf)'}])
    return xStar
