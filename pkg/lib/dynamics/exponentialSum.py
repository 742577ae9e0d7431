"""Evaluation of f(z) = P(e^z)/e^z and its derivatives as exponential sums.

f^(j)(z) = sum over k of (k-1)^j a_k e^((k-1)z). For Re z >= 0 the top exponent N-1 is factored out and the
remaining sum is a polynomial in e^-z, for Re z < 0 the bottom exponent -1 is factored out and the remaining sum
is a polynomial in e^z, so no term of the remaining sum overflows.
"""
import math
from typing import Tuple
import numpy as np
from typing_extensions import Literal
from .extendedComplex import Exact, LogMag, ExtendedComplex, SWITCH_THRESHOLD, FLOAT_LOG_LIMIT
from ..polyCore.polynomial import Polynomial
from ..errorHandler import RegimeOverflowException, SingularDerivativeException, ValidationException
EPS = float(np.finfo(float).eps)
SINGULAR_TOLERANCE = 1e-14
Representation = Literal['auto', 'exact', 'logMag']


def derivative_coefficients(P: Polynomial, order: int = 0) -> np.ndarray:
    """Returns the coefficients (k-1)^order a_k of f^(order) as an exponential sum.

    Args:
        P: Polynomial.
        order: Derivative order.

    Returns:
        Coefficients for exponents -1..N-1.
    """
    exponents = np.arange(P.degree + 1) - 1
    return P.array * exponents.astype(float) ** order


def scaled_sum(coeffs: np.ndarray, z) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Splits sum_k c_k e^((k-1)z) into e^s * m with bounded m.

    Args:
        coeffs: Coefficients for exponents -1..N-1.
        z: Complex number or array.

    Returns:
        Tuple (s, m, size) of arrays, size being the sum of the term moduli of m.
    """
    z = np.asarray(z, dtype=complex)
    N = len(coeffs) - 1
    right = z.real >= 0
    with np.errstate(over='ignore', invalid='ignore'):
        s = np.where(right, (N - 1) * z, -z)
        base = np.exp(np.where(right, -z, z))
        m = np.zeros(z.shape, dtype=complex)
        size = np.zeros(z.shape, dtype=float)
        power = np.ones(z.shape, dtype=complex)
        for k in range(N + 1):
            c = np.where(right, coeffs[N - k], coeffs[k])
            term = c * power
            m = m + term
            size = size + np.abs(term)
            power = power * base
    return s, m, size


def log_modulus_and_phase(coeffs: np.ndarray, z) -> Tuple[np.ndarray, np.ndarray]:
    """Computes log|g(z)| and arg g(z) for an exponential sum g.

    Args:
        coeffs: Coefficients for exponents -1..N-1.
        z: Complex number or array.

    Returns:
        Tuple of arrays (log modulus, phase in (-pi, pi]); the log modulus is -inf at zeros.
    """
    s, m, _ = scaled_sum(coeffs, z)
    with np.errstate(divide='ignore'):
        log_modulus = s.real + np.log(np.abs(m))
    phase = np.angle(np.exp(1j * s.imag) * m)
    return log_modulus, phase


def evaluate_exact(coeffs: np.ndarray, z) -> np.ndarray:
    """Evaluates an exponential sum in double precision, inf where the value overflows."""
    s, m, _ = scaled_sum(coeffs, z)
    with np.errstate(over='ignore', invalid='ignore'):
        value = np.exp(s) * m
    return np.where(m == 0, 0j, value)


def _evaluate(P: Polynomial, z: ExtendedComplex, order: int, representation: Representation,
              switchThreshold: float) -> ExtendedComplex:
    if representation not in ('auto', 'exact', 'logMag'):
        raise ValidationException('Parameter representation must be one of auto, exact, logMag', [{
            'parameter': 'representation', 'message': 'must be one of auto, exact, logMag'}])
    coeffs = derivative_coefficients(P, order)
    N = P.degree
    if isinstance(z, LogMag):
        point = z.to_complex()
        modulus = math.exp(z.logModulus)
        error = (N - 1) * modulus * (z.argError + 4 * EPS * (z.logModulus + 1))
    else:
        point = z.to_complex() if isinstance(z, Exact) else complex(z)
        error = (N - 1) * abs(point) * 4 * EPS
    s, m, _ = scaled_sum(coeffs, point)
    s, m = complex(s), complex(m)
    if m == 0:
        return Exact(0.0, 0.0)
    log_modulus = s.real + math.log(abs(m))
    if not math.isfinite(log_modulus):
        raise RegimeOverflowException(f'log|f| overflows at z={point!r}, compare against thresholds instead')
    phase = float(np.angle(np.exp(1j * s.imag) * m))
    use_log = representation == 'logMag' or (representation == 'auto' and (
        log_modulus > switchThreshold or (isinstance(z, LogMag) and error > 1e-3)))
    if use_log:
        return LogMag.from_error(log_modulus, phase, error)
    if log_modulus > FLOAT_LOG_LIMIT:
        raise RegimeOverflowException(f'f(z) overflows double precision at z={point!r}')
    value = complex(np.exp(s) * m)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        value = complex(np.exp(log_modulus) * np.exp(1j * phase))
    return Exact(value.real, value.imag)


def eval_f(P: Polynomial, z: ExtendedComplex, representation: Representation = 'auto',
           switchThreshold: float = SWITCH_THRESHOLD) -> ExtendedComplex:
    """Evaluates f(z) = P(e^z)/e^z = a_0 e^-z + a_1 + ... + a_N e^((N-1)z).

    Args:
        P: Polynomial.
        z: Exact, LogMag or complex argument.
        representation: 'auto' switches to LogMag above switchThreshold, 'exact' and 'logMag' force one.
        switchThreshold: log modulus above which the result is stored as LogMag.

    Returns:
        f(z). Results computed from an untrusted argument are LogMag with argTrusted False.

    Raises:
        RegimeOverflowException: If the argument or the log modulus of the result overflows.
    """
    return _evaluate(P, z, 0, representation, switchThreshold)


def eval_f_prime(P: Polynomial, z: ExtendedComplex, representation: Representation = 'auto',
                 switchThreshold: float = SWITCH_THRESHOLD) -> ExtendedComplex:
    """Evaluates f'(z) = P'(w) - P(w)/w at w = e^z with the regime rules of eval_f."""
    return _evaluate(P, z, 1, representation, switchThreshold)


def log_derivative_ratio_array(P: Polynomial, z) -> np.ndarray:
    """Computes f''(z)/f'(z) on an array.

    Args:
        P: Polynomial.
        z: Complex array.

    Returns:
        Array of ratios.

    Raises:
        SingularDerivativeException: If f' vanishes to tolerance at a point.
    """
    _, first, size = scaled_sum(derivative_coefficients(P, 1), z)
    _, second, _ = scaled_sum(derivative_coefficients(P, 2), z)
    singular = np.abs(first) < SINGULAR_TOLERANCE * size
    if np.any(singular):
        point = np.asarray(z, dtype=complex)[singular].flat[0]
        raise SingularDerivativeException(f'f\' vanishes at z={complex(point)!r}')
    return second / first


def log_derivative_ratio(P: Polynomial, z: complex) -> complex:
    """Computes f''(z)/f'(z) = w^2 P''(w) / (w P'(w) - P(w)) - 1 at w = e^z.

    Args:
        P: Polynomial.
        z: Complex argument.

    Returns:
        Ratio f''(z)/f'(z).

    Raises:
        SingularDerivativeException: If f'(z) vanishes to tolerance 1e-14.
    """
    if isinstance(z, Exact):
        z = z.to_complex()
    return complex(log_derivative_ratio_array(P, np.array([complex(z)]))[0])


def log_abs_f_prime(P: Polynomial, z) -> np.ndarray:
    """Computes log|f'(z)| on an array.

    Raises:
        SingularDerivativeException: If f' vanishes to tolerance at a point.
    """
    s, m, size = scaled_sum(derivative_coefficients(P, 1), z)
    singular = np.abs(m) < SINGULAR_TOLERANCE * size
    if np.any(singular):
        point = np.asarray(z, dtype=complex)[singular].flat[0]
        raise SingularDerivativeException(f'f\' vanishes at z={complex(point)!r}')
    return s.real + np.log(np.abs(m))
