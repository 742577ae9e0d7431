from typing import Sequence, Tuple
import numpy as np
from ..errorHandler import ValidationException


class Polynomial:
    """Polynomial P(w) = a_0 + a_1 w + ... + a_N w^N generating f(z) = P(e^z) / e^z.

    Coefficients are stored in ascending order. The degree is at least 2 and both a_0 and a_N are nonzero.
    """

    def __init__(self, coeffs: Sequence[complex]):
        """Inits polynomial.

        Args:
            coeffs: Coefficients a_0..a_N.

        Raises:
            ValidationException: If the coefficients do not describe an admissible polynomial.
        """
        try:
            values = tuple(complex(c) for c in coeffs)
        except (TypeError, ValueError):
            raise ValidationException('Parameter coeffs must be a list of complex numbers', [{
                'parameter': 'coeffs', 'message': 'must be a list of complex numbers'}])
        if not all(np.isfinite(c.real) and np.isfinite(c.imag) for c in values):
            raise ValidationException('Parameter coeffs must be finite', [{
                'parameter': 'coeffs', 'message': 'must be finite'}])
        if len(values) < 3:
            raise ValidationException('Parameter coeffs must describe a polynomial of degree at least 2', [{
                'parameter': 'coeffs', 'message': 'degree must be at least 2', 'range': 'N >= 2'}])
        if values[0] == 0:
            raise ValidationException('Parameter coeffs must have a nonzero constant term', [{
                'parameter': 'coeffs', 'message': 'a0 must be nonzero', 'range': 'a0 != 0'}])
        if values[-1] == 0:
            raise ValidationException('Parameter coeffs must have a nonzero leading term', [{
                'parameter': 'coeffs', 'message': 'aN must be nonzero', 'range': 'aN != 0'}])
        self._coeffs = values
        self._array = np.array(values, dtype=complex)

    @staticmethod
    def sine_family(alpha: complex, beta: complex) -> 'Polynomial':
        """Creates P(w) = (alpha/2) w^2 + i beta w - alpha/2, for which f is conjugate to alpha sin(z + beta).

        Args:
            alpha: Nonzero scale.
            beta: Phase shift.

        Returns:
            Sine family polynomial.
        """
        alpha = complex(alpha)
        if alpha == 0:
            raise ValidationException('Parameter alpha must be nonzero', [{
                'parameter': 'alpha', 'message': 'must be nonzero', 'range': 'alpha != 0'}])
        return Polynomial([-alpha / 2, 1j * complex(beta), alpha / 2])

    @property
    def coeffs(self) -> Tuple[complex, ...]:
        """Returns coefficients a_0..a_N."""
        return self._coeffs

    @property
    def array(self) -> np.ndarray:
        """Returns a copy of the coefficients as a numpy array."""
        return self._array.copy()

    @property
    def degree(self) -> int:
        """Returns degree N."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> complex:
        """Returns a_N."""
        return self._coeffs[-1]

    @property
    def constant(self) -> complex:
        """Returns a_0."""
        return self._coeffs[0]

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f'Polynomial({list(self._coeffs)!r})'

    def __reduce__(self):
        return Polynomial, (self._coeffs,)


def eval_P(P: Polynomial, w):
    """Evaluates P by Horner's scheme.

    Args:
        P: Polynomial.
        w: Complex number or numpy array.

    Returns:
        P(w), with the shape of w.
    """
    result = P.coeffs[-1] * np.ones_like(w, dtype=complex) if isinstance(w, np.ndarray) else P.coeffs[-1]
    for c in reversed(P.coeffs[:-1]):
        result = result * w + c
    return result


def eval_P_derivative(P: Polynomial, w, order: int = 1):
    """Evaluates a derivative of P by Horner's scheme.

    Args:
        P: Polynomial.
        w: Complex number or numpy array.
        order: Derivative order.

    Returns:
        P^(order)(w).
    """
    coeffs = np.polynomial.polynomial.polyder(P.array, order)
    if isinstance(w, np.ndarray):
        result = np.full(w.shape, coeffs[-1], dtype=complex)
    else:
        result = complex(coeffs[-1])
    for c in coeffs[-2::-1]:
        result = result * w + c
    return result


def eval_P_tail(P: Polynomial, w):
    """Evaluates P(w) - a_N w^N as the sum of the lower order terms, without cancellation.

    Args:
        P: Polynomial.
        w: Complex number or numpy array.

    Returns:
        Sum of a_k w^k over k < N.
    """
    result = P.coeffs[-2] * np.ones_like(w, dtype=complex) if isinstance(w, np.ndarray) else P.coeffs[-2]
    for c in reversed(P.coeffs[:-2]):
        result = result * w + c
    return result
