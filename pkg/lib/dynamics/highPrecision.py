import math
import mpmath
import numpy as np
from .escapeLevels import ClassifierOpts, OrbitVerdict, PASS, FAIL, UNDECIDED, CERTIFIED, FAILED, INDETERMINATE, \
    check_log_magnitude, check_bound, log_real_lower_bound, bound_from_log_real, advance_bound, threshold_levels, \
    to_verdict
from .thresholdTower import ThresholdTower
from ..polyCore.polynomial import Polynomial
from ..polyCore.constants import coefficient_bounds
EXACT = 0
LOG_MAGNITUDE = 1
LOWER_BOUND = 2


def hp_eval_f(P: Polynomial, z, precisionBits: int = 200) -> mpmath.mpc:
    """Evaluates f(z) = P(e^z)/e^z with mpmath.

    Args:
        P: Polynomial.
        z: Complex or mpmath number.
        precisionBits: Working precision.

    Returns:
        f(z) as mpmath complex number.
    """
    with mpmath.workprec(precisionBits):
        w = mpmath.exp(mpmath.mpc(z))
        return mpmath.polyval([mpmath.mpc(c) for c in reversed(P.coeffs)], w) / w


class HighPrecisionClassifier:
    """Classifies single orbits with mpmath. Orbit points stay exact while the next argument reduction modulo 2 pi
    is trusted at the working precision, then continue at log scale with the double precision level checks."""

    def __init__(self, P: Polynomial, tower: ThresholdTower, opts: ClassifierOpts):
        """Inits high precision classifier.

        Args:
            P: Polynomial.
            tower: Threshold tower.
            opts: Validated classifier options.
        """
        self._P = P
        self._tower = tower
        self._opts = opts
        self._bits = opts['precisionBits']
        K, K0 = coefficient_bounds(P)
        self._K0 = K0
        self._realFloor = math.log(1 + 2 * K / K0)
        N = P.degree
        self._keepLimit = min(700 - math.log(N), self._bits * math.log(2) +
                              math.log(opts['maxArgumentError'] / (4 * (N - 1))))

    def classify(self, z0: complex, depth: int) -> OrbitVerdict:
        """Classifies the orbit of z0 to a given depth.

        Args:
            z0: Initial point.
            depth: Depth.

        Returns:
            Orbit verdict.
        """
        levels = threshold_levels(self._tower, depth)
        margins = np.full(depth + 1, np.nan)
        untrusted = 0
        with mpmath.workprec(self._bits):
            mode = EXACT
            z = mpmath.mpc(z0)
            L = theta = err = B = None
            for j in range(depth + 1):
                x, lx, llx = levels[j]
                if mode == EXACT:
                    outcome, margins[j] = self._check_exact(z, x, lx)
                elif mode == LOG_MAGNITUDE:
                    o, m, u = check_log_magnitude(np.array([L]), np.array([theta]), np.array([err]), lx, self._opts)
                    outcome, margins[j] = int(o[0]), m[0]
                    untrusted += int(u[0])
                else:
                    o, m = check_bound(np.array([B]), llx, self._opts)
                    outcome, margins[j] = int(o[0]), m[0]
                    untrusted += int(outcome == PASS)
                if outcome == FAIL:
                    return to_verdict(FAILED, j, margins, untrusted)
                if outcome == UNDECIDED or untrusted > self._opts['maxUntrustedSteps']:
                    return to_verdict(INDETERMINATE, j, margins, untrusted)
                if j == depth:
                    break
                if mode == EXACT:
                    mode, z, L, theta, err = self._advance_exact(z)
                elif mode == LOG_MAGNITUDE:
                    log_real = log_real_lower_bound(np.array([L]), np.array([theta]), np.array([err]), self._opts)
                    B = float(bound_from_log_real(log_real, self._K0, self._realFloor)[0])
                    mode = LOWER_BOUND
                else:
                    B = float(advance_bound(np.array([B]), self._K0, self._realFloor, self._opts)[0])
        return to_verdict(CERTIFIED, depth, margins, untrusted)

    def _check_exact(self, z: mpmath.mpc, x: float, lx: float):
        size = abs(z.real)
        if size == 0:
            return FAIL, -math.inf
        log_size = mpmath.log(size)
        passed = size >= x if math.isfinite(x) else log_size >= lx
        margin = float(log_size - lx) if math.isfinite(lx) else -math.inf
        return (PASS, max(margin, 0.0)) if passed else (FAIL, min(margin, 0.0))

    def _advance_exact(self, z: mpmath.mpc):
        N = self._P.degree
        coeffs = [mpmath.mpc(c) for c in self._P.coeffs]
        if z.real >= 0:
            s = (N - 1) * z
            base = mpmath.exp(-z)
            ordered = list(reversed(coeffs))
        else:
            s = -z
            base = mpmath.exp(z)
            ordered = coeffs
        m = mpmath.polyval(list(reversed(ordered)), base)
        if m == 0:
            return EXACT, mpmath.mpc(0), None, None, None
        log_modulus = s.real + mpmath.log(abs(m))
        if log_modulus <= self._keepLimit:
            return EXACT, mpmath.exp(s) * m, None, None, None
        phase = mpmath.arg(mpmath.expj(s.imag) * m)
        err = float(4 * (N - 1) * abs(z) * mpmath.ldexp(1, -self._bits))
        return LOG_MAGNITUDE, None, float(log_modulus), float(phase), err
