import math
from typing import Sequence
import numpy as np
from typing_extensions import TypedDict
from .escapeLevels import ClassifierOpts, OrbitVerdict, PASS, FAIL, UNDECIDED, CERTIFIED, FAILED, INDETERMINATE, \
    validate_classifier_opts, check_exact, check_log_magnitude, check_bound, log_real_lower_bound, \
    bound_from_log_real, advance_bound, threshold_levels, to_verdict, STATUS_NAMES
from .exponentialSum import derivative_coefficients, scaled_sum, EPS
from .highPrecision import HighPrecisionClassifier
from .thresholdTower import ThresholdTower
from ..errorHandler import ValidationException
from ..optionsValidator import OptionsValidator
from ..polyCore.polynomial import Polynomial
from ..polyCore.constants import coefficient_bounds
EXACT = 0
LOG_MAGNITUDE = 1
LOWER_BOUND = 2


class VerdictBatch(TypedDict):
    """Verdicts of many orbits."""

    status: np.ndarray
    """Status codes, 1 certified, 2 failed, 3 indeterminate."""
    depth: np.ndarray
    """Certified depth or stop level."""
    margins: np.ndarray
    """Margins per orbit and level, NaN where not computed."""
    untrustedSteps: np.ndarray
    """Passed checks per orbit that relied on the angle band."""


class OrbitClassifier:
    """Certifies |Re f^j(z0)| >= x_j for j = 0..depth.

    Orbit points are stored in double precision while log |z| <= switchThreshold, then as log modulus and argument,
    and after one more step as a lower bound of log log |z|, whose argument is never known.
    """

    def __init__(self, P: Polynomial, tower: ThresholdTower, opts: ClassifierOpts = None):
        """Inits orbit classifier.

        Args:
            P: Polynomial.
            tower: Threshold tower.
            opts: Classifier options.
        """
        self._P = P
        self._tower = tower
        self._opts = validate_classifier_opts(opts)
        self._validator = OptionsValidator()
        K, K0 = coefficient_bounds(P)
        self._K0 = K0
        self._realFloor = math.log(1 + 2 * K / K0)
        self._coeffs = derivative_coefficients(P)
        self._highPrecision = HighPrecisionClassifier(P, tower, self._opts) if self._opts['highPrecision'] \
            else None

    @property
    def opts(self) -> ClassifierOpts:
        return self._opts

    @property
    def tower(self) -> ThresholdTower:
        return self._tower

    def classify(self, z0: complex, depth: int) -> OrbitVerdict:
        """Classifies the orbit of z0.

        Args:
            z0: Initial point.
            depth: Depth, non-negative.

        Returns:
            Orbit verdict.
        """
        depth = self._validator.validate_integer(depth, 0, 'depth')
        z0 = self._validate_point(z0)
        if self._highPrecision:
            return self._highPrecision.classify(z0, depth)
        batch = self.classify_many(np.array([z0]), depth)
        return to_verdict(int(batch['status'][0]), int(batch['depth'][0]), batch['margins'][0],
                          int(batch['untrustedSteps'][0]))

    def classify_many(self, z0s: Sequence[complex], depth: int) -> VerdictBatch:
        """Classifies many orbits at once.

        Args:
            z0s: Initial points.
            depth: Depth, non-negative.

        Returns:
            Verdict batch in the order of z0s.
        """
        depth = self._validator.validate_integer(depth, 0, 'depth')
        z = np.asarray(z0s, dtype=complex).ravel().copy()
        if self._highPrecision:
            return self._classify_high_precision(z, depth)
        count = z.size
        status = np.zeros(count, dtype=np.int8)
        stop = np.full(count, depth, dtype=np.int64)
        margins = np.full((count, depth + 1), np.nan)
        mode = np.full(count, EXACT, dtype=np.int8)
        L = np.zeros(count)
        theta = np.zeros(count)
        err = np.zeros(count)
        B = np.full(count, -np.inf)
        untrusted = np.zeros(count, dtype=np.int64)
        running = np.isfinite(z)
        status[~running] = FAILED
        stop[~running] = 0
        for j, (x, lx, llx) in enumerate(threshold_levels(self._tower, depth)):
            outcome = np.zeros(count, dtype=np.int8)
            exact = running & (mode == EXACT)
            if exact.any():
                outcome[exact], margins[exact, j] = check_exact(z[exact].real, x, lx)
            logarithmic = running & (mode == LOG_MAGNITUDE)
            if logarithmic.any():
                outcome[logarithmic], margins[logarithmic, j], band = check_log_magnitude(
                    L[logarithmic], theta[logarithmic], err[logarithmic], lx, self._opts)
                untrusted[logarithmic] += band
            bounded = running & (mode == LOWER_BOUND)
            if bounded.any():
                outcome[bounded], margins[bounded, j] = check_bound(B[bounded], llx, self._opts)
                untrusted[bounded] += outcome[bounded] == PASS
            failed = running & (outcome == FAIL)
            undecided = running & ((outcome == UNDECIDED) | (untrusted > self._opts['maxUntrustedSteps']))
            undecided &= ~failed
            status[failed] = FAILED
            status[undecided] = INDETERMINATE
            stop[failed | undecided] = j
            running &= ~(failed | undecided)
            if j == depth:
                status[running] = CERTIFIED
                break
            bounded = running & (mode == LOWER_BOUND)
            logarithmic = running & (mode == LOG_MAGNITUDE)
            exact = running & (mode == EXACT)
            if bounded.any():
                B[bounded] = advance_bound(B[bounded], self._K0, self._realFloor, self._opts)
            if logarithmic.any():
                log_real = log_real_lower_bound(L[logarithmic], theta[logarithmic], err[logarithmic], self._opts)
                B[logarithmic] = bound_from_log_real(log_real, self._K0, self._realFloor)
                mode[logarithmic] = LOWER_BOUND
            if exact.any():
                self._advance_exact(exact, z, mode, L, theta, err)
        return {'status': status, 'depth': stop, 'margins': margins, 'untrustedSteps': untrusted}

    def _advance_exact(self, exact: np.ndarray, z: np.ndarray, mode: np.ndarray, L: np.ndarray,
                       theta: np.ndarray, err: np.ndarray):
        points = z[exact]
        s, m, _ = scaled_sum(self._coeffs, points)
        with np.errstate(divide='ignore'):
            log_modulus = s.real + np.log(np.abs(m))
        large = log_modulus > self._opts['switchThreshold']
        with np.errstate(over='ignore', invalid='ignore'):
            values = np.where(large | (m == 0), 0j, np.exp(np.where(large, 0j, s)) * m)
        z[exact] = values
        indices = np.flatnonzero(exact)[large]
        mode[indices] = LOG_MAGNITUDE
        L[indices] = log_modulus[large]
        theta[indices] = np.angle(np.exp(1j * s.imag[large]) * m[large])
        err[indices] = (self._P.degree - 1) * np.abs(points[large]) * 4 * EPS

    def _classify_high_precision(self, z: np.ndarray, depth: int) -> VerdictBatch:
        codes = {name: code for code, name in STATUS_NAMES.items()}
        status = np.zeros(z.size, dtype=np.int8)
        stop = np.zeros(z.size, dtype=np.int64)
        untrusted = np.zeros(z.size, dtype=np.int64)
        margins = np.full((z.size, depth + 1), np.nan)
        for i, point in enumerate(z):
            verdict = self._highPrecision.classify(complex(point), depth)
            status[i] = codes[verdict['status']]
            stop[i] = verdict['depth']
            untrusted[i] = verdict['untrustedSteps']
            margins[i, :len(verdict['margins'])] = [np.nan if m is None else m for m in verdict['margins']]
        return {'status': status, 'depth': stop, 'margins': margins, 'untrustedSteps': untrusted}

    def _validate_point(self, z0) -> complex:
        try:
            z0 = complex(z0)
        except (TypeError, ValueError):
            raise ValidationException('Parameter z0 must be a complex number', [{
                'parameter': 'z0', 'message': 'must be a complex number'}])
        if not (math.isfinite(z0.real) and math.isfinite(z0.imag)):
            raise ValidationException('Parameter z0 must be finite', [{
                'parameter': 'z0', 'message': 'must be finite'}])
        return z0


def classify_orbit(P: Polynomial, z0: complex, depth: int, tower: ThresholdTower,
                   opts: ClassifierOpts = None) -> OrbitVerdict:
    """Classifies the orbit of z0 against the thresholds of a tower.

    Args:
        P: Polynomial.
        z0: Initial point.
        depth: Depth.
        tower: Threshold tower.
        opts: Classifier options.

    Returns:
        CertifiedToDepth(depth) if |Re f^j(z0)| >= x_j for all j <= depth, FailedAtDepth(j) at the first violated
        level, IndeterminateAngle(j) when the check at level j depends on an argument that is not known.
    """
    return OrbitClassifier(P, tower, opts).classify(z0, depth)
