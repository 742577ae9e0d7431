"""Empirical checks of the polynomial estimates behind the area bound. The estimates are proved inequalities,
so every check is strict and has no tolerance: a failure indicates an implementation defect."""
import math
from typing import Optional
import numpy as np
from typing_extensions import Literal, TypedDict
from ..dynamics.exponentialSum import log_derivative_ratio_array, log_abs_f_prime
from ..errorHandler import ValidationException
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import coefficient_bounds, radii
from ..polyCore.polynomial import Polynomial, eval_P, eval_P_derivative, eval_P_tail
Region = Literal['sector', 'smallDisk']
SEPARATION_TOLERANCE = 1e-12
validator = OptionsValidator()


class LemmaReport(TypedDict, total=False):
    """Outcome of one batch of inequality checks."""

    lemma: str
    """Checked estimate."""
    trials: int
    """Number of sampled points, pairs or squares."""
    failures: int
    """Number of violations."""
    worstSlack: Optional[float]
    """Smallest relative slack of the inequality over the trials."""
    skipped: int
    """Number of drawn squares left out, because the check could not be carried out on them or, for chains,
    because no forward step was admissible."""


def slack_report(lemma: str, slack: np.ndarray, skipped: int = 0) -> LemmaReport:
    """Builds a lemma report from per trial slacks, a trial fails unless its slack is positive."""
    slack = np.asarray(slack, dtype=float)
    return {'lemma': lemma, 'trials': int(slack.size), 'failures': int(np.sum(~(slack > 0))),
            'worstSlack': float(np.min(slack)) if slack.size else None, 'skipped': int(skipped)}


def _circle(radius: float, samples: int) -> np.ndarray:
    return radius * np.exp(2j * math.pi * np.arange(samples) / samples)


def check_poly_asymptotics(P: Polynomial, epsilon: float = 0.25, samples: int = 1000) -> LemmaReport:
    """Checks |P(w) - a_N w^N| <= eps |a_N| |w|^N for |w| >= 1 + K / (eps |a_N|) and |P(w) - a_0| <= eps |a_0|
    for |w| <= eps |a_0| / (K + eps |a_0|), on circles at and beyond the thresholds and at w = 0.

    Args:
        P: Polynomial.
        epsilon: Relative accuracy eps > 0.
        samples: Points per circle.

    Returns:
        Lemma report, slack being relative to the right hand side.
    """
    epsilon = validator.validate_non_zero(epsilon, 0.25, 'epsilon')
    samples = validator.validate_integer(samples, 1000, 'samples', 1)
    K = coefficient_bounds(P)[0]
    a0, aN = P.constant, P.leading
    N = P.degree
    outer = 1 + K / (epsilon * abs(aN))
    inner = epsilon * abs(a0) / (K + epsilon * abs(a0))
    slack = []
    for radius in (outer, 2 * outer, 10 * outer):
        w = _circle(radius, samples)
        bound = epsilon * abs(aN) * np.abs(w) ** N
        slack.append((bound - np.abs(eval_P_tail(P, w))) / bound)
    for radius in (inner, inner / 2):
        w = _circle(radius, samples)
        bound = epsilon * abs(a0)
        slack.append((bound - np.abs(eval_P(P, w) - a0)) / bound)
    slack.append(np.array([1 - abs(eval_P(P, 0j) - a0) / (epsilon * abs(a0))]))
    return slack_report('pp', np.concatenate(slack))


def check_derivative_bounds(P: Polynomial, samples: int = 1000) -> LemmaReport:
    """Checks |P'(w) - P(w)/w| > 2 and |w^2 P''(w) / (w P'(w) - P(w)) - 1| < N on the circles |w| = R4, 2 R4, R5
    and R5 / 2, and the lifted estimates |f'(z)| > 2 and |f''(z)/f'(z)| < N on the boundary of Lambda(R6).

    Args:
        P: Polynomial.
        samples: Points per circle or boundary line.

    Returns:
        Lemma report, slack being the smaller of the two relative slacks per point.
    """
    samples = validator.validate_integer(samples, 1000, 'samples', 1)
    N = P.degree
    R = radii(P)
    slack = []
    for radius in (R.R4, 2 * R.R4, R.R5, R.R5 / 2):
        w = _circle(radius, samples)
        value = eval_P(P, w)
        first = eval_P_derivative(P, w) * w - value
        ratio = w * w * eval_P_derivative(P, w, 2) / first - 1
        slack.append(np.minimum((np.abs(first / w) - 2) / 2, (N - np.abs(ratio)) / N))
    y = 2 * math.pi * np.arange(samples) / samples
    z = np.concatenate([R.R6 + 1j * y, -R.R6 + 1j * y])
    derivative = log_abs_f_prime(P, z)
    ratio = log_derivative_ratio_array(P, z)
    slack.append(np.minimum(np.expm1(derivative - math.log(2)), (N - np.abs(ratio)) / N))
    return slack_report('estp1', np.concatenate(slack))


def separation_ratio(P: Polynomial, z, zPrime) -> np.ndarray:
    """Computes |g(z) - g(z')| / |z - z'| for g(w) = P(w)/w.

    Args:
        P: Polynomial.
        z: First points.
        zPrime: Second points, distinct from the first ones.

    Returns:
        Separation ratios.

    Raises:
        ValidationException: If a pair is degenerate.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zPrime = np.atleast_1d(np.asarray(zPrime, dtype=complex))
    if np.any(z == zPrime):
        raise ValidationException('Degenerate pair, points must be distinct', [{
            'parameter': 'pairs', 'message': 'points must be distinct'}])
    return np.abs(eval_P(P, z) / z - eval_P(P, zPrime) / zPrime) / np.abs(z - zPrime)


def _sample_region(P: Polynomial, region: Region, theta: float, count: int, rng: np.random.Generator) -> np.ndarray:
    R = radii(P)
    if region == 'sector':
        modulus = rng.uniform(2 * R.R1, 10 * R.R1, count)
        angle = theta + rng.uniform(-R.r0 / 2, R.r0 / 2, count)
    else:
        modulus = (R.R2 / 2) * np.sqrt(1 - rng.uniform(0, 1, count))
        angle = rng.uniform(0, 2 * math.pi, count)
    return modulus * np.exp(1j * angle)


def univalence_probe(P: Polynomial, region: Region = 'sector', pairs: int = 10000, theta: float = 0.0,
                     seed: int = 1) -> LemmaReport:
    """Probes injectivity of P(w)/w on the sector |w| >= 2 R1, |arg w - theta| <= pi / (2 (N - 1)), cut at
    |w| = 10 R1, or on the disk |w| <= R2 / 2 with random pairs.

    Args:
        P: Polynomial.
        region: sector or smallDisk.
        pairs: Number of random pairs.
        theta: Sector direction.
        seed: Random seed.

    Returns:
        Lemma report with the minimal separation ratio as worstSlack.
    """
    if region not in ('sector', 'smallDisk'):
        raise ValidationException('Parameter region must be one of sector, smallDisk', [{
            'parameter': 'region', 'message': 'must be one of sector, smallDisk'}])
    pairs = validator.validate_integer(pairs, 10000, 'pairs', 1)
    rng = np.random.default_rng(seed)
    z = _sample_region(P, region, theta, pairs, rng)
    zPrime = _sample_region(P, region, theta, pairs, rng)
    distinct = z != zPrime
    ratio = separation_ratio(P, z[distinct], zPrime[distinct])
    report = slack_report('univalent', ratio - SEPARATION_TOLERANCE)
    report['worstSlack'] = float(np.min(ratio))
    return report
