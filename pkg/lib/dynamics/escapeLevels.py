"""Per-level checks |Re z_j| >= x_j of the fast escape certification and the lower bounds that carry an orbit past
the log-magnitude range. All helpers operate elementwise on numpy arrays."""
import math
from typing import List, Tuple
import numpy as np
from typing_extensions import TypedDict, Literal
from .thresholdTower import ThresholdTower
from ..optionsValidator import OptionsValidator
PASS = 1
FAIL = 2
UNDECIDED = 3
CERTIFIED = 1
FAILED = 2
INDETERMINATE = 3
STATUS_NAMES = {CERTIFIED: 'CertifiedToDepth', FAILED: 'FailedAtDepth', INDETERMINATE: 'IndeterminateAngle'}
VerdictStatus = Literal['CertifiedToDepth', 'FailedAtDepth', 'IndeterminateAngle']


class ClassifierOpts(TypedDict, total=False):
    """Orbit classifier options."""

    switchThreshold: float
    """log modulus above which orbit points are stored at log scale, default 300."""
    angleBand: float
    """Half width of the excluded bands around arguments +-pi/2, default 1e-6."""
    maxArgumentError: float
    """Argument error above which an argument is untrusted, default 1e-3."""
    maxUntrustedSteps: int
    """Number of checks allowed to rely on the angle band instead of a trusted argument, default 2."""
    highPrecision: bool
    """Whether to iterate with mpmath, default False."""
    precisionBits: int
    """mpmath precision in bits, default 2048."""


class OrbitVerdict(TypedDict, total=False):
    """Outcome of a finite depth fast escape check."""

    status: VerdictStatus
    """CertifiedToDepth, FailedAtDepth or IndeterminateAngle."""
    depth: int
    """Certified depth, or the level at which the check failed or could not be decided."""
    margins: List[float]
    """Slack of the checked levels, log |Re z_j| - log x_j, or the log log slack once |z_j| leaves the double
    range. None where it could not be computed."""
    untrustedSteps: int
    """Number of passed checks that relied on the argument lying outside the excluded bands instead of a trusted
    argument. A certified verdict with untrustedSteps > 0 holds under that angle band assumption."""


def validate_classifier_opts(opts: ClassifierOpts = None) -> ClassifierOpts:
    """Validates classifier options and fills in defaults.

    Args:
        opts: Options or None.

    Returns:
        Complete options.
    """
    opts = opts or {}
    validator = OptionsValidator()
    return {
        'switchThreshold': validator.validate_range(opts.get('switchThreshold'), 300.0, 'switchThreshold', 0, 700),
        'angleBand': validator.validate_range(opts.get('angleBand'), 1e-6, 'angleBand', 0, 0.1),
        'maxArgumentError': validator.validate_range(opts.get('maxArgumentError'), 1e-3, 'maxArgumentError', 0,
                                                     0.1),
        'maxUntrustedSteps': validator.validate_integer(opts.get('maxUntrustedSteps'), 2, 'maxUntrustedSteps'),
        'highPrecision': validator.validate_boolean(opts.get('highPrecision'), False, 'highPrecision'),
        'precisionBits': validator.validate_integer(opts.get('precisionBits'), 2048, 'precisionBits', 53)
    }


def check_exact(re: np.ndarray, x: float, lx: float) -> Tuple[np.ndarray, np.ndarray]:
    """Checks |Re z| >= x for orbit points stored in double precision.

    Args:
        re: Real parts.
        x: Threshold, inf when it is not representable.
        lx: log of the threshold.

    Returns:
        Tuple (outcomes, margins).
    """
    size = np.abs(re)
    passed = size >= x
    with np.errstate(divide='ignore'):
        margin = np.log(size) - lx
    margin = np.where(passed, np.maximum(margin, 0.0), np.minimum(margin, 0.0))
    return np.where(passed, PASS, FAIL), margin


def check_log_magnitude(L: np.ndarray, theta: np.ndarray, err: np.ndarray, lx: float,
                        opts: ClassifierOpts) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Checks |Re z| >= x for orbit points stored as exp(L + i theta), using log |Re z| = L + log |cos theta|.

    An untrusted argument passes only if the check holds for every argument outside the excluded bands.

    Args:
        L: Log moduli.
        theta: Arguments.
        err: Argument error bounds.
        lx: log of the threshold.
        opts: Classifier options.

    Returns:
        Tuple (outcomes, margins, whether the outcome relied on the angle band).
    """
    trusted = err <= opts['maxArgumentError']
    log_sin_band = math.log(math.sin(opts['angleBand']))
    cosine = np.abs(np.cos(theta))
    near_axis = np.abs(np.abs(theta) - math.pi / 2) < opts['angleBand']
    with np.errstate(divide='ignore', invalid='ignore'):
        low = cosine - err
        log_low = np.where(low > 0, np.log(np.where(low > 0, low, 1.0)), -np.inf)
        log_high = np.log(np.minimum(cosine + err, 1.0))
        central = L + np.log(cosine) - lx
    trusted_pass = (L + log_low >= lx) & ~near_axis
    trusted_fail = (L + log_high < lx) & ~near_axis
    untrusted_pass = L + log_sin_band >= lx
    untrusted_fail = L < lx
    outcome = np.where(trusted, np.where(trusted_pass, PASS, np.where(trusted_fail, FAIL, UNDECIDED)),
                       np.where(untrusted_fail, FAIL, np.where(untrusted_pass, PASS, UNDECIDED)))
    margin = np.where(trusted, central, np.where(untrusted_fail, L - lx, L + log_sin_band - lx))
    margin = np.where(outcome == PASS, np.maximum(margin, 0.0),
                      np.where(outcome == FAIL, np.minimum(margin, 0.0), np.nan))
    return outcome, margin, ~trusted & (outcome == PASS)


def check_bound(B: np.ndarray, llx: float, opts: ClassifierOpts) -> Tuple[np.ndarray, np.ndarray]:
    """Checks |Re z| >= x for orbit points known through a lower bound B of log log |z|.

    The argument is unknown, so the check passes when log |z| + log sin(angleBand) >= log x.

    Args:
        B: Lower bounds of log log |z|.
        llx: log log of the threshold.
        opts: Classifier options.

    Returns:
        Tuple (outcomes, margins). Passing outcomes always rely on the angle band.
    """
    slack = -math.log(math.sin(opts['angleBand']))
    if not math.isfinite(llx):
        return np.full(np.shape(B), UNDECIDED), np.full(np.shape(B), np.nan)
    need = llx + math.log1p(slack * math.exp(-llx)) if llx > -700 else math.log(slack + math.exp(llx))
    passed = B >= need
    return np.where(passed, PASS, UNDECIDED), np.where(passed, B - llx, np.nan)


def log_real_lower_bound(L: np.ndarray, theta: np.ndarray, err: np.ndarray, opts: ClassifierOpts) -> np.ndarray:
    """Returns a lower bound of log |Re z| for z = exp(L + i theta) that passed its check."""
    trusted = err <= opts['maxArgumentError']
    with np.errstate(divide='ignore', invalid='ignore'):
        low = np.abs(np.cos(theta)) - err
        log_low = np.where(low > 0, np.log(np.where(low > 0, low, 1.0)), -np.inf)
    return np.where(trusted, L + log_low, L + math.log(math.sin(opts['angleBand'])))


def bound_from_log_real(log_real: np.ndarray, K0: float, real_floor: float) -> np.ndarray:
    """Returns a lower bound of log log |f(z)| given a lower bound of log |Re z|.

    For |Re z| >= real_floor = log(1 + 2K/K0) the dominant term of f gives log |f(z)| >= |Re z| + log(K0/2).

    Args:
        log_real: Lower bounds of log |Re z|.
        K0: min{|a_0|, |a_N|}.
        real_floor: log(1 + 2K/K0).

    Returns:
        Lower bounds of log log |f(z)|, -inf where nothing can be said.
    """
    shift = math.log(K0 / 2)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        ratio = shift * np.exp(-log_real)
        valid = (log_real >= math.log(real_floor)) & (ratio > -1)
        bound = log_real + np.log1p(np.where(valid, ratio, 0.0))
    return np.where(valid, bound, -np.inf)


def advance_bound(B: np.ndarray, K0: float, real_floor: float, opts: ClassifierOpts) -> np.ndarray:
    """Returns a lower bound of log log |f(z)| from a lower bound B of log log |z|, assuming the argument of z lies
    outside the excluded bands. The result is inf once exp(B) overflows."""
    with np.errstate(over='ignore'):
        log_real = np.exp(B) + math.log(math.sin(opts['angleBand']))
    return bound_from_log_real(log_real, K0, real_floor)


def to_verdict(status: int, depth: int, margins, untrustedSteps: int = 0) -> OrbitVerdict:
    """Builds a verdict from status code, stop level, margin row and the count of angle band steps."""
    count = depth + 1
    values = [None if not math.isfinite(m) else float(m) for m in list(margins)[:count]]
    return {'status': STATUS_NAMES[status], 'depth': int(depth), 'margins': values,
            'untrustedSteps': int(untrustedSteps)}


def threshold_levels(tower: ThresholdTower, depth: int) -> List[Tuple[float, float, float]]:
    """Returns (x_j, log x_j, log log x_j) as floats for j = 0..depth, inf where not representable."""
    return [(tower.value(j).to_float(), tower.log_float(j), tower.log_log_float(j)) for j in range(depth + 1)]
