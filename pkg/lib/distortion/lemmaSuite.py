import math
from functools import partial
from typing import List, Optional, Sequence, Union
import numpy as np
from .boundarySquares import count_boundary_squares
from .chainDistortion import build_chain, chain_distortion, CHAIN_BOUND
from .estimators import check_LN, SAMPLING_SLACK
from .gridSquare import GridSquare
from .lemmaChecks import LemmaReport, slack_report, check_poly_asymptotics, check_derivative_bounds, \
    univalence_probe
from ..dynamics.exponentialSum import derivative_coefficients, evaluate_exact
from ..errorHandler import ValidationException, PreconditionViolatedException
from ..logger import LoggerManager
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import radii, validate_r, compute_constants, product_of_rho, density_floor
from ..polyCore.polynomial import Polynomial
from ..tileScheduler import TileScheduler
LEMMAS = ('pp', 'estp1', 'univalent', 'ln', 'mq', 'chain', 'nest')
SQUARE_BAND = 4.0
CHAIN_BAND = 1.0
CHAIN_DEPTH = 3
CHAIN_POOL = 4
validator = OptionsValidator()


def random_squares(P: Polynomial, count: int, seed: int, r: float = None, band: float = SQUARE_BAND) \
        -> List[GridSquare]:
    """Draws grid squares of Lambda(R6) with inner edge below R6 + band on both half-planes, sorted by
    (m, n).

    Args:
        P: Polynomial.
        count: Number of squares.
        seed: Random seed.
        r: Grid side, defaults to min{1/8, 1/(4N)}.
        band: Width of the band of admissible columns.

    Returns:
        Sorted list of squares.
    """
    r = validate_r(P, r)
    rng = np.random.default_rng(seed)
    first = int(math.ceil(radii(P).R6 / r))
    columns = rng.integers(first, first + int(band / r) + 1, count)
    rows = rng.integers(0, int(2 * math.pi / r) + 1, count)
    sides = rng.choice([-1, 1], count)
    squares = [GridSquare(int(k) if side > 0 else -int(k) - 1, int(n), r)
               for k, n, side in zip(columns, rows, sides)]
    return sorted(squares, key=lambda Q: (Q.m, Q.n))


def _ln_slack(P: Polynomial, Q: GridSquare) -> float:
    report = check_LN(P, Q)
    allowed = report['bound'] * (1 + SAMPLING_SLACK)
    return (allowed - report['L']) / allowed


def _mq_slack(P: Polynomial, Q: GridSquare) -> Optional[float]:
    x = abs(complex(evaluate_exact(derivative_coefficients(P), Q.center)).real)
    try:
        report = count_boundary_squares(P, Q, x)
    except PreconditionViolatedException as err:
        LoggerManager.get_logger('LemmaSuite').warning(f'Skipping square {Q.to_dict()} in check mq: {err.args[0]}')
        return None
    return (report['c'] - report['count']) / report['c']


def _chain_slack(P: Polynomial, Q: GridSquare) -> Optional[float]:
    chain = build_chain(P, Q, CHAIN_DEPTH)
    if len(chain) < 2:
        return None
    report = chain_distortion(P, chain)
    return (CHAIN_BOUND - report['Lest']) / CHAIN_BOUND


def _skipping_report(lemma: str, slacks: Sequence[Optional[float]]) -> LemmaReport:
    kept = [slack for slack in slacks if slack is not None]
    return slack_report(lemma, kept, len(slacks) - len(kept))


async def _chain_report(P: Polynomial, chains: int, seed: int, scheduler: TileScheduler) -> LemmaReport:
    """Builds chains from random squares until `chains` of them take at least one forward step. Squares without
    an admissible step are counted as skipped."""
    pool = random_squares(P, chains * CHAIN_POOL, seed, band=CHAIN_BAND)
    pool = [pool[i] for i in np.random.default_rng(seed + 1).permutation(len(pool))]
    slacks = []
    skipped = 0
    for start in range(0, len(pool), chains):
        for slack in await scheduler.map(partial(_chain_slack, P), pool[start:start + chains]):
            if len(slacks) == chains:
                break
            if slack is None:
                skipped += 1
            else:
                slacks.append(slack)
        if len(slacks) == chains:
            break
    if len(slacks) < chains:
        LoggerManager.get_logger('LemmaSuite').warning(
            f'Only {len(slacks)} of {chains} chains took a forward step out of {len(pool)} squares')
    return slack_report('chain', slacks, skipped)


def _merge(lemma: str, reports: Sequence[LemmaReport]) -> LemmaReport:
    slacks = [report['worstSlack'] for report in reports if report['worstSlack'] is not None]
    return {'lemma': lemma, 'trials': sum(report['trials'] for report in reports),
            'failures': sum(report['failures'] for report in reports),
            'worstSlack': min(slacks) if slacks else None,
            'skipped': sum(report.get('skipped', 0) for report in reports)}


def _nest_report(P: Polynomial, trials: int, seed: int) -> LemmaReport:
    constants = compute_constants(P)
    c1, xStar = constants['c1'], constants['xStar']
    x = xStar + np.random.default_rng(seed).uniform(0, 20, trials)
    slacks = [(product_of_rho(c1, value) - density_floor(c1, value)) / density_floor(c1, value) for value in x]
    return slack_report('nest', slacks)


async def run_lemma_suite(P: Polynomial, which: Union[str, Sequence[str]] = 'all', seed: int = 1,
                          trials: int = 200, samples: int = 1000, chains: int = 50,
                          scheduler: TileScheduler = None) -> List[LemmaReport]:
    """Runs the empirical lemma checks.

    Args:
        P: Polynomial.
        which: all, or one or several of pp, estp1, univalent, ln, mq, chain, nest.
        seed: Random seed for squares, pairs and thresholds.
        trials: Number of random squares for ln and mq, of thresholds for nest.
        samples: Points per circle for pp and estp1.
        chains: Number of chains with at least one forward step for chain.
        scheduler: Tile scheduler for the square batches.

    Returns:
        One report per checked lemma, in the order pp, estp1, univalent, ln, mq, chain, nest.
    """
    selected = list(LEMMAS) if which == 'all' else ([which] if isinstance(which, str) else list(which))
    unknown = [name for name in selected if name not in LEMMAS]
    if len(unknown):
        raise ValidationException(f'Unknown lemma {unknown[0]}, expected all or one of {", ".join(LEMMAS)}', [{
            'parameter': 'which', 'message': f'must be all or one of {", ".join(LEMMAS)}'}])
    seed = validator.validate_integer(seed, 1, 'seed')
    trials = validator.validate_integer(trials, 200, 'trials', 1)
    chains = validator.validate_integer(chains, 50, 'chains', 1)
    scheduler = scheduler or TileScheduler()
    reports = []
    for lemma in LEMMAS:
        if lemma not in selected:
            continue
        if lemma == 'pp':
            report = check_poly_asymptotics(P, 0.25, samples)
        elif lemma == 'estp1':
            report = check_derivative_bounds(P, samples)
        elif lemma == 'univalent':
            theta = float(np.random.default_rng(seed).uniform(0, 2 * math.pi))
            report = _merge('univalent', [
                univalence_probe(P, 'sector', trials * 50, 0.0, seed),
                univalence_probe(P, 'sector', trials * 50, theta, seed + 1),
                univalence_probe(P, 'smallDisk', trials * 50, 0.0, seed + 2)])
        elif lemma == 'ln':
            slacks = await scheduler.map(partial(_ln_slack, P), random_squares(P, trials, seed))
            report = _skipping_report('ln', slacks)
        elif lemma == 'mq':
            slacks = await scheduler.map(partial(_mq_slack, P), random_squares(P, trials, seed + 1))
            report = _skipping_report('mq', slacks)
        elif lemma == 'chain':
            report = await _chain_report(P, chains, seed + 2, scheduler)
        else:
            report = _nest_report(P, trials, seed)
        if report['failures']:
            logger = LoggerManager.get_logger('LemmaSuite')
            logger.error(f'Lemma check {lemma} failed {report["failures"]} of {report["trials"]} trials')
        reports.append(report)
    return reports
