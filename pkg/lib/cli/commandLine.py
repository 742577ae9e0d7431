import argparse
import asyncio
import logging
import sys
from typing import List, Tuple
from .reportWriter import write_csv, write_json
from .runConfig import RunConfig, KEYS, POLYNOMIAL_KEYS, split_entries, build_config, resolve_polynomial
from ..census.densitySampler import sample_square_density
from ..census.stripCensus import strip_census
from ..distortion.gridSquare import GridSquare
from ..distortion.lemmaSuite import run_lemma_suite
from ..dynamics.orbitClassifier import classify_orbit
from ..dynamics.thresholdTower import ThresholdTower
from ..errorHandler import FastEscapeException, ValidationException
from ..logger import LoggerManager
from ..models import dumps_report, string_format_error
from ..polyCore.constants import compute_constants, sine_family_constants
from ..polyCore.polynomial import Polynomial
from ..render.imageWriter import write_image
from ..render.stripRenderer import render_strip, white_area
from ..tileScheduler import TileScheduler
SQUARE_FIELDS = ('m', 'n', 'certifiedFraction', 'indeterminateFraction', 'bandAssumedFraction')
SUCCESS = 0
CHECK_FAILED = 1


def _pair(text: str, name: str, cast, separator: str = ',') -> Tuple:
    parts = text.split(separator)
    try:
        if len(parts) != 2:
            raise ValueError
        return cast(parts[0]), cast(parts[1])
    except ValueError:
        raise ValidationException(f'Parameter {name} must be two values separated by {separator!r}', [{
            'parameter': name, 'message': f'must be two values separated by {separator!r}'}])


def _window(text: str) -> Tuple[float, float, float, float]:
    try:
        window = tuple(float(part) for part in text.split(','))
    except ValueError:
        window = ()
    if len(window) != 4:
        raise ValidationException('Parameter window must be four numbers re0,re1,im0,im1', [{
            'parameter': 'window', 'message': 'must be four numbers re0,re1,im0,im1'}])
    return window


def create_parser() -> argparse.ArgumentParser:
    """Creates the argument parser with one subcommand per report."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='key=value configuration file, flags take precedence')
    common.add_argument('--poly', '--coeffs', dest='coeffs', help='coefficients a0,...,aN written as re+imi')
    common.add_argument('--alpha', help='scale of the sine family alpha sin(z + beta)')
    common.add_argument('--beta', help='phase shift of the sine family')
    common.add_argument('--r', help='grid side, at most 1/(4N)')
    common.add_argument('--x0', help='tower start, defaults to x*')
    common.add_argument('--depth', help='certification depth')
    common.add_argument('--samples', help='samples per square')
    common.add_argument('--seed', help='run seed')
    common.add_argument('--out', help='JSON report path, or the output image for render (.png for PNG and PPM otherwise)')
    common.add_argument('--threads', type=int, help='worker count, capped by FASTESCAPE_THREADS')
    common.add_argument('--verbose', action='store_true', help='log debug messages to stderr')
    parser = argparse.ArgumentParser(prog='fastescape', description='Fast escaping sets of f(z) = P(e^z) / e^z')
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('constants', parents=[common], help='constants of the area bound')
    classify = commands.add_parser('classify', parents=[common], help='finite depth fast escape check')
    classify.add_argument('--z0', required=True, help='initial point RE,IM')
    density = commands.add_parser('density', parents=[common], help='sampled density of a grid square')
    density.add_argument('--square', required=True, help='grid square indices m,n')
    census = commands.add_parser('census', parents=[common], help='strip census against the area bound')
    census.add_argument('--xmax', type=float, help='half width of the sampled part of the strip')
    census.add_argument('--offset', type=float, help='lower edge of the strip')
    census.add_argument('--csv', help='per square CSV table')
    lemmas = commands.add_parser('lemmas', parents=[common], help='empirical lemma checks')
    lemmas.add_argument('--which', default='all', help='comma separated lemmas or all')
    lemmas.add_argument('--trials', type=int, default=200, help='random squares per lemma')
    lemmas.add_argument('--circle-samples', type=int, default=1000, help='samples per circle')
    lemmas.add_argument('--chains', type=int, default=50, help='chains to build')
    render = commands.add_parser('render', parents=[common], help='escape depth image of a window')
    render.add_argument('--window', required=True, help='re0,re1,im0,im1')
    render.add_argument('--size', required=True, help='WIDTHxHEIGHT in pixels')
    render.add_argument('--palette', default='grayscale', choices=['grayscale', 'failDepth'])
    render.add_argument('--max-iterations', type=int, help='iterations allowed to enter Lambda(x0)')
    render.add_argument('--conjugate-view', action='store_true', help='window in the plane of the sine family')
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Resolves the run configuration from the configuration file and the flags, flags taking precedence."""
    entries = {}
    if args.config:
        with open(args.config, encoding='utf-8') as file:
            entries = split_entries(file.read())
    flags = {key: getattr(args, key, None) for key in KEYS}
    flags = {key: str(value) for key, value in flags.items() if value is not None}
    if any(key in flags for key in POLYNOMIAL_KEYS):
        entries = {key: value for key, value in entries.items() if key not in POLYNOMIAL_KEYS}
    return build_config({**entries, **flags})


def _constants(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    if 'alpha' in config and 'x0' not in config and config['r'] == 1 / 8:
        constants = sine_family_constants(config['alpha'], config['beta'])
    else:
        constants = compute_constants(P, config['r'], xStar=config.get('x0'))
    return {'config': config, **constants}, True


def _classify(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    z0 = complex(*_pair(args.z0, 'z0', float))
    x0 = config.get('x0', compute_constants(P, config['r'])['xStar'])
    verdict = classify_orbit(P, z0, config['depth'], ThresholdTower(x0))
    return {'config': config, 'z0': z0, 'x0': x0, **verdict}, True


def _density(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    m, n = _pair(args.square, 'square', int)
    report = sample_square_density(P, GridSquare(m, n, config['r']), config['depth'], config['samples'],
                                   config['seed'], config.get('x0'))
    return {'config': config, **report}, report['pass']


async def _census(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    census = await strip_census(P, args.offset, config['r'], args.xmax, config['depth'], config['samples'],
                                config['seed'], scheduler=scheduler)
    if 'csv' in config:
        write_csv(census['squares'], SQUARE_FIELDS, config['csv'])
    return {'config': config, **census}, census['withinBound']


async def _lemmas(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    which = 'all' if args.which == 'all' else [name.strip() for name in args.which.split(',')]
    reports = await run_lemma_suite(P, which, config['seed'], args.trials, args.circle_samples, args.chains,
                                    scheduler)
    return {'config': config, 'reports': reports}, all(report['failures'] == 0 for report in reports)


async def _render(P: Polynomial, config: RunConfig, args: argparse.Namespace, scheduler: TileScheduler):
    if 'out' not in config:
        raise ValidationException('Parameter out is required to render', [{
            'parameter': 'out', 'message': 'is required to render'}])
    width, height = _pair(args.size.lower(), 'size', int, 'x')
    spec = {'window': _window(args.window), 'widthPx': width, 'heightPx': height, 'depth': config['depth'],
            'palette': args.palette, 'conjugateView': args.conjugate_view,
            'beta': config.get('beta', 0j), 'maxIterations': args.max_iterations}
    if 'x0' in config:
        spec['x0'] = config['x0']
    spec = {key: value for key, value in spec.items() if value is not None}
    image = await render_strip(P, spec, scheduler)
    write_image(image, config['out'])
    return {'config': config, 'spec': spec, 'whiteArea': white_area(image, spec), 'out': config['out']}, True


COMMANDS = {
    'constants': _constants,
    'classify': _classify,
    'density': _density,
    'census': _census,
    'lemmas': _lemmas,
    'render': _render
}


def main(argv: List[str] = None) -> int:
    """Runs a subcommand and prints its report as JSON.

    Args:
        argv: Arguments without the program name, defaults to sys.argv[1:].

    Returns:
        Exit status, 0 if every requested check passed, 1 if a check failed, 2 on invalid parameters and 3 on
        numerical or domain errors.
    """
    args = create_parser().parse_args(argv)
    if args.verbose:
        LoggerManager.use_logging(logging.DEBUG)
    try:
        config = resolve_config(args)
        P = resolve_polynomial(config)
        scheduler = TileScheduler({'threads': args.threads})
        outcome = COMMANDS[args.command](P, config, args, scheduler)
        report, passed = asyncio.run(outcome) if asyncio.iscoroutine(outcome) else outcome
        if 'out' in config and args.command != 'render':
            write_json(report, config['out'])
    except FastEscapeException as err:
        logger = LoggerManager.get_logger('CommandLine')
        logger.error(f'Command {args.command} failed {string_format_error(err)}')
        return err.status
    print(dumps_report(report))
    return SUCCESS if passed else CHECK_FAILED


def run():
    sys.exit(main())
