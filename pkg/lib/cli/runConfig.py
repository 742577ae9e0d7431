import math
import re
from typing import Dict, List
from typing_extensions import TypedDict
from ..errorHandler import ValidationException
from ..optionsValidator import OptionsValidator
from ..polyCore.constants import validate_r
from ..polyCore.polynomial import Polynomial
KEYS = ('coeffs', 'alpha', 'beta', 'r', 'x0', 'depth', 'samples', 'seed', 'out', 'csv')
POLYNOMIAL_KEYS = ('coeffs', 'alpha', 'beta')
DEFAULT_DEPTH = 3
DEFAULT_SAMPLES = 4096
DEFAULT_SEED = 1
SEPARATOR = re.compile(r'\n|,\s*(?=[A-Za-z_]\w*\s*=)')
validator = OptionsValidator()


class RunConfig(TypedDict, total=False):
    """Resolved run configuration."""

    coeffs: List[complex]
    """Coefficients a_0..a_N, exclusive with alpha and beta."""
    alpha: complex
    """Scale of the sine family alpha sin(z + beta)."""
    beta: complex
    """Phase shift of the sine family, default 0."""
    r: float
    """Grid side, default min{1/8, 1/(4N)}."""
    x0: float
    """Tower start override."""
    depth: int
    """Certification depth, default 3."""
    samples: int
    """Samples per square, default 4096."""
    seed: int
    """Run seed, default 1."""
    out: str
    """Output path of images or reports."""
    csv: str
    """Output path of per square tables."""


def split_entries(text: str) -> Dict[str, str]:
    """Splits key=value text into raw entries.

    Entries are separated by line breaks or by a comma followed by the next key, so `r=0.1, coeffs=1,0,1` holds
    two entries. Blank lines and lines starting with # are skipped.

    Args:
        text: Configuration text.

    Returns:
        Raw values by key in order of appearance.

    Raises:
        ValidationException: If an entry is malformed, unknown or repeated.
    """
    entries: Dict[str, str] = {}
    for entry in SEPARATOR.split(text):
        entry = entry.strip()
        if not entry or entry.startswith('#'):
            continue
        key, separator, value = entry.partition('=')
        key = key.strip()
        if not separator:
            raise ValidationException(f'Configuration entry {entry!r} must have the form key=value', [{
                'parameter': key, 'message': 'must have the form key=value'}])
        if key not in KEYS:
            raise ValidationException(f'Configuration key {key!r} is unknown', [{
                'parameter': key, 'message': 'is unknown', 'range': ', '.join(KEYS)}])
        if key in entries:
            raise ValidationException(f'Configuration key {key!r} is repeated', [{
                'parameter': key, 'message': 'is repeated'}])
        entries[key] = value.strip()
    return entries


def parse_complex(text: str, name: str) -> complex:
    """Parses a complex number written as re+imi or re+imj."""
    cleaned = text.replace(' ', '')
    if cleaned.endswith('i'):
        cleaned = cleaned[:-1] + 'j'
    try:
        value = complex(cleaned)
    except ValueError:
        raise ValidationException(f'Parameter {name} must be a complex number', [{
            'parameter': name, 'message': 'must be a complex number', 'range': 're+imi'}])
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValidationException(f'Parameter {name} must be finite', [{
            'parameter': name, 'message': 'must be finite'}])
    return value


def _parse_number(text: str, name: str, cast):
    try:
        return cast(text)
    except ValueError:
        kind = 'an integer' if cast is int else 'a number'
        raise ValidationException(f'Parameter {name} must be {kind}', [{
            'parameter': name, 'message': f'must be {kind}'}])


def _parse_value(key: str, text: str):
    if key == 'coeffs':
        return [parse_complex(part, key) for part in text.split(',')]
    if key in ('alpha', 'beta'):
        return parse_complex(text, key)
    if key in ('r', 'x0'):
        return _parse_number(text, key, float)
    if key in ('depth', 'samples', 'seed'):
        return _parse_number(text, key, int)
    return text


def resolve_polynomial(config: RunConfig) -> Polynomial:
    """Builds the polynomial of a configuration.

    Raises:
        ValidationException: Unless exactly one of a coefficient list and a sine family is given.
    """
    if 'coeffs' in config and ('alpha' in config or 'beta' in config):
        raise ValidationException('Configuration must give either coeffs or alpha and beta', [{
            'parameter': 'coeffs', 'message': 'is exclusive with alpha and beta'}])
    if 'coeffs' in config:
        return Polynomial(config['coeffs'])
    if 'alpha' in config:
        return Polynomial.sine_family(config['alpha'], config.get('beta', 0))
    raise ValidationException('Configuration must give a polynomial as coeffs or alpha and beta', [{
        'parameter': 'coeffs', 'message': 'is required unless alpha is given'}])


def build_config(entries: Dict[str, str]) -> RunConfig:
    """Validates raw entries and fills in defaults.

    Args:
        entries: Raw values by key.

    Returns:
        Resolved configuration.

    Raises:
        ValidationException: For the first invalid field.
    """
    config: RunConfig = {key: _parse_value(key, value) for key, value in entries.items()}
    P = resolve_polynomial(config)
    if 'alpha' in config:
        config['beta'] = config.get('beta', 0j)
    config['r'] = validate_r(P, config.get('r'))
    if 'x0' in config:
        validator.validate_non_zero(config['x0'], None, 'x0')
    config['depth'] = validator.validate_integer(config.get('depth'), DEFAULT_DEPTH, 'depth')
    config['samples'] = validator.validate_integer(config.get('samples'), DEFAULT_SAMPLES, 'samples', 1)
    config['seed'] = validator.validate_integer(config.get('seed'), DEFAULT_SEED, 'seed')
    return {key: config[key] for key in KEYS if key in config}


def parse_config(text: str) -> RunConfig:
    """Parses key=value configuration text.

    Args:
        text: Configuration text with the keys coeffs, alpha, beta, r, x0, depth, samples, seed, out and csv.

    Returns:
        Resolved configuration, r defaults to min{1/8, 1/(4N)}, depth to 3, samples to 4096 and seed to 1.
    """
    return build_config(split_entries(text))


def format_complex(value: complex) -> str:
    imag = repr(value.imag)
    return f'{value.real!r}{"" if imag.startswith("-") else "+"}{imag}i'


def format_config(config: RunConfig) -> str:
    """Writes a configuration as text that parse_config reads back to the same configuration."""
    lines = []
    for key in KEYS:
        if key not in config:
            continue
        value = config[key]
        if key == 'coeffs':
            text = ','.join(format_complex(complex(c)) for c in value)
        elif key in ('alpha', 'beta'):
            text = format_complex(complex(value))
        else:
            text = repr(value) if isinstance(value, float) else str(value)
        lines.append(f'{key}={text}')
    return '\n'.join(lines) + '\n'
