import csv
import json
import math
import pytest
from PIL import Image
from .commandLine import main, create_parser, resolve_config
from ..logger import LoggerManager
C1 = 536 * math.sqrt(2) + 1


@pytest.fixture(autouse=True)
def run_around_tests():
    LoggerManager.use_native_logger()
    yield
    LoggerManager.use_native_logger()


def run_command(capsys, argv):
    status = main(argv)
    return status, capsys.readouterr()


class TestResolveConfig:
    def test_prefer_flags(self, tmp_path):
        """Should let flags override the configuration file."""
        path = tmp_path / 'run.cfg'
        path.write_text('coeffs=1,0,1\nseed=5\ndepth=2\n', encoding='utf-8')
        args = create_parser().parse_args(['constants', '--config', str(path), '--alpha', '1', '--seed', '9'])
        config = resolve_config(args)
        assert 'coeffs' not in config
        assert (config['alpha'], config['beta']) == (1, 0)
        assert (config['seed'], config['depth']) == (9, 2)


class TestMain:
    def test_print_constants(self, capsys):
        """Should print the constant set of the sine family."""
        status, captured = run_command(capsys, ['constants', '--alpha', '1'])
        report = json.loads(captured.out)
        assert status == 0
        assert report['c1'] == pytest.approx(C1)
        assert report['r'] == 0.125
        assert 355 <= report['areaBound'] < 361
        assert report['config']['beta'] == [0.0, 0.0]

    def test_classify_point(self, capsys):
        """Should certify a point far in the right half-plane."""
        status, captured = run_command(capsys, ['classify', '--alpha', '1', '--depth', '1', '--z0', '30,0'])
        report = json.loads(captured.out)
        assert status == 0
        assert report['status'] == 'CertifiedToDepth'
        assert report['depth'] == 1

    def test_sample_density(self, capsys, tmp_path):
        """Should sample a square and write the report to the output path."""
        out = str(tmp_path / 'density.json')
        status, captured = run_command(capsys, ['density', '--coeffs=-0.5,0,0.5', '--square', '203,0',
                                                '--depth', '2', '--samples', '2000', '--out', out])
        report = json.loads(captured.out)
        assert status == 0
        assert report['pass']
        assert report['square'] == {'m': 203, 'n': 0, 'r': 0.125}
        with open(out, encoding='utf-8') as file:
            assert json.load(file) == report

    def test_accept_poly_flag(self, capsys):
        """Should read the polynomial from --poly like from --coeffs."""
        status, captured = run_command(capsys, ['constants', '--poly=-0.5,0,0.5'])
        report = json.loads(captured.out)
        assert status == 0
        assert report['c1'] == pytest.approx(C1)
        assert report['config']['coeffs'] == [[-0.5, 0.0], [0.0, 0.0], [0.5, 0.0]]
        args = create_parser().parse_args(['constants', '--poly=1,0,1'])
        assert args.coeffs == '1,0,1'

    def test_reject_invalid_r(self, capsys):
        """Should exit with status 2 on r above 1/(4N)."""
        status, captured = run_command(capsys, ['constants', '--alpha', '1', '--r', '0.5'])
        assert status == 2
        assert captured.out == ''
        assert 'ValidationException' in captured.err

    def test_reject_inadmissible_square(self, capsys):
        """Should exit with status 3 on a square outside Lambda(x*)."""
        status, captured = run_command(capsys, ['density', '--alpha', '1', '--square', '100,0'])
        assert status == 3
        assert captured.out == ''

    def test_run_census(self, capsys, tmp_path):
        """Should run a small census and write the per square table."""
        table = str(tmp_path / 'squares.csv')
        status, captured = run_command(capsys, ['census', '--alpha', '1', '--xmax', '26', '--depth', '0',
                                                '--samples', '2', '--threads', '1', '--csv', table])
        report = json.loads(captured.out)
        assert status in (0, 1)
        assert report['sampledSquares'] == 520
        assert report['inadmissibleSquares'] == 21112
        with open(table, encoding='utf-8', newline='') as file:
            lines = list(csv.reader(file))
        assert lines[0] == ['m', 'n', 'certifiedFraction', 'indeterminateFraction', 'bandAssumedFraction']
        assert len(lines) == 521

    def test_run_lemma(self, capsys):
        """Should run a selected lemma check."""
        status, captured = run_command(capsys, ['lemmas', '--alpha', '1', '--which', 'pp', '--trials', '10'])
        report = json.loads(captured.out)
        assert status == 0
        assert [lemma['lemma'] for lemma in report['reports']] == ['pp']

    def test_reject_unknown_lemma(self, capsys):
        """Should exit with status 2 on an unknown lemma."""
        status, _ = run_command(capsys, ['lemmas', '--alpha', '1', '--which', 'koebe'])
        assert status == 2

    def test_render_strip(self, capsys, tmp_path):
        """Should render a window to an image file."""
        out = str(tmp_path / 'strip.png')
        status, captured = run_command(capsys, ['render', '--alpha', '1', '--depth', '1', '--window',
                                                '30,30.5,0,0.5', '--size', '4x3', '--out', out])
        report = json.loads(captured.out)
        assert status == 0
        assert report['out'] == out
        with Image.open(out) as image:
            assert image.size == (4, 3)

    def test_require_render_output(self, capsys):
        """Should exit with status 2 when the render output path is missing."""
        status, _ = run_command(capsys, ['render', '--alpha', '1', '--window', '0,1,0,1', '--size', '2x2'])
        assert status == 2
