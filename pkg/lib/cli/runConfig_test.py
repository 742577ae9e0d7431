import pytest
from .runConfig import split_entries, parse_complex, parse_config, format_config, resolve_polynomial
from ..polyCore.polynomial import Polynomial
sine = Polynomial([-0.5, 0, 0.5])


class TestSplitEntries:
    def test_split_lines_and_commas(self):
        """Should split entries at line breaks and at commas followed by a key."""
        entries = split_entries('# sine\nr=0.1, coeffs=1,0,1\n\nseed = 7\n')
        assert entries == {'r': '0.1', 'coeffs': '1,0,1', 'seed': '7'}

    def test_reject_unknown_repeated_and_malformed(self):
        """Should reject unknown, repeated and malformed entries."""
        for text in ['gamma=1', 'seed=1\nseed=2', 'alpha']:
            try:
                split_entries(text)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'


class TestParseComplex:
    def test_parse_i_suffix(self):
        """Should read re+imi and re+imj."""
        assert parse_complex('1+2i', 'alpha') == 1 + 2j
        assert parse_complex('-0.5-1.5j', 'alpha') == -0.5 - 1.5j
        assert parse_complex('3', 'alpha') == 3

    def test_reject_invalid(self):
        """Should reject text that is not a finite complex number."""
        for text in ['one', 'inf', '1+nani']:
            try:
                parse_complex(text, 'beta')
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'


class TestParseConfig:
    def test_parse_sine_family(self):
        """Should resolve the sine family and fill in defaults."""
        config = parse_config('alpha=1\nbeta=0')
        assert resolve_polynomial(config) == sine
        assert config['r'] == 0.125
        assert (config['depth'], config['samples'], config['seed']) == (3, 4096, 1)

    def test_parse_coefficients(self):
        """Should resolve the same polynomial from its coefficients."""
        config = parse_config('coeffs=-0.5,0,0.5')
        assert resolve_polynomial(config) == sine
        assert config['r'] == 0.125
        assert 'beta' not in config

    def test_default_beta(self):
        """Should default beta to 0 when only alpha is given."""
        assert parse_config('alpha=2')['beta'] == 0

    def test_reject_large_r(self):
        """Should reject r above 1/(4N)."""
        try:
            parse_config('r=0.5, coeffs=-0.5,0,0.5')
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'

    def test_require_exactly_one_polynomial(self):
        """Should require either coefficients or alpha and beta, not both."""
        for text in ['seed=3', 'coeffs=-0.5,0,0.5\nalpha=1', 'beta=1\ncoeffs=1,0,1']:
            try:
                parse_config(text)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'

    def test_reject_invalid_fields(self):
        """Should reject invalid numbers and counts."""
        for text in ['alpha=0', 'alpha=1\nsamples=0', 'alpha=1\ndepth=two', 'alpha=1\nx0=0']:
            try:
                parse_config(text)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'


class TestFormatConfig:
    @pytest.mark.parametrize('text', [
        'alpha=1+0.5i\nbeta=-0.25i\nr=0.0625\ndepth=2\nout=strip.ppm',
        'coeffs=-0.5,0.1i,0.5\nx0=30.5\nsamples=100\nseed=3\ncsv=squares.csv'
    ])
    def test_write_readable_config(self, text):
        """Should write text that parses back to the same configuration."""
        config = parse_config(text)
        assert parse_config(format_config(config)) == config
