import pytest
from .maxModulus import max_modulus_sequences


class TestMaxModulusSequences:
    @pytest.mark.parametrize('R, v0, shift', [(1, 2, 0), (1, 0, 2), (2, 1, 2), (0.5, -3, 2)])
    def test_find_minimal_shift(self, R, v0, shift):
        """Should find the minimal shift with v_shift >= 2 R^2."""
        assert max_modulus_sequences(R, v0, 3)['shift'] == shift

    def test_verify_domination(self):
        """Should verify v_{n+shift} >= 2 R u_n at log scale."""
        result = max_modulus_sequences(2, 1, 6)
        assert result['verified']
        assert len(result['u']) == 7
        assert len(result['v']) == 7
        assert result['u'][-1].height >= 2

    def test_compute_first_terms(self):
        """Should compute u_1 = R exp(R^2) and v_1 = exp(v_0)."""
        result = max_modulus_sequences(1, 2, 1)
        assert result['u'][1].to_float() == pytest.approx(2.718281828459045)
        assert result['v'][1].to_float() == pytest.approx(7.38905609893065)

    def test_reject_invalid_parameters(self):
        """Should reject non-positive R and negative nMax."""
        for args in [(0, 1, 2), (-1, 1, 2), (1, 1, -1), (1, 'x', 2)]:
            try:
                max_modulus_sequences(*args)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'

    def test_signal_missing_shift(self):
        """Should signal a missing shift for undefined v0."""
        try:
            max_modulus_sequences(1, float('nan'), 2)
            raise Exception('ShiftNotFoundException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ShiftNotFoundException'
