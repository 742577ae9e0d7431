import cmath
import math
import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from .extendedComplex import Exact, LogMag
from .exponentialSum import eval_f, eval_f_prime, log_derivative_ratio, log_derivative_ratio_array, \
    log_abs_f_prime, evaluate_exact, derivative_coefficients
from .highPrecision import hp_eval_f
from ..polyCore.polynomial import Polynomial
from ..polyCore.constants import radii
sine = Polynomial.sine_family(1, 0)
cubic = Polynomial([2, -1, 0.5j, 1])


class TestEvalF:
    def test_evaluate_fixed_point(self):
        """Should evaluate f(0) = 0 for the sine conjugate."""
        assert eval_f(sine, Exact(0, 0)) == Exact(0, 0)

    def test_evaluate_imaginary_axis(self):
        """Should evaluate f(i pi / 2) = i."""
        value = eval_f(sine, Exact(0, math.pi / 2)).to_complex()
        assert value == pytest.approx(1j, abs=1e-15)

    def test_keep_moderate_values_exact(self):
        """Should keep values below the switch threshold in double precision."""
        value = eval_f(sine, Exact(50, 0))
        assert isinstance(value, Exact)
        assert value.re == pytest.approx(math.sinh(50), rel=1e-13)

    def test_force_log_magnitude(self):
        """Should store f(50) at log scale on request, matching a 200-bit evaluation."""
        value = eval_f(sine, Exact(50, 0), representation='logMag')
        assert isinstance(value, LogMag)
        assert value.logModulus == pytest.approx(50 - math.log(2), abs=1e-12)
        assert value.argument == 0
        assert value.argTrusted
        oracle = float(mpmath.log(abs(hp_eval_f(sine, 50))))
        assert value.logModulus == pytest.approx(oracle, rel=1e-14)

    def test_switch_above_threshold(self):
        """Should switch to log scale above log modulus 300."""
        value = eval_f(sine, 400 + 1j)
        assert isinstance(value, LogMag)
        assert value.logModulus == pytest.approx(400 - math.log(2))
        assert value.argument == pytest.approx(1)
        oracle = hp_eval_f(sine, 400 + 1j)
        assert value.logModulus == pytest.approx(float(mpmath.log(abs(oracle))), rel=1e-14)
        assert value.argument == pytest.approx(float(mpmath.arg(oracle)), abs=1e-12)

    def test_evaluate_left_half_plane(self):
        """Should use the a_0 term for Re z < 0."""
        value = eval_f(sine, Exact(-400, 0))
        assert isinstance(value, LogMag)
        assert value.logModulus == pytest.approx(400 - math.log(2))
        assert abs(value.argument) == pytest.approx(math.pi)

    def test_evaluate_log_magnitude_input(self):
        """Should evaluate representable log-scale inputs."""
        value = eval_f(sine, LogMag(math.log(20), 0))
        assert isinstance(value, Exact)
        assert value.re == pytest.approx(math.sinh(20), rel=1e-12)

    def test_mark_large_imaginary_inputs_untrusted(self):
        """Should report results computed from a huge imaginary part as untrusted."""
        value = eval_f(sine, LogMag(600, math.pi / 2 - 1e-3))
        assert isinstance(value, LogMag)
        assert not value.argTrusted

    def test_signal_overflow(self):
        """Should signal overflow of the argument."""
        for P, z in [(sine, LogMag(800, 0)), (cubic, Exact(1e308, 0))]:
            try:
                eval_f(P, z)
                raise Exception('RegimeOverflowException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'RegimeOverflowException'

    def test_reject_unknown_representation(self):
        """Should reject unknown representations."""
        try:
            eval_f(sine, 1, representation='polar')
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'

    @settings(max_examples=50)
    @given(st.complex_numbers(max_magnitude=10))
    def test_match_sinh(self, z):
        """Should match sinh for the sine conjugate."""
        value = eval_f(sine, Exact.from_complex(z)).to_complex()
        assert abs(value - cmath.sinh(z)) <= 1e-13 * (math.cosh(z.real) + 1)

    @settings(max_examples=50)
    @given(st.floats(min_value=-20, max_value=20), st.floats(min_value=-10, max_value=10))
    def test_keep_period(self, x, y):
        """Should be periodic with period 2 pi i."""
        a = eval_f(cubic, Exact(x, y)).to_complex()
        b = eval_f(cubic, Exact(x, y + 2 * math.pi)).to_complex()
        assert abs(a - b) <= 1e-12 * (math.exp(2 * abs(x)) + 1)

    @settings(max_examples=50)
    @given(st.floats(min_value=20, max_value=300), st.floats(min_value=-3, max_value=3))
    def test_agree_across_representations(self, x, y):
        """Should agree between double precision and log scale evaluation."""
        exact = eval_f(cubic, Exact(x, y), representation='exact')
        logarithmic = eval_f(cubic, Exact(x, y), representation='logMag')
        assert exact.log_modulus() == pytest.approx(logarithmic.logModulus, rel=1e-8)
        assert abs(cmath.exp(1j * cmath.phase(exact.to_complex())) - cmath.exp(1j * logarithmic.argument)) <= 1e-8

    def test_evaluate_arrays(self):
        """Should evaluate arrays of points."""
        coeffs = derivative_coefficients(sine)
        z = np.array([0, 1, -2 + 1j])
        assert np.allclose(evaluate_exact(coeffs, z), np.sinh(z))


class TestDerivatives:
    def test_evaluate_derivative(self):
        """Should evaluate f' = cosh for the sine conjugate."""
        assert eval_f_prime(sine, 0).to_complex() == pytest.approx(1)
        assert eval_f_prime(sine, 2).re == pytest.approx(math.cosh(2))
        assert eval_f_prime(sine, 2).re == pytest.approx(3.7622, abs=1e-4)

    def test_evaluate_ratio(self):
        """Should evaluate f''/f' = tanh for the sine conjugate."""
        assert log_derivative_ratio(sine, 0) == pytest.approx(0)
        assert log_derivative_ratio(sine, 1) == pytest.approx(math.tanh(1))
        assert log_derivative_ratio(sine, Exact(1, 0)) == pytest.approx(0.76159, abs=1e-5)

    def test_signal_singular_derivative(self):
        """Should signal a vanishing derivative."""
        try:
            log_derivative_ratio(sine, 1j * math.pi / 2)
            raise Exception('SingularDerivativeException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'SingularDerivativeException'

    def test_evaluate_arrays(self):
        """Should evaluate ratios and log |f'| on arrays."""
        z = np.array([0.5, 3 + 0.1j, -4 - 2j])
        assert np.allclose(log_derivative_ratio_array(sine, z), np.tanh(z))
        assert np.allclose(log_abs_f_prime(sine, z), np.log(np.abs(np.cosh(z))))

    def test_evaluate_far_right(self):
        """Should evaluate log |f'| where f' overflows."""
        assert log_abs_f_prime(sine, np.array([1000.0]))[0] == pytest.approx(1000 - math.log(2))

    def test_bound_ratio_beyond_expansion_threshold(self):
        """Should keep |f''/f'| below N in Lambda(R6)."""
        rng = np.random.default_rng(3)
        for P in [sine, cubic]:
            x = radii(P).R6 + rng.uniform(0, 10, 500)
            z = np.concatenate([x, -x]) + 1j * rng.uniform(0, 2 * math.pi, 1000)
            assert np.all(np.abs(log_derivative_ratio_array(P, z)) < P.degree)
            assert np.all(log_abs_f_prime(P, z) > math.log(2))
