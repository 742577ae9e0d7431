import math
import pytest
from .lemmaChecks import check_poly_asymptotics, check_derivative_bounds, univalence_probe, separation_ratio
from ..polyCore.constants import radii
from ..polyCore.polynomial import Polynomial
sine = Polynomial.sine_family(1, 0)
cubic = Polynomial([2, -1, 0.5j, 1])


class TestPolyAsymptotics:
    @pytest.mark.parametrize('P', [sine, cubic, Polynomial([1e-9, 0, 1]), Polynomial([3, 1, -2, 0.5, 1])])
    def test_hold_without_tolerance(self, P):
        """Should hold at every sampled point."""
        report = check_poly_asymptotics(P, 0.25, 1000)
        assert report['lemma'] == 'pp'
        assert report['trials'] == 5001
        assert report['failures'] == 0
        assert report['worstSlack'] > 0

    def test_hold_for_small_epsilon(self):
        """Should hold for small epsilon."""
        assert check_poly_asymptotics(sine, 1e-3, 200)['failures'] == 0

    def test_reject_invalid_epsilon(self):
        """Should reject non-positive epsilon."""
        try:
            check_poly_asymptotics(sine, 0)
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'


class TestDerivativeBounds:
    @pytest.mark.parametrize('P', [sine, cubic, Polynomial([3, 1, -2, 0.5, 1])])
    def test_hold_without_tolerance(self, P):
        """Should hold on the circles and on the boundary of Lambda(R6)."""
        report = check_derivative_bounds(P, 1000)
        assert report['trials'] == 6000
        assert report['failures'] == 0

    def test_use_radii_of_sine_family(self):
        """Should check the sine family at |w| = 11, |w| = 1/12 and Re z = log 12."""
        R = radii(sine)
        assert R.R4 == pytest.approx(11)
        assert R.R5 == pytest.approx(1 / 12)
        assert R.R6 == pytest.approx(math.log(12))
        assert check_derivative_bounds(sine, 50)['worstSlack'] > 0


class TestUnivalence:
    def test_separate_small_disk(self):
        """Should find no collision near 0."""
        report = univalence_probe(sine, 'smallDisk', 10000)
        assert report['failures'] == 0
        assert report['trials'] == 10000

    def test_separate_sector(self):
        """Should find no collision in the half-plane sector."""
        for theta in [0, 1, math.pi]:
            report = univalence_probe(sine, 'sector', 10000, theta, seed=3)
            assert report['failures'] == 0
            assert report['worstSlack'] > 0.4

    def test_separate_cubic_sector(self):
        """Should find no collision in sectors of width pi / 2."""
        assert univalence_probe(cubic, 'sector', 5000, 2.0)['failures'] == 0

    def test_reject_degenerate_pair(self):
        """Should reject a degenerate pair."""
        try:
            separation_ratio(sine, [1 + 1j], [1 + 1j])
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'

    def test_reject_unknown_region(self):
        """Should reject unknown regions."""
        try:
            univalence_probe(sine, 'annulus')
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'
