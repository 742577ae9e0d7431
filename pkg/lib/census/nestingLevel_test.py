import cmath
import math
import numpy as np
import pytest
from .densitySampler import sample_square_density
from .nestingLevel import build_nesting_level, pull_back, newton_inverse, cell_centres
from ..distortion.gridSquare import GridSquare
from ..polyCore.polynomial import Polynomial
sine = Polynomial.sine_family(1, 0)
first = GridSquare(203, 0, 0.125)


class TestPullBack:
    def test_invert_sinh(self):
        """Should invert sinh on the branch selected by the starting point."""
        z0 = complex(25.4, 0.05)
        z = pull_back(sine, np.array([cmath.sinh(z0)]), np.array([z0 + 1e-9]))
        assert abs(z[0] - z0) < 1e-9

    def test_flag_failed_inversion(self):
        """Should report points where Newton's method fails."""
        z, converged = newton_inverse(sine, np.array([complex(math.nan, 0), 10j]), np.array([25.4, 25.4]), 1)
        assert not converged[0]
        try:
            pull_back(sine, np.array([complex(math.nan, 0)]), np.array([25.4 + 0j]))
            raise Exception('InversionFailureException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'InversionFailureException'


class TestBuildNestingLevel:
    def test_return_square_at_level_zero(self):
        """Should pack Q0 itself at level 0."""
        report = build_nesting_level(sine, first, 0)
        assert report['density'] == 1
        assert report['packedSquares'] == 1

    def test_exceed_first_density(self):
        """Should pack at least rho_0 of Q0 at level 1."""
        report = build_nesting_level(sine, first, 1, 16)
        assert report['rho'] == pytest.approx(1 - 2 * math.exp(-2), rel=1e-9)
        assert report['density'] >= report['rho']
        assert report['flaggedSquares'] == 0
        assert report['packedCells'] == round(report['density'] * 256)

    def test_agree_with_sampled_density(self):
        """Should agree with the sampled depth 1 density on 20 admissible squares within the sampling error and
        boundary cells."""
        rng = np.random.default_rng(20)
        columns = rng.integers(203, 240, 18)
        rows = rng.integers(-60, 60, 18)
        sides = rng.choice([-1, 1], 18)
        squares = [first, GridSquare(-204, 12, 0.125)] + [
            GridSquare(int(k) if side > 0 else -int(k) - 1, int(n), 0.125) for k, n, side in zip(columns, rows, sides)]
        assert len(squares) == 20
        for Q in squares:
            packing = build_nesting_level(sine, Q, 1, 16)
            sampled = sample_square_density(sine, Q, 1, 1024)
            sigma = math.sqrt(0.25 / 1024)
            assert abs(packing['density'] - sampled['certifiedFraction']) <= 3 * sigma + 4 / 16

    def test_reach_beyond_first_threshold(self):
        """Should map cell centres beyond x_1."""
        report = build_nesting_level(sine, first, 1, 4)
        images = np.sinh(cell_centres(first, 4))
        assert np.all(np.abs(images.real) >= report['xLevel'])

    def test_overflow_at_level_two(self):
        """Should raise RegimeOverflowException at level 2."""
        try:
            build_nesting_level(sine, first, 2, 4)
            raise Exception('RegimeOverflowException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'RegimeOverflowException'

    def test_reject_deep_levels(self):
        """Should reject levels above 2."""
        try:
            build_nesting_level(sine, first, 3)
            raise Exception('ValidationException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ValidationException'

    def test_reject_inadmissible_square(self):
        """Should reject squares outside Lambda(x*)."""
        try:
            build_nesting_level(sine, GridSquare(0, 0, 0.125))
            raise Exception('InadmissibleSquareException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'InadmissibleSquareException'
