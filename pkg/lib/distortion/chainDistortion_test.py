import math
import numpy as np
import pytest
from .chainDistortion import winding_numbers, contains_square, chain_distortion, build_chain
from .estimators import distortion
from .gridSquare import GridSquare
from ..dynamics.thresholdTower import ThresholdTower
from ..polyCore.polynomial import Polynomial
sine = Polynomial.sine_family(1, 0)
start = GridSquare(20, 0, 0.125)


class TestContainment:
    def test_compute_winding_numbers(self):
        """Should compute winding numbers of a polygon."""
        circle = np.exp(2j * math.pi * np.arange(64) / 64)
        assert winding_numbers(circle, [0, 0.5j, 2, -3j]).tolist() == [1, 1, 0, 0]
        assert winding_numbers(circle[::-1], [0.1]).tolist() == [-1]

    def test_check_containment(self):
        """Should detect squares inside and outside the image of a square."""
        assert contains_square(sine, start, GridSquare(51, 3, 0.125))
        assert not contains_square(sine, start, GridSquare(40, 3, 0.125))
        assert not contains_square(sine, start, GridSquare(58, 3, 0.125))


class TestChainDistortion:
    def test_return_identity_for_empty_chain(self):
        """Should return Lest = 1 for an empty chain."""
        report = chain_distortion(sine, [])
        assert report['Lest'] == 1
        assert report['pass']

    def test_use_square_distortion_for_single_square(self):
        """Should return the distortion of f on a single square."""
        report = chain_distortion(sine, [start])
        assert report['Lest'] == pytest.approx(distortion(sine, start))
        assert report['Lest'] < 2
        assert report['bound'] == pytest.approx(math.exp(2))

    def test_estimate_built_chain(self):
        """Should stay below e^2 along a chain built by forward packing."""
        chain = build_chain(sine, start, 3)
        assert len(chain) == 3
        assert chain[1] == GridSquare(51, 3, 0.125)
        report = chain_distortion(sine, chain)
        assert report['length'] == 3
        assert report['Lest'] == pytest.approx(np.prod(report['steps']))
        assert report['pass']

    def test_check_tower(self):
        """Should require the first square to clear the tower start."""
        chain_distortion(sine, [start], ThresholdTower(2.4))
        try:
            chain_distortion(sine, [start], ThresholdTower(3))
            raise Exception('PreconditionViolatedException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'PreconditionViolatedException'

    def test_detect_broken_chain(self):
        """Should detect a square outside the image of its predecessor."""
        try:
            chain_distortion(sine, [start, GridSquare(40, 0, 0.125)])
            raise Exception('ChainBrokenException expected')
        except Exception as err:
            assert err.__class__.__name__ == 'ChainBrokenException'
            assert err.index == 1

    def test_reject_inadmissible_chains(self):
        """Should reject squares outside Lambda(R6), mixed sides and too large sides."""
        for chain, name in [([GridSquare(8, 0, 0.125)], 'PreconditionViolatedException'),
                            ([start, GridSquare(100, 0, 0.0625)], 'ValidationException'),
                            ([GridSquare(10, 0, 0.25)], 'ValidationException')]:
            try:
                chain_distortion(sine, chain)
                raise Exception(f'{name} expected')
            except Exception as err:
                assert err.__class__.__name__ == name


class TestBuildChain:
    def test_stop_when_image_leaves_grid(self):
        """Should stop once images are no longer exactly indexable."""
        chain = build_chain(sine, GridSquare(203, 0, 0.125), 3)
        assert len(chain) == 2
        assert chain[1].inside_lambda(1e10)

    def test_build_left_chains(self):
        """Should build chains from the left half-plane."""
        chain = build_chain(sine, GridSquare(-21, 0, 0.125), 2)
        assert len(chain) == 3
        assert chain_distortion(sine, chain)['pass']
