import math
import numpy as np
import pytest
from .gridSquare import GridSquare, lattice, boundary


class TestGridSquare:
    def test_compute_geometry(self):
        """Should compute edges, centre and diameter."""
        Q = GridSquare(2, -1, 0.5)
        assert (Q.re0, Q.re1, Q.im0, Q.im1) == (1.0, 1.5, -0.5, 0.0)
        assert Q.center == 1.25 - 0.25j
        assert Q.diameter == pytest.approx(0.5 * math.sqrt(2))
        assert Q.corners == [1 - 0.5j, 1.5 - 0.5j, 1.5 + 0j, 1 + 0j]

    def test_compute_inner_real_part(self):
        """Should compute the smallest |Re z| over the square."""
        assert GridSquare(-3, 0, 1).inner_abs_re == 2
        assert GridSquare(0, 0, 1).inner_abs_re == 0
        assert GridSquare(-1, 0, 1).inner_abs_re == 0
        assert GridSquare(203, 0, 0.125).inside_lambda(25.2646)
        assert not GridSquare(202, 0, 0.125).inside_lambda(25.2646)
        assert GridSquare(-204, 0, 0.125).inside_lambda(25.2646)

    def test_find_containing_square(self):
        """Should find the square containing a point."""
        assert GridSquare.containing(3.01 + 0.2j, 0.125) == GridSquare(24, 1, 0.125)
        assert GridSquare.containing(-0.01 - 0.01j, 0.125) == GridSquare(-1, -1, 0.125)

    def test_reject_invalid_squares(self):
        """Should reject non-integer indices and non-positive sides."""
        for args in [(1.5, 0, 1), (0, 0, 0), (0, 0, -1), (True, 0, 1)]:
            try:
                GridSquare(*args)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'

    def test_serialize(self):
        """Should serialize to a dictionary."""
        assert GridSquare(np.int64(3), 4, 0.125).to_dict() == {'m': 3, 'n': 4, 'r': 0.125}


class TestLattice:
    def test_use_centre_for_zero_subdivisions(self):
        """Should sample the centre only for s = 0."""
        Q = GridSquare(24, 0, 0.125)
        assert lattice(Q, 0).tolist() == [Q.center]

    def test_include_corners(self):
        """Should sample (s + 1)^2 points including the corners."""
        Q = GridSquare(24, 0, 0.125)
        points = lattice(Q, 4)
        assert len(points) == 25
        assert set(Q.corners) <= set(points.tolist())
        assert np.all(Q.contains(points))

    def test_nest_under_refinement(self):
        """Should contain the lattice for s in the lattice for 2 s."""
        Q = GridSquare(-7, 13, 0.125)
        for s in [1, 2, 8, 32]:
            assert set(lattice(Q, s).tolist()) <= set(lattice(Q, 2 * s).tolist())

    def test_sample_boundary(self):
        """Should sample the boundary counterclockwise."""
        Q = GridSquare(0, 0, 1)
        points = boundary(Q, 4)
        assert len(points) == 16
        assert points[0] == 0j
        assert points[4] == 1 + 0j
        assert points[8] == 1 + 1j
        assert points[12] == 1j
        on_edge = (points.real == 0) | (points.real == 1) | (points.imag == 0) | (points.imag == 1)
        assert np.all(on_edge)
