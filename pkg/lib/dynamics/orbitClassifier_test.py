import math
import numpy as np
import pytest
from .orbitClassifier import OrbitClassifier, classify_orbit
from .thresholdTower import ThresholdTower
from .highPrecision import hp_eval_f
from ..polyCore.polynomial import Polynomial
sine = Polynomial.sine_family(1, 0)
X_STAR = 12 + 2 * math.log(536 * math.sqrt(2) + 1)
tower = ThresholdTower(X_STAR)
classifier = OrbitClassifier(sine, tower)


@pytest.fixture(autouse=True)
def run_around_tests():
    global classifier
    classifier = OrbitClassifier(sine, tower)
    yield


class TestClassifyOrbit:
    def test_fail_at_fixed_point(self):
        """Should fail at level 0 for the fixed point 0."""
        for depth in [0, 3]:
            verdict = classify_orbit(sine, 0, depth, tower)
            assert verdict['status'] == 'FailedAtDepth'
            assert verdict['depth'] == 0

    def test_fail_on_imaginary_axis(self):
        """Should fail at level 0 on the imaginary axis."""
        verdict = classify_orbit(sine, 1j * math.pi / 2, 1, tower)
        assert verdict['status'] == 'FailedAtDepth'
        assert verdict['depth'] == 0

    def test_certify_real_orbit(self):
        """Should certify x* + 1 to depth 2."""
        verdict = classify_orbit(sine, X_STAR + 1, 2, tower)
        assert verdict['status'] == 'CertifiedToDepth'
        assert verdict['depth'] == 2
        assert len(verdict['margins']) == 3
        assert all(m >= 0 for m in verdict['margins'])
        assert verdict['margins'][0] == pytest.approx(math.log((X_STAR + 1) / X_STAR))
        assert verdict['margins'][1] == pytest.approx(math.log(math.sinh(X_STAR + 1)) - tower.log_float(1))

    def test_certify_depth_three(self):
        """Should certify depth 3 in double precision with two band-dependent checks."""
        verdict = classifier.classify(30 + 0.05j, 3)
        assert verdict['status'] == 'CertifiedToDepth'
        assert len(verdict['margins']) == 4
        assert verdict['untrustedSteps'] == 2

    def test_limit_untrusted_steps(self):
        """Should report an indeterminate angle once the untrusted budget is exhausted."""
        verdict = classify_orbit(sine, 30 + 0.05j, 3, tower, {'maxUntrustedSteps': 1})
        assert verdict['status'] == 'IndeterminateAngle'
        assert verdict['depth'] == 3

    def test_extend_trust_with_high_precision(self):
        """Should remove one untrusted step in high precision mode."""
        verdict = classify_orbit(sine, 30 + 0.05j, 3, tower, {'maxUntrustedSteps': 1, 'highPrecision': True})
        assert verdict['status'] == 'CertifiedToDepth'
        assert verdict['depth'] == 3

    def test_agree_with_high_precision(self):
        """Should agree with high precision classification on the first levels."""
        points = [X_STAR + 1, 26 + 1j, 0.5 + 0.5j, -27 + 3j, 25 + 1.5707j]
        for point in points:
            fast = classify_orbit(sine, point, 2, tower)
            precise = classify_orbit(sine, point, 2, tower, {'highPrecision': True})
            assert fast['status'] == precise['status']
            assert fast['depth'] == precise['depth']
            assert fast['margins'][:2] == pytest.approx(precise['margins'][:2], rel=1e-9)

    def test_stop_at_depth_four(self):
        """Should not certify depth 4 in double precision."""
        verdict = classifier.classify(X_STAR + 1, 4)
        assert verdict['status'] == 'IndeterminateAngle'
        assert verdict['depth'] == 4

    def test_reject_invalid_input(self):
        """Should reject negative depth and non-finite points."""
        for args in [(1, -1), (float('inf'), 1), ('x', 1)]:
            try:
                classifier.classify(*args)
                raise Exception('ValidationException expected')
            except Exception as err:
                assert err.__class__.__name__ == 'ValidationException'


class TestClassifyMany:
    def test_match_scalar_classification(self):
        """Should match the scalar classification point by point."""
        rng = np.random.default_rng(7)
        z = rng.uniform(20, 40, 64) * rng.choice([-1, 1], 64) + 1j * rng.uniform(0, 2 * math.pi, 64)
        batch = classifier.classify_many(z, 3)
        for i, point in enumerate(z):
            verdict = classifier.classify(point, 3)
            assert verdict['depth'] == batch['depth'][i]
            assert {1: 'CertifiedToDepth', 2: 'FailedAtDepth', 3: 'IndeterminateAngle'}[
                batch['status'][i]] == verdict['status']

    def test_keep_margin_prefix(self):
        """Should certify lower depths with identical margins."""
        rng = np.random.default_rng(11)
        z = rng.uniform(24, 40, 256) + 1j * rng.uniform(0, 2 * math.pi, 256)
        deep = classifier.classify_many(z, 3)
        shallow = classifier.classify_many(z, 2)
        certified = deep['status'] == 1
        assert certified.sum() > 200
        assert np.all(deep['untrustedSteps'][certified] > 0)
        assert np.all(shallow['untrustedSteps'][certified] <= deep['untrustedSteps'][certified])
        assert np.all(shallow['status'][certified] == 1)
        assert np.array_equal(shallow['margins'][certified], deep['margins'][certified][:, :3])

    def test_certify_everything_at_depth_zero(self):
        """Should certify every point of Lambda(x*) at depth 0."""
        z = np.array([X_STAR + 0.01, -X_STAR - 5, 30 + 100j])
        assert classifier.classify_many(z, 0)['status'].tolist() == [1, 1, 1]

    def test_certify_most_points_right_of_threshold(self):
        """Should certify almost all points of a strip right of x*."""
        rng = np.random.default_rng(5)
        z = rng.uniform(X_STAR, X_STAR + 15, 2000) + 1j * rng.uniform(0, 2 * math.pi, 2000)
        status = classifier.classify_many(z, 3)['status']
        assert np.mean(status == 1) > 0.99
        assert np.mean(status == 3) < 1e-2


class TestHighPrecision:
    def test_evaluate_sinh(self):
        """Should evaluate f with mpmath."""
        assert complex(hp_eval_f(sine, 1 + 1j)) == pytest.approx(complex(np.sinh(1 + 1j)), rel=1e-15)
