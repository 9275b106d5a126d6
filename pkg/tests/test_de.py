import numpy as np
import pytest

from coupled_dynamics.de import bp_threshold, de_step, run_de
from coupled_dynamics.potentials import (
    LdpcBec,
    equal_height_parameter,
    find_stationary_points,
)


class TestDeStep:
    def test_full_erasure(self):
        assert de_step(LdpcBec(0.3, 3, 6), 1.0) == pytest.approx(0.3, abs=1e-15)

    def test_zero_fixed(self):
        assert de_step(LdpcBec(0.7, 3, 6), 0.0) == 0.0

    def test_direct_arithmetic(self):
        expected = 0.45 * (1.0 - 0.6**5) ** 2
        assert de_step(LdpcBec(0.45, 3, 6), 0.4) == pytest.approx(expected, abs=1e-15)

    def test_range_check(self):
        with pytest.raises(ValueError):
            de_step(LdpcBec(0.45, 3, 6), 1.2)


class TestRunDe:
    def test_zero_erasure(self):
        traj = run_de(LdpcBec(0.0, 3, 6), y0=1.0)
        assert traj.fixed_point == 0.0
        assert traj.converged
        # the state is already 0 after a single step
        assert traj.iterates[1] == 0.0

    def test_below_threshold_decay(self):
        traj = run_de(LdpcBec(0.40, 3, 6), y0=1.0, tol=1e-12)
        assert traj.converged
        assert traj.fixed_point < 1e-6

    def test_above_threshold_fixed_point_is_stationary(self):
        spec = LdpcBec(0.45, 3, 6)
        traj = run_de(spec, y0=1.0, tol=1e-12)
        assert traj.fixed_point > 0.1
        roots = [p.y for p in find_stationary_points(spec).points]
        assert min(abs(traj.fixed_point - r) for r in roots) < 1e-8

    def test_monotone_from_one(self):
        traj = run_de(LdpcBec(0.45, 3, 6), y0=1.0, tol=1e-12)
        assert np.all(np.diff(traj.iterates) <= 0)

    def test_bounds(self):
        traj = run_de(LdpcBec(0.6, 3, 6), y0=1.0, tol=1e-12)
        assert np.all(traj.iterates >= 0) and np.all(traj.iterates <= 1)

    def test_fixed_point_gradient_small(self):
        spec = LdpcBec(0.47, 3, 6)
        traj = run_de(spec, y0=1.0, tol=1e-14)
        assert abs(spec.gradient(traj.fixed_point)) < 1e-8


class TestBpThreshold:
    def test_regular_3_6(self):
        assert bp_threshold(3, 6, tol=1e-4) == pytest.approx(0.4294, abs=2e-4)

    def test_dv2_analytic_stability_bound(self):
        # for dv=2 the threshold is where eps*(dc-1) = 1
        assert bp_threshold(2, 4, tol=1e-4) == pytest.approx(1.0 / 3.0, abs=2e-4)

    def test_refinement_consistency(self):
        coarse = bp_threshold(3, 6, tol=1e-2)
        fine = bp_threshold(3, 6, tol=1e-5)
        assert abs(coarse - fine) <= 1e-2

    def test_monotone_damping_below_threshold(self):
        thr = bp_threshold(3, 6, tol=1e-4)
        for eps in [thr - 0.05, thr - 0.01, thr - 2e-3]:
            traj = run_de(LdpcBec(eps, 3, 6), y0=1.0, tol=1e-14, max_iter=100_000)
            assert np.all(np.diff(traj.iterates) < 0)
            assert traj.fixed_point < 1e-9

    def test_below_equal_height_parameter(self):
        thr = bp_threshold(3, 6, tol=1e-4)
        maxwell = equal_height_parameter(lambda e: LdpcBec(e, 3, 6), (0.43, 0.6))
        assert thr < maxwell

    def test_degree_validation(self):
        with pytest.raises(ValueError):
            bp_threshold(1, 6)
