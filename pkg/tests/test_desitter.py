"""Tests for fermsig/desitter: mode evolution, asymptotics and trajectories."""

import math
import os
import sys
import threading
import unittest
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fermsig.core import SpinorPair
from fermsig.desitter import (
    DeSitterMode,
    REFERENCE_METHOD,
    IntegrationError,
    TrajectoryCache,
    asymptotic_derivative_check,
    bogoliubov_coefficient,
    dress,
    evolve_f,
    evolve_mode,
    extract_asymptotics,
    fundamental_solution,
    gronwall_check,
    gronwall_envelope,
    scattering_matrices,
    strip,
    time_reversal_defect,
    truncation_time,
)
from fermsig.desitter.modes import f_rhs, integrate


class TestDeSitterMode(unittest.TestCase):
    """Test mode construction and the Hamiltonian."""

    def test_hamiltonian_at_zero(self):
        """R(0) = 1, so the off-diagonal entry is -lambda."""
        mode = DeSitterMode.from_lambda(1.5, 2.0)
        np.testing.assert_allclose(mode.hamiltonian(0.0), [[2.0, -1.5], [-1.5, -2.0]])

    def test_coupling_decays(self):
        mode = DeSitterMode(3, 1.0)
        self.assertAlmostEqual(mode.hamiltonian(5.0)[0, 1].real, -1.5 / math.cosh(5.0))

    def test_invalid_mass(self):
        with self.assertRaises(ValueError):
            DeSitterMode(3, 0.0)
        with self.assertRaises(ValueError):
            DeSitterMode(3, float("inf"))

    def test_budget_warning(self):
        """Eigenvalues beyond 19/2 are accepted with a warning."""
        with self.assertLogs("fermsig.desitter.modes", level="WARNING"):
            DeSitterMode(21, 1.0)


class TestEvolution(unittest.TestCase):
    """Test evolve_mode, evolve_f and the phase dressing."""

    def test_free_mode_phases(self):
        """At lambda = 0 the components pick up e^{-imt} and e^{imt}."""
        mode = DeSitterMode(0, 1.3)
        u0 = SpinorPair(0.6, 0.8j)
        u = evolve_mode(u0, mode, 0.0, 4.0)
        self.assertAlmostEqual(abs(u.u1 - 0.6 * np.exp(-1.3j * 4.0)), 0.0, places=7)
        self.assertAlmostEqual(abs(u.u2 - 0.8j * np.exp(1.3j * 4.0)), 0.0, places=7)

    def test_norm_conserved(self):
        """The Hamiltonian is Hermitian, so ||u(t)|| is constant."""
        mode = DeSitterMode(3, 1.0)
        u0 = SpinorPair(1.0, 0.0)
        for t in (-10.0, 3.0, 10.0):
            self.assertAlmostEqual(evolve_mode(u0, mode, 0.0, t).norm(), 1.0, places=7)

    def test_round_trip(self):
        """Evolving forward and back returns the datum."""
        mode = DeSitterMode(5, 1.5)
        u0 = SpinorPair(0.3 + 0.1j, -0.7)
        back = evolve_mode(evolve_mode(u0, mode, 0.0, 6.0), mode, 6.0, 0.0)
        np.testing.assert_allclose(back.as_array(), u0.as_array(), atol=1e-7)

    def test_same_time_is_identity(self):
        u0 = SpinorPair(1.0, 2.0)
        self.assertIs(evolve_mode(u0, DeSitterMode(3, 1.0), 2.0, 2.0), u0)

    def test_f_picture_matches_u_picture(self):
        """u(t) = dress(f(t)) when f(0) = u(0)."""
        mode = DeSitterMode(3, 1.2)
        u0 = SpinorPair(0.6, 0.8)
        for t in (-4.0, 2.5, 7.0):
            via_f = dress(evolve_f(u0, mode, 0.0, t), mode.mass, t)
            direct = evolve_mode(u0, mode, 0.0, t)
            np.testing.assert_allclose(via_f.as_array(), direct.as_array(), atol=1e-7)

    def test_reference_method_agrees(self):
        """RK45 and DOP853 agree to 1e-9 at t = 10 for lambda = 3/2, m = 1."""
        mode = DeSitterMode(3, 1.0)
        u0 = SpinorPair(1.0, 0.0)
        default = evolve_mode(u0, mode, 0.0, 10.0, rtol=1e-12)
        reference = evolve_mode(u0, mode, 0.0, 10.0, rtol=1e-12, method=REFERENCE_METHOD)
        np.testing.assert_allclose(default.as_array(), reference.as_array(), atol=1e-9)

    def test_current_conserved_on_long_window(self):
        """The evolved Cauchy basis stays orthonormal on [-30, 30]."""
        mode = DeSitterMode(3, 1.5)
        for t in (-30.0, -10.0, 10.0, 30.0):
            u = np.column_stack([
                evolve_mode(SpinorPair.basis(j), mode, 0.0, t, 1e-12, REFERENCE_METHOD).as_array() for j in (0, 1)
            ])
            self.assertLess(np.linalg.norm(u.conj().T @ u - np.eye(2), 2), 1e-9)

    def test_amplitude_growth_bound(self):
        """||f(t)|| <= ||f(0)|| exp(|lambda| |integral of 1/cosh from 0 to t|)."""
        mode = DeSitterMode(5, 1.2)
        f0 = SpinorPair(0.6, 0.8j)
        for t in (-8.0, 0.5, 3.0, 15.0):
            growth = math.exp(abs(mode.lam) * abs(2.0 * math.atan(math.tanh(t / 2.0))))
            self.assertLessEqual(evolve_f(f0, mode, 0.0, t).norm(), f0.norm() * growth + 1e-9)

    def test_dress_strip_inverse(self):
        f = SpinorPair(1 + 2j, -0.5j)
        back = strip(dress(f, 1.7, 3.2), 1.7, 3.2)
        np.testing.assert_allclose(back.as_array(), f.as_array(), atol=1e-15)

    def test_integration_failure_raises(self):
        """A solution that blows up at t = 1 raises IntegrationError with the last good time."""
        def blow_up(t, y):
            return y * y

        with self.assertRaises(IntegrationError) as ctx:
            integrate(blow_up, np.array([1.0], dtype=complex), 0.0, 2.0, 1e-8)
        self.assertAlmostEqual(ctx.exception.last_good_time, 1.0, delta=1e-6)


class TestAsymptotics(unittest.TestCase):
    """Test truncation, the Gronwall envelope and the scattering matrices."""

    def test_truncation_time(self):
        """At T the envelope equals eps."""
        T = truncation_time(1.5, 1e-12)
        self.assertAlmostEqual(T, math.log(3.0 / math.log1p(1e-12)))
        self.assertAlmostEqual(gronwall_envelope(1.5, 1.0, T, 1) / 1e-12, 1.0, places=6)
        self.assertAlmostEqual(gronwall_envelope(1.5, 1.0, -T, -1) / 1e-12, 1.0, places=6)

    def test_truncation_trivial_mode(self):
        self.assertEqual(truncation_time(0.0, 1e-12), 0.0)

    def test_eps_below_double_precision(self):
        with self.assertRaises(ValueError):
            truncation_time(1.5, 1e-17)
        with self.assertRaises(ValueError):
            truncation_time(1.5, 0.0)

    def test_envelope_direction(self):
        with self.assertRaises(ValueError):
            gronwall_envelope(1.5, 1.0, 2.0, 0)

    def test_trivial_mode_scattering(self):
        """lambda = 0 has identity scattering matrices and no mixing."""
        pair = scattering_matrices(DeSitterMode(0, 1.0), 1e-12)
        np.testing.assert_array_equal(pair.w_plus, np.eye(2))
        self.assertEqual(bogoliubov_coefficient(pair), 0.0)

    def test_unitarity(self):
        for two_lambda in (3, 5, -7):
            pair = scattering_matrices(DeSitterMode(two_lambda, 1.5), 1e-12)
            self.assertLess(pair.unitarity_defect(), 1e-9)

    def test_time_reversal(self):
        """W_+ = conj(W_-) because cosh is even."""
        self.assertLess(time_reversal_defect(DeSitterMode(3, 1.2), 1e-12), 1e-8)

    def test_bogoliubov_range(self):
        pair = scattering_matrices(DeSitterMode(3, 1.0), 1e-12)
        beta = bogoliubov_coefficient(pair)
        self.assertGreater(beta, 0.0)
        self.assertLess(beta, 1.0)

    def test_columns_match_extract_asymptotics(self):
        """Column j of W_+ is f^+ for the datum e_j."""
        mode = DeSitterMode(3, 1.4)
        pair = scattering_matrices(mode, 1e-12)
        data = extract_asymptotics(SpinorPair.basis(1), mode, 1e-12)
        np.testing.assert_allclose(pair.w_plus[:, 1], data.f_plus.as_array(), atol=1e-9)
        np.testing.assert_allclose(pair.w_minus[:, 1], data.f_minus.as_array(), atol=1e-9)
        self.assertLessEqual(data.tail_bound, 1.1e-12)

    def test_gronwall_certificate(self):
        """||f(t) - f^+-|| stays under the envelope at every sample."""
        mode = DeSitterMode(9, 1.5)
        times = [2.0, 5.0, 10.0, 20.0, -2.0, -5.0, -10.0, -20.0]
        report = gronwall_check(SpinorPair.basis(0), mode, times)
        self.assertEqual(len(report.samples), len(times))
        self.assertTrue(report.passed, f"worst ratio {report.worst_ratio}")
        self.assertEqual([s.t for s in report.samples], sorted(times))

    def test_out_and_in_matrices_differ(self):
        """lambda = 3/2, m = 1 mixes frequencies, so f^+ and f^- are different."""
        pair = scattering_matrices(DeSitterMode(3, 1.0), 1e-12)
        self.assertGreater(np.linalg.norm(pair.w_plus - pair.w_minus, 2), 0.01)

    def test_time_reversal_uses_two_integrators(self):
        """The two sides come from different step sequences, so the defect is small but not zero."""
        defect = time_reversal_defect(DeSitterMode(5, 1.5), 1e-12)
        self.assertGreater(defect, 0.0)
        self.assertLess(defect, 1e-8)

    def test_truncation_stable_to_twice_the_time(self):
        """Integrating on to 2T moves f^+ by less than the envelope at T."""
        mode = DeSitterMode(3, 1.0)
        u0 = SpinorPair(1.0, 0.0)
        data = extract_asymptotics(u0, mode, 1e-12)
        T = data.T_plus
        sol = integrate(f_rhs(mode), u0.as_array(), 0.0, 2.0 * T, 1e-13, t_eval=[T, 2.0 * T])
        at_T, at_2T = sol.y[:, 0], sol.y[:, 1]
        envelope = gronwall_envelope(mode.lam, float(np.linalg.norm(at_2T)), T, 1)
        self.assertLessEqual(np.linalg.norm(at_2T - at_T), envelope + 1e-13)
        np.testing.assert_allclose(data.f_plus.as_array(), at_T, atol=1e-9)

    def test_gronwall_trivial_mode(self):
        """At lambda = 0 the truncation time is 0 and there is nothing to sample."""
        report = gronwall_check(SpinorPair.basis(0), DeSitterMode(0, 1.0), [1.0, -1.0])
        self.assertEqual(report.samples, ())
        self.assertTrue(report.passed)


class TestSmoothness(unittest.TestCase):
    """Test finite differences of the asymptotic coefficients in the mass."""

    @pytest.mark.slow
    def test_second_order_convergence(self):
        report = asymptotic_derivative_check(DeSitterMode(3, 1.0))
        self.assertTrue(report.passed, f"orders {report.orders}")
        self.assertGreaterEqual(len(report.orders), 2)
        for order in report.orders:
            self.assertGreater(order, 1.5)
            self.assertLess(order, 2.5)
        self.assertGreater(report.derivative_norm, 0.0)

    def test_trivial_mode_is_constant(self):
        """W_+- are the identity for every mass at lambda = 0."""
        report = asymptotic_derivative_check(DeSitterMode(0, 1.0), steps=(1e-2, 5e-3, 2.5e-3))
        self.assertEqual(report.differences, (0.0, 0.0))
        self.assertTrue(report.below_noise)
        self.assertTrue(report.passed)
        self.assertEqual(report.orders, ())

    def test_invalid_steps(self):
        mode = DeSitterMode(3, 1.0)
        with self.assertRaises(ValueError):
            asymptotic_derivative_check(mode, steps=(1e-2, 5e-3))
        with self.assertRaises(ValueError):
            asymptotic_derivative_check(mode, steps=(1e-3, 5e-3, 1e-2))
        with self.assertRaises(ValueError):
            asymptotic_derivative_check(DeSitterMode(3, 0.005), steps=(1e-2, 5e-3, 2.5e-3))


class TestTrajectories(unittest.TestCase):
    """Test dense fundamental solutions and the trajectory cache."""

    def test_fundamental_solution_matches_evolve_mode(self):
        mode = DeSitterMode(3, 1.1)
        solution = fundamental_solution(mode, 20.0)
        np.testing.assert_allclose(solution.f_matrix(0.0), np.eye(2), atol=1e-14)
        u0 = SpinorPair(0.6, 0.8j)
        for t in (-15.0, 0.7, 12.0):
            np.testing.assert_allclose(solution.u_at(u0, t).as_array(),
                                       evolve_mode(u0, mode, 0.0, t).as_array(), atol=1e-7)

    def test_outside_horizon(self):
        solution = fundamental_solution(DeSitterMode(3, 1.0), 5.0)
        with self.assertRaises(ValueError):
            solution.f_matrix(6.0)

    def test_trivial_mode_identity(self):
        solution = fundamental_solution(DeSitterMode(0, 1.0), 5.0)
        np.testing.assert_array_equal(solution.f_matrix(3.0), np.eye(2))
        np.testing.assert_allclose(solution.u_matrix(3.0), np.diag([np.exp(-3j), np.exp(3j)]))

    def test_cache_hits(self):
        cache = TrajectoryCache()
        mode = DeSitterMode(3, 1.0)
        first = cache.get(mode, 10.0)
        second = cache.get(DeSitterMode(3, 1.0), 10.0)
        self.assertIs(first, second)
        self.assertEqual((cache.builds, cache.hits, len(cache)), (1, 1, 1))
        cache.get(mode, 10.0, rtol=1e-8)
        self.assertEqual(len(cache), 2)
        cache.clear()
        self.assertEqual(len(cache), 0)

    def test_cache_keys_scale_factor(self):
        """A different scale factor is a different trajectory."""
        cache = TrajectoryCache()
        mode = DeSitterMode(3, 1.0)
        cache.get(mode, 5.0)
        cache.get(replace(mode, scale_factor=lambda t: math.cosh(t)), 5.0)
        self.assertEqual((cache.builds, len(cache)), (2, 2))

    def test_cache_concurrent_get(self):
        """Concurrent requests for one key build it once and count every other call as a hit."""
        cache = TrajectoryCache()
        mode = DeSitterMode(3, 1.0)
        start = threading.Barrier(8, timeout=60)

        def fetch(_):
            start.wait()
            return cache.get(mode, 5.0)

        with ThreadPoolExecutor(max_workers=8) as pool:
            solutions = list(pool.map(fetch, range(8)))
        self.assertTrue(all(s is solutions[0] for s in solutions))
        self.assertEqual((cache.builds, cache.hits), (1, 7))


if __name__ == "__main__":
    unittest.main()
