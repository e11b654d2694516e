"""Tests for fermsig/ultrastatic: frequency splitting, evolution and the Plancherel pairing."""

import math
import os
import sys
import unittest

import numpy as np
from scipy.linalg import expm

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fermsig.core import MassInterval, MassProfile, SpinorPair, gauss_legendre
from fermsig.ultrastatic import (
    FrequencyIntegrator,
    UltrastaticModel,
    evolution_matrix,
    frequency_split,
    mode_matrix,
    p_integrate_ultrastatic,
    pairing_closed_form_ultrastatic,
    pairing_time_domain_ultrastatic,
    signature_spectrum,
    ultrastatic_decay_report,
    ultrastatic_signature,
)


class TestFrequencySplit(unittest.TestCase):
    """Test omega and the projectors Pi_+-."""

    def test_three_four_five(self):
        """lambda = 3, m = 4 gives omega = 5 and Pi_+ = [[0.9, 0.3], [0.3, 0.1]]."""
        data = frequency_split(3.0, 4.0)
        self.assertAlmostEqual(data.omega, 5.0)
        np.testing.assert_allclose(data.pi_plus, [[0.9, 0.3], [0.3, 0.1]], atol=1e-15)
        np.testing.assert_allclose(data.pi_plus + data.pi_minus, np.eye(2), atol=1e-15)

    def test_projector_identities(self):
        data = frequency_split(-2.5, 1.3)
        for p in (data.pi_plus, data.pi_minus):
            np.testing.assert_allclose(p @ p, p, atol=1e-14)
        np.testing.assert_allclose(data.pi_plus @ data.pi_minus, np.zeros((2, 2)), atol=1e-14)

    def test_invalid_mass(self):
        with self.assertRaises(ValueError):
            frequency_split(1.5, 0.0)
        with self.assertRaises(ValueError):
            frequency_split(1.5, -1.0)


class TestEvolution(unittest.TestCase):
    """Test the closed-form evolution."""

    def test_matches_matrix_exponential(self):
        for lam, m, t in ((3.0, 4.0, 0.7), (1.5, 1.1, -3.0), (0.0, 2.0, 5.0)):
            expected = expm(-1j * mode_matrix(lam, m) * t)
            np.testing.assert_allclose(evolution_matrix(lam, m, t), expected, atol=1e-12)

    def test_unitary_and_group_law(self):
        u = evolution_matrix(2.5, 1.7, 1.3)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-14)
        np.testing.assert_allclose(u @ evolution_matrix(2.5, 1.7, 0.4), evolution_matrix(2.5, 1.7, 1.7),
                                   atol=1e-14)

    def test_positive_frequency_phase(self):
        """A Pi_+ eigenvector advances with phase e^{-5it} at lambda = 3, m = 4."""
        v = np.array([3.0, 1.0]) / math.sqrt(10.0)
        for t in (0.5, 2.0, 10.0):
            np.testing.assert_allclose(evolution_matrix(3.0, 4.0, t) @ v, np.exp(-5j * t) * v, atol=1e-14)


class TestSignature(unittest.TestCase):
    """Test that every ultrastatic mode has signature spectrum {+1, -1}."""

    def test_spectrum_grid(self):
        masses = [0.5, 1.0, 1.5, 2.0, 3.0]
        model = UltrastaticModel.s3(19)
        rows = signature_spectrum(model, masses)
        self.assertEqual(len(rows), len(model.spectrum) * len(masses))
        for row in rows:
            self.assertAlmostEqual(row.eigenvalues[0], -1.0, delta=1e-13)
            self.assertAlmostEqual(row.eigenvalues[1], 1.0, delta=1e-13)

    def test_nu_is_one(self):
        self.assertAlmostEqual(ultrastatic_signature(0.0, 1.5).nu, 1.0, places=14)
        self.assertAlmostEqual(ultrastatic_signature(4.5, 0.5).nu, 1.0, places=14)

    def test_s3_model(self):
        model = UltrastaticModel.s3(5)
        self.assertEqual(model.eigenvalues, [-2.5, -1.5, 1.5, 2.5])
        self.assertEqual([mode.multiplicity for mode in model.spectrum], [6, 2, 2, 6])

    def test_minkowski_model(self):
        model = UltrastaticModel.minkowski([1.5, 0.0, 0.5])
        self.assertEqual(model.eigenvalues, [0.0, 0.5, 1.5])
        self.assertTrue(all(mode.multiplicity == 1 for mode in model.spectrum))
        with self.assertRaises(ValueError):
            UltrastaticModel.minkowski([1.5, 1.5])


class TestMassIntegration(unittest.TestCase):
    """Test the frequency-variable mass integral and the pairing."""

    def setUp(self):
        self.interval = MassInterval(1.0, 2.0)
        self.profile = MassProfile.bump(self.interval)
        self.quad = gauss_legendre(self.interval, 64)

    def test_time_zero_is_mass_integral(self):
        """P(0) = (integral of eta) * identity."""
        total = float(self.quad.integrate(self.profile.value(self.quad.nodes)))
        p0 = FrequencyIntegrator(self.profile, 1.5, self.quad).matrix(0.0)
        np.testing.assert_allclose(p0, total * np.eye(2), atol=1e-8)

    def test_gauss_and_filon_agree_at_small_t(self):
        u0 = SpinorPair(0.6, 0.8)
        for t in (0.5, 3.0):
            gauss = p_integrate_ultrastatic(self.profile, u0, 1.5, t, self.quad, method="gauss")
            filon = p_integrate_ultrastatic(self.profile, u0, 1.5, t, self.quad, method="filon")
            np.testing.assert_allclose(gauss.as_array(), filon.as_array(), atol=1e-8)

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            FrequencyIntegrator(self.profile, 1.5, self.quad, method="simpson")

    def test_decay_stable_under_refinement(self):
        """The measured decay constant changes by less than 5% from 64 to 128 nodes."""
        times = [10.0, 20.0, 40.0, 60.0, 80.0, 100.0]
        refined = gauss_legendre(self.interval, 128)
        for lam in (0.0, 1.5, 2.5):
            coarse = ultrastatic_decay_report(self.profile, SpinorPair.basis(0), lam, times, self.quad)
            fine = ultrastatic_decay_report(self.profile, SpinorPair.basis(0), lam, times, refined)
            self.assertTrue(math.isfinite(coarse.constant))
            self.assertLess(abs(fine.constant - coarse.constant), 0.05 * fine.constant)

    def test_plancherel(self):
        """The time-domain pairing equals 2*pi times the integral of <u, (Pi_+ - Pi_-) u~>."""
        basis = [SpinorPair.basis(0), SpinorPair.basis(1)]
        for lam in (0.0, 1.5):
            for a in basis:
                for b in basis:
                    time_domain = pairing_time_domain_ultrastatic(self.profile, a, self.profile, b, lam,
                                                                  200.0, self.quad)
                    closed = pairing_closed_form_ultrastatic(self.profile, a, self.profile, b, lam, self.quad)
                    self.assertLess(abs(time_domain.value - closed), 1e-5 * 2 * math.pi * 0.3)

    def test_mass_operator_symmetric(self):
        """<p T psi | p phi> = <p psi | p T phi>."""
        weighted = self.profile.times_mass()
        a, b = SpinorPair.basis(0), SpinorPair(0.6, 0.8)
        left = pairing_time_domain_ultrastatic(weighted, a, self.profile, b, 2.5, 200.0, self.quad)
        right = pairing_time_domain_ultrastatic(self.profile, a, weighted, b, 2.5, 200.0, self.quad)
        self.assertLess(abs(left.value - right.value), 1e-6)

    def test_invalid_window(self):
        with self.assertRaises(ValueError):
            pairing_time_domain_ultrastatic(self.profile, SpinorPair.basis(0), self.profile,
                                            SpinorPair.basis(0), 1.5, 0.0, self.quad)


if __name__ == "__main__":
    unittest.main()
