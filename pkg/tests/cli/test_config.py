"""Tests for fermsig/cli/config.py and the logging setup."""

import json
import logging
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from fermsig.cli.config import ConfigError, RunConfig
from fermsig.core import SpinorPair
from fermsig.logging_config import resolve_level


class TestRunConfig(unittest.TestCase):
    """Test loading, overrides and validation."""

    def test_defaults_are_valid(self):
        config = RunConfig.load()
        self.assertEqual(config.validate(), [])
        self.assertEqual(config.spacetime, "desitter")
        self.assertEqual(config.lambda_list, [0.0, 1.5])
        self.assertEqual(config.tolerances.rtol, 1e-10)
        self.assertEqual(config.quadrature.nodes, 64)

    def test_exponent_override_is_float(self):
        """YAML parses 1e-8 as a string; overrides turn it back into a float."""
        config = RunConfig.load(overrides=["tolerances.rtol=1e-8", "quadrature.nodes=32"])
        self.assertIsInstance(config.tolerances.rtol, float)
        self.assertEqual(config.tolerances.rtol, 1e-8)
        self.assertEqual(config.quadrature.nodes, 32)
        self.assertEqual(config.validate(), [])

    def test_list_and_section_overrides(self):
        config = RunConfig.load(overrides=["lambda_list=[1.5, '5/2']", "mass_interval={lower: 0.5, upper: 3}"])
        self.assertEqual(config.lambda_list, [1.5, "5/2"])
        self.assertEqual(config.interval().m_lower, 0.5)
        self.assertEqual(config.interval().m_upper, 3.0)
        self.assertEqual(config.validate(), [])

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            RunConfig.load(overrides=["tolerances.atol=1e-8"])
        with self.assertRaises(ConfigError):
            RunConfig.load(overrides=["nonsense.rtol=1"])

    def test_malformed_override(self):
        with self.assertRaises(ConfigError):
            RunConfig.load(overrides=["rtol"])

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            RunConfig.load("/nonexistent/fermsig.json")

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.json"
            path.write_text(json.dumps({"spacetime": "ultrastatic", "times": {"samples": 3}}), encoding="utf-8")
            config = RunConfig.load(path)
        self.assertEqual(config.spacetime, "ultrastatic")
        self.assertEqual(config.times.samples, 3)
        self.assertEqual(config.times.t_max, 200.0)

    def test_unknown_key_in_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.json"
            path.write_text(json.dumps({"verify": {"widht": [0.1]}}), encoding="utf-8")
            with self.assertRaises(ConfigError):
                RunConfig.load(path)

    def test_empty_lambda_list_invalid(self):
        config = RunConfig.load(overrides=["lambda_list=[]"])
        self.assertTrue(any("lambda_list" in e for e in config.validate()))

    def test_non_half_integer_invalid(self):
        config = RunConfig.load(overrides=["lambda_list=[0.3]"])
        self.assertTrue(any("half-integer" in e for e in config.validate()))

    def test_de_sitter_budget(self):
        """|lambda| up to 19/2 only for de Sitter; ultrastatic has no budget."""
        config = RunConfig.load(overrides=["lambda_list=[10.5]"])
        self.assertTrue(any("budget" in e for e in config.validate()))
        config.spacetime = "ultrastatic"
        self.assertEqual(config.validate(), [])

    def test_invalid_values(self):
        config = RunConfig.load(overrides=["tolerances.eps=0", "mass_grid=[1.0, -2.0]", "datum=[0, 0]",
                                           "output.format=xml", "spacetime=anti-de-sitter"])
        errors = config.validate()
        self.assertEqual(len(errors), 5)

    def test_threads_from_environment(self):
        with patch.dict(os.environ, {"FERMSIG_THREADS": "3"}):
            self.assertEqual(RunConfig.load().threads, 3)
        with patch.dict(os.environ, {"FERMSIG_THREADS": "many"}):
            with self.assertRaises(ConfigError):
                RunConfig.load()

    def test_sample_times(self):
        config = RunConfig.load(overrides=["times={t_start: 0, t_stop: 1, samples: 5}"])
        self.assertEqual(config.sample_times(), [0.0, 0.25, 0.5, 0.75, 1.0])
        config.times.samples = 1
        self.assertEqual(config.sample_times(), [0.0])

    def test_cauchy_datum(self):
        config = RunConfig.load(overrides=["datum=[0.6, 0.8]"])
        self.assertEqual(config.cauchy_datum(), SpinorPair(0.6, 0.8))

    def test_complex_datum(self):
        """Entries may be [re, im] pairs or complex strings."""
        config = RunConfig.load(overrides=["datum=[[0.6, 0.0], '0+0.8j']"])
        self.assertEqual(config.validate(), [])
        self.assertEqual(config.cauchy_datum(), SpinorPair(0.6, 0.8j))
        config = RunConfig.load(overrides=["datum=[[0, 1], 0]"])
        self.assertEqual(config.cauchy_datum(), SpinorPair(1j, 0))

    def test_malformed_datum(self):
        for datum in ("[1, 2, 3]", "[true, 1]", "['one', 0]", "[[1, 2, 3], 0]"):
            config = RunConfig.load(overrides=[f"datum={datum}"])
            self.assertEqual(len(config.validate()), 1, datum)
            with self.assertRaises(ValueError):
                config.cauchy_datum()

    def test_verify_interval_outside_mass_interval(self):
        config = RunConfig.load(overrides=["verify.sub_interval=[0.5, 1.7]"])
        self.assertTrue(any("not inside the mass interval" in e for e in config.validate()))

    def test_check_mass_outside_sub_interval(self):
        config = RunConfig.load(overrides=["verify.check_mass=1.8"])
        self.assertTrue(any("verify.check_mass" in e for e in config.validate()))

    def test_verify_widths(self):
        """Widths must be positive and the bumps around check_mass must fit in the sub-interval."""
        config = RunConfig.load(overrides=["verify.widths=[0.5, 0.1]"])
        errors = config.validate()
        self.assertEqual(len(errors), 1)
        self.assertIn("width 0.5", errors[0])
        config = RunConfig.load(overrides=["verify.widths=[0.1, -0.05]"])
        self.assertTrue(any("must be positive" in e for e in config.validate()))
        config = RunConfig.load(overrides=["verify.widths=[]"])
        self.assertTrue(any("non-empty" in e for e in config.validate()))

    def test_report_dict_leaves_out_threads_and_output(self):
        data = RunConfig.load().report_dict()
        self.assertNotIn("threads", data)
        self.assertNotIn("output", data)
        self.assertEqual(data["verify"]["widths"], [0.2, 0.1, 0.05])


class TestLogLevel(unittest.TestCase):
    """Test level resolution."""

    def test_names_and_numbers(self):
        self.assertEqual(resolve_level("debug"), logging.DEBUG)
        self.assertEqual(resolve_level(logging.ERROR), logging.ERROR)

    def test_environment_fallback(self):
        with patch.dict(os.environ, {"FERMSIG_LOG_LEVEL": "WARNING"}):
            self.assertEqual(resolve_level(), logging.WARNING)

    def test_unknown_level(self):
        with self.assertRaises(ValueError):
            resolve_level("chatty")


if __name__ == "__main__":
    unittest.main()
