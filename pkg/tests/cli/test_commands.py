"""Tests for the fermsig command line: exit codes, tables, reports and the writers."""

import csv
import io
import json
import math
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import pytest

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from fermsig.cli.__main__ import COMMANDS, EXIT_CONFIG, EXIT_FAILED, EXIT_NUMERIC, EXIT_OK, main
from fermsig.cli.output import Table, format_value, render_csv, render_json, to_jsonable, write_table
from fermsig.cli.services import run_tasks
from fermsig.desitter import IntegrationError

# Pi_+ eigenvector at lambda = 3, m = 4
POSITIVE_DATUM = "datum=[0.9486832980505138, 0.31622776601683794]"


class CommandTestCase(unittest.TestCase):
    """Runs main() with output redirected into a temporary directory."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def run_cli(self, command, *overrides, name="out.csv", fmt=None):
        path = self.tmp / name
        argv = [command, "--out", str(path), "--log-level", "WARNING", "--set", "threads=2"]
        for override in overrides:
            argv += ["--set", override]
        if fmt:
            argv += ["--format", fmt]
        code = main(argv)
        return code, path

    def read_csv(self, path):
        with open(path, encoding="utf-8", newline="") as f:
            return list(csv.DictReader(f))


class TestExitCodes(CommandTestCase):
    """Test the exit-code contract."""

    def test_empty_lambda_list(self):
        code, path = self.run_cli("evolve", "lambda_list=[]")
        self.assertEqual(code, EXIT_CONFIG)
        self.assertFalse(path.exists())

    def test_unknown_override(self):
        code, _ = self.run_cli("evolve", "tolerances.atol=1e-8")
        self.assertEqual(code, EXIT_CONFIG)

    def test_missing_config_file(self):
        self.assertEqual(main(["sweep", "--config", str(self.tmp / "missing.json"), "--log-level", "ERROR"]),
                         EXIT_CONFIG)

    def test_bad_log_level(self):
        self.assertEqual(main(["evolve", "--log-level", "chatty"]), EXIT_CONFIG)

    def test_numerical_failure(self):
        def fail(config):
            raise IntegrationError("step size underflow", 1.5)

        with patch.dict(COMMANDS, {"evolve": fail}):
            code, _ = self.run_cli("evolve")
        self.assertEqual(code, EXIT_NUMERIC)


class TestEvolve(CommandTestCase):
    """Test `fermsig evolve`."""

    def test_free_de_sitter_mode(self):
        code, path = self.run_cli("evolve", "lambda_list=[0]", "mass_grid=[1.3]",
                                  "times={t_start: 0, t_stop: 2, samples: 3}")
        self.assertEqual(code, EXIT_OK)
        rows = self.read_csv(path)
        self.assertEqual([float(r["t"]) for r in rows], [0.0, 1.0, 2.0])
        for row in rows:
            self.assertAlmostEqual(float(row["norm"]), 1.0, places=7)
            self.assertAlmostEqual(float(row["current"]), 2 * math.pi, places=6)
            t = float(row["t"])
            self.assertAlmostEqual(float(row["u1_re"]), math.cos(1.3 * t), places=7)

    def test_ultrastatic_positive_frequency(self):
        """A Pi_+ eigenvector evolves as e^{-5it} times itself."""
        code, path = self.run_cli("evolve", "spacetime=ultrastatic", "lambda_list=[3]", "mass_grid=[4]",
                                  POSITIVE_DATUM, "times={t_start: 0, t_stop: 1, samples: 3}")
        self.assertEqual(code, EXIT_OK)
        rows = self.read_csv(path)
        self.assertEqual(len(rows), 3)
        a = 0.9486832980505138
        for row in rows:
            t = float(row["t"])
            self.assertAlmostEqual(float(row["u1_re"]), a * math.cos(5 * t), places=12)
            self.assertAlmostEqual(float(row["u1_im"]), -a * math.sin(5 * t), places=12)

    def test_lf_line_endings(self):
        code, path = self.run_cli("evolve", "spacetime=ultrastatic", "lambda_list=[1.5]", "mass_grid=[1]")
        self.assertEqual(code, EXIT_OK)
        data = path.read_bytes()
        self.assertNotIn(b"\r\n", data)
        self.assertTrue(data.startswith(b"two_lambda,lambda,mass,t,"))


class TestSignatureAndSweep(CommandTestCase):
    """Test `fermsig signature` and `fermsig sweep`."""

    def test_ultrastatic_nu_is_one(self):
        code, path = self.run_cli("signature", "spacetime=ultrastatic", "lambda_list=[1.5, 3]",
                                  name="sig.json", fmt="json")
        self.assertEqual(code, EXIT_OK)
        document = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(document["schema_version"], "1")
        self.assertEqual(document["command"], "signature")
        nu = document["columns"].index("nu")
        self.assertEqual(len(document["rows"]), 2 * 5)
        for row in document["rows"]:
            self.assertAlmostEqual(row[nu], 1.0, places=13)

    def test_rows_sorted(self):
        code, path = self.run_cli("signature", "spacetime=ultrastatic", "lambda_list=[3, -1.5]",
                                  "mass_grid=[2, 1]")
        self.assertEqual(code, EXIT_OK)
        keys = [(int(r["two_lambda"]), float(r["mass"])) for r in self.read_csv(path)]
        self.assertEqual(keys, [(-3, 1.0), (-3, 2.0), (6, 1.0), (6, 2.0)])

    def test_deterministic_output(self):
        """Two runs of the same configuration write identical bytes."""
        overrides = ("lambda_list=[1.5]", "mass_grid=[1.2, 1.8]")
        code_a, first = self.run_cli("signature", *overrides, name="a.csv")
        code_b, second = self.run_cli("signature", *overrides, name="b.csv")
        self.assertEqual((code_a, code_b), (EXIT_OK, EXIT_OK))
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_ultrastatic_sweep(self):
        code, path = self.run_cli("sweep", "spacetime=ultrastatic", "lambda_list=[0, 2.5]", "mass_grid=[1.5]")
        self.assertEqual(code, EXIT_OK)
        rows = self.read_csv(path)
        self.assertEqual([int(r["multiplicity"]) for r in rows], [1, 6])
        for row in rows:
            self.assertLess(float(row["unitarity_defect"]), 1e-13)
            self.assertGreater(float(row["decay_constant"]), 0.0)


class TestVerify(CommandTestCase):
    """Test `fermsig verify` on both suites."""

    def test_ultrastatic_suite_passes(self):
        code, path = self.run_cli("verify", "spacetime=ultrastatic", "lambda_list=[1.5]", "mass_grid=[1.2, 1.8]",
                                  name="report.json")
        document = json.loads(path.read_text(encoding="utf-8"))
        failed = [c for c in document["checks"] if c["status"] == "FAIL"]
        self.assertEqual(failed, [])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(document["summary"], {"total": 7, "failed": 0, "status": "PASS"})
        self.assertNotIn("threads", document["config"])
        names = [c["name"] for c in document["checks"]]
        self.assertEqual(names[:3], ["decay", "plancherel", "t_symmetry"])

    @pytest.mark.slow
    def test_de_sitter_suite_reproducible(self):
        """The default de Sitter suite passes and two runs write identical reports."""
        code_a, first = self.run_cli("verify", name="a.json")
        code_b, second = self.run_cli("verify", name="b.json")
        self.assertEqual((code_a, code_b), (EXIT_OK, EXIT_OK))
        self.assertEqual(first.read_bytes(), second.read_bytes())
        document = json.loads(first.read_text(encoding="utf-8"))
        self.assertEqual(document["summary"]["status"], "PASS")
        names = {c["name"] for c in document["checks"]}
        self.assertTrue({"oracle", "smoothness", "time_reversal", "interval_independence"} <= names)

    @pytest.mark.slow
    def test_coarse_tolerance_fails_oracle(self):
        """rtol = 1e-2 spoils the time-domain pairing; the oracle fails and the exit code is 1."""
        code, path = self.run_cli("verify", "tolerances.rtol=1e-2", "lambda_list=[1.5]", "mass_grid=[1.5]",
                                  name="report.json")
        self.assertEqual(code, EXIT_FAILED)
        document = json.loads(path.read_text(encoding="utf-8"))
        oracle = [c for c in document["checks"] if c["name"] == "oracle"]
        self.assertEqual([c["status"] for c in oracle], ["FAIL"])
        self.assertEqual(document["summary"]["status"], "FAIL")


class TestWriters(unittest.TestCase):
    """Test the deterministic writers and the worker pool."""

    def test_format_value(self):
        self.assertEqual(format_value(0.1), "0.10000000000000001")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(None), "")
        self.assertEqual(format_value(3), "3")

    def test_to_jsonable(self):
        self.assertEqual(to_jsonable({"x": float("nan"), "z": 1 + 2j}), {"x": "nan", "z": [1.0, 2.0]})

    def test_render(self):
        table = Table(["a", "b"])
        table.add(1, 0.5)
        self.assertEqual(render_csv(table), "a,b\n1,0.5\n")
        self.assertEqual(render_json({"b": 1, "a": 2}), '{\n  "a": 2,\n  "b": 1\n}\n')
        self.assertEqual(table.column("b"), [0.5])
        with self.assertRaises(ValueError):
            table.add(1)

    def test_write_table_stdout(self):
        table = Table(["a"])
        table.add(2)
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            write_table(table, "csv", None, "evolve")
        self.assertEqual(out.getvalue(), "a\n2\n")
        with self.assertRaises(ValueError):
            write_table(table, "xml", None, "evolve")

    def test_run_tasks_sorted(self):
        tasks = [((k,), (lambda k=k: k * k)) for k in (3, 1, 2)]
        self.assertEqual(run_tasks(tasks, 2), [((1,), 1), ((2,), 4), ((3,), 9)])
        self.assertEqual(run_tasks([], 4), [])
        with self.assertRaises(ValueError):
            run_tasks(tasks, 0)


if __name__ == "__main__":
    unittest.main()
