"""End-to-end checks of the pssc command-line tool.

Expects PSSC_EXE, PSSC_SCENARIOS and PSSC_SCHEMA in the environment.
"""

import json
import os
import subprocess
import tempfile
import unittest
from pathlib import Path

import jsonschema

EXE = os.environ["PSSC_EXE"]
SCENARIOS = Path(os.environ["PSSC_SCENARIOS"])
SCHEMA = json.loads(Path(os.environ["PSSC_SCHEMA"]).read_text())


def run(*args):
    return subprocess.run([EXE, *map(str, args)], capture_output=True, text=True, timeout=600)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write_scenario(self, doc, name="s.json"):
        path = self.dir / name
        path.write_text(json.dumps(doc))
        return path

    def scalar_doc(self):
        return json.loads((SCENARIOS / "scalar_demo.json").read_text())

    def test_simulate_writes_outputs_and_valid_metrics(self):
        out = self.dir / "run"
        res = run("simulate", "--scenario", SCENARIOS / "step_tracking.json", "--out", out)
        self.assertEqual(res.returncode, 0, res.stderr)
        for name in ["trace.csv", "metrics.json", "metrics.txt", "scenario.resolved.json"]:
            self.assertTrue((out / name).is_file(), name)
        metrics = json.loads((out / "metrics.json").read_text())
        jsonschema.validate(metrics, SCHEMA)
        self.assertEqual(metrics["controller"], "pssc")
        lines = (out / "trace.csv").read_text().splitlines()
        self.assertEqual(len(lines), 1 + metrics["cycles"])

    def test_controller_and_seed_overrides(self):
        out = self.dir / "run"
        res = run("simulate", "--scenario", SCENARIOS / "output_noise.json", "--out", out,
                  "--controller", "dsmc", "--seed", "18446744073709551615")
        self.assertEqual(res.returncode, 0, res.stderr)
        resolved = json.loads((out / "scenario.resolved.json").read_text())
        self.assertEqual(resolved["controller"], "dsmc")
        self.assertEqual(resolved["seed"], 18446744073709551615)

    def test_seed_changes_noisy_trace_and_repeats_exactly(self):
        traces = []
        for i, seed in enumerate([7, 7, 8]):
            out = self.dir / f"run{i}"
            self.assertEqual(run("simulate", "--scenario", SCENARIOS / "output_noise.json", "--out", out,
                                 "--seed", seed).returncode, 0)
            traces.append((out / "trace.csv").read_bytes())
        self.assertEqual(traces[0], traces[1])
        self.assertNotEqual(traces[0], traces[2])

    def test_resolved_echo_round_trips_bitwise(self):
        first = self.dir / "first"
        second = self.dir / "second"
        self.assertEqual(run("simulate", "--scenario", SCENARIOS / "fuel_limit.json", "--out", first).returncode, 0)
        res = run("simulate", "--scenario", first / "scenario.resolved.json", "--out", second)
        self.assertEqual(res.returncode, 0, res.stderr)
        for name in ["scenario.resolved.json", "trace.csv", "metrics.json"]:
            self.assertEqual((first / name).read_bytes(), (second / name).read_bytes(), name)

    def test_compare_writes_both_runs(self):
        out = self.dir / "cmp"
        res = run("compare", "--scenario", SCENARIOS / "fuel_limit.json", "--out", out)
        self.assertEqual(res.returncode, 0, res.stderr)
        for sub in ["pssc", "dsmc"]:
            jsonschema.validate(json.loads((out / sub / "metrics.json").read_text()), SCHEMA)
        both = json.loads((out / "comparison.json").read_text())
        self.assertEqual(both["pssc"]["controller"], "pssc")
        self.assertEqual(both["dsmc"]["controller"], "dsmc")
        self.assertIn("saturation cycles", (out / "comparison.txt").read_text())

    def test_invariant_set_export(self):
        out = self.dir / "set"
        res = run("invariant-set", "--scenario", SCENARIOS / "double_integrator.json", "--out", out)
        self.assertEqual(res.returncode, 0, res.stderr)
        summary = (out / "summary.txt").read_text()
        self.assertIn("finitely_determined", summary)
        self.assertTrue((out / "T.txt").read_text().strip())
        self.assertTrue((out / "Z.txt").read_text().strip())

    def test_lambda_override_and_iteration_cap(self):
        doc = json.loads((SCENARIOS / "step_tracking.json").read_text())
        doc["max_set_iterations"] = 20
        path = self.write_scenario(doc)
        res = run("invariant-set", "--scenario", path, "--out", self.dir / "a", "--lambda", "1")
        self.assertEqual(res.returncode, 3)
        self.assertIn("lambda_tighten", res.stderr)
        res = run("invariant-set", "--scenario", path, "--out", self.dir / "b", "--lambda", "0.95")
        self.assertEqual(res.returncode, 0, res.stderr)
        res = run("invariant-set", "--scenario", path, "--out", self.dir / "c", "--lambda", "1.5")
        self.assertEqual(res.returncode, 2)

    def test_empty_terminal_set_reports_certificate(self):
        doc = self.scalar_doc()
        doc["constraints"] = {"state": {"lower": [0.5], "upper": [1.0]}, "input": {"lower": [-1.0], "upper": [-0.6]}}
        path = self.write_scenario(doc)
        res = run("invariant-set", "--scenario", path, "--out", self.dir / "e")
        self.assertEqual(res.returncode, 0, res.stderr)
        self.assertIn("empty", (self.dir / "e" / "summary.txt").read_text())
        self.assertTrue((self.dir / "e" / "infeasible_rows.txt").is_file())
        res = run("simulate", "--scenario", path, "--out", self.dir / "s")
        self.assertEqual(res.returncode, 3)

    def test_missing_scenario_is_io_error(self):
        res = run("simulate", "--scenario", self.dir / "absent.json", "--out", self.dir / "x")
        self.assertEqual(res.returncode, 4)

    def test_unwritable_output_is_io_error(self):
        blocker = self.dir / "file"
        blocker.write_text("not a directory")
        res = run("simulate", "--scenario", SCENARIOS / "scalar_demo.json", "--out", blocker / "sub")
        self.assertEqual(res.returncode, 4)

    def test_schema_violations_exit_2_and_are_all_listed(self):
        doc = self.scalar_doc()
        doc["horizon"] = 0
        doc["unexpected"] = True
        doc["controller"] = "lqr"
        res = run("simulate", "--scenario", self.write_scenario(doc), "--out", self.dir / "x")
        self.assertEqual(res.returncode, 2)
        for key in ["horizon", "unexpected", "controller"]:
            self.assertIn(key, res.stderr)

    def test_unstable_beta_is_rejected(self):
        doc = self.scalar_doc()
        doc["sliding"]["beta"] = 1.2
        res = run("simulate", "--scenario", self.write_scenario(doc), "--out", self.dir / "x")
        self.assertEqual(res.returncode, 2)
        self.assertIn("sliding.beta", res.stderr)

    def test_invalid_json_exit_2(self):
        path = self.dir / "bad.json"
        path.write_text("{\"name\": ")
        self.assertEqual(run("simulate", "--scenario", path, "--out", self.dir / "x").returncode, 2)

    def test_bad_command_line_exit_2(self):
        self.assertEqual(run("simulate", "--scenario", SCENARIOS / "scalar_demo.json").returncode, 2)
        self.assertEqual(run("simulate", "--scenario", SCENARIOS / "scalar_demo.json", "--out", self.dir / "x",
                             "--controller", "lqr").returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)

    def test_help_exits_0(self):
        res = run("--help")
        self.assertEqual(res.returncode, 0)
        self.assertIn("simulate", res.stdout)


if __name__ == "__main__":
    unittest.main(verbosity=2)
