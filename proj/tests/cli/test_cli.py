"""End-to-end checks of the qflag executable: values, formats, exit codes."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

QFLAG = sys.argv[1] if len(sys.argv) > 1 else "qflag"
SCHEMA = sys.argv[2] if len(sys.argv) > 2 else "schema/output.schema.json"
FULL10 = "1,2,3,4,5,6,7,8,9"


def run(*args, env=None):
    merged = dict(os.environ)
    merged.pop("QFLAG_CAP", None)
    merged.update(env or {})
    return subprocess.run([QFLAG, *args], capture_output=True, text=True, env=merged)


class Values(unittest.TestCase):
    def value(self, *args):
        proc = run(*args)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        return proc.stdout.strip()

    def test_published(self):
        self.assertEqual(self.value("inv", "10", "--d", FULL10, "--k", "12"), "47043")
        for method in ("table", "denumerant", "binomial"):
            self.assertEqual(self.value("inv", "10", "--d", FULL10, "--k", "20", "--method", method), "230131")
        self.assertEqual(self.value("psi", "6", "6"), "0")
        self.assertEqual(self.value("psi", "6", "7", "--method", "explog"), "2")
        self.assertEqual(self.value("flags", "3", "--d", "1,2", "--p", "2", "--count-only"), "21")
        self.assertEqual(self.value("qbinom", "4", "2", "--eval", "2"), "35")
        self.assertEqual(self.value("denumerant", "--w", "1,2", "4"), "3")

    def test_distribution_csv(self):
        out = self.value("invdist", "7", "--d", "2,4", "--format", "csv")
        lines = out.split("\n")
        self.assertEqual(lines[0], "k,count")
        self.assertEqual(lines[1:6], ["0,1", "1,2", "2,5", "3,8", "4,13"])

    def test_dropping_last_entry(self):
        proc = run("qmultinom", "3", "--d", "1,3", "--format", "csv")
        self.assertEqual(proc.returncode, 0)
        self.assertIn("dropping", proc.stderr)
        self.assertEqual(proc.stdout, "k,coeff\n0,1\n1,1\n2,1\n")

    def test_bounds(self):
        out = self.value("bounds", "5", "--d", "1,2", "--k", "6", "--format", "csv")
        self.assertEqual(out.split("\n")[0], "lower,count,upper")
        self.assertTrue(out.endswith(",104"))

    def test_deterministic(self):
        a = run("verify", "--suite", "flagcells", "--max-n", "4", "--jobs", "3")
        b = run("verify", "--suite", "flagcells", "--max-n", "4", "--jobs", "1")
        self.assertEqual(a.returncode, 0, a.stdout + a.stderr)
        self.assertEqual(a.stdout, b.stdout)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "psi.csv")
            proc = run("psi", "6", "5", "--format", "csv", "--out", path)
            self.assertEqual(proc.returncode, 0)
            self.assertEqual(proc.stdout, "")
            with open(path, newline="") as fh:
                self.assertEqual(fh.read(), "psi\n1\n")


class Json(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(SCHEMA) as fh:
            cls.schema = json.load(fh)

    def check(self, *args):
        proc = run(*args, "--format", "json")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, self.schema)
        return doc

    def test_every_command_validates(self):
        self.check("qbinom", "6", "3")
        self.check("qmultinom", "5", "--d", "1,3")
        self.check("invdist", "5", "--d", "2")
        self.check("inv", "5", "--d", "2", "--k", "3")
        self.check("psi", "8", "4", "--method", "pentagonal")
        self.check("denumerant", "--w", "2,3", "12")
        self.check("bounds", "6", "--d", "3", "--k", "4")
        self.check("flags", "3", "--d", "1", "--p", "3")
        self.check("flags", "3", "--d", "1,2", "--p", "2", "--cells")
        self.check("tau", "6", "2", "5")
        self.check("verify", "--suite", "qanalogue", "--max-n", "4")

    def test_big_integers_are_strings(self):
        doc = self.check("qbinom", "80", "40")
        middle = doc["rows"][800][1]
        self.assertIsInstance(middle, str)
        self.assertGreater(len(middle), 20)
        self.assertEqual(doc["parameters"], {"n": "80", "e": "40"})


class Errors(unittest.TestCase):
    def test_usage_errors_exit_1(self):
        for args in (["inv", "5", "--d", "2,x", "--k", "1"],
                     ["inv", "5", "--d", "3,2", "--k", "1"],
                     ["inv", "5", "--d", "0,2", "--k", "1"],
                     ["psi", "6"],
                     ["psi", "6", "2", "--bogus"],
                     ["frobnicate"],
                     ["psi", "6", "2", "--format", "xml"],
                     ["flags", "3", "--d", "1", "--p", "2", "--count-only", "--cells"]):
            proc = run(*args)
            self.assertEqual(proc.returncode, 1, args)
            self.assertEqual(proc.stdout, "")
            self.assertNotEqual(proc.stderr, "")

    def test_validation_errors_exit_1(self):
        self.assertEqual(run("qbinom", "3", "5").returncode, 1)
        self.assertEqual(run("psi", "5", "9", "--method", "pentagonal").returncode, 1)
        self.assertEqual(run("flags", "3", "--d", "1", "--p", "4").returncode, 1)
        self.assertEqual(run("tau", "5", "2", "7").returncode, 1)

    def test_cap_exit_2(self):
        proc = run("flags", "6", "--d", "3", "--p", "2", "--cells", "--cap", "5")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("cap", proc.stderr)
        proc = run("flags", "6", "--d", "3", "--p", "2", "--cells", env={"QFLAG_CAP": "5"})
        self.assertEqual(proc.returncode, 2)
        proc = run("flags", "6", "--d", "3", "--p", "2", "--cells", "--cap", "100", env={"QFLAG_CAP": "5"})
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(run("psi", "3", "1", env={"QFLAG_CAP": "lots"}).returncode, 1)
        self.assertEqual(run("flags", "5", "--d", "2", "--p", "3", "--count-only").returncode, 2)

    def test_verify_all(self):
        proc = run("verify", "--suite", "all", "--max-n", "6", "--jobs", "4", "--format", "csv")
        self.assertEqual(proc.returncode, 0, proc.stdout)
        rows = proc.stdout.strip().split("\n")[1:]
        self.assertTrue(rows)
        self.assertTrue(all(",pass," in r for r in rows))


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0]], verbosity=2)
