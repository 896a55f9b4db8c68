import io
import json
import os
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import mock

from qkhlab.cli import Cli, ConfigException, RunConfig
from qkhlab.cli.cli_config import _COMMANDS
from qkhlab.utils import WORKERS_ENV, worker_width

FIXTURES = Path(__file__).parent / "fixtures"


class TestCli(unittest.TestCase):
    def setUp(self):
        self.cli = Cli(prog="qkh-lab", description="test", **_COMMANDS)

    def invoke(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = self.cli(list(argv))
        payload = json.loads(out.getvalue()) if out.getvalue() else None
        return code, payload

    def test_matchings(self):
        code, payload = self.invoke("matchings", "--n", "3", "--k", "1")
        self.assertEqual(code, 0)
        self.assertEqual(payload["schema"], "qkh-lab/1")
        self.assertEqual(payload["count"], 3)
        self.assertEqual(len(payload["matchings"]), 3)

    def test_output_is_deterministic(self):
        out = []
        for _ in range(2):
            buffer = io.StringIO()
            with redirect_stdout(buffer), redirect_stderr(io.StringIO()):
                self.cli(["algebra", "--n", "2", "--k", "1"])
            out.append(buffer.getvalue())
        self.assertEqual(out[0], out[1])

    def test_essential_unknot(self):
        code, payload = self.invoke("qakh", "--link", str(FIXTURES / "identity_1.json"),
                                    "--group", "1", "--homology")
        self.assertEqual(code, 0)
        pieces = payload["homology"]["0"]["pieces"]
        self.assertEqual([(p["adeg"], p["free_rank"]) for p in pieces], [(-1, 1), (1, 1)])

    def test_infinite_group_homology(self):
        code, _ = self.invoke("qakh", "--link", str(FIXTURES / "identity_1.json"), "--homology")
        self.assertEqual(code, 3)

    def test_malformed_input(self):
        code, payload = self.invoke("qakh", "--link", str(FIXTURES / "broken.json"))
        self.assertEqual(code, 2)
        self.assertIsNone(payload)
        code, _ = self.invoke("qakh", "--link", str(FIXTURES / "missing.json"))
        self.assertEqual(code, 2)
        code, _ = self.invoke("matchings", "--n", "2", "--k", "-1")
        self.assertEqual(code, 2)

    def test_xi_verify(self):
        code, payload = self.invoke("xi-verify", "--tangle", str(FIXTURES / "identity_1.json"),
                                    "--k", "0", "--group", "3")
        self.assertEqual(code, 0)
        self.assertEqual((payload["chain_map"], payload["cone_acyclic"]), ("pass", "pass"))

    def test_xi_verify_without_homology(self):
        code, payload = self.invoke("xi-verify", "--tangle", str(FIXTURES / "identity_1.json"),
                                    "--k", "0", "--group", "Z")
        self.assertEqual(code, 0)
        self.assertEqual(payload["cone_acyclic"], "skipped")

    def test_burnside_verify(self):
        code, payload = self.invoke("burnside-verify", "--link", str(FIXTURES / "kink.json"))
        self.assertEqual(code, 0)
        self.assertTrue(payload["ok"])
        self.assertEqual(payload["counts"]["edges"], 1)

    def test_unknown_corpus_check(self):
        code, _ = self.invoke("corpus", "--only", "nothing")
        self.assertEqual(code, 2)

    def test_corpus_subset(self):
        code, payload = self.invoke("corpus", "--only", "surfaces", "degree_arithmetic")
        self.assertEqual(code, 0)
        self.assertEqual(set(payload["summary"]), {"surfaces", "degree_arithmetic"})


class TestRunConfig(unittest.TestCase):
    def test_ranges(self):
        with self.assertRaises(ConfigException):
            RunConfig("qhh", k=-1)
        with self.assertRaises(ConfigException):
            RunConfig("qhh", window=-2)
        with self.assertRaises(ConfigException):
            RunConfig("qhh", workers=0)

    def test_worker_width(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV: "4"}):
            self.assertEqual(worker_width(), 4)
            self.assertEqual(worker_width(2), 2)
        with mock.patch.dict(os.environ, {WORKERS_ENV: ""}):
            self.assertEqual(worker_width(), 1)


if __name__ == "__main__":
    unittest.main()
