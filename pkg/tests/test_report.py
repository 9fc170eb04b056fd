# -*- coding: utf-8 -*-
import io
import json
import unittest

import numpy as np

from rich.console import Console

from reliab import __version__
from reliab.exceptions import ConfigurationError
from reliab.report import Report, plain


class Testcases(unittest.TestCase):
    def setUp(self):
        self.report = Report(
            "simulate",
            results={"n_min_second": np.int64(6052), "a1": np.float64(-0.93577)},
            table=[
                {"method": "classic", "N": 1500, "dev_L": -0.0134, "pass": np.bool_(False)},
                {"method": "corrected", "N": 1500, "dev_L": 0.001, "pass": True},
            ],
            metadata={"seed": 42, "grid": np.array([1500])},
            warnings=["N=1500 is below the reliability threshold 6052"],
        )

    def test_plain(self):
        self.assertEqual(
            plain({"a": (np.float32(0.5), np.int8(3)), 1: [np.bool_(True)]}),
            {"a": [0.5, 3], "1": [True]},
        )

    def test_defaults(self):
        self.assertEqual(self.report["version"], __version__)
        self.assertEqual(self.report["title"], "simulate")
        self.assertEqual(self.report["columns"], ["method", "N", "dev_L", "pass"])
        self.assertIsInstance(self.report.results["n_min_second"], int)
        self.assertEqual(self.report["metadata"]["grid"], [1500])

    def test_json(self):
        text = self.report.to_json()
        data = json.loads(text)
        self.assertEqual(data["command"], "simulate")
        self.assertIs(data["table"][0]["pass"], False)
        self.assertEqual(Report.from_json(text), self.report)

    def test_csv(self):
        lines = self.report.to_csv().splitlines()
        self.assertEqual(lines[0], "method,N,dev_L,pass")
        self.assertEqual(lines[1], "classic,1500,-0.0134,False")
        self.assertEqual(len(lines), 3)

    def test_csv_missing_values(self):
        report = Report("plan", table=[{"order": 1, "n_min": None}])
        self.assertEqual(report.to_csv().splitlines()[1], "1,")

    def test_render_table(self):
        buf = io.StringIO()
        console = Console(file=buf, width=200, color_system=None)
        self.report.render("table", console=console)
        out = buf.getvalue()
        self.assertIn("corrected", out)
        self.assertIn("seed: 42", out)
        self.assertIn("n_min_second: 6052", out)
        self.assertIn("no", out)

    def test_render_json(self):
        buf = io.StringIO()
        self.report.render("json", console=Console(file=buf, width=200, color_system=None))
        self.assertEqual(json.loads(buf.getvalue()), json.loads(self.report.to_json()))

    def test_unknown_format(self):
        with self.assertRaises(ConfigurationError):
            self.report.render("xml")
