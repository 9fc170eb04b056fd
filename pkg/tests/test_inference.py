# -*- coding: utf-8 -*-
import math
import unittest

from types import SimpleNamespace

import numpy as np

from reliab.exceptions import ConfigurationError, DegenerateSampleError
from reliab.inference import (
    FAIL_TO_REJECT,
    REJECT_LEFT,
    REJECT_RIGHT,
    DesignContext,
    TestResult,
    decide,
    p_value_classic,
    welch_statistic,
    welch_test,
)
from reliabbase.moments import GroupSummary

from .fixtures import fixture_data


class Testcases(unittest.TestCase):
    def setUp(self):
        pair = fixture_data()["golden_pair"]
        self.x = GroupSummary.from_values(pair["control"])
        self.y = GroupSummary.from_values(pair["treatment"])

    def test_design(self):
        design = DesignContext(200, 2000)
        self.assertEqual(design.k, 10.0)
        self.assertEqual(design.N, 2200)
        self.assertEqual(design.swapped().k, 0.1)
        self.assertAlmostEqual(DesignContext(3, 4).k, 4 / 3)
        with self.assertRaises(ConfigurationError):
            DesignContext(1, 10)

    def test_welch_statistic(self):
        x = GroupSummary(4, 1.0, 1.0, 0.0, 3.0)
        y = GroupSummary(4, 2.0, 1.0, 0.0, 3.0)
        self.assertAlmostEqual(welch_statistic(x, y), math.sqrt(2))
        self.assertAlmostEqual(welch_statistic(y, x), -math.sqrt(2))

    def test_zero_standard_error(self):
        flat = SimpleNamespace(n=3, mean=1.0, variance=0.0)
        with self.assertRaises(DegenerateSampleError):
            welch_statistic(flat, flat)

    def test_invariance(self):
        rng = np.random.default_rng(3)
        xs, ys = rng.lognormal(size=40), rng.lognormal(size=60)
        T = welch_statistic(GroupSummary.from_values(xs), GroupSummary.from_values(ys))
        shifted = welch_statistic(
            GroupSummary.from_values(xs + 50.0), GroupSummary.from_values(ys + 50.0)
        )
        scaled = welch_statistic(
            GroupSummary.from_values(xs * 4.5), GroupSummary.from_values(ys * 4.5)
        )
        self.assertAlmostEqual(T, shifted, delta=1e-9)
        self.assertAlmostEqual(T, scaled, delta=1e-9)

    def test_p_value_classic(self):
        self.assertEqual(p_value_classic(0.0), 1.0)
        self.assertAlmostEqual(p_value_classic(1.959963985), 0.05, places=9)
        self.assertEqual(p_value_classic(2.3), p_value_classic(-2.3))
        self.assertGreater(p_value_classic(12.0), 0.0)

    def test_decide(self):
        self.assertEqual(decide(0.04, 0.05, 2.1), REJECT_RIGHT)
        self.assertEqual(decide(0.05, 0.05, 2.1), FAIL_TO_REJECT)
        self.assertEqual(decide(0.01, 0.05, -3), REJECT_LEFT)
        self.assertEqual(decide(0.01, 0.05, 0.0), FAIL_TO_REJECT)
        self.assertEqual(decide(0.5, 0.05, 0.3), FAIL_TO_REJECT)
        for alpha in [0, 1, -0.1, 1.2, "abc"]:
            with self.assertRaises(ConfigurationError):
                decide(0.01, alpha, 1.0)

    def test_welch_test(self):
        result = welch_test(self.x, self.y, alpha=0.05)
        self.assertIsInstance(result, TestResult)
        self.assertEqual(result.T, welch_statistic(self.x, self.y))
        self.assertEqual(result.p_classic, p_value_classic(result.T))
        self.assertTrue(0.0 <= result.p_corrected <= 1.0)
        self.assertIn(result.decision, (REJECT_LEFT, REJECT_RIGHT, FAIL_TO_REJECT))
        self.assertEqual(result.alpha, 0.05)

        classic_only = welch_test(self.x, self.y, corrected=False)
        self.assertIsNone(classic_only.p_corrected)
        self.assertIsNone(classic_only.decision_corrected)

    def test_identical_groups(self):
        result = welch_test(self.x, self.x)
        self.assertEqual(result.T, 0.0)
        self.assertEqual(result.decision, FAIL_TO_REJECT)
        self.assertEqual(result.decision_corrected, FAIL_TO_REJECT)


def test_truncation_is_reported(mocker):
    from reliab.edgeworth import EdgeworthCorrection

    pair = fixture_data()["golden_pair"]
    x = GroupSummary.from_values(pair["control"])
    y = GroupSummary.from_values(pair["treatment"])
    mocker.patch.object(EdgeworthCorrection, "p_value", return_value=(0.0, True))
    result = welch_test(x, y, alpha=0.05)
    assert result["truncated"] is True
    assert result.p_corrected == 0.0
    assert result["warnings"]
    assert result.decision_corrected in (REJECT_LEFT, REJECT_RIGHT)
