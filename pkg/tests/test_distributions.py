# -*- coding: utf-8 -*-
import math
import unittest

import numpy as np

from reliab.distributions import (
    PRESET_CUMULANTS,
    PRESETS,
    DistributionSpec,
    match_cumulants,
    sample_group,
    zilognormal_cumulants,
)
from reliab.exceptions import ConfigurationError
from reliab.planning import lognormal_population_cumulants


class Testcases(unittest.TestCase):
    def test_validation(self):
        for family, params in [
            ("weibull", (1, 2)),
            ("normal", (0,)),
            ("normal", (0, 0)),
            ("lognormal", (0, -1)),
            ("gamma", (0, 1)),
            ("zilognormal", (0, 0, 1)),
            ("zilognormal", (1.5, 0, 1)),
            ("empirical", ()),
            ("normal", (0, float("inf"))),
        ]:
            with self.assertRaises(ConfigurationError):
                DistributionSpec(family, *params)

    def test_cumulants(self):
        normal = DistributionSpec("normal", 1, 2).cumulants()
        self.assertEqual((normal.mean, normal.variance, normal.skewness, normal.kurtosis), (1, 4, 0, 3))

        gamma = DistributionSpec("gamma", 2, 1).cumulants()
        self.assertAlmostEqual(gamma.variance, 2.0)
        self.assertAlmostEqual(gamma.skewness, math.sqrt(2))
        self.assertAlmostEqual(gamma.kurtosis, 6.0)

        lognormal = DistributionSpec("lognormal", 0, 1).cumulants()
        self.assertEqual(lognormal, lognormal_population_cumulants(0, 1))

        empirical = DistributionSpec.empirical([1, 2, 3, 4, 5]).cumulants()
        self.assertAlmostEqual(empirical.variance, 2.0)
        self.assertAlmostEqual(empirical.kurtosis, 1.7)

    def test_zilognormal(self):
        full = zilognormal_cumulants(1.0, 0.5, 0.8)
        reference = lognormal_population_cumulants(0.5, 0.8)
        for key in ["mean", "variance", "skewness", "kurtosis"]:
            self.assertAlmostEqual(full[key], reference[key], delta=1e-9 * abs(reference[key]))
        sparse = zilognormal_cumulants(0.1, 0.0, 1.0)
        self.assertAlmostEqual(sparse.mean, 0.1 * math.exp(0.5))
        self.assertGreater(sparse.skewness, reference.skewness)

    def test_match_cumulants(self):
        for name, (gamma, tau) in PRESET_CUMULANTS.items():
            spec = PRESETS[name]()
            self.assertEqual(spec.family, "zilognormal")
            matched = spec.cumulants()
            self.assertLess(abs(matched.skewness - gamma) / gamma, 1e-6)
            self.assertLess(abs(matched.kurtosis - tau) / tau, 1e-6)
            self.assertTrue(0 < spec.params[0] <= 1)

    def test_match_infeasible(self):
        # below the two-point bound
        with self.assertRaises(ConfigurationError):
            match_cumulants(2.0, 4.0)
        # heavier than any lognormal with that skewness
        with self.assertRaises(ConfigurationError):
            match_cumulants(2.0, 1000.0)
        with self.assertRaises(ConfigurationError):
            match_cumulants(-1.0, 10.0)

    def test_sample_group(self):
        rng = np.random.default_rng(2024)
        draws = sample_group(DistributionSpec("normal", 0, 1), 10 ** 6, rng)
        self.assertEqual(draws.shape, (10 ** 6,))
        self.assertLess(abs(draws.mean()), 4e-3)

        constant = sample_group(DistributionSpec.empirical([5]), 100, rng)
        self.assertTrue((constant == 5).all())

        zeros = sample_group(DistributionSpec("zilognormal", 0.2, 0, 1), 10 ** 5, rng)
        self.assertAlmostEqual((zeros == 0).mean(), 0.8, delta=0.01)
        self.assertTrue((zeros >= 0).all())

        with self.assertRaises(ConfigurationError):
            sample_group(DistributionSpec("normal", 0, 1), 0, rng)

    def test_sampling_is_seeded(self):
        spec = DistributionSpec("gamma", 2, 3)
        a = spec.sample(50, np.random.default_rng(9))
        b = spec.sample(50, np.random.default_rng(9))
        self.assertTrue(np.array_equal(a, b))

    def test_str_and_json(self):
        spec = DistributionSpec("lognormal", 0, 1)
        self.assertEqual(str(spec), "lognormal:0,1")
        self.assertEqual(spec.json(), {"family": "lognormal", "params": [0.0, 1.0]})
        self.assertEqual(str(DistributionSpec.empirical([1, 2, 3])), "empirical[3 values]")
        self.assertEqual(
            DistributionSpec.empirical([1, 2, 3]).json(), {"family": "empirical", "count": 3}
        )
