# -*- coding: utf-8 -*-
import pytest

from reliab.exceptions import ConfigurationError
from reliab.utils import (
    distribution_from_string,
    floats_from_string,
    grid_from_string,
    methods_from_string,
)


def test_distribution_from_string():
    spec = distribution_from_string("lognormal:0,1")
    assert spec.family == "lognormal"
    assert spec.params == [0.0, 1.0]
    assert distribution_from_string("zilognormal:0.1, 0, 1").params == [0.1, 0.0, 1.0]
    assert distribution_from_string("Gamma:2,1").family == "gamma"
    assert distribution_from_string("live-duration").family == "zilognormal"


@pytest.mark.parametrize("text", ["lognormal", "lognormal:a,b", "cauchy:0,1", "normal:1"])
def test_distribution_from_string_invalid(text):
    with pytest.raises(ConfigurationError):
        distribution_from_string(text)


def test_grid_from_string():
    assert grid_from_string("5988, 1500,2376") == [1500, 2376, 5988]
    assert grid_from_string("100,100") == [100]
    with pytest.raises(ConfigurationError):
        grid_from_string("")
    with pytest.raises(ConfigurationError):
        grid_from_string("10,x")


def test_floats_from_string():
    assert floats_from_string("0.01,0.02") == [0.01, 0.02]
    with pytest.raises(ConfigurationError):
        floats_from_string(",")


def test_methods_from_string():
    assert methods_from_string("corrected,classic") == ["classic", "corrected"]
    assert methods_from_string(["Corrected"]) == ["corrected"]
    with pytest.raises(ConfigurationError):
        methods_from_string("bootstrap")
    with pytest.raises(ConfigurationError):
        methods_from_string("")
