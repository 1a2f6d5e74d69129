import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uavthz.antenna import AntennaPattern, footprint_diameter, gain_dbi
from uavthz.errors import NonPositiveRange


def test_gain_anchor_points(pattern):
    assert gain_dbi(pattern, 0.0) == 25.0
    assert gain_dbi(pattern, pattern.hpbw / 2) == 22.0
    assert gain_dbi(pattern, 5.7) == pytest.approx(13.0, abs=1e-12)


def test_gain_floor(pattern):
    assert gain_dbi(pattern, 90.0) == pytest.approx(-5.0)
    assert gain_dbi(pattern, 180.0) == pytest.approx(-5.0)


def test_gain_vectorised(pattern):
    np.testing.assert_allclose(gain_dbi(pattern, [0.0, 2.85, 5.7]), [25.0, 22.0, 13.0], atol=1e-12)


@given(st.floats(0.1, 60), st.floats(-10, 40), st.floats(3.5, 60),
       st.lists(st.floats(0, 180), min_size=2, max_size=30))
def test_gain_monotone_and_bounded(hpbw, g0, floor, thetas):
    p = AntennaPattern(g0, hpbw, floor)
    thetas = np.sort(thetas)
    g = gain_dbi(p, thetas)
    assert np.all(np.diff(g) <= 1e-12)
    assert np.all(g >= g0 - floor - 1e-12)
    assert gain_dbi(p, hpbw / 2) == pytest.approx(g0 - 3.0, abs=1e-12)


@pytest.mark.parametrize("range_m, expected", [(10.0, 0.99565898), (0.52, 0.05177427)])
def test_footprint_examples(pattern, range_m, expected):
    assert footprint_diameter(pattern, range_m) == pytest.approx(expected, abs=5e-6)


def test_footprint_degenerate_beam():
    assert footprint_diameter(AntennaPattern(hpbw=1e-12), 100.0) < 1e-10


def test_footprint_linear_in_range(pattern):
    d1 = footprint_diameter(pattern, 3.0)
    assert footprint_diameter(pattern, 6.0) == pytest.approx(2 * d1, rel=1e-15)
    assert footprint_diameter(pattern, 3.1) > d1


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_footprint_rejects_non_positive_range(pattern, bad):
    with pytest.raises(NonPositiveRange):
        footprint_diameter(pattern, bad)


@pytest.mark.parametrize("kwargs", [dict(hpbw=0.0), dict(sidelobe_floor=3.0),
                                    dict(boresight_gain=math.inf)])
def test_pattern_invariants(kwargs):
    with pytest.raises(ValueError):
        AntennaPattern(**kwargs)
