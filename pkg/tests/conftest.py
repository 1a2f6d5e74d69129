import numpy as np
import pytest

from uavthz import _backend
from uavthz.antenna import AntennaPattern
from uavthz.channel import ChannelParams
from uavthz.geometry import StationPose, UavPose


@pytest.fixture
def station():
    return StationPose((0.0, 0.0, 1.5), 8.0, 0.0)


@pytest.fixture
def pattern():
    return AntennaPattern(25.0, 5.7, 30.0)


@pytest.fixture
def params():
    return ChannelParams(0.0, 1.7, -18.0, 6.0, 1.0)


def aligned_uav(station, range_m, pitch=None, yaw=None):
    """UAV on the station boresight with the receiver looking straight back."""
    n_pitch, n_yaw = station.nominal_receiver_orientation()
    return UavPose(station.point_on_boresight(range_m),
                   n_pitch if pitch is None else pitch,
                   0.0,
                   n_yaw if yaw is None else yaw)


@pytest.fixture(params=_backend.AVAILABLE)
def backend(request):
    previous = _backend.use_backend(request.param)
    yield request.param
    _backend.use_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
