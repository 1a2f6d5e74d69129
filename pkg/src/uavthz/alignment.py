"""3-dB beam-alignment radius and its sweep over distance and beamwidth."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .antenna import AntennaPattern
from .channel import ChannelParams, snr_from_angles
from .errors import BelowReferenceDistance, NoDrop, NonPositiveInput
from .formatting import fmt
from .geometry import StationPose, angle_between


class PatternConfig(enum.Enum):
    TX_ONLY = "tx"
    TX_AND_RX = "txrx"


@dataclass(frozen=True)
class AlignmentResult:
    distance: float
    hpbw: float
    pattern_config: PatternConfig
    diameter_3db: float


DEFAULT_STATION = StationPose((0.0, 0.0, 1.5), 8.0, 0.0)


def _drop_db(station, tx_pattern, rx_pattern, params, distance, config):
    """Return f(s): on-axis SNR minus SNR at lateral offset ``s`` (dB)."""
    bore = station.boresight
    az = math.radians(station.boresight_azimuth)
    lateral = np.array([math.cos(az), -math.sin(az), 0.0])  # horizontal, perpendicular to boresight
    on_axis = snr_from_angles(distance, 0.0, 0.0, tx_pattern, rx_pattern, params)

    def drop(s):
        ray = distance * bore + s * lateral
        d = math.sqrt(float(ray @ ray))
        tx = float(angle_between(bore, ray))
        # the receiver keeps its nominal orientation, anti-parallel to the boresight
        rx = float(angle_between(-bore, -ray)) if config is PatternConfig.TX_AND_RX else 0.0
        return on_axis - snr_from_angles(d, tx, rx, tx_pattern, rx_pattern, params)

    return drop


def three_db_radius(station, tx_pattern, rx_pattern, params, distance,
                    config=PatternConfig.TX_ONLY, xtol=1e-9):
    """Lateral offset (m) at which the mean SNR is 3 dB below on-axis.

    Solved by bisection on ``[0, L tan(min(3 HPBW, 60 deg))]``; the growth of
    the path length with the offset is included.
    """
    if distance < params.reference_distance:
        raise BelowReferenceDistance(distance, params.reference_distance)
    drop = _drop_db(station, tx_pattern, rx_pattern, params, distance, config)
    widest = max(tx_pattern.hpbw, rx_pattern.hpbw) if config is PatternConfig.TX_AND_RX \
        else tx_pattern.hpbw
    lo = 0.0
    hi = distance * math.tan(math.radians(min(3.0 * widest, 60.0)))
    if drop(hi) < 3.0:
        raise NoDrop("the gain floor is reached before a 3 dB drop")
    for _ in range(400):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if drop(mid) < 3.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sweep_3db(distances, hpbws, config=PatternConfig.TX_ONLY, params=None,
              station=None, tx_pattern=None, rx_pattern=None):
    """3-dB diameters over the distance x HPBW grid, distance-major.

    ``hpbws`` replaces the beamwidth of both patterns; other pattern
    properties come from ``tx_pattern``/``rx_pattern`` (defaults otherwise).
    """
    distances = list(distances)
    hpbws = list(hpbws)
    if not distances or not hpbws:
        raise ValueError("distances and hpbws must be non-empty")
    params = params or ChannelParams()
    station = station or DEFAULT_STATION
    tx_pattern = tx_pattern or AntennaPattern()
    rx_pattern = rx_pattern or AntennaPattern()
    rows = []
    for dist in distances:
        for hpbw in hpbws:
            r = three_db_radius(station, tx_pattern.with_hpbw(hpbw), rx_pattern.with_hpbw(hpbw),
                                params, dist, config)
            rows.append(AlignmentResult(float(dist), float(hpbw), config, 2.0 * r))
    return rows


def sweep_to_csv(rows):
    lines = ["distance_m,hpbw_deg,config,diameter_3db_m"]
    lines += [f"{fmt(r.distance)},{fmt(r.hpbw)},{r.pattern_config.value},{fmt(r.diameter_3db)}"
              for r in rows]
    return "\n".join(lines) + "\n"


def footprint_ratio(measured_diameter, hpbw_footprint):
    """Measured aligned-region diameter over the HPBW footprint diameter."""
    if not (measured_diameter > 0 and hpbw_footprint > 0):
        raise NonPositiveInput("both diameters must be > 0")
    return measured_diameter / hpbw_footprint
