"""Parametric main-lobe gain model and beam footprint."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveRange


@dataclass(frozen=True)
class AntennaPattern:
    """Lens-assisted horn: Gaussian (quadratic-in-dB) main lobe over a flat floor.

    Parameters
    ----------
    boresight_gain : float
        Peak gain in dBi.
    hpbw : float
        Full half-power beamwidth in degrees.
    sidelobe_floor : float
        Depth of the flat floor below boresight, in dB.
    """

    boresight_gain: float = 25.0
    hpbw: float = 5.7
    sidelobe_floor: float = 30.0

    def __post_init__(self):
        if not math.isfinite(self.boresight_gain):
            raise ValueError("boresight_gain must be finite")
        if not (math.isfinite(self.hpbw) and self.hpbw > 0):
            raise ValueError("hpbw must be > 0")
        if not (math.isfinite(self.sidelobe_floor) and self.sidelobe_floor > 3):
            raise ValueError("sidelobe_floor must be > 3 dB")

    def with_hpbw(self, hpbw):
        return AntennaPattern(self.boresight_gain, hpbw, self.sidelobe_floor)


def gain_dbi(pattern, theta):
    """Gain in dBi at off-boresight angle(s) ``theta`` (degrees)."""
    theta = np.asarray(theta, dtype=float)
    lobe = pattern.boresight_gain - 3.0 * (2.0 * theta / pattern.hpbw) ** 2
    g = np.maximum(lobe, pattern.boresight_gain - pattern.sidelobe_floor)
    return float(g) if g.ndim == 0 else g


def footprint_diameter(pattern, range_m):
    """Diameter in meters of the half-power cone at ``range_m``."""
    if not range_m > 0:
        raise NonPositiveRange(f"range must be > 0, got {range_m!r}")
    return 2.0 * range_m * math.tan(math.radians(pattern.hpbw) / 2.0)
