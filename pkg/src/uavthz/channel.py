"""Directional link budget in the dB domain, power maps and difference maps.

The SNR-like power level is

    P_T + G_Tx(theta_tx) + G_Rx(theta_rx) - 10 alpha log10(d / d_ref) - eta - N [- xi]

with every term in dB/dBm. ``ModelMode.FULL`` takes the receiver boresight
from the instantaneous UAV attitude; ``ModelMode.CALIBRATED`` takes it from
the nominal receiver orientation, so attitude jitter drops out while the
positional geometry is kept.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .antenna import gain_dbi
from .errors import AxisMismatch, BelowReferenceDistance, InsufficientSpread, TooFewSamples
from .fading import weibull_sample
from .formatting import fmt
from .geometry import (angle_between, angle_between_scalar, boresight_vector, direction,
                       offsets_to_delta)


class ModelMode(enum.Enum):
    FULL = "full"
    CALIBRATED = "calibrated"


@dataclass(frozen=True)
class ChannelParams:
    tx_power: float = 0.0
    path_loss_exponent: float = 1.7
    noise: float = -18.0
    excess_loss: float = 6.0
    reference_distance: float = 1.0

    def __post_init__(self):
        for name in ("tx_power", "path_loss_exponent", "noise", "excess_loss",
                     "reference_distance"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.path_loss_exponent > 0:
            raise ValueError("path_loss_exponent must be > 0")
        if not self.reference_distance > 0:
            raise ValueError("reference_distance must be > 0")


def snr_from_angles(distance, tx_angle, rx_angle, tx_pattern, rx_pattern, params):
    """Mean SNR in dB for given link distance(s) and off-boresight angles."""
    d = np.asarray(distance, dtype=float)
    out = (
        params.tx_power
        + gain_dbi(tx_pattern, tx_angle)
        + gain_dbi(rx_pattern, rx_angle)
        - 10.0 * params.path_loss_exponent * np.log10(d / params.reference_distance)
        - params.excess_loss
        - params.noise
    )
    return float(out) if np.ndim(out) == 0 else out


def _rx_directions(station, pitch, yaw, mode, nominal_rx):
    if mode is ModelMode.FULL:
        return boresight_vector(yaw, pitch)
    if mode is not ModelMode.CALIBRATED:
        raise ValueError(f"unknown mode {mode!r}")
    if nominal_rx is None:
        nominal_rx = station.nominal_receiver_orientation()
    n_pitch, n_yaw = nominal_rx
    return boresight_vector(n_yaw, n_pitch)


def evaluate_positions(station, positions, pitch, yaw, tx_pattern, rx_pattern, params,
                       mode=ModelMode.CALIBRATED, nominal_rx=None):
    """Vectorised mean SNR for UAV positions ``(N, 3)`` and attitudes ``(N,)``.

    ``nominal_rx`` is the ``(pitch, yaw)`` used in calibrated mode; by
    default the receiver looks straight back along the station boresight.
    Raises :class:`BelowReferenceDistance` carrying the first offending index.
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    ray = positions - np.asarray(station.position)
    dist = np.sqrt(np.sum(ray * ray, axis=-1))
    bad = np.nonzero(~(dist >= params.reference_distance))[0]
    if bad.size:
        i = int(bad[0])
        raise BelowReferenceDistance(float(dist[i]), params.reference_distance, index=i)
    rx_dir = _rx_directions(station, pitch, yaw, mode, nominal_rx)
    tx_angle = angle_between(station.boresight, ray)
    rx_angle = angle_between(rx_dir, -ray)
    return snr_from_angles(dist, tx_angle, rx_angle, tx_pattern, rx_pattern, params)


def mean_snr_db(station, uav, tx_pattern, rx_pattern, params,
                mode=ModelMode.CALIBRATED, nominal_rx=None):
    ray = [u - s for u, s in zip(uav.position, station.position)]
    dist = math.sqrt(ray[0] * ray[0] + ray[1] * ray[1] + ray[2] * ray[2])
    if not dist >= params.reference_distance:
        raise BelowReferenceDistance(dist, params.reference_distance)
    if mode is ModelMode.FULL:
        rx_dir = direction(uav.yaw, uav.pitch)
    elif mode is ModelMode.CALIBRATED:
        n_pitch, n_yaw = nominal_rx or station.nominal_receiver_orientation()
        rx_dir = direction(n_yaw, n_pitch)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    tx = angle_between_scalar(direction(station.boresight_azimuth, station.boresight_elevation), ray)
    rx = angle_between_scalar(rx_dir, [-c for c in ray])
    return snr_from_angles(dist, tx, rx, tx_pattern, rx_pattern, params)


def sample_snr_db(station, uav, tx_pattern, rx_pattern, params, fading, rng,
                  mode=ModelMode.CALIBRATED, nominal_rx=None):
    """Mean SNR minus one Weibull-distributed fading loss (dB) drawn from ``rng``."""
    mean = mean_snr_db(station, uav, tx_pattern, rx_pattern, params, mode, nominal_rx)
    return mean - weibull_sample(fading, rng)


# -- maps ------------------------------------------------------------------

AXIS_NAMES = ("a", "b", "height")


@dataclass(frozen=True)
class AxisSpec:
    """Offsets of one map axis, in meters, relative to the nominal UAV point.

    ``a`` moves horizontally along the station bearing, ``b`` horizontally
    across it (to the right), ``height`` vertically.
    """

    name: str
    min: float
    max: float
    step: float

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        if not all(math.isfinite(v) for v in (self.min, self.max, self.step)):
            raise ValueError("axis bounds must be finite")
        if self.max < self.min:
            raise ValueError("axis max must be >= min")
        if not self.step > 0:
            raise ValueError("axis step must be > 0")

    @property
    def count(self):
        return int(math.floor((self.max - self.min) / self.step + 1e-9)) + 1

    @property
    def values(self):
        return self.min + self.step * np.arange(self.count)

    def to_dict(self):
        return {"name": self.name, "min": self.min, "max": self.max, "step": self.step}


@dataclass
class PowerMap:
    axis1: AxisSpec
    axis2: AxisSpec
    grid: np.ndarray
    mode: ModelMode
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        if self.grid.shape != (self.axis1.count, self.axis2.count):
            raise AxisMismatch(
                f"grid shape {self.grid.shape} does not match axes "
                f"({self.axis1.count}, {self.axis2.count})"
            )

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.grid)))

    @property
    def mean_abs(self):
        return float(np.mean(np.abs(self.grid)))

    def rows(self):
        v1, v2 = self.axis1.values, self.axis2.values
        for i in range(v1.size):
            for j in range(v2.size):
                yield float(v1[i]), float(v2[j]), float(self.grid[i, j])

    def to_csv(self):
        lines = ["axis1,axis2,snr_db"]
        lines += [f"{fmt(a)},{fmt(b)},{fmt(s)}" for a, b, s in self.rows()]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "schema_version": "1",
            "mode": self.mode.value,
            "axes": [
                dict(self.axis1.to_dict(), values=self.axis1.values.tolist()),
                dict(self.axis2.to_dict(), values=self.axis2.values.tolist()),
            ],
            "snr_db": self.grid.tolist(),
            "summary": {"max_abs_db": self.max_abs, "mean_abs_db": self.mean_abs},
            "context": self.context,
        }

    @classmethod
    def from_dict(cls, doc):
        axes = [AxisSpec(a["name"], a["min"], a["max"], a["step"]) for a in doc["axes"]]
        return cls(axes[0], axes[1], np.array(doc["snr_db"], dtype=float),
                   ModelMode(doc["mode"]), dict(doc.get("context", {})))


def read_power_map_csv(text):
    """Parse map CSV text into ``(axis1_values, axis2_values, grid)``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "axis1,axis2,snr_db":
        raise ValueError("power map CSV must start with 'axis1,axis2,snr_db'")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    v1 = np.unique(rows[:, 0])
    v2 = np.unique(rows[:, 1])
    return v1, v2, rows[:, 2].reshape(v1.size, v2.size)


def grid_positions(station, nominal, axis1, axis2):
    """UAV positions ``(n1, n2, 3)`` for a map around ``nominal``."""
    v1, v2 = np.meshgrid(axis1.values, axis2.values, indexing="ij")
    offsets = {"a": 0.0, "b": 0.0, "height": 0.0}
    offsets[axis1.name] = v1
    if axis2.name == axis1.name:
        raise ValueError("map axes must differ")
    offsets[axis2.name] = v2
    delta = offsets_to_delta(station.boresight_azimuth,
                             offsets["a"], offsets["b"], offsets["height"])
    delta = np.broadcast_to(delta, v1.shape + (3,))
    return np.asarray(nominal.position) + delta


def power_map(station, nominal, axes, tx_pattern, rx_pattern, params,
              mode=ModelMode.CALIBRATED, fading=None, rng=None, nominal_rx=None):
    """Evaluate the link model on a 2-D grid of offsets around ``nominal``.

    The UAV keeps the nominal attitude at every cell. With ``fading`` given,
    one Weibull draw per cell is subtracted, consumed from ``rng`` in
    row-major order.
    """
    axis1, axis2 = axes
    pos = grid_positions(station, nominal, axis1, axis2)
    shape = pos.shape[:2]
    flat = pos.reshape(-1, 3)
    n = flat.shape[0]
    try:
        snr = evaluate_positions(station, flat, np.full(n, nominal.pitch),
                                 np.full(n, nominal.yaw), tx_pattern, rx_pattern,
                                 params, mode, nominal_rx)
    except BelowReferenceDistance as exc:
        cell = tuple(int(v) for v in np.unravel_index(exc.index, shape))
        raise BelowReferenceDistance(exc.distance, exc.reference, index=cell) from None
    if fading is not None:
        if rng is None:
            raise ValueError("a seeded generator is required when fading is given")
        snr = snr - weibull_sample(fading, rng, n)
    context = {
        "station_position": list(station.position),
        "station_elevation_deg": station.boresight_elevation,
        "station_azimuth_deg": station.boresight_azimuth,
        "nominal_position": list(nominal.position),
        "fading": None if fading is None else {"scale": fading.scale, "shape": fading.shape},
    }
    return PowerMap(axis1, axis2, snr.reshape(shape), mode, context)


def difference_map(a, b):
    """Cellwise ``a - b``; ``max_abs``/``mean_abs`` summarise the result."""
    if a.axis1 != b.axis1 or a.axis2 != b.axis2:
        raise AxisMismatch("difference_map needs identical axis specs")
    return PowerMap(a.axis1, a.axis2, a.grid - b.grid, a.mode,
                    {"difference_of": [a.mode.value, b.mode.value]})


# -- calibration against logs ---------------------------------------------

@dataclass(frozen=True)
class PathLossFit:
    alpha: float
    intercept_db: float
    residual_rms_db: float
    n: int


def fit_path_loss_exponent(log, station, tx_pattern, rx_pattern, params,
                           mode=ModelMode.CALIBRATED, nominal_rx=None):
    """Least-squares path-loss exponent from a log with measured power.

    Regresses ``measured - (P_T + G_Tx + G_Rx - eta - N)`` on
    ``-10 log10(d/d_ref)`` with a free intercept, which absorbs the mean
    fading loss. The ``path_loss_exponent`` in ``params`` is ignored.
    """
    power = np.asarray(log.power, dtype=float)
    keep = np.isfinite(power)
    if keep.sum() < 8:
        raise TooFewSamples(f"need >= 8 samples with measured power, got {int(keep.sum())}")
    pos = np.column_stack([log.x, log.y, log.z])[keep]
    pitch = np.asarray(log.pitch, dtype=float)[keep]
    yaw = np.asarray(log.yaw, dtype=float)[keep]
    ray = pos - np.asarray(station.position)
    dist = np.sqrt(np.sum(ray * ray, axis=-1))
    bad = np.nonzero(~(dist >= params.reference_distance))[0]
    if bad.size:
        idx = int(np.nonzero(keep)[0][bad[0]])
        raise BelowReferenceDistance(float(dist[bad[0]]), params.reference_distance, index=idx)
    rx_dir = _rx_directions(station, pitch, yaw, mode, nominal_rx)
    fixed = (
        params.tx_power
        + gain_dbi(tx_pattern, angle_between(station.boresight, ray))
        + gain_dbi(rx_pattern, angle_between(rx_dir, -ray))
        - params.excess_loss
        - params.noise
    )
    y = power[keep] - fixed
    x = -10.0 * np.log10(dist / params.reference_distance)
    if np.ptp(x) <= 1e-12 * max(1.0, float(np.max(np.abs(x)))):
        raise InsufficientSpread("all samples share one link distance")
    design = np.column_stack([x, np.ones_like(x)])
    (alpha, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ np.array([alpha, intercept])
    return PathLossFit(float(alpha), float(intercept),
                       float(np.sqrt(np.mean(resid * resid))), int(y.size))
