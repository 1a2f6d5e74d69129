"""Station/UAV poses, link distance and off-boresight angles.

Frame is right-handed ENU (x east, y north, z up). Azimuths are compass
bearings in degrees (clockwise from north), elevations are degrees above the
horizon. The receiver boresight is derived from yaw (bearing) and pitch
(elevation); roll spins an axially symmetric horn about its own axis and is
ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroDistance


def _check_finite(name, value):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


def _as_position(position):
    pos = tuple(float(v) for v in position)
    if len(pos) != 3:
        raise ValueError(f"position must have 3 components, got {len(pos)}")
    for v in pos:
        _check_finite("position", v)
    return pos


@dataclass(frozen=True)
class StationPose:
    """Ground-station antenna position and boresight direction."""

    position: tuple[float, float, float]
    boresight_elevation: float = 8.0
    boresight_azimuth: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", _as_position(self.position))
        if self.position[2] < 0:
            raise ValueError("station height must be >= 0")
        if not -90.0 < self.boresight_elevation < 90.0:
            raise ValueError("boresight_elevation must lie in (-90, 90)")
        if not 0.0 <= self.boresight_azimuth < 360.0:
            raise ValueError("boresight_azimuth must lie in [0, 360)")

    @property
    def height(self):
        return self.position[2]

    @property
    def boresight(self):
        return boresight_vector(self.boresight_azimuth, self.boresight_elevation)

    def nominal_receiver_orientation(self):
        """(pitch, yaw) of a receiver pointing straight back along the boresight."""
        return -self.boresight_elevation, (self.boresight_azimuth + 180.0) % 360.0

    def point_on_boresight(self, range_m):
        return tuple(np.asarray(self.position) + range_m * self.boresight)


@dataclass(frozen=True)
class UavPose:
    """UAV position and attitude; the receiver horn is fixed to the airframe."""

    position: tuple[float, float, float]
    pitch: float = 0.0
    roll: float = 0.0
    yaw: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", _as_position(self.position))
        if self.position[2] < 0:
            raise ValueError("UAV height must be >= 0")
        if not -90.0 <= self.pitch <= 90.0:
            raise ValueError("pitch must lie in [-90, 90]")
        if not -90.0 <= self.roll <= 90.0:
            raise ValueError("roll must lie in [-90, 90]")
        if not 0.0 <= self.yaw < 360.0:
            raise ValueError("yaw must lie in [0, 360)")

    @property
    def height(self):
        return self.position[2]

    @property
    def boresight(self):
        return boresight_vector(self.yaw, self.pitch)


@dataclass(frozen=True)
class LinkGeometry:
    distance: float
    a: float
    b: float
    tx_off_boresight: float
    rx_off_boresight: float


def boresight_vector(azimuth, elevation):
    """Unit pointing vector(s) for compass azimuth / elevation in degrees."""
    az = np.radians(azimuth)
    el = np.radians(elevation)
    cos_el = np.cos(el)
    return np.stack(
        np.broadcast_arrays(cos_el * np.sin(az), cos_el * np.cos(az), np.sin(el)),
        axis=-1,
    )


def angle_between(u, v):
    """Angle in degrees between vectors along the last axis, in [0, 180]."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    dot = np.sum(u * v, axis=-1)
    return np.degrees(np.arctan2(cross, dot))


def angle_between_scalar(u, v):
    """Scalar twin of :func:`angle_between` for plain 3-sequences."""
    cx = u[1] * v[2] - u[2] * v[1]
    cy = u[2] * v[0] - u[0] * v[2]
    cz = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    return math.degrees(math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), dot))


def direction(azimuth, elevation):
    """Scalar unit pointing vector as a tuple (see :func:`boresight_vector`)."""
    az, el = math.radians(azimuth), math.radians(elevation)
    return (math.cos(el) * math.sin(az), math.cos(el) * math.cos(az), math.sin(el))


def horizontal_offsets(azimuth, delta):
    """Split displacement(s) ``delta`` into (a, b, dh).

    ``a`` is the horizontal component along the azimuth bearing (it lies in
    the vertical plane containing the boresight), ``b`` the horizontal
    component to the right of it, ``dh`` the height difference.
    """
    delta = np.asarray(delta, dtype=float)
    az = math.radians(azimuth)
    s, c = math.sin(az), math.cos(az)
    dx, dy, dh = delta[..., 0], delta[..., 1], delta[..., 2]
    return dx * s + dy * c, dx * c - dy * s, dh


def offsets_to_delta(azimuth, a, b, dh):
    """Inverse of :func:`horizontal_offsets`."""
    az = math.radians(azimuth)
    s, c = math.sin(az), math.cos(az)
    a, b, dh = np.broadcast_arrays(
        np.asarray(a, float), np.asarray(b, float), np.asarray(dh, float)
    )
    return np.stack([a * s + b * c, a * c - b * s, dh], axis=-1)


def link_distance(station, uav):
    a, b, dh = horizontal_offsets(
        station.boresight_azimuth,
        np.subtract(uav.position, station.position),
    )
    return float(np.sqrt(a * a + b * b + dh * dh))


def off_boresight_angles(station, uav, rx_boresight=None):
    """Return (tx_angle, rx_angle) in degrees.

    ``rx_boresight`` overrides the receiver pointing vector taken from the
    UAV attitude (used for calibrated-mode evaluation).
    """
    ray = np.subtract(uav.position, station.position)
    if not np.any(ray):
        raise ZeroDistance("station and UAV positions coincide")
    rx_dir = uav.boresight if rx_boresight is None else np.asarray(rx_boresight, float)
    tx = angle_between(station.boresight, ray)
    rx = angle_between(rx_dir, -ray)
    return float(tx), float(rx)


def link_geometry(station, uav, rx_boresight=None):
    a, b, dh = horizontal_offsets(
        station.boresight_azimuth,
        np.subtract(uav.position, station.position),
    )
    tx, rx = off_boresight_angles(station, uav, rx_boresight)
    return LinkGeometry(
        distance=float(np.sqrt(a * a + b * b + dh * dh)),
        a=float(a),
        b=float(b),
        tx_off_boresight=tx,
        rx_off_boresight=rx,
    )
