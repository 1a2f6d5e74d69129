"""Plain ``key = value`` scenario files.

One key per line, ``#`` starts a comment, unknown or repeated keys are
errors. Every key has a default; defaults describe a 140 GHz hover link
(8 deg tilt at both ends, 5.7 deg HPBW, 25 dBi, P_T 0 dBm, alpha 1.7,
N -18 dBm, eta 6 dB, Weibull fading scale 5.01 / shape 57.40) with the UAV
hovering 10 m down the station boresight. Link range, heights and jitter
magnitudes are configuration choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .antenna import AntennaPattern
from .channel import ChannelParams, ModelMode
from .errors import ConfigError
from .fading import WeibullParams
from .formatting import fmt
from .geometry import StationPose, UavPose, boresight_vector
from .trajectory import JitterParams

_STATION_Z = 1.5
_TILT = 8.0
_RANGE = 10.0
_UAV_DEFAULT = [float(v) for v in (0.0, 0.0, _STATION_Z) + _RANGE * boresight_vector(0.0, _TILT)]

# key -> (group, default); ``mode`` is the only non-numeric key
DEFAULTS = {
    "station_x_m": ("station", 0.0),
    "station_y_m": ("station", 0.0),
    "station_z_m": ("station", _STATION_Z),
    "station_elevation_deg": ("station", _TILT),
    "station_azimuth_deg": ("station", 0.0),
    "uav_x_m": ("uav", _UAV_DEFAULT[0]),
    "uav_y_m": ("uav", _UAV_DEFAULT[1]),
    "uav_z_m": ("uav", _UAV_DEFAULT[2]),
    "uav_pitch_deg": ("uav", -_TILT),
    "uav_roll_deg": ("uav", 0.0),
    "uav_yaw_deg": ("uav", 180.0),
    "tx_gain_dbi": ("tx", 25.0),
    "tx_hpbw_deg": ("tx", 5.7),
    "tx_sidelobe_floor_db": ("tx", 30.0),
    "rx_gain_dbi": ("rx", 25.0),
    "rx_hpbw_deg": ("rx", 5.7),
    "rx_sidelobe_floor_db": ("rx", 30.0),
    "tx_power_dbm": ("params", 0.0),
    "path_loss_exponent": ("params", 1.7),
    "noise_dbm": ("params", -18.0),
    "excess_loss_db": ("params", 6.0),
    "reference_distance_m": ("params", 1.0),
    "mode": ("mode", "calibrated"),
    "fading_scale": ("fading", 5.01),
    "fading_shape": ("fading", 57.40),
    "jitter_sigma_pos": ("jitter", 0.05),
    "jitter_sigma_ang": ("jitter", 0.5),
    "jitter_theta": ("jitter", 0.5),
    "jitter_dt_s": ("jitter", 0.1),
    "jitter_duration_s": ("jitter", 60.0),
}


@dataclass(frozen=True)
class ScenarioConfig:
    station: StationPose
    uav: UavPose
    tx: AntennaPattern
    rx: AntennaPattern
    params: ChannelParams
    mode: ModelMode
    fading: WeibullParams
    jitter: JitterParams

    @property
    def nominal_rx(self):
        """Nominal receiver (pitch, yaw) used by calibrated mode."""
        return self.uav.pitch, self.uav.yaw


def _build(values):
    v = values
    return {
        "station": lambda: StationPose(
            (v["station_x_m"], v["station_y_m"], v["station_z_m"]),
            v["station_elevation_deg"], v["station_azimuth_deg"]),
        "uav": lambda: UavPose(
            (v["uav_x_m"], v["uav_y_m"], v["uav_z_m"]),
            v["uav_pitch_deg"], v["uav_roll_deg"], v["uav_yaw_deg"]),
        "tx": lambda: AntennaPattern(v["tx_gain_dbi"], v["tx_hpbw_deg"], v["tx_sidelobe_floor_db"]),
        "rx": lambda: AntennaPattern(v["rx_gain_dbi"], v["rx_hpbw_deg"], v["rx_sidelobe_floor_db"]),
        "params": lambda: ChannelParams(v["tx_power_dbm"], v["path_loss_exponent"],
                                        v["noise_dbm"], v["excess_loss_db"],
                                        v["reference_distance_m"]),
        "mode": lambda: ModelMode(v["mode"]),
        "fading": lambda: WeibullParams(v["fading_scale"], v["fading_shape"]),
        "jitter": lambda: JitterParams(v["jitter_sigma_pos"], v["jitter_sigma_ang"],
                                       v["jitter_theta"], v["jitter_dt_s"],
                                       v["jitter_duration_s"]),
    }


def parse_config(text, path="<config>"):
    values = {k: d for k, (_, d) in DEFAULTS.items()}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key {key!r}", path, lineno)
        if key in lines:
            raise ConfigError(f"duplicate key {key!r} (first set on line {lines[key]})",
                              path, lineno)
        if key == "mode":
            if value not in ("full", "calibrated"):
                raise ConfigError("mode must be 'full' or 'calibrated'", path, lineno)
            values[key] = value
        else:
            try:
                num = float(value)
            except ValueError:
                raise ConfigError(f"{key}: not a number: {value!r}", path, lineno) from None
            if not math.isfinite(num):
                raise ConfigError(f"{key}: value must be finite", path, lineno)
            values[key] = num
        lines[key] = lineno

    built = {}
    for group, factory in _build(values).items():
        try:
            built[group] = factory()
        except ValueError as exc:
            group_lines = [lines[k] for k, (g, _) in DEFAULTS.items() if g == group and k in lines]
            raise ConfigError(f"{group}: {exc}", path,
                              max(group_lines) if group_lines else None) from None
    return ScenarioConfig(**built)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), str(path))


def default_config():
    return parse_config("")


def format_config(cfg=None):
    """Render a config as a parseable ``key = value`` document."""
    cfg = cfg or default_config()
    values = {
        "station_x_m": cfg.station.position[0],
        "station_y_m": cfg.station.position[1],
        "station_z_m": cfg.station.position[2],
        "station_elevation_deg": cfg.station.boresight_elevation,
        "station_azimuth_deg": cfg.station.boresight_azimuth,
        "uav_x_m": cfg.uav.position[0],
        "uav_y_m": cfg.uav.position[1],
        "uav_z_m": cfg.uav.position[2],
        "uav_pitch_deg": cfg.uav.pitch,
        "uav_roll_deg": cfg.uav.roll,
        "uav_yaw_deg": cfg.uav.yaw,
        "tx_gain_dbi": cfg.tx.boresight_gain,
        "tx_hpbw_deg": cfg.tx.hpbw,
        "tx_sidelobe_floor_db": cfg.tx.sidelobe_floor,
        "rx_gain_dbi": cfg.rx.boresight_gain,
        "rx_hpbw_deg": cfg.rx.hpbw,
        "rx_sidelobe_floor_db": cfg.rx.sidelobe_floor,
        "tx_power_dbm": cfg.params.tx_power,
        "path_loss_exponent": cfg.params.path_loss_exponent,
        "noise_dbm": cfg.params.noise,
        "excess_loss_db": cfg.params.excess_loss,
        "reference_distance_m": cfg.params.reference_distance,
        "mode": cfg.mode.value,
        "fading_scale": cfg.fading.scale,
        "fading_shape": cfg.fading.shape,
        "jitter_sigma_pos": cfg.jitter.sigma_pos,
        "jitter_sigma_ang": cfg.jitter.sigma_ang,
        "jitter_theta": cfg.jitter.theta_ou,
        "jitter_dt_s": cfg.jitter.dt,
        "jitter_duration_s": cfg.jitter.duration,
    }
    out = []
    for key, value in values.items():
        out.append(f"{key} = {value if isinstance(value, str) else fmt(value)}")
    return "\n".join(out) + "\n"
