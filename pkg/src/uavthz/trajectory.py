"""Hover-jitter synthesis, flight-log I/O and model prediction along a log."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .channel import ModelMode, evaluate_positions
from .errors import MissingColumn, NonMonotonicTime, ParseError
from .fading import weibull_sample
from .formatting import atomic_write_text, fmt
from .geometry import UavPose

LOG_COLUMNS = ("t_s", "x_m", "y_m", "z_m", "pitch_deg", "roll_deg", "yaw_deg", "power_dbm")
_FIELDS = ("t", "x", "y", "z", "pitch", "roll", "yaw", "power")


@dataclass(frozen=True)
class JitterParams:
    """Ornstein-Uhlenbeck hover jitter.

    Volatilities are per axis: ``sigma_pos`` in m/sqrt(s) for x, y, z and
    ``sigma_ang`` in deg/sqrt(s) for pitch, roll, yaw. The defaults are
    configuration values that keep positional excursions well inside a
    0.42 m alignment footprint (stationary std 0.05 m, 0.5 deg).
    """

    sigma_pos: float = 0.05
    sigma_ang: float = 0.5
    theta_ou: float = 0.5
    dt: float = 0.1
    duration: float = 60.0

    def __post_init__(self):
        for name in ("sigma_pos", "sigma_ang", "theta_ou", "dt", "duration"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and >= 0")
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if self.duration < self.dt:
            raise ValueError("duration must be >= dt")
        if self.theta_ou * self.dt > 1.0:
            raise ValueError("theta_ou * dt must be <= 1 for a stable discretisation")

    @property
    def n_samples(self):
        return int(round(self.duration / self.dt)) + 1


@dataclass(frozen=True)
class FlightSample:
    t: float
    x: float
    y: float
    z: float
    pitch: float
    roll: float
    yaw: float
    measured_power: float | None = None


@dataclass(eq=False)
class FlightLog:
    """Column-oriented flight log; absent measured power is stored as NaN."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    pitch: np.ndarray
    roll: np.ndarray
    yaw: np.ndarray
    power: np.ndarray = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = np.size(self.t)
        if n == 0:
            raise ValueError("flight log must not be empty")
        if self.power is None:
            self.power = np.full(n, np.nan)
        for name in _FIELDS:
            arr = np.array(getattr(self, name), dtype=float).ravel()
            if arr.size != n:
                raise ValueError(f"column {name} has {arr.size} values, expected {n}")
            setattr(self, name, arr)
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("time must be strictly increasing")

    def __len__(self):
        return self.t.size

    def __eq__(self, other):
        if not isinstance(other, FlightLog):
            return NotImplemented
        return len(self) == len(other) and all(
            np.array_equal(getattr(self, f), getattr(other, f), equal_nan=True) for f in _FIELDS
        )

    @property
    def positions(self):
        return np.column_stack([self.x, self.y, self.z])

    @property
    def has_power(self):
        return bool(np.any(np.isfinite(self.power)))

    def pose(self, i):
        return UavPose((self.x[i], self.y[i], self.z[i]), self.pitch[i], self.roll[i], self.yaw[i])

    def samples(self):
        out = []
        for i in range(len(self)):
            p = self.power[i]
            out.append(FlightSample(
                float(self.t[i]), float(self.x[i]), float(self.y[i]), float(self.z[i]),
                float(self.pitch[i]), float(self.roll[i]), float(self.yaw[i]),
                None if np.isnan(p) else float(p),
            ))
        return out

    @classmethod
    def from_samples(cls, samples, metadata=None):
        cols = {name: [] for name in _FIELDS}
        for s in samples:
            for name in _FIELDS[:-1]:
                cols[name].append(getattr(s, name))
            cols["power"].append(np.nan if s.measured_power is None else s.measured_power)
        return cls(**cols, metadata=dict(metadata or {}))

    def with_power(self, power):
        return FlightLog(self.t, self.x, self.y, self.z, self.pitch, self.roll, self.yaw,
                         np.asarray(power, dtype=float), dict(self.metadata))


def simulate_hover(nominal, jitter, rng):
    """Independent OU jitter on x, y, z, pitch, roll, yaw around ``nominal``.

    Euler-Maruyama steps ``x += theta (x_nom - x) dt + sigma sqrt(dt) z``
    starting at the nominal pose; ``jitter.n_samples`` samples. Normal draws
    are consumed as one ``(n-1, 6)`` block so the sequence is fixed by the
    generator state. Yaw is wrapped to [0, 360), pitch/roll clipped to
    [-90, 90], height clipped at 0.
    """
    n = jitter.n_samples
    z = rng.standard_normal((n - 1, 6))
    decay = 1.0 - jitter.theta_ou * jitter.dt
    sqdt = math.sqrt(jitter.dt)
    nominal_values = (*nominal.position, nominal.pitch, nominal.roll, nominal.yaw)
    sigmas = (jitter.sigma_pos,) * 3 + (jitter.sigma_ang,) * 3
    cols = []
    for j in range(6):
        # integrate the deviation so a zero volatility reproduces the nominal exactly
        dev = _backend.ar1_filter(decay, sigmas[j] * sqdt * z[:, j])
        cols.append(nominal_values[j] + np.concatenate([[0.0], dev]))
    x, y, h, pitch, roll, yaw = cols
    return FlightLog(
        t=jitter.dt * np.arange(n),
        x=x, y=y, z=np.maximum(h, 0.0),
        pitch=np.clip(pitch, -90.0, 90.0),
        roll=np.clip(roll, -90.0, 90.0),
        yaw=np.mod(yaw, 360.0),
        metadata={"nominal": nominal, "jitter": jitter},
    )


@dataclass
class Prediction:
    t: np.ndarray
    predicted: np.ndarray
    residual: np.ndarray

    def summary(self):
        r = self.residual[np.isfinite(self.residual)]
        if r.size == 0:
            return {"n": 0, "mean": math.nan, "std": math.nan, "max_abs": math.nan}
        return {"n": int(r.size), "mean": float(r.mean()), "std": float(r.std()),
                "max_abs": float(np.max(np.abs(r)))}

    def to_csv(self):
        lines = ["t_s,predicted_snr_db,residual_db"]
        lines += [f"{fmt(t)},{fmt(p)},{fmt(r)}"
                  for t, p, r in zip(self.t, self.predicted, self.residual)]
        return "\n".join(lines) + "\n"


def predict_over_log(log, station, tx_pattern, rx_pattern, params,
                     mode=ModelMode.CALIBRATED, nominal_rx=None, fading=None, rng=None):
    """Model SNR at every logged pose; residual = measured - predicted (NaN if absent)."""
    predicted = evaluate_positions(station, log.positions, log.pitch, log.yaw,
                                   tx_pattern, rx_pattern, params, mode, nominal_rx)
    if fading is not None:
        if rng is None:
            raise ValueError("a seeded generator is required when fading is given")
        predicted = predicted - weibull_sample(fading, rng, len(log))
    return Prediction(log.t.copy(), predicted, log.power - predicted)


# -- CSV ---------------------------------------------------------------------

def format_flight_log(log):
    buf = [",".join(LOG_COLUMNS)]
    for i in range(len(log)):
        buf.append(",".join(fmt(getattr(log, name)[i]) for name in _FIELDS))
    return "\n".join(buf) + "\n"


def write_flight_log(log, path):
    atomic_write_text(path, format_flight_log(log))


def parse_flight_log(text, source="<string>"):
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty file", 1) from None
    for col in LOG_COLUMNS:
        if col not in header:
            raise MissingColumn(col)
    index = [header.index(col) for col in LOG_COLUMNS]
    cols = {name: [] for name in _FIELDS}
    last_t = None
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", lineno)
        values = []
        for name, col, k in zip(_FIELDS, LOG_COLUMNS, index):
            cell = row[k].strip()
            if name == "power" and cell == "":
                values.append(math.nan)
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"bad number {cell!r} in column {col}", lineno) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value in column {col}", lineno)
            values.append(v)
        t, _, _, z, pitch, roll, yaw, _ = values
        if last_t is not None and not t > last_t:
            raise NonMonotonicTime(lineno)
        if z < 0 or not -90 <= pitch <= 90 or not -90 <= roll <= 90 or not 0 <= yaw < 360:
            raise ParseError("pose outside bounds (z >= 0, |pitch|,|roll| <= 90, "
                             "0 <= yaw < 360)", lineno)
        last_t = t
        for name, v in zip(_FIELDS, values):
            cols[name].append(v)
    if not cols["t"]:
        raise ParseError("no samples", 2)
    return FlightLog(**cols, metadata={"source": source})


def load_flight_log(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_flight_log(fh.read(), source=str(path))
