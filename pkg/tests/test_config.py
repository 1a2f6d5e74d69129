import pytest

from uavthz.channel import ModelMode
from uavthz.config import DEFAULTS, default_config, format_config, load_config, parse_config
from uavthz.errors import ConfigError


def test_defaults():
    cfg = default_config()
    assert cfg.station.boresight_elevation == 8.0
    assert cfg.tx.hpbw == 5.7 and cfg.rx.boresight_gain == 25.0
    assert (cfg.params.tx_power, cfg.params.path_loss_exponent, cfg.params.noise,
            cfg.params.excess_loss) == (0.0, 1.7, -18.0, 6.0)
    assert (cfg.fading.scale, cfg.fading.shape) == (5.01, 57.40)
    assert cfg.mode is ModelMode.CALIBRATED
    assert cfg.jitter.n_samples == 601


def test_default_uav_sits_on_boresight():
    cfg = default_config()
    along = cfg.station.point_on_boresight(10.0)
    assert cfg.uav.position == pytest.approx(along, abs=1e-8)
    assert cfg.nominal_rx == pytest.approx(cfg.station.nominal_receiver_orientation())


def test_parse_values_and_comments():
    cfg = parse_config("# scenario\n\ntx_hpbw_deg = 3.0   # narrower\nmode=full\n")
    assert cfg.tx.hpbw == 3.0 and cfg.rx.hpbw == 5.7
    assert cfg.mode is ModelMode.FULL


def test_format_round_trip():
    text = format_config()
    assert format_config(parse_config(text)) == text
    assert set(line.split(" = ")[0] for line in text.splitlines()
               if line and not line.startswith("#")) == set(DEFAULTS)


@pytest.mark.parametrize("text, line", [
    ("tx_hpbw_deg = 3\nbogus = 1\n", 2),
    ("\n\ntx_hpbw_deg = 3\ntx_hpbw_deg = 4\n", 4),
    ("noise_dbm = loud\n", 1),
    ("noise_dbm = inf\n", 1),
    ("just words\n", 1),
    ("mode = fast\n", 1),
    ("tx_gain_dbi = 20\n\ntx_hpbw_deg = -1\n", 3),
    ("station_z_m = -2\n", 1),
    ("jitter_dt_s = 1\njitter_duration_s = 0.5\n", 2),
    ("fading_shape = 0\n", 1),
    ("reference_distance_m = 0\n", 1),
])
def test_errors_carry_line(text, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text, "scn.cfg")
    assert info.value.line == line
    assert info.value.path == "scn.cfg"
    assert f"scn.cfg:{line}" in str(info.value)


def test_load_from_file(tmp_path):
    path = tmp_path / "s.cfg"
    path.write_text("path_loss_exponent = 2.0\n")
    assert load_config(path).params.path_loss_exponent == 2.0
    with pytest.raises(OSError):
        load_config(tmp_path / "missing.cfg")
