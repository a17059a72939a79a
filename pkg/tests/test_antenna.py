import math

import pytest
from hypothesis import given, strategies as st

from padpsim.antenna import (
    AntennaPattern,
    ConfigError,
    Orientation,
    beamwidth_from_gain_dbi,
    gain_db,
    horn_pattern,
    phased_array_rx_pattern,
    phased_array_tx_pattern,
    steerable,
)

HORN = horn_pattern()
BORESIGHT = Orientation(0.0, 0.0)


def test_horn_boresight_gain():
    assert gain_db(HORN, BORESIGHT, BORESIGHT) == pytest.approx(17.0)


def test_half_beamwidth_offset_is_3db_down():
    assert gain_db(HORN, BORESIGHT, Orientation(12.0, 0.0)) == pytest.approx(14.0)
    assert gain_db(HORN, BORESIGHT, Orientation(0.0, 13.0)) == pytest.approx(14.0)


def test_sidelobe_floor_caps_rolloff():
    assert gain_db(HORN, BORESIGHT, Orientation(90.0, 0.0)) == pytest.approx(-8.0)


def test_azimuth_wrap_equivalence():
    # +350 deg and -10 deg are the same offset.
    near = gain_db(HORN, Orientation(-175.0, 0.0), Orientation(175.0, 0.0))
    direct = gain_db(HORN, BORESIGHT, Orientation(-10.0, 0.0))
    assert near == pytest.approx(direct)


@given(
    daz=st.floats(-180.0, 179.0),
    delv=st.floats(-60.0, 60.0),
)
def test_gain_even_in_offsets(daz, delv):
    plus = gain_db(HORN, BORESIGHT, Orientation(daz, delv))
    el_neg = -delv
    az_neg = -daz if -daz < 180.0 else -180.0
    minus = gain_db(HORN, BORESIGHT, Orientation(az_neg, el_neg))
    if az_neg == -180.0 and daz != -180.0:
        return  # wrap endpoint maps -(-180) onto itself, not a mirror pair
    assert plus == pytest.approx(minus, abs=1e-9)


@given(st.lists(st.floats(0.0, 179.0), min_size=2, max_size=8))
def test_gain_monotone_in_azimuth_offset(offsets):
    offsets = sorted(offsets)
    gains = [gain_db(HORN, BORESIGHT, Orientation(o, 0.0)) for o in offsets]
    for earlier, later in zip(gains, gains[1:]):
        assert later <= earlier + 1e-9


def test_steerable_limits():
    tx = phased_array_tx_pattern()
    assert steerable(tx, Orientation(40.0, 20.0))
    assert not steerable(tx, Orientation(60.0, 0.0))
    assert steerable(HORN, Orientation(179.0, -90.0))


def test_phased_array_default_beamwidths_follow_gain():
    tx = phased_array_tx_pattern()
    rx = phased_array_rx_pattern()
    assert tx.beamwidth_az_deg == pytest.approx(beamwidth_from_gain_dbi(39.0))
    assert rx.beamwidth_az_deg == pytest.approx(beamwidth_from_gain_dbi(21.5))
    assert tx.boresight_gain_dbi == 39.0
    assert rx.boresight_gain_dbi == 21.5


def test_invalid_pattern_rejected():
    with pytest.raises(ConfigError):
        AntennaPattern(17.0, 0.0, 26.0)
    with pytest.raises(ConfigError):
        AntennaPattern(17.0, 24.0, 26.0, sidelobe_floor_db=0.0)


def test_invalid_orientation_rejected():
    with pytest.raises(ConfigError):
        Orientation(180.0, 0.0)
    with pytest.raises(ConfigError):
        Orientation(0.0, 91.0)
