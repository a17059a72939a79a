"""Parametric directional antenna patterns.

Both antenna families used by the sounder (a mechanically steered horn and an
electronically switched phased array) are modeled with the same one-parameter
shape: a parabolic-in-dB main lobe with a hard sidelobe floor,

    gain(daz, del) = boresight - min(12 * ((daz/bw_az)^2 + (del/bw_el)^2), floor)

which reproduces the published boresight gain exactly and is down 3 dB at half
a beamwidth offset in a single plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import wrap_az_deg


class ConfigError(ValueError):
    """Invalid configuration value."""


@dataclass(frozen=True)
class Orientation:
    """A pointing or arrival direction as (azimuth, elevation) in degrees."""

    az_deg: float
    el_deg: float

    def __post_init__(self):
        if not -180.0 <= self.az_deg < 180.0:
            raise ConfigError(f"azimuth {self.az_deg} outside [-180, 180)")
        if not -90.0 <= self.el_deg <= 90.0:
            raise ConfigError(f"elevation {self.el_deg} outside [-90, 90]")


@dataclass(frozen=True)
class AntennaPattern:
    """Directional gain pattern plus electronic steering limits.

    ``steer_limit_az_deg`` / ``steer_limit_el_deg`` give the electronic field
    of view relative to the mount; ``None`` means mechanically steered with no
    electronic limit (the horn case).  ``scan_loss_enabled`` applies a cosine
    scan loss to electronic offsets; off by default since the measured arrays
    report none.
    """

    boresight_gain_dbi: float
    beamwidth_az_deg: float
    beamwidth_el_deg: float
    sidelobe_floor_db: float = 25.0
    steer_limit_az_deg: float | None = None
    steer_limit_el_deg: float | None = None
    scan_loss_enabled: bool = False

    def __post_init__(self):
        if self.beamwidth_az_deg <= 0 or self.beamwidth_el_deg <= 0:
            raise ConfigError("beamwidths must be positive")
        if self.sidelobe_floor_db <= 0:
            raise ConfigError("sidelobe_floor_db must be positive")


def gain_db(pattern: AntennaPattern, pointing: Orientation, arrival: Orientation) -> float:
    """Gain (dBi) of ``pattern`` pointed at ``pointing`` toward ``arrival``.

    The azimuth offset is wrapped so that +350 deg and -10 deg are the same
    offset; elevation offsets are plain differences.
    """
    daz = wrap_az_deg(arrival.az_deg - pointing.az_deg)
    del_ = arrival.el_deg - pointing.el_deg
    rolloff = 12.0 * (
        (daz / pattern.beamwidth_az_deg) ** 2 + (del_ / pattern.beamwidth_el_deg) ** 2
    )
    return pattern.boresight_gain_dbi - min(rolloff, pattern.sidelobe_floor_db)


def steerable(pattern: AntennaPattern, electronic_offset: Orientation) -> bool:
    """True when the electronic offset is inside the pattern's field of view."""
    if pattern.steer_limit_az_deg is not None:
        if abs(electronic_offset.az_deg) > pattern.steer_limit_az_deg + 1e-12:
            return False
    if pattern.steer_limit_el_deg is not None:
        if abs(electronic_offset.el_deg) > pattern.steer_limit_el_deg + 1e-12:
            return False
    return True


def scan_loss_db(pattern: AntennaPattern, electronic_offset: Orientation) -> float:
    """Optional cosine scan loss for electronically steered offsets (default off)."""
    if not pattern.scan_loss_enabled:
        return 0.0
    c = math.cos(math.radians(electronic_offset.az_deg)) * math.cos(
        math.radians(electronic_offset.el_deg)
    )
    if c <= 1e-6:
        return pattern.sidelobe_floor_db
    return min(-10.0 * math.log10(c ** 3), pattern.sidelobe_floor_db)


def beamwidth_from_gain_dbi(gain_dbi: float) -> float:
    """Per-plane beamwidth implied by a directivity, split evenly between planes.

    Uses the classic aperture estimate bw_az * bw_el ~= 41253 / G_linear.
    """
    g_lin = 10.0 ** (gain_dbi / 10.0)
    return math.sqrt(41253.0 / g_lin)


def horn_pattern(sidelobe_floor_db: float = 25.0) -> AntennaPattern:
    """The 17 dBi measurement horn: 24 deg azimuth / 26 deg elevation beamwidths."""
    return AntennaPattern(
        boresight_gain_dbi=17.0,
        beamwidth_az_deg=24.0,
        beamwidth_el_deg=26.0,
        sidelobe_floor_db=sidelobe_floor_db,
    )


def phased_array_tx_pattern(
    beamwidth_az_deg: float | None = None,
    beamwidth_el_deg: float | None = None,
    sidelobe_floor_db: float = 25.0,
) -> AntennaPattern:
    """39 dBi transmit array, electronically steerable +-40 deg az / +-20 deg el."""
    bw = beamwidth_from_gain_dbi(39.0)
    return AntennaPattern(
        boresight_gain_dbi=39.0,
        beamwidth_az_deg=beamwidth_az_deg if beamwidth_az_deg is not None else bw,
        beamwidth_el_deg=beamwidth_el_deg if beamwidth_el_deg is not None else bw,
        sidelobe_floor_db=sidelobe_floor_db,
        steer_limit_az_deg=40.0,
        steer_limit_el_deg=20.0,
    )


def phased_array_rx_pattern(
    beamwidth_az_deg: float | None = None,
    beamwidth_el_deg: float | None = None,
    sidelobe_floor_db: float = 25.0,
) -> AntennaPattern:
    """21.5 dBi receive array with the same steering limits as the transmit side."""
    bw = beamwidth_from_gain_dbi(21.5)
    return AntennaPattern(
        boresight_gain_dbi=21.5,
        beamwidth_az_deg=beamwidth_az_deg if beamwidth_az_deg is not None else bw,
        beamwidth_el_deg=beamwidth_el_deg if beamwidth_el_deg is not None else bw,
        sidelobe_floor_db=sidelobe_floor_db,
        steer_limit_az_deg=40.0,
        steer_limit_el_deg=20.0,
    )
