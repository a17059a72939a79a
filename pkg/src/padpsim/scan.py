"""Scan schedules for horn-on-gimbal and phased-array-on-gimbal measurements.

A schedule is the ordered list of (TX, RX) orientation pairs a measurement
visits.  The horn mode rotates both gimbals through a Cartesian angle grid at
roughly one second per step; the hybrid mode parks the gimbals at a few
positions and switches the array beam electronically in 15 ms steps, which is
where the large measurement-time gap between the two antennas comes from.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field

from .antenna import AntennaPattern, ConfigError, Orientation, steerable
from .geometry import wrap_az_deg


class ScanMode(enum.Enum):
    HORN_GIMBAL = "HornGimbal"
    PHASED_ARRAY_HYBRID = "PhasedArrayHybrid"


@dataclass(frozen=True)
class ScanStep:
    tx: Orientation
    rx: Orientation
    dwell_s: float


@dataclass(frozen=True)
class ScanSchedule:
    steps: tuple[ScanStep, ...]
    mode: ScanMode
    # (tx gimbal, rx gimbal) pairs visited, hybrid mode only.
    gimbal_pairs: tuple[tuple[Orientation, Orientation], ...] = ()

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class TimingModel:
    horn_step_s: float = 1.0
    array_switch_s: float = 0.015
    gimbal_reposition_s: float = 10.0

    def __post_init__(self):
        if min(self.horn_step_s, self.array_switch_s, self.gimbal_reposition_s) <= 0:
            raise ConfigError("timing values must be positive")


def _validated_angles(values, what: str) -> list[float]:
    vals = [float(v) for v in values]
    if not vals:
        raise ConfigError(f"{what} must not be empty")
    if len(set(vals)) != len(vals):
        raise ConfigError(f"duplicate angles in {what}: {vals}")
    return vals


def horn_schedule(
    tx_az_set,
    tx_el_set,
    rx_az_set,
    rx_el_set,
    dwell_s: float = 1.0,
) -> ScanSchedule:
    """Full Cartesian product of the four angle sets, RX azimuth innermost."""
    tx_az = _validated_angles(tx_az_set, "tx_az_set")
    tx_el = _validated_angles(tx_el_set, "tx_el_set")
    rx_az = _validated_angles(rx_az_set, "rx_az_set")
    rx_el = _validated_angles(rx_el_set, "rx_el_set")
    steps = []
    for tel in tx_el:
        for taz in tx_az:
            for rel in rx_el:
                for raz in rx_az:
                    steps.append(
                        ScanStep(Orientation(taz, tel), Orientation(raz, rel), dwell_s)
                    )
    return ScanSchedule(steps=tuple(steps), mode=ScanMode.HORN_GIMBAL)


def phased_array_schedule(
    tx_gimbal_az_set,
    rx_gimbal_az_set,
    electronic_az_set,
    electronic_el_set,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    dwell_s: float = 0.015,
) -> ScanSchedule:
    """Electronic scan product repeated per (TX gimbal, RX gimbal) pair.

    Every electronic offset must fall inside both patterns' steering limits;
    the absolute orientation of a step is gimbal azimuth + electronic offset.
    """
    tx_gimbal = _validated_angles(tx_gimbal_az_set, "tx_gimbal_az_set")
    rx_gimbal = _validated_angles(rx_gimbal_az_set, "rx_gimbal_az_set")
    e_az = _validated_angles(electronic_az_set, "electronic_az_set")
    e_el = _validated_angles(electronic_el_set, "electronic_el_set")

    for pattern, side in ((tx_pattern, "TX"), (rx_pattern, "RX")):
        for az in e_az:
            for el in e_el:
                if not steerable(pattern, Orientation(az, el)):
                    raise ConfigError(
                        f"electronic offset ({az}, {el}) outside the {side} steering limit"
                    )

    steps = []
    gimbal_pairs = []
    for tg in tx_gimbal:
        for rg in rx_gimbal:
            gimbal_pairs.append((Orientation(tg, 0.0), Orientation(rg, 0.0)))
            for tel in e_el:
                for taz in e_az:
                    for rel in e_el:
                        for raz in e_az:
                            steps.append(
                                ScanStep(
                                    Orientation(wrap_az_deg(tg + taz), tel),
                                    Orientation(wrap_az_deg(rg + raz), rel),
                                    dwell_s,
                                )
                            )
    return ScanSchedule(
        steps=tuple(steps),
        mode=ScanMode.PHASED_ARRAY_HYBRID,
        gimbal_pairs=tuple(gimbal_pairs),
    )


def alignment_scan(
    tx_span_deg: float,
    tx_step: float,
    rx_span_deg: float,
    rx_step: float,
    dwell_s: float = 0.1,
) -> ScanSchedule:
    """Fine azimuth offsets around the nominal aligned direction.

    Offsets run -span .. +span inclusive per side (the misalignment-correction
    sweep); the caller shifts them onto the nominal orientations.
    """
    if tx_span_deg < 0 or rx_span_deg < 0:
        raise ConfigError("spans must be >= 0")

    def offsets(span, step):
        if span == 0:
            return [0.0]
        n = int(round(span / step))
        return [round(-span + k * step, 9) for k in range(2 * n + 1)]

    steps = []
    for taz in offsets(tx_span_deg, tx_step):
        for raz in offsets(rx_span_deg, rx_step):
            steps.append(ScanStep(Orientation(taz, 0.0), Orientation(raz, 0.0), dwell_s))
    return ScanSchedule(steps=tuple(steps), mode=ScanMode.HORN_GIMBAL)


def azimuth_span(center_deg: float, span_deg: float, step_deg: float) -> list[float]:
    """Azimuth grid covering ``span_deg`` around a center (340/20 -> 18 angles)."""
    if step_deg <= 0 or span_deg < 0:
        raise ConfigError("span and step must be positive")
    n = int(round(span_deg / step_deg)) + 1
    start = center_deg - span_deg / 2.0
    return [wrap_az_deg(start + k * step_deg) for k in range(n)]


def total_time(schedule: ScanSchedule, timing: TimingModel) -> float:
    """Headline scan time in seconds.

    Horn mode: steps x horn_step_s.  Hybrid mode: steps x array_switch_s; the
    gimbal repositioning overhead is reported separately by
    :func:`timing_breakdown` and excluded here.
    """
    if schedule.mode is ScanMode.HORN_GIMBAL:
        return len(schedule.steps) * timing.horn_step_s
    return len(schedule.steps) * timing.array_switch_s


def timing_breakdown(schedule: ScanSchedule, timing: TimingModel) -> dict:
    scan_s = total_time(schedule, timing)
    reposition_s = (
        len(schedule.gimbal_pairs) * timing.gimbal_reposition_s
        if schedule.mode is ScanMode.PHASED_ARRAY_HYBRID
        else 0.0
    )
    return {
        "scan_s": scan_s,
        "reposition_s": reposition_s,
        "grand_total_s": scan_s + reposition_s,
    }


def schedule_to_csv(schedule: ScanSchedule) -> str:
    """CSV export: step_index, tx_az, tx_el, rx_az, rx_el, dwell_s."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step_index", "tx_az", "tx_el", "rx_az", "rx_el", "dwell_s"])
    for i, s in enumerate(schedule.steps):
        writer.writerow(
            [
                i,
                f"{s.tx.az_deg:.6f}",
                f"{s.tx.el_deg:.6f}",
                f"{s.rx.az_deg:.6f}",
                f"{s.rx.el_deg:.6f}",
                f"{s.dwell_s:.6f}",
            ]
        )
    return buf.getvalue()
