"""The inverse pipeline: PDPs, path gains, MPC extraction, CDFs.

Squaring a CIR gives the power delay profile; summing a PDP gives the total
received power of that sweep, and the path gain estimate de-embeds the link
budget,

    path_gain = P_rx - P_tx - G_tx - G_rx,

with the boresight antenna gains.  :func:`extract_mpcs` implements a
deliberately simple peak-group-assign extractor whose angular accuracy is the
scan grid (documented step by step in its docstring); no super-resolution is
attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .antenna import AntennaPattern, ConfigError, Orientation
from .geometry import wrap_az_deg
from .scene import Mpc, PathTag, TWO_PI
from .sounder import Cir

POWER_FLOOR_DBM = -200.0


def _db_sum(powers_dbm) -> float:
    """dB-domain sum of powers, floored at POWER_FLOOR_DBM."""
    linear = sum(10.0 ** (p / 10.0) for p in powers_dbm if p > POWER_FLOOR_DBM)
    if linear <= 10.0 ** (POWER_FLOOR_DBM / 10.0):
        return POWER_FLOOR_DBM
    return 10.0 * math.log10(linear)


def pdp(cir: Cir) -> np.ndarray:
    """Per-bin power in dBm (1 mW reference), floor-clamped at -200 dBm."""
    p = np.abs(cir.taps) ** 2
    floor = 10.0 ** (POWER_FLOOR_DBM / 10.0)
    return 10.0 * np.log10(np.maximum(p, floor))


def total_power_dbm(cir: Cir) -> float:
    p = float(np.sum(np.abs(cir.taps) ** 2))
    if p <= 10.0 ** (POWER_FLOOR_DBM / 10.0):
        return POWER_FLOOR_DBM
    return 10.0 * math.log10(p)


@dataclass(frozen=True)
class MeasurementRecord:
    """One sweep of the schedule with its derived powers."""

    cir: Cir
    total_rx_power_dbm: float
    path_gain_db: float
    step_index: int


def make_record(
    cir: Cir,
    step_index: int,
    p_tx_dbm: float,
    g_tx_dbi: float,
    g_rx_dbi: float,
) -> MeasurementRecord:
    total = total_power_dbm(cir)
    return MeasurementRecord(
        cir=cir,
        total_rx_power_dbm=total,
        path_gain_db=path_gain(total, p_tx_dbm, g_tx_dbi, g_rx_dbi),
        step_index=step_index,
    )


def path_gain(p_rx_dbm: float, p_tx_dbm: float, g_tx_dbi: float, g_rx_dbi: float) -> float:
    """De-embedded path gain estimate (negative for passive desk-scale scenes)."""
    return p_rx_dbm - p_tx_dbm - g_tx_dbi - g_rx_dbi


@dataclass(frozen=True)
class ExtractionConfig:
    """Knobs of the simplified extractor.

    ``noise_floor_dbm`` is the per-tap detection reference (taken from config,
    not estimated, unless ``estimate_noise_floor``); the detection threshold is
    floor + margin.  ``angular_gate_db`` keeps sidelobe-floor detections of a
    strong component, which share its delay bin but point nowhere near it,
    from spawning separate components: within one delay group only detections
    within this many dB of the group maximum may seed a new angular cluster.
    """

    detection_margin_db: float = 10.0
    delay_merge_bins: int = 1
    angle_merge_deg: float = 24.0
    noise_floor_dbm: float = -100.0
    angular_gate_db: float = 20.0
    estimate_noise_floor: bool = False

    def __post_init__(self):
        if self.detection_margin_db <= 0 or self.angle_merge_deg <= 0:
            raise ConfigError("extraction margins must be positive")
        if self.delay_merge_bins < 0:
            raise ConfigError("delay_merge_bins must be >= 0")
        if self.angular_gate_db <= 0:
            raise ConfigError("angular_gate_db must be positive")


@dataclass(frozen=True)
class RecoveredPadp:
    mpcs: tuple[Mpc, ...]
    residual_power_db: float

    def __len__(self) -> int:
        return len(self.mpcs)

    def __iter__(self):
        return iter(self.mpcs)


def estimate_noise_floor_dbm(records) -> float:
    """Median of the lowest-decile bin powers across all records."""
    all_powers = np.concatenate([pdp(r.cir) for r in records])
    all_powers.sort()
    decile = all_powers[: max(1, all_powers.size // 10)]
    return float(np.median(decile))


@dataclass(frozen=True)
class _Detection:
    record: MeasurementRecord
    bin_index: int
    power_dbm: float


def _local_maxima(powers: np.ndarray, threshold_dbm: float) -> list[int]:
    """Bins above threshold that beat both neighbors (ties keep the first)."""
    out = []
    n = powers.size
    for i in np.flatnonzero(powers > threshold_dbm):
        left = powers[i - 1] if i > 0 else -np.inf
        right = powers[i + 1] if i < n - 1 else -np.inf
        if powers[i] > left and powers[i] >= right:
            out.append(int(i))
    return out


def _orientation_distance(a: tuple, b: tuple) -> float:
    """Max-component distance between two (tx, rx) orientation pairs, degrees."""
    (ta, ra), (tb, rb) = a, b
    return max(
        abs(wrap_az_deg(ta.az_deg - tb.az_deg)),
        abs(ta.el_deg - tb.el_deg),
        abs(wrap_az_deg(ra.az_deg - rb.az_deg)),
        abs(ra.el_deg - rb.el_deg),
    )


def extract_mpcs(
    records,
    patterns: tuple[AntennaPattern, AntennaPattern],
    cfg: ExtractionConfig,
    p_tx_dbm: float = 0.0,
) -> RecoveredPadp:
    """Recover a PADP from a full schedule of measurement records.

    Algorithm:
      1. per record, detect PDP local maxima above noise floor + margin;
      2. group detections whose delay bins differ by <= delay_merge_bins;
      3. split each delay group into angular clusters: walking detections in
         descending power, a detection joins the nearest cluster seed within
         angle_merge_deg (all four angles); otherwise it seeds a new cluster
         if it is within angular_gate_db of the group maximum, else it is
         treated as lobe leakage of the nearest seed;
      4. each cluster becomes one component: angles from its peak-power record
         (ties broken by lowest step index), gain de-embedded with the
         boresight gains and ``p_tx_dbm`` from that record's power summed over
         the +-delay_merge_bins window around the peak bin, phase from the
         peak tap;
      5. residual_power_db is the dB-sum of all undetected bins.

    Detections sort deterministically, so the result does not depend on the
    order the records are supplied in.
    """
    records = list(records)
    if not records:
        raise ValueError("extract_mpcs needs at least one record")
    tx_pattern, rx_pattern = patterns

    floor = (
        estimate_noise_floor_dbm(records)
        if cfg.estimate_noise_floor
        else cfg.noise_floor_dbm
    )
    threshold = floor + cfg.detection_margin_db

    detections: list[_Detection] = []
    powers_by_id: dict[int, np.ndarray] = {}
    residual_linear = 0.0
    for rec in records:
        powers = pdp(rec.cir)
        powers_by_id[id(rec)] = powers
        hits = _local_maxima(powers, threshold)
        mask = np.zeros(powers.size, dtype=bool)
        for b in hits:
            detections.append(_Detection(rec, b, float(powers[b])))
            lo = max(0, b - cfg.delay_merge_bins)
            hi = min(powers.size, b + cfg.delay_merge_bins + 1)
            mask[lo:hi] = True
        residual_linear += float(np.sum(10.0 ** (powers[~mask] / 10.0)))
    residual_power_db = (
        10.0 * math.log10(residual_linear)
        if residual_linear > 10.0 ** (POWER_FLOOR_DBM / 10.0)
        else POWER_FLOOR_DBM
    )

    if not detections:
        return RecoveredPadp(mpcs=(), residual_power_db=residual_power_db)

    # Strongest first; step index then bin break ties bit-stably.
    detections.sort(key=lambda d: (-d.power_dbm, d.record.step_index, d.bin_index))

    # Delay grouping by bin adjacency (transitive within delay_merge_bins).
    groups: list[dict] = []
    for det in detections:
        target = None
        for g in groups:
            if any(abs(det.bin_index - b) <= cfg.delay_merge_bins for b in g["bins"]):
                target = g
                break
        if target is None:
            groups.append({"bins": {det.bin_index}, "members": [det]})
        else:
            target["bins"].add(det.bin_index)
            target["members"].append(det)

    mpcs = []
    for g in groups:
        members = g["members"]  # already strongest-first
        group_max = members[0].power_dbm
        clusters: list[list[_Detection]] = []
        for det in members:
            key = (det.record.cir.tx_orientation, det.record.cir.rx_orientation)
            nearest = None
            nearest_dist = math.inf
            for ci, cluster in enumerate(clusters):
                seed = cluster[0]
                seed_key = (seed.record.cir.tx_orientation, seed.record.cir.rx_orientation)
                d = _orientation_distance(key, seed_key)
                if d < nearest_dist:
                    nearest_dist = d
                    nearest = ci
            if nearest is not None and nearest_dist <= cfg.angle_merge_deg:
                clusters[nearest].append(det)
            elif det.power_dbm >= group_max - cfg.angular_gate_db or nearest is None:
                clusters.append([det])
            else:
                clusters[nearest].append(det)

        for cluster in clusters:
            peak = min(
                cluster, key=lambda d: (-d.power_dbm, d.record.step_index, d.bin_index)
            )
            rec = peak.record
            powers = powers_by_id[id(rec)]
            lo = max(0, peak.bin_index - cfg.delay_merge_bins)
            hi = min(powers.size, peak.bin_index + cfg.delay_merge_bins + 1)
            window_power = _db_sum(powers[lo:hi].tolist())
            # De-embed at boresight: pointing quantization to the grid is the
            # irreducible gain bias of this extractor.
            gain = path_gain(
                window_power,
                p_tx_dbm,
                tx_pattern.boresight_gain_dbi,
                rx_pattern.boresight_gain_dbi,
            )
            tap = rec.cir.taps[peak.bin_index]
            delay = max(peak.bin_index, 0.5) * rec.cir.bin_width_s
            mpcs.append(
                Mpc(
                    path_gain_db=gain,
                    delay_s=delay,
                    aod_az_deg=rec.cir.tx_orientation.az_deg,
                    aod_el_deg=rec.cir.tx_orientation.el_deg,
                    aoa_az_deg=rec.cir.rx_orientation.az_deg,
                    aoa_el_deg=rec.cir.rx_orientation.el_deg,
                    phase_rad=float(np.angle(tap)) % TWO_PI,
                    tag=PathTag.ESTIMATED,
                )
            )

    mpcs.sort(key=lambda m: (m.delay_s, -m.path_gain_db))
    return RecoveredPadp(mpcs=tuple(mpcs), residual_power_db=residual_power_db)


def path_gain_cdf(values) -> list[tuple[float, float]]:
    """Empirical CDF as sorted (value, probability) pairs with 1/n steps."""
    vals = sorted(float(v) for v in values)
    if not vals:
        raise ValueError("path_gain_cdf needs at least one value")
    n = len(vals)
    return [(v, (i + 1) / n) for i, v in enumerate(vals)]


def cdf_value_at(cdf: list[tuple[float, float]], x: float) -> float:
    """P(X <= x) of an empirical CDF."""
    prob = 0.0
    for v, p in cdf:
        if v <= x:
            prob = p
        else:
            break
    return prob


def cdf_sup_distance(
    a: list[tuple[float, float]],
    b: list[tuple[float, float]],
    value_tol_db: float = 0.0,
) -> float:
    """Kolmogorov-Smirnov style sup |Fa - Fb| over the pooled sample points.

    ``value_tol_db`` ignores disagreement explained by a horizontal shift
    smaller than the tolerance.  Empirical CDFs of noisy data with heavily
    tied values are near-vertical at the ties, where the raw sup distance
    measures only the noise ordering; a small value tolerance compares the
    curves instead.
    """
    xs = sorted({v for v, _ in a} | {v for v, _ in b})
    worst = 0.0
    for x in xs:
        lo = x - value_tol_db
        hi = x + value_tol_db
        worst = max(
            worst,
            cdf_value_at(a, lo) - cdf_value_at(b, hi),
            cdf_value_at(b, lo) - cdf_value_at(a, hi),
        )
    return worst


def reflector_vs_total(
    records,
    reflector_delay_s: float,
    window_bins: int,
) -> tuple[float, float]:
    """Best-alignment reflector-window power and total power over the records.

    Reflector power is the maximum over records of the dB-sum of bins within
    +-window_bins of the reflector delay (known from scene geometry); total
    power is the maximum total_rx_power_dbm.  Maximizing over the alignment
    sweep removes pointing misalignment, which is how arc results are reported.
    """
    records = list(records)
    if not records:
        raise ValueError("reflector_vs_total needs at least one record")
    bin_width = records[0].cir.bin_width_s
    center = int(round(reflector_delay_s / bin_width))
    n_bins = records[0].cir.taps.size
    if not 0 <= center < n_bins:
        raise ValueError(
            f"reflector delay {reflector_delay_s * 1e9:.2f} ns falls outside the tap window"
        )
    lo = max(0, center - window_bins)
    hi = min(n_bins, center + window_bins + 1)

    best_window = POWER_FLOOR_DBM
    best_total = POWER_FLOOR_DBM
    for rec in records:
        powers = pdp(rec.cir)
        best_window = max(best_window, _db_sum(powers[lo:hi].tolist()))
        best_total = max(best_total, rec.total_rx_power_dbm)
    return best_window, best_total
