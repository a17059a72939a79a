"""Forward simulation of one directional CIR measurement.

The sounder periodically transmits a length-2048 Zadoff-Chu burst, oversampled
by 2 at 3.072 GS/s and root-raised-cosine shaped, giving 0.651 ns delay bins.
:func:`synthesize_measurement` maps a ground-truth PADP plus the two antenna
pointings directly onto complex delay-bin taps,

    tap power (dB) = path_gain + G_tx(offset) + G_rx(offset) + P_tx,

adds complex Gaussian noise per tap, zeroes taps more than the ADC dynamic
range below the strongest tap of the same sweep, and drops components whose
path loss exceeds the maximum measurable path loss.  :func:`correlate` is the
receive-side matched filter that recovers the same taps from waveforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .antenna import AntennaPattern, ConfigError, Orientation, gain_db
from .scene import Padp

# Windowed-sinc interpolation kernel support, in delay bins on each side.
# Fractional delays are realized band-limited; the Blackman window keeps the
# kernel's bin-sampled tails strictly monotone so one tap never produces a
# second local maximum in the PDP.
KERNEL_HALFWIDTH_BINS = 4

NOISELESS = float("-inf")


@dataclass(frozen=True)
class SounderConfig:
    """Sounder hardware parameters.

    ``tx_power_dbm`` is the effective transmit level including correlation
    processing gain; the published 185 dB maximum measurable path loss together
    with a -100 dBm/tap noise floor implies roughly +60 dBm effective at the
    17 dBi horn gains, so scenario files use that value while unit examples
    keep 0 dBm.  Set ``noise_floor_dbm_per_tap`` to ``-inf`` for noiseless
    synthesis.
    """

    carrier_hz: float = 28e9
    sample_rate_hz: float = 3.072e9
    zc_length: int = 2048
    zc_root: int = 1
    oversample: int = 2
    rrc_rolloff: float = 0.22
    tx_power_dbm: float = 0.0
    noise_floor_dbm_per_tap: float = -100.0
    adc_dynamic_range_db: float = 60.0
    max_path_loss_db: float = 185.0
    num_taps: int = 256
    averages: int = 1

    def __post_init__(self):
        if self.zc_length < 2 or (self.zc_length & (self.zc_length - 1)) != 0:
            raise ConfigError("zc_length must be a power of two")
        if math.gcd(self.zc_root, self.zc_length) != 1:
            raise ConfigError("zc_root must be coprime with zc_length")
        if self.oversample < 1:
            raise ConfigError("oversample must be >= 1")
        if not 0.0 < self.rrc_rolloff <= 1.0:
            raise ConfigError("rrc_rolloff must lie in (0, 1]")
        if self.num_taps < 2 * KERNEL_HALFWIDTH_BINS + 2:
            raise ConfigError("num_taps too small for the interpolation kernel")
        if self.averages < 1:
            raise ConfigError("averages must be >= 1")

    @property
    def bin_width_s(self) -> float:
        """Delay-bin width: oversample / sample_rate (0.651 ns at defaults)."""
        return self.oversample / self.sample_rate_hz


@dataclass(frozen=True)
class Cir:
    """One measured channel impulse response at a TX/RX orientation pair."""

    taps: np.ndarray
    bin_width_s: float
    tx_orientation: Orientation
    rx_orientation: Orientation
    noise_realization_seed: int = 0

    def __post_init__(self):
        if self.taps.ndim != 1:
            raise ValueError("CIR taps must be a 1-D complex vector")


def zadoff_chu(length: int, root: int) -> np.ndarray:
    """The raw constant-amplitude sequence before oversampling and filtering.

    Even lengths use x[n] = exp(-j pi root n^2 / length), odd lengths the
    n(n+1) variant; either way the sequence has unit modulus and ideal
    periodic autocorrelation when gcd(root, length) = 1.
    """
    if math.gcd(root, length) != 1:
        raise ConfigError(f"root {root} is not coprime with length {length}")
    n = np.arange(length)
    cf = length % 2
    return np.exp(-1j * np.pi * root * n * (n + cf) / length)


def rrc_frequency_response(n_samples: int, oversample: int, rolloff: float) -> np.ndarray:
    """Root-raised-cosine magnitude response on a circular FFT grid.

    Frequencies are in units of the symbol rate (sample rate / oversample);
    the response is 1 inside (1 - rolloff)/2, tapers with a cosine quarter
    wave to 0 at (1 + rolloff)/2.
    """
    freqs = np.fft.fftfreq(n_samples) * oversample  # in symbol-rate units
    af = np.abs(freqs)
    f1 = (1.0 - rolloff) / 2.0
    f2 = (1.0 + rolloff) / 2.0
    h = np.zeros(n_samples)
    h[af <= f1] = 1.0
    taper = (af > f1) & (af < f2)
    h[taper] = np.sqrt(0.5 * (1.0 + np.cos(np.pi * (af[taper] - f1) / rolloff)))
    return h


def generate_zc(length: int, root: int, oversample: int, rrc_rolloff: float) -> np.ndarray:
    """Build one period of the oversampled, RRC-shaped sounding burst.

    The burst is constructed circularly (the sounder transmits the sequence
    periodically) so its autocorrelation is exactly one raised-cosine pulse
    per period.
    """
    seq = zadoff_chu(length, root)
    n_samples = length * oversample
    up = np.zeros(n_samples, dtype=complex)
    up[::oversample] = seq
    spectrum = np.fft.fft(up) * rrc_frequency_response(n_samples, oversample, rrc_rolloff)
    return np.fft.ifft(spectrum)


def _interp_kernel(frac_offsets: np.ndarray) -> np.ndarray:
    """Blackman-windowed sinc samples at the given bin offsets."""
    x = np.asarray(frac_offsets, dtype=float)
    w = np.where(
        np.abs(x) <= KERNEL_HALFWIDTH_BINS,
        0.42
        + 0.5 * np.cos(np.pi * x / KERNEL_HALFWIDTH_BINS)
        + 0.08 * np.cos(2.0 * np.pi * x / KERNEL_HALFWIDTH_BINS),
        0.0,
    )
    return np.sinc(x) * w


def derive_seed(master_seed: int, step_index: int) -> int:
    """Stable per-measurement seed so scans parallelize order-independently."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(step_index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def synthesize_measurement(
    padp: Padp,
    tx_orient: Orientation,
    rx_orient: Orientation,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    cfg: SounderConfig,
    seed: int = 0,
) -> Cir:
    """Simulate the CIR measured at one TX/RX orientation pair.

    Each component lands at its delay bin through the band-limited kernel with
    power path_gain + G_tx + G_rx + P_tx; components whose path loss exceeds
    ``max_path_loss_db`` never appear, and taps more than
    ``adc_dynamic_range_db`` below the strongest pre-noise tap of this sweep
    are zeroed (the modeled converter behavior, silent by design).
    """
    bin_width = cfg.bin_width_s
    taps = np.zeros(cfg.num_taps, dtype=complex)
    max_bin = cfg.num_taps - KERNEL_HALFWIDTH_BINS - 1

    for mpc in padp:
        if -mpc.path_gain_db > cfg.max_path_loss_db:
            continue
        x = mpc.delay_s / bin_width
        if x > max_bin:
            raise ConfigError(
                f"MPC delay {mpc.delay_s * 1e9:.2f} ns exceeds the "
                f"{max_bin * bin_width * 1e9:.2f} ns tap window"
            )
        g_tx = gain_db(tx_pattern, tx_orient, Orientation(mpc.aod_az_deg, mpc.aod_el_deg))
        g_rx = gain_db(rx_pattern, rx_orient, Orientation(mpc.aoa_az_deg, mpc.aoa_el_deg))
        level_db = mpc.path_gain_db + g_tx + g_rx + cfg.tx_power_dbm
        amp = 10.0 ** (level_db / 20.0) * np.exp(1j * mpc.phase_rad)
        center = int(round(x))
        frac = x - center
        if abs(frac) < 1e-9:
            taps[center] += amp
        else:
            lo = max(0, center - KERNEL_HALFWIDTH_BINS)
            hi = min(cfg.num_taps, center + KERNEL_HALFWIDTH_BINS + 1)
            k = np.arange(lo, hi)
            taps[lo:hi] += amp * _interp_kernel(k - x)

    powers = np.abs(taps) ** 2
    peak = powers.max()
    if peak > 0.0:
        cutoff = peak * 10.0 ** (-cfg.adc_dynamic_range_db / 10.0)
        taps[powers < cutoff] = 0.0

    if np.isfinite(cfg.noise_floor_dbm_per_tap):
        rng = np.random.default_rng(seed)
        sigma2 = 10.0 ** (cfg.noise_floor_dbm_per_tap / 10.0) / cfg.averages
        scale = math.sqrt(sigma2 / 2.0)
        taps = taps + scale * (
            rng.standard_normal(cfg.num_taps) + 1j * rng.standard_normal(cfg.num_taps)
        )

    return Cir(
        taps=taps,
        bin_width_s=bin_width,
        tx_orientation=tx_orient,
        rx_orientation=rx_orient,
        noise_realization_seed=seed,
    )


def correlate(
    rx_waveform: np.ndarray,
    reference: np.ndarray,
    cfg: SounderConfig,
    tx_orient: Orientation = Orientation(0.0, 0.0),
    rx_orient: Orientation = Orientation(0.0, 0.0),
) -> Cir:
    """Matched-filter correlation of a received burst against the reference.

    Circular correlation normalized by the reference energy, so an identity
    channel yields a single unit tap at bin zero.  The correlator output is
    decimated from sample spacing to the delay-bin (symbol) spacing.
    """
    rx = np.asarray(rx_waveform, dtype=complex)
    ref = np.asarray(reference, dtype=complex)
    if rx.shape != ref.shape:
        raise ValueError(
            f"waveform length {rx.shape} does not match reference {ref.shape}"
        )
    energy = float(np.sum(np.abs(ref) ** 2))
    if energy <= 0.0:
        raise ValueError("reference has no energy")
    corr = np.fft.ifft(np.fft.fft(rx) * np.conj(np.fft.fft(ref))) / energy
    taps = corr[:: cfg.oversample]
    if taps.size > cfg.num_taps:
        taps = taps[: cfg.num_taps]
    return Cir(
        taps=taps,
        bin_width_s=cfg.bin_width_s,
        tx_orientation=tx_orient,
        rx_orientation=rx_orient,
        noise_realization_seed=0,
    )


# --- Cir serialization --------------------------------------------------------


def cir_to_json_dict(cir: Cir) -> dict:
    """Binary-free JSON form: taps as [re, im] pairs."""
    return {
        "bin_width_s": cir.bin_width_s,
        "tx_orientation": [cir.tx_orientation.az_deg, cir.tx_orientation.el_deg],
        "rx_orientation": [cir.rx_orientation.az_deg, cir.rx_orientation.el_deg],
        "noise_realization_seed": cir.noise_realization_seed,
        "taps": [[float(t.real), float(t.imag)] for t in cir.taps],
    }


def cir_from_json_dict(doc: dict) -> Cir:
    taps = np.array([complex(re, im) for re, im in doc["taps"]], dtype=complex)
    return Cir(
        taps=taps,
        bin_width_s=float(doc["bin_width_s"]),
        tx_orientation=Orientation(*doc["tx_orientation"]),
        rx_orientation=Orientation(*doc["rx_orientation"]),
        noise_realization_seed=int(doc.get("noise_realization_seed", 0)),
    )


def cir_to_csv_rows(cir: Cir, power_floor_dbm: float = -200.0) -> list[tuple]:
    """Rows of (bin, power_dBm, phase_rad) for CSV export."""
    rows = []
    for i, tap in enumerate(cir.taps):
        p = abs(tap) ** 2
        power = 10.0 * math.log10(p) if p > 10.0 ** (power_floor_dbm / 10.0) else power_floor_dbm
        rows.append((i, power, float(np.angle(tap)) % (2.0 * math.pi)))
    return rows
