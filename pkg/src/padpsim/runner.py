"""Scenario orchestration: load configs, run the experiments, emit artifacts.

Three experiment kinds are supported, one per bundled measurement campaign:

  * ``hall_comparison``  - the same hall scanned with horns on gimbals and
    with phased arrays on gimbals; emits the 17x17 el-0 path-gain heatmaps,
    nine per-elevation-pair CDFs per antenna, extracted component lists and
    the measurement-time comparison.
  * ``reflector_arc``    - a fixed transmitter and reflector plate with the
    receiver stepped along a circle; per arc point a 341-step fine alignment
    sweep is measured and the best-alignment reflector-window and total powers
    are reported, for the anomalous plate and a plain plate of the same size.
  * ``repeater_hallway`` - a blocked corridor with an amplify-and-forward
    repeater toggled ON/OFF at several receiver positions; reports max powers
    and the ON-OFF gain per position.

Scenario files are versioned JSON documents (see README for the schema).
Everything is deterministic under a fixed master seed: per-step noise seeds
are derived from (master_seed, step_index), and aggregation is ordered by
step index, so results are identical for any worker count.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
from dataclasses import dataclass, replace
from pathlib import Path

from .antenna import AntennaPattern, ConfigError, Orientation
from .analysis import (
    ExtractionConfig,
    MeasurementRecord,
    RecoveredPadp,
    extract_mpcs,
    make_record,
    path_gain_cdf,
    reflector_vs_total,
)
from .geometry import SPEED_OF_LIGHT_M_S, Point3, az_el_from_vector, distance, wrap_az_deg
from .scan import (
    ScanSchedule,
    ScanStep,
    TimingModel,
    alignment_scan,
    azimuth_span,
    horn_schedule,
    phased_array_schedule,
    timing_breakdown,
)
from .scene import (
    Padp,
    ReflectorKind,
    Scene,
    arc_positions,
    enumerate_paths,
    scene_from_dict,
    scene_to_dict,
)
from .sounder import SounderConfig, derive_seed, synthesize_measurement
from . import svgplot

SCHEMA_VERSION = 1
KINDS = ("hall_comparison", "reflector_arc", "repeater_hallway")


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    name: str
    scene: Scene
    sounder: SounderConfig
    extraction: ExtractionConfig
    antennas: dict
    schedule_spec: dict
    master_seed: int
    outputs: tuple[str, ...]


def _pattern_from_dict(doc: dict) -> AntennaPattern:
    return AntennaPattern(
        boresight_gain_dbi=float(doc["boresight_gain_dbi"]),
        beamwidth_az_deg=float(doc["beamwidth_az_deg"]),
        beamwidth_el_deg=float(doc["beamwidth_el_deg"]),
        sidelobe_floor_db=float(doc.get("sidelobe_floor_db", 25.0)),
        steer_limit_az_deg=doc.get("steer_limit_az_deg"),
        steer_limit_el_deg=doc.get("steer_limit_el_deg"),
        scan_loss_enabled=bool(doc.get("scan_loss_enabled", False)),
    )


def _pattern_to_dict(p: AntennaPattern) -> dict:
    return {
        "boresight_gain_dbi": p.boresight_gain_dbi,
        "beamwidth_az_deg": p.beamwidth_az_deg,
        "beamwidth_el_deg": p.beamwidth_el_deg,
        "sidelobe_floor_db": p.sidelobe_floor_db,
        "steer_limit_az_deg": p.steer_limit_az_deg,
        "steer_limit_el_deg": p.steer_limit_el_deg,
        "scan_loss_enabled": p.scan_loss_enabled,
    }


def load_scenario(path) -> ScenarioConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return scenario_from_dict(doc)


def scenario_from_dict(doc: dict) -> ScenarioConfig:
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported scenario schema version {version!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"unknown scenario kind {kind!r}")
    try:
        scene = scene_from_dict(doc["scene"])
        sounder = SounderConfig(**doc.get("sounder", {}))
        extraction = ExtractionConfig(**doc.get("extraction", {}))
        antennas = {k: _pattern_from_dict(v) for k, v in doc["antennas"].items()}
        schedule_spec = dict(doc["schedule"])
        cfg = ScenarioConfig(
            kind=kind,
            name=str(doc.get("name", kind)),
            scene=scene,
            sounder=sounder,
            extraction=extraction,
            antennas=antennas,
            schedule_spec=schedule_spec,
            master_seed=int(doc.get("master_seed", 0)),
            outputs=tuple(doc.get("outputs", ("csv", "json"))),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed scenario document: {exc}") from exc
    _validate(cfg)
    return cfg


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "kind": cfg.kind,
        "name": cfg.name,
        "scene": scene_to_dict(cfg.scene),
        "sounder": {
            "carrier_hz": cfg.sounder.carrier_hz,
            "sample_rate_hz": cfg.sounder.sample_rate_hz,
            "zc_length": cfg.sounder.zc_length,
            "zc_root": cfg.sounder.zc_root,
            "oversample": cfg.sounder.oversample,
            "rrc_rolloff": cfg.sounder.rrc_rolloff,
            "tx_power_dbm": cfg.sounder.tx_power_dbm,
            "noise_floor_dbm_per_tap": cfg.sounder.noise_floor_dbm_per_tap,
            "adc_dynamic_range_db": cfg.sounder.adc_dynamic_range_db,
            "max_path_loss_db": cfg.sounder.max_path_loss_db,
            "num_taps": cfg.sounder.num_taps,
            "averages": cfg.sounder.averages,
        },
        "extraction": {
            "detection_margin_db": cfg.extraction.detection_margin_db,
            "delay_merge_bins": cfg.extraction.delay_merge_bins,
            "angle_merge_deg": cfg.extraction.angle_merge_deg,
            "noise_floor_dbm": cfg.extraction.noise_floor_dbm,
            "angular_gate_db": cfg.extraction.angular_gate_db,
            "estimate_noise_floor": cfg.extraction.estimate_noise_floor,
        },
        "antennas": {k: _pattern_to_dict(v) for k, v in cfg.antennas.items()},
        "schedule": cfg.schedule_spec,
        "master_seed": cfg.master_seed,
        "outputs": list(cfg.outputs),
    }


def _validate(cfg: ScenarioConfig) -> None:
    spec = cfg.schedule_spec
    if cfg.kind == "hall_comparison":
        for key in ("horn", "array"):
            if key not in spec:
                raise ConfigError(f"hall_comparison schedule needs a {key!r} block")
        for role in ("horn_tx", "horn_rx", "array_tx", "array_rx"):
            if role not in cfg.antennas:
                raise ConfigError(f"hall_comparison needs antenna role {role!r}")
    elif cfg.kind == "reflector_arc":
        if cfg.scene.reflector is None:
            raise ConfigError("reflector_arc scenario needs a reflector in the scene")
        for key in ("arc", "alignment"):
            if key not in spec:
                raise ConfigError(f"reflector_arc schedule needs an {key!r} block")
        for role in ("tx", "rx"):
            if role not in cfg.antennas:
                raise ConfigError(f"reflector_arc needs antenna role {role!r}")
    elif cfg.kind == "repeater_hallway":
        if cfg.scene.repeater is None:
            raise ConfigError("repeater_hallway scenario needs a repeater in the scene")
        if "rx_positions" not in spec or "scan" not in spec:
            raise ConfigError("repeater_hallway schedule needs rx_positions and scan")
        for role in ("tx", "rx"):
            if role not in cfg.antennas:
                raise ConfigError(f"repeater_hallway needs antenna role {role!r}")


# --- synthesis engine ---------------------------------------------------------


def synthesize_records(
    padp: Padp,
    schedule: ScanSchedule,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    sounder: SounderConfig,
    master_seed: int,
    jobs: int = 1,
) -> list[MeasurementRecord]:
    """Measure every schedule step; deterministic for any worker count."""

    def one(index_step):
        index, step = index_step
        seed = derive_seed(master_seed, index)
        cir = synthesize_measurement(
            padp, step.tx, step.rx, tx_pattern, rx_pattern, sounder, seed
        )
        return make_record(
            cir,
            index,
            sounder.tx_power_dbm,
            tx_pattern.boresight_gain_dbi,
            rx_pattern.boresight_gain_dbi,
        )

    items = list(enumerate(schedule.steps))
    if jobs <= 1:
        return [one(it) for it in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, items))


def _offset_schedule(
    schedule: ScanSchedule, tx_nominal: Orientation, rx_nominal: Orientation
) -> ScanSchedule:
    """Shift an offset-based schedule onto nominal pointing directions."""
    steps = tuple(
        ScanStep(
            Orientation(wrap_az_deg(tx_nominal.az_deg + s.tx.az_deg), tx_nominal.el_deg + s.tx.el_deg),
            Orientation(wrap_az_deg(rx_nominal.az_deg + s.rx.az_deg), rx_nominal.el_deg + s.rx.el_deg),
            s.dwell_s,
        )
        for s in schedule.steps
    )
    return ScanSchedule(steps=steps, mode=schedule.mode)


def _pointing_between(a, b) -> Orientation:
    az, el = az_el_from_vector(b.as_array() - a.as_array())
    return Orientation(az, el)


# --- hall comparison -----------------------------------------------------------


@dataclass(frozen=True)
class AntennaRunResult:
    label: str
    heatmap: list[tuple[float, float, float]]  # (tx_az, rx_az, path_gain_db)
    cdfs: dict[tuple[float, float], list[tuple[float, float]]]
    mpcs: RecoveredPadp
    scan_time_s: float
    reposition_time_s: float
    n_steps: int


@dataclass(frozen=True)
class HallComparisonReport:
    scenario: str
    master_seed: int
    horn: AntennaRunResult
    array: AntennaRunResult


def _grid_path_gains(
    records: list[MeasurementRecord],
    tx_az_grid: list[float],
    rx_az_grid: list[float],
    el_pair: tuple[float, float],
) -> dict[tuple[float, float], float]:
    """Path gain per absolute (tx_az, rx_az) at one elevation pair.

    The first record (lowest step index) seen per absolute pair wins, which
    matters only for the hybrid schedule where gimbal overlap revisits angles.
    """
    wanted_tx = {round(a, 6) for a in tx_az_grid}
    wanted_rx = {round(a, 6) for a in rx_az_grid}
    out: dict[tuple[float, float], float] = {}
    for rec in records:
        cir = rec.cir
        if (cir.tx_orientation.el_deg, cir.rx_orientation.el_deg) != el_pair:
            continue
        key = (round(cir.tx_orientation.az_deg, 6), round(cir.rx_orientation.az_deg, 6))
        if key[0] not in wanted_tx or key[1] not in wanted_rx:
            continue
        if key not in out:
            out[key] = rec.path_gain_db
    return out


def _hall_one_antenna(
    label: str,
    padp: Padp,
    schedule: ScanSchedule,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    cfg: ScenarioConfig,
    tx_az_grid: list[float],
    rx_az_grid: list[float],
    el_set: list[float],
    timing: TimingModel,
    jobs: int,
) -> AntennaRunResult:
    records = synthesize_records(
        padp, schedule, tx_pattern, rx_pattern, cfg.sounder, cfg.master_seed, jobs
    )
    heat = _grid_path_gains(records, tx_az_grid, rx_az_grid, (0.0, 0.0))
    heatmap = [
        (taz, raz, heat[(round(taz, 6), round(raz, 6))])
        for taz in tx_az_grid
        for raz in rx_az_grid
        if (round(taz, 6), round(raz, 6)) in heat
    ]
    cdfs = {}
    for tel in el_set:
        for rel in el_set:
            gains = _grid_path_gains(records, tx_az_grid, rx_az_grid, (tel, rel))
            if gains:
                cdfs[(tel, rel)] = path_gain_cdf(list(gains.values()))
    mpcs = extract_mpcs(
        records,
        (tx_pattern, rx_pattern),
        cfg.extraction,
        p_tx_dbm=cfg.sounder.tx_power_dbm,
    )
    parts = timing_breakdown(schedule, timing)
    return AntennaRunResult(
        label=label,
        heatmap=heatmap,
        cdfs=cdfs,
        mpcs=mpcs,
        scan_time_s=parts["scan_s"],
        reposition_time_s=parts["reposition_s"],
        n_steps=len(schedule.steps),
    )


def build_hall_schedules(cfg: ScenarioConfig) -> tuple[ScanSchedule, ScanSchedule]:
    spec = cfg.schedule_spec
    h = spec["horn"]
    horn = horn_schedule(h["tx_az"], h["tx_el"], h["rx_az"], h["rx_el"])
    a = spec["array"]
    array = phased_array_schedule(
        a["tx_gimbal_az"],
        a["rx_gimbal_az"],
        a["electronic_az"],
        a["electronic_el"],
        cfg.antennas["array_tx"],
        cfg.antennas["array_rx"],
    )
    return horn, array


def run_hall_comparison(cfg: ScenarioConfig, jobs: int = 1) -> HallComparisonReport:
    if cfg.kind != "hall_comparison":
        raise ConfigError(f"scenario kind {cfg.kind!r} is not hall_comparison")
    horn_sched, array_sched = build_hall_schedules(cfg)

    h = cfg.schedule_spec["horn"]
    horn_tx_az = [float(v) for v in h["tx_az"]]
    horn_rx_az = [float(v) for v in h["rx_az"]]
    el_set = [float(v) for v in h["tx_el"]]

    # The hybrid scan must revisit the horn grid for the comparison to be fair.
    array_tx_union = {round(s.tx.az_deg, 6) for s in array_sched.steps}
    array_rx_union = {round(s.rx.az_deg, 6) for s in array_sched.steps}
    if not {round(v, 6) for v in horn_tx_az} <= array_tx_union:
        raise ConfigError("array schedule does not cover the horn TX azimuth grid")
    if not {round(v, 6) for v in horn_rx_az} <= array_rx_union:
        raise ConfigError("array schedule does not cover the horn RX azimuth grid")

    padp = enumerate_paths(cfg.scene)
    timing = TimingModel()
    horn_result = _hall_one_antenna(
        "horn",
        padp,
        horn_sched,
        cfg.antennas["horn_tx"],
        cfg.antennas["horn_rx"],
        cfg,
        horn_tx_az,
        horn_rx_az,
        el_set,
        timing,
        jobs,
    )
    array_result = _hall_one_antenna(
        "phased_array",
        padp,
        array_sched,
        cfg.antennas["array_tx"],
        cfg.antennas["array_rx"],
        cfg,
        horn_tx_az,
        horn_rx_az,
        el_set,
        timing,
        jobs,
    )
    return HallComparisonReport(
        scenario=cfg.name,
        master_seed=cfg.master_seed,
        horn=horn_result,
        array=array_result,
    )


# --- reflector arcs -------------------------------------------------------------


@dataclass(frozen=True)
class CoverageReport:
    """Per-point coverage rows for arc or repeater scenarios."""

    scenario: str
    kind: str  # "reflector_arc" or "repeater_hallway"
    variant: str  # reflector kind or repeater label
    master_seed: int
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]  # (label, *values)


def arc_point_labels(spec: dict) -> list[str]:
    count = int(spec["count"])
    start_index = int(spec.get("label_start", 1))
    return [f"c{start_index + k}" for k in range(count)]


def _arc_reflector_variant(scene: Scene, kind: ReflectorKind, spec: dict) -> Scene:
    refl = scene.reflector
    if refl.kind is kind:
        return scene
    if kind is ReflectorKind.SPECULAR:
        refl = replace(
            refl,
            kind=kind,
            peak_efficiency_db=float(spec.get("specular_peak_efficiency_db", 0.0)),
        )
    else:
        refl = replace(refl, kind=kind)
    return replace(scene, reflector=refl)


def run_reflector_arc(
    cfg: ScenarioConfig, reflector_kind: ReflectorKind | str, jobs: int = 1
) -> CoverageReport:
    """Alignment-scan every arc point and report best reflector/total power."""
    if cfg.kind != "reflector_arc":
        raise ConfigError(f"scenario kind {cfg.kind!r} is not reflector_arc")
    kind = (
        reflector_kind
        if isinstance(reflector_kind, ReflectorKind)
        else ReflectorKind(reflector_kind)
    )
    spec = cfg.schedule_spec
    arc = spec["arc"]
    align = spec["alignment"]
    window_bins = int(spec.get("reflector_window_bins", 2))

    scene = _arc_reflector_variant(cfg.scene, kind, arc)
    refl_center = scene.reflector.center
    points = arc_positions(
        refl_center,
        float(arc["radius_m"]),
        float(arc["start_angle_deg"]),
        float(arc["step_deg"]),
        int(arc["count"]),
    )
    labels = arc_point_labels(arc)
    offsets = alignment_scan(
        float(align["tx_span_deg"]),
        float(align["tx_step_deg"]),
        float(align["rx_span_deg"]),
        float(align["rx_step_deg"]),
    )
    tx_nominal = _pointing_between(scene.tx_pos, refl_center)

    rows = []
    for label, point in zip(labels, points):
        point_scene = replace(scene, rx_pos=point)
        padp = enumerate_paths(point_scene)
        rx_nominal = _pointing_between(point, refl_center)
        schedule = _offset_schedule(offsets, tx_nominal, rx_nominal)
        records = synthesize_records(
            padp,
            schedule,
            cfg.antennas["tx"],
            cfg.antennas["rx"],
            cfg.sounder,
            cfg.master_seed,
            jobs,
        )
        reflector_delay = (
            distance(scene.tx_pos, refl_center) + distance(refl_center, point)
        ) / SPEED_OF_LIGHT_M_S
        refl_power, total_power = reflector_vs_total(records, reflector_delay, window_bins)
        rows.append((label, refl_power, total_power))

    return CoverageReport(
        scenario=cfg.name,
        kind="reflector_arc",
        variant=kind.value,
        master_seed=cfg.master_seed,
        columns=("point", "reflector_power_dbm", "total_power_dbm"),
        rows=tuple(rows),
    )


# --- repeater hallway ------------------------------------------------------------


def _repeater_states(scene: Scene, enabled: bool) -> Scene:
    return replace(scene, repeater=replace(scene.repeater, enabled=enabled))


def _best_total_power(
    cfg: ScenarioConfig, scene: Scene, schedule: ScanSchedule, jobs: int
) -> float:
    padp = enumerate_paths(scene)
    records = synthesize_records(
        padp,
        schedule,
        cfg.antennas["tx"],
        cfg.antennas["rx"],
        cfg.sounder,
        cfg.master_seed,
        jobs,
    )
    return max(r.total_rx_power_dbm for r in records)


def _hallway_schedule(cfg: ScenarioConfig) -> ScanSchedule:
    scan = cfg.schedule_spec["scan"]
    az = azimuth_span(
        float(scan.get("center_deg", 0.0)),
        float(scan["span_deg"]),
        float(scan["step_deg"]),
    )
    return horn_schedule(az, [0.0], az, [0.0], dwell_s=1.0)


def run_repeater_hallway(cfg: ScenarioConfig, jobs: int = 1) -> CoverageReport:
    """Scan each RX position with the repeater ON and OFF; report the deltas."""
    if cfg.kind != "repeater_hallway":
        raise ConfigError(f"scenario kind {cfg.kind!r} is not repeater_hallway")
    spec = cfg.schedule_spec
    schedule = _hallway_schedule(cfg)
    labels = spec.get("labels") or [f"rx{i}" for i in range(len(spec["rx_positions"]))]

    rows = []
    for label, pos in zip(labels, spec["rx_positions"]):
        point = Point3(float(pos[0]), float(pos[1]), float(pos[2]))
        base = replace(cfg.scene, rx_pos=point)
        on = _best_total_power(cfg, _repeater_states(base, True), schedule, jobs)
        off = _best_total_power(cfg, _repeater_states(base, False), schedule, jobs)
        rows.append((label, on, off, on - off))

    return CoverageReport(
        scenario=cfg.name,
        kind="repeater_hallway",
        variant="repeater",
        master_seed=cfg.master_seed,
        columns=("point", "max_power_on_dbm", "max_power_off_dbm", "gain_db"),
        rows=tuple(rows),
    )


def calibrate_repeater_gain(cfg: ScenarioConfig, jobs: int = 1) -> float:
    """Solve the repeater gain that hits the configured ON-OFF target.

    The target row's ON power is linear in the repeater gain as long as the
    repeater path dominates that sweep, so one probe run is exact; the result
    is validated against the remaining rows by :func:`run_repeater_hallway`.
    """
    spec = cfg.schedule_spec
    cal = spec.get("calibration")
    if not cal:
        raise ConfigError("scenario has no calibration block")
    target_label = cal["reference_label"]
    target_gain = float(cal["target_gain_db"])
    labels = list(spec["labels"])
    if target_label not in labels:
        raise ConfigError(f"calibration reference {target_label!r} not in labels")
    idx = labels.index(target_label)

    report = run_repeater_hallway(cfg, jobs=jobs)
    measured = report.rows[idx][3]
    return cfg.scene.repeater.gain_db + (target_gain - measured)


# --- report serialization and emit ----------------------------------------------


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [f"{v:.6f}" if isinstance(v, float) else v for v in row]
        )
    return buf.getvalue()


def _mpc_rows(padp) -> list[tuple]:
    return [
        (
            m.path_gain_db,
            m.delay_s * 1e9,
            m.aod_az_deg,
            m.aod_el_deg,
            m.aoa_az_deg,
            m.aoa_el_deg,
            m.phase_rad,
            m.tag.value,
        )
        for m in padp
    ]


_MPC_HEADER = [
    "path_gain_db",
    "delay_ns",
    "aod_az_deg",
    "aod_el_deg",
    "aoa_az_deg",
    "aoa_el_deg",
    "phase_rad",
    "tag",
]


def _cdf_tables(result: AntennaRunResult) -> tuple[list[str], list[tuple]]:
    header = ["tx_el", "rx_el", "path_gain_db", "prob"]
    rows = []
    for (tel, rel), cdf in sorted(result.cdfs.items()):
        for value, prob in cdf:
            rows.append((tel, rel, value, prob))
    return header, rows


def hall_report_tables(report: HallComparisonReport) -> dict:
    tables = {}
    for result in (report.horn, report.array):
        tables[f"heatmap_{result.label}"] = (
            ["tx_az", "rx_az", "path_gain_db"],
            [(t, r, g) for t, r, g in result.heatmap],
        )
        tables[f"cdf_{result.label}"] = _cdf_tables(result)
        tables[f"mpcs_{result.label}"] = (_MPC_HEADER, _mpc_rows(result.mpcs))
    tables["timing"] = (
        ["antenna", "steps", "scan_time_s", "scan_time_min", "reposition_time_s"],
        [
            (
                result.label,
                result.n_steps,
                result.scan_time_s,
                result.scan_time_s / 60.0,
                result.reposition_time_s,
            )
            for result in (report.horn, report.array)
        ],
    )
    return tables


def hall_report_json(report: HallComparisonReport) -> dict:
    def result_doc(result: AntennaRunResult) -> dict:
        return {
            "label": result.label,
            "steps": result.n_steps,
            "scan_time_s": result.scan_time_s,
            "reposition_time_s": result.reposition_time_s,
            "n_heatmap_pairs": len(result.heatmap),
            "n_cdfs": len(result.cdfs),
            "n_mpcs": len(result.mpcs),
            "residual_power_db": result.mpcs.residual_power_db,
        }

    return {
        "scenario": report.scenario,
        "kind": "hall_comparison",
        "master_seed": report.master_seed,
        "horn": result_doc(report.horn),
        "phased_array": result_doc(report.array),
    }


def coverage_report_tables(report: CoverageReport) -> dict:
    name = f"coverage_{report.variant}"
    return {name: (list(report.columns), [row for row in report.rows])}


def coverage_report_json(report: CoverageReport) -> dict:
    return {
        "scenario": report.scenario,
        "kind": report.kind,
        "variant": report.variant,
        "master_seed": report.master_seed,
        "columns": list(report.columns),
        "rows": [list(row) for row in report.rows],
    }


def report_tables(report) -> dict:
    if isinstance(report, HallComparisonReport):
        return hall_report_tables(report)
    if isinstance(report, CoverageReport):
        return coverage_report_tables(report)
    raise TypeError(f"unknown report type {type(report)!r}")


def report_json(report) -> dict:
    if isinstance(report, HallComparisonReport):
        return hall_report_json(report)
    if isinstance(report, CoverageReport):
        return coverage_report_json(report)
    raise TypeError(f"unknown report type {type(report)!r}")


def _svg_for_table(name: str, header, rows) -> str | None:
    if name.startswith("heatmap_"):
        tx = sorted({r[0] for r in rows})
        rx = sorted({r[1] for r in rows})
        lookup = {(r[0], r[1]): r[2] for r in rows}
        grid = [[lookup.get((t, x), float("nan")) for x in rx] for t in tx]
        return svgplot.heatmap(
            grid, [f"{v:g}" for v in rx], [f"{v:g}" for v in tx],
            name, "rx azimuth (deg)", "tx azimuth (deg)",
        )
    if name.startswith("cdf_"):
        series: dict[str, list[tuple[float, float]]] = {}
        for tel, rel, value, prob in rows:
            series.setdefault(f"el ({tel:g}, {rel:g})", []).append((value, prob))
        return svgplot.line_chart(series, name, "path gain (dB)", "P(gain <= x)")
    if name.startswith("coverage_"):
        series = {}
        for col_idx, col in enumerate(header[1:], start=1):
            if col.endswith("_dbm"):
                series[col] = [(i, row[col_idx]) for i, row in enumerate(rows)]
        if series:
            return svgplot.line_chart(series, name, "point index", "power (dBm)")
    return None


def emit(report, formats, out_dir) -> list[Path]:
    """Write a report's artifacts; returns the created paths.

    ``formats`` is an iterable drawn from {"csv", "json", "svg-plot-data"}.
    Files are deterministic byte-for-byte for a fixed report.
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError:
        raise
    formats = list(formats)
    for fmt in formats:
        if fmt not in ("csv", "json", "svg-plot-data"):
            raise ConfigError(f"unknown output format {fmt!r}")
    written = []
    tables = report_tables(report)
    if "csv" in formats:
        for name, (header, rows) in sorted(tables.items()):
            path = out_dir / f"{name}.csv"
            path.write_text(_csv_text(header, rows))
            written.append(path)
    if "json" in formats:
        path = out_dir / "report.json"
        path.write_text(json.dumps(report_json(report), indent=2, sort_keys=True) + "\n")
        written.append(path)
    if "svg-plot-data" in formats:
        for name, (header, rows) in sorted(tables.items()):
            svg = _svg_for_table(name, header, rows)
            if svg is not None:
                path = out_dir / f"{name}.svg"
                path.write_text(svg)
                written.append(path)
    return written


def run_scenario(cfg: ScenarioConfig, jobs: int = 1) -> list:
    """Run a scenario end to end; returns the report objects."""
    if cfg.kind == "hall_comparison":
        return [run_hall_comparison(cfg, jobs=jobs)]
    if cfg.kind == "reflector_arc":
        kinds = cfg.schedule_spec.get("kinds", ["anomalous", "specular"])
        return [run_reflector_arc(cfg, k, jobs=jobs) for k in kinds]
    if cfg.kind == "repeater_hallway":
        return [run_repeater_hallway(cfg, jobs=jobs)]
    raise ConfigError(f"unknown scenario kind {cfg.kind!r}")


def scenario_schedules(cfg: ScenarioConfig) -> dict[str, ScanSchedule]:
    """The schedules a scenario visits, for CSV export."""
    if cfg.kind == "hall_comparison":
        horn_sched, array_sched = build_hall_schedules(cfg)
        return {"schedule_horn": horn_sched, "schedule_array": array_sched}
    if cfg.kind == "reflector_arc":
        align = cfg.schedule_spec["alignment"]
        return {
            "schedule_alignment": alignment_scan(
                float(align["tx_span_deg"]),
                float(align["tx_step_deg"]),
                float(align["rx_span_deg"]),
                float(align["rx_step_deg"]),
            )
        }
    if cfg.kind == "repeater_hallway":
        return {"schedule_hallway": _hallway_schedule(cfg)}
    raise ConfigError(f"unknown scenario kind {cfg.kind!r}")
