"""padpsim: a desk-scale 28 GHz directional channel sounding simulator.

Forward model: build a multipath scene, enumerate its deterministic paths
into a power angular-delay profile, and simulate rotated-directional-antenna
CIR measurements with a Zadoff-Chu correlation sounder.  Inverse model:
power delay profiles, path-gain de-embedding, multipath component extraction
and coverage statistics.
"""

from .geometry import GeometryError, Point3, SPEED_OF_LIGHT_M_S
from .antenna import (
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
from .scene import (
    Mpc,
    Padp,
    PathTag,
    ReflectorKind,
    ReflectorSpec,
    RepeaterSpec,
    Scene,
    Surface,
    arc_positions,
    enumerate_paths,
    fspl_db,
    merge_mpcs,
    reflector_response,
    scene_from_dict,
    scene_from_json,
    scene_to_dict,
    scene_to_json,
)
from .sounder import (
    Cir,
    SounderConfig,
    correlate,
    derive_seed,
    generate_zc,
    synthesize_measurement,
    zadoff_chu,
)
from .scan import (
    ScanMode,
    ScanSchedule,
    ScanStep,
    TimingModel,
    alignment_scan,
    azimuth_span,
    horn_schedule,
    phased_array_schedule,
    schedule_to_csv,
    timing_breakdown,
    total_time,
)
from .analysis import (
    ExtractionConfig,
    MeasurementRecord,
    RecoveredPadp,
    cdf_sup_distance,
    extract_mpcs,
    make_record,
    path_gain,
    path_gain_cdf,
    pdp,
    reflector_vs_total,
    total_power_dbm,
)
from .runner import (
    CoverageReport,
    HallComparisonReport,
    ScenarioConfig,
    calibrate_repeater_gain,
    emit,
    load_scenario,
    run_hall_comparison,
    run_reflector_arc,
    run_repeater_hallway,
    run_scenario,
    synthesize_records,
)

__version__ = "0.1.0"
