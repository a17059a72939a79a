"""Measurement scenes and deterministic propagation-path enumeration.

A :class:`Scene` holds the transmitter, receiver, reflecting wall surfaces and
optionally one passive reflector plate and one amplify-and-forward repeater.
:func:`enumerate_paths` turns a scene into the ground-truth power angular-delay
profile: the line-of-sight ray, one image-method single bounce per wall, one
reflector path and one repeater path, each with free-space loss per segment,

    FSPL(d) = 20 log10(4 pi d f_c / c),

geometric departure/arrival angles and a delay-locked phase.  All functions
here are pure; scenes can be enumerated concurrently without shared state.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import (
    SPEED_OF_LIGHT_M_S,
    GeometryError,
    Point3,
    az_el_from_vector,
    angle_between_deg,
    distance,
    mirror_across_plane,
    norm,
    normalize,
    point_in_convex_quad,
    segment_intersects_quad,
    segment_plane_intersection,
    wrap_az_deg,
)

TWO_PI = 2.0 * math.pi

# Delay bin of the 2 GHz sounder; default merge resolution for PADPs.
DEFAULT_DELAY_RES_S = 0.651e-9
# One horn azimuth beamwidth; default angular merge window.
DEFAULT_ANGLE_RES_DEG = 24.0

# Anomalous-reflector response floor relative to its peak.
ANOMALOUS_FLOOR_DB = 40.0


class PathTag(enum.Enum):
    LOS = "LOS"
    WALL_REFLECTION = "WallReflection"
    PASSIVE_REFLECTOR = "PassiveReflector"
    REPEATER = "Repeater"
    # Used by the extractor, which cannot know a recovered component's origin.
    ESTIMATED = "Estimated"


class ReflectorKind(enum.Enum):
    SPECULAR = "specular"
    ANOMALOUS = "anomalous"


@dataclass(frozen=True)
class Mpc:
    """One multipath component of a PADP."""

    path_gain_db: float
    delay_s: float
    aod_az_deg: float
    aod_el_deg: float
    aoa_az_deg: float
    aoa_el_deg: float
    phase_rad: float
    tag: PathTag

    def __post_init__(self):
        if not self.delay_s > 0.0:
            raise GeometryError("MPC delay must be positive")
        for az in (self.aod_az_deg, self.aoa_az_deg):
            if not -180.0 <= az < 180.0:
                raise GeometryError(f"azimuth {az} outside [-180, 180)")
        for el in (self.aod_el_deg, self.aoa_el_deg):
            if not -90.0 <= el <= 90.0:
                raise GeometryError(f"elevation {el} outside [-90, 90]")
        if not 0.0 <= self.phase_rad < TWO_PI:
            raise GeometryError("phase must lie in [0, 2*pi)")


def _angles_close(a: Mpc, b: Mpc, angle_res_deg: float) -> bool:
    return (
        abs(wrap_az_deg(a.aod_az_deg - b.aod_az_deg)) <= angle_res_deg
        and abs(a.aod_el_deg - b.aod_el_deg) <= angle_res_deg
        and abs(wrap_az_deg(a.aoa_az_deg - b.aoa_az_deg)) <= angle_res_deg
        and abs(a.aoa_el_deg - b.aoa_el_deg) <= angle_res_deg
    )


def merge_mpcs(
    mpcs: list[Mpc],
    delay_res_s: float = DEFAULT_DELAY_RES_S,
    angle_res_deg: float = DEFAULT_ANGLE_RES_DEG,
) -> list[Mpc]:
    """Power-sum components that are unresolvable in both delay and angle.

    Two components merge only when they fall within one delay-resolution bin
    AND within ``angle_res_deg`` in all four angles; the merged component keeps
    the attributes of the stronger one.  Output is sorted by delay.
    """
    merged: list[Mpc] = []
    for mpc in sorted(mpcs, key=lambda m: (m.delay_s, m.aod_az_deg, m.aoa_az_deg)):
        target = None
        for i, kept in enumerate(merged):
            if abs(kept.delay_s - mpc.delay_s) <= delay_res_s and _angles_close(
                kept, mpc, angle_res_deg
            ):
                target = i
                break
        if target is None:
            merged.append(mpc)
            continue
        kept = merged[target]
        total_db = 10.0 * math.log10(
            10.0 ** (kept.path_gain_db / 10.0) + 10.0 ** (mpc.path_gain_db / 10.0)
        )
        stronger = kept if kept.path_gain_db >= mpc.path_gain_db else mpc
        merged[target] = replace(stronger, path_gain_db=total_db)
    merged.sort(key=lambda m: (m.delay_s, m.aod_az_deg, m.aoa_az_deg))
    return merged


@dataclass(frozen=True)
class Padp:
    """A sparse power angular-delay profile: MPCs sorted ascending by delay."""

    mpcs: tuple[Mpc, ...]

    def __post_init__(self):
        delays = [m.delay_s for m in self.mpcs]
        if delays != sorted(delays):
            raise GeometryError("PADP components must be sorted by delay")

    def __len__(self) -> int:
        return len(self.mpcs)

    def __iter__(self):
        return iter(self.mpcs)

    @staticmethod
    def from_mpcs(
        mpcs,
        delay_res_s: float = DEFAULT_DELAY_RES_S,
        angle_res_deg: float = DEFAULT_ANGLE_RES_DEG,
    ) -> "Padp":
        return Padp(tuple(merge_mpcs(list(mpcs), delay_res_s, angle_res_deg)))


@dataclass(frozen=True)
class Surface:
    """A planar reflecting/blocking quad (wall, floor, ceiling, blocker)."""

    corners: tuple[Point3, Point3, Point3, Point3]
    reflection_loss_db: float = 10.0
    name: str = ""

    def __post_init__(self):
        if self.reflection_loss_db < 0:
            raise GeometryError("reflection_loss_db must be >= 0")
        c = [p.as_array() for p in self.corners]
        n = np.cross(c[1] - c[0], c[2] - c[0])
        if norm(n) < 1e-12:
            raise GeometryError(f"degenerate surface {self.name!r}")
        n = normalize(n)
        span = max(norm(c[i] - c[0]) for i in range(1, 4))
        if abs(float(np.dot(c[3] - c[0], n))) > 1e-6 * max(span, 1.0):
            raise GeometryError(f"surface {self.name!r} corners are not coplanar")

    @property
    def unit_normal(self) -> np.ndarray:
        c = [p.as_array() for p in self.corners]
        return normalize(np.cross(c[1] - c[0], c[2] - c[0]))

    @property
    def corner_arrays(self) -> list[np.ndarray]:
        return [p.as_array() for p in self.corners]


@dataclass(frozen=True)
class ReflectorSpec:
    """A passive reflector plate, specular (plain plate) or anomalous.

    An anomalous plate redirects rays arriving at ``design_incident_deg`` from
    the surface normal into ``design_reflect_deg`` on the other side of the
    normal, with peak efficiency ``peak_efficiency_db``.
    """

    center: Point3
    normal: tuple[float, float, float]
    width: float
    height: float
    kind: ReflectorKind
    design_incident_deg: float | None = None
    design_reflect_deg: float | None = None
    peak_efficiency_db: float = -1.0
    angular_width_deg: float = 10.0

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if abs(norm(n) - 1.0) > 1e-6:
            raise GeometryError("reflector normal must be a unit vector")
        if self.width <= 0 or self.height <= 0:
            raise GeometryError("reflector dimensions must be positive")
        if self.peak_efficiency_db > 0:
            raise GeometryError("peak_efficiency_db must be <= 0")
        if self.angular_width_deg <= 0:
            raise GeometryError("angular_width_deg must be positive")
        if self.kind is ReflectorKind.ANOMALOUS:
            if self.design_incident_deg is None or self.design_reflect_deg is None:
                raise GeometryError("anomalous reflector requires both design angles")

    @property
    def unit_normal(self) -> np.ndarray:
        return np.asarray(self.normal, dtype=float)

    def plate_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """In-plane width and height unit axes; height follows global z."""
        n = self.unit_normal
        up = np.array([0.0, 0.0, 1.0])
        if abs(float(np.dot(up, n))) > 0.99:
            up = np.array([0.0, 1.0, 0.0])
        u_h = normalize(up - float(np.dot(up, n)) * n)
        u_w = np.cross(u_h, n)
        return u_w, u_h


@dataclass(frozen=True)
class RepeaterSpec:
    """An amplify-and-forward repeater node."""

    position: Point3
    rx_boresight: tuple[float, float, float]
    tx_boresight: tuple[float, float, float]
    gain_db: float
    internal_delay_s: float = 0.0
    enabled: bool = True

    def __post_init__(self):
        for v in (self.rx_boresight, self.tx_boresight):
            if abs(norm(np.asarray(v, dtype=float)) - 1.0) > 1e-6:
                raise GeometryError("repeater boresights must be unit vectors")
        if self.internal_delay_s < 0:
            raise GeometryError("internal_delay_s must be >= 0")
        if self.enabled and not math.isfinite(self.gain_db):
            raise GeometryError("enabled repeater requires a finite gain")


@dataclass(frozen=True)
class Scene:
    tx_pos: Point3
    rx_pos: Point3
    surfaces: tuple[Surface, ...] = ()
    reflector: ReflectorSpec | None = None
    repeater: RepeaterSpec | None = None
    carrier_hz: float = 28e9

    def __post_init__(self):
        if distance(self.tx_pos, self.rx_pos) < 1e-9:
            raise GeometryError("tx_pos and rx_pos must differ")
        if self.carrier_hz <= 0:
            raise GeometryError("carrier_hz must be positive")


def fspl_db(distance_m: float, carrier_hz: float) -> float:
    """Friis free-space path loss, 20 log10(4 pi d f / c)."""
    if distance_m <= 0:
        raise GeometryError("FSPL requires a positive distance")
    return 20.0 * math.log10(4.0 * math.pi * distance_m * carrier_hz / SPEED_OF_LIGHT_M_S)


def _segment_blocked(a, b, surfaces, skip: Surface | None = None) -> bool:
    for s in surfaces:
        if s is skip:
            continue
        if segment_intersects_quad(a, b, s.corner_arrays, s.unit_normal):
            return True
    return False


def specular_bounce_point(surface: Surface, a: Point3, b: Point3):
    """Image-method bounce point on ``surface`` for a path a -> surface -> b.

    Returns the bounce point as an array, or None when no single-bounce
    reflection exists (endpoints on opposite sides, or the specular point
    falls outside the quad).  Walls reflect on both faces.
    """
    n = surface.unit_normal
    c0 = surface.corner_arrays[0]
    pa, pb = a.as_array(), b.as_array()
    da = float(np.dot(pa - c0, n))
    db = float(np.dot(pb - c0, n))
    if da * db <= 0.0 or abs(da) < 1e-9 or abs(db) < 1e-9:
        return None
    image = mirror_across_plane(pa, c0, n)
    t = segment_plane_intersection(image, pb, c0, n)
    if t is None:
        return None
    hit = image + t * (pb - image)
    if not point_in_convex_quad(hit, surface.corner_arrays, n):
        return None
    return hit


def _phase_for_delay(delay_s: float, carrier_hz: float) -> float:
    return float((-TWO_PI * carrier_hz * delay_s) % TWO_PI)


def _mpc_from_geometry(
    gain_db_value: float,
    delay_s: float,
    aod_vec,
    aoa_vec,
    tag: PathTag,
    carrier_hz: float,
    phase_rad: float | None = None,
) -> Mpc:
    aod_az, aod_el = az_el_from_vector(aod_vec)
    aoa_az, aoa_el = az_el_from_vector(aoa_vec)
    phase = _phase_for_delay(delay_s, carrier_hz) if phase_rad is None else phase_rad
    return Mpc(
        path_gain_db=gain_db_value,
        delay_s=delay_s,
        aod_az_deg=aod_az,
        aod_el_deg=aod_el,
        aoa_az_deg=aoa_az,
        aoa_el_deg=aoa_el,
        phase_rad=phase,
        tag=tag,
    )


def reflector_response(
    spec: ReflectorSpec,
    incident_dir,
    observe_dir,
    carrier_hz: float = 28e9,
) -> float:
    """Relative gain (dB <= 0) of the plate for one incident/observe pair.

    ``incident_dir`` is the propagation direction of the incoming ray (it
    points into the plate), ``observe_dir`` points from the plate toward the
    observer; both must be unit vectors on the illuminated side, otherwise the
    response is -inf and no path is emitted.

    Specular plates peak at the mirror direction and roll off parabolically in
    dB with a half-power width per plane of
    ``max(angular_width_deg, 0.886 * (lambda / L) * 180 / pi)`` where L is the
    plate dimension in that deviation plane.  Anomalous plates peak when the
    (incidence, observation) angles hit the design pair, roll off as
    ``12 * (deviation / angular_width_deg)^2`` in each angle, and floor 40 dB
    below the peak.
    """
    n = spec.unit_normal
    d_in = normalize(incident_dir)
    d_out = normalize(observe_dir)
    if float(np.dot(d_in, n)) >= 0.0 or float(np.dot(d_out, n)) <= 0.0:
        return float("-inf")

    u_w, u_h = spec.plate_axes()
    lam = SPEED_OF_LIGHT_M_S / carrier_hz

    if spec.kind is ReflectorKind.SPECULAR:
        mirror = d_in - 2.0 * float(np.dot(d_in, n)) * n
        e_h = u_h - float(np.dot(u_h, mirror)) * mirror
        if norm(e_h) < 1e-9:
            e_h = u_w - float(np.dot(u_w, mirror)) * mirror
        e_h = normalize(e_h)
        e_w = np.cross(e_h, mirror)
        dev_az = math.degrees(math.atan2(float(np.dot(d_out, e_w)), float(np.dot(d_out, mirror))))
        dev_el = math.degrees(math.asin(max(-1.0, min(1.0, float(np.dot(d_out, e_h))))))
        w_az = max(spec.angular_width_deg, math.degrees(0.886 * lam / spec.width))
        w_el = max(spec.angular_width_deg, math.degrees(0.886 * lam / spec.height))
        rolloff = 12.0 * ((dev_az / w_az) ** 2 + (dev_el / w_el) ** 2)
        return spec.peak_efficiency_db - rolloff

    # Anomalous plate: compare against the designed in/out direction pair of
    # whichever plate side the ray actually arrives on.
    ti = math.radians(spec.design_incident_deg)
    tr = math.radians(spec.design_reflect_deg)
    v_in = -d_in
    best = None
    for side in (1.0, -1.0):
        design_in = side * math.sin(ti) * u_w + math.cos(ti) * n
        design_out = -side * math.sin(tr) * u_w + math.cos(tr) * n
        dev_i = angle_between_deg(v_in, design_in)
        dev_o = angle_between_deg(d_out, design_out)
        cost = dev_i ** 2 + dev_o ** 2
        if best is None or cost < best[0]:
            best = (cost, dev_i, dev_o)
    _, dev_i, dev_o = best
    w = spec.angular_width_deg
    rolloff = 12.0 * ((dev_i / w) ** 2 + (dev_o / w) ** 2)
    return spec.peak_efficiency_db - min(rolloff, ANOMALOUS_FLOOR_DB)


def enumerate_paths(
    scene: Scene,
    delay_res_s: float = DEFAULT_DELAY_RES_S,
    angle_res_deg: float = DEFAULT_ANGLE_RES_DEG,
    phase_mode: str = "geometric",
    phase_seed: int | None = None,
) -> Padp:
    """Enumerate the deterministic propagation paths of a scene into a PADP.

    Paths: LOS when no surface blocks it, one image-method single bounce per
    wall surface, one reflector path (free-space loss on both segments plus
    the reflector response) and one repeater path (segment losses plus the
    repeater gain, delay including its internal delay).  Components that are
    unresolvable in both delay and angle are power-summed.

    ``phase_mode`` is either ``"geometric"`` (phase locked to the carrier and
    path delay) or ``"random"`` (per-path uniform phases drawn from
    ``phase_seed``, for fading studies).
    """
    if phase_mode not in ("geometric", "random"):
        raise ValueError(f"unknown phase_mode {phase_mode!r}")
    fc = scene.carrier_hz
    tx = scene.tx_pos.as_array()
    rx = scene.rx_pos.as_array()
    mpcs: list[Mpc] = []

    # Line of sight.
    if not _segment_blocked(tx, rx, scene.surfaces):
        d = norm(rx - tx)
        if d < 1e-9:
            raise GeometryError("zero-length LOS segment")
        mpcs.append(
            _mpc_from_geometry(
                -fspl_db(d, fc), d / SPEED_OF_LIGHT_M_S, rx - tx, tx - rx, PathTag.LOS, fc
            )
        )

    # Single-bounce wall reflections.
    for surface in scene.surfaces:
        hit = specular_bounce_point(surface, scene.tx_pos, scene.rx_pos)
        if hit is None:
            continue
        if _segment_blocked(tx, hit, scene.surfaces, skip=surface):
            continue
        if _segment_blocked(hit, rx, scene.surfaces, skip=surface):
            continue
        d1 = norm(hit - tx)
        d2 = norm(rx - hit)
        if d1 < 1e-9 or d2 < 1e-9:
            raise GeometryError(f"zero-length reflection segment at {surface.name!r}")
        gain = -(fspl_db(d1, fc) + fspl_db(d2, fc) + surface.reflection_loss_db)
        mpcs.append(
            _mpc_from_geometry(
                gain,
                (d1 + d2) / SPEED_OF_LIGHT_M_S,
                hit - tx,
                hit - rx,
                PathTag.WALL_REFLECTION,
                fc,
            )
        )

    # Passive reflector path.
    if scene.reflector is not None:
        refl = scene.reflector
        center = refl.center.as_array()
        d1 = norm(center - tx)
        d2 = norm(rx - center)
        if d1 < 1e-9 or d2 < 1e-9:
            raise GeometryError("zero-length reflector segment")
        if not _segment_blocked(tx, center, scene.surfaces) and not _segment_blocked(
            center, rx, scene.surfaces
        ):
            response = reflector_response(
                refl, (center - tx) / d1, (rx - center) / d2, carrier_hz=fc
            )
            if math.isfinite(response):
                gain = -(fspl_db(d1, fc) + fspl_db(d2, fc)) + response
                mpcs.append(
                    _mpc_from_geometry(
                        gain,
                        (d1 + d2) / SPEED_OF_LIGHT_M_S,
                        center - tx,
                        center - rx,
                        PathTag.PASSIVE_REFLECTOR,
                        fc,
                    )
                )

    # Amplify-and-forward repeater path.
    if scene.repeater is not None and scene.repeater.enabled:
        rep = scene.repeater
        pos = rep.position.as_array()
        d1 = norm(pos - tx)
        d2 = norm(rx - pos)
        if d1 < 1e-9 or d2 < 1e-9:
            raise GeometryError("zero-length repeater segment")
        if not _segment_blocked(tx, pos, scene.surfaces) and not _segment_blocked(
            pos, rx, scene.surfaces
        ):
            gain = -(fspl_db(d1, fc) + fspl_db(d2, fc)) + rep.gain_db
            delay = (d1 + d2) / SPEED_OF_LIGHT_M_S + rep.internal_delay_s
            mpcs.append(
                _mpc_from_geometry(
                    gain, delay, pos - tx, pos - rx, PathTag.REPEATER, fc
                )
            )

    if phase_mode == "random":
        rng = np.random.default_rng(phase_seed)
        mpcs = [replace(m, phase_rad=float(rng.uniform(0.0, TWO_PI))) for m in mpcs]

    return Padp.from_mpcs(mpcs, delay_res_s=delay_res_s, angle_res_deg=angle_res_deg)


def arc_positions(
    center: Point3,
    radius: float,
    start_angle_deg: float,
    step_deg: float,
    count: int,
) -> list[Point3]:
    """Equally spaced points on a horizontal circle around ``center``.

    The polar angle is measured in the global xy-plane from +x; consecutive
    points subtend ``step_deg`` at the center, all at the center's height.
    """
    if radius <= 0:
        raise GeometryError("arc radius must be positive")
    if count < 1:
        raise GeometryError("arc needs at least one point")
    points = []
    for k in range(count):
        ang = math.radians(start_angle_deg + k * step_deg)
        points.append(
            Point3(
                center.x + radius * math.cos(ang),
                center.y + radius * math.sin(ang),
                center.z,
            )
        )
    return points


# --- JSON (de)serialization -------------------------------------------------
#
# Scenes serialize to a plain JSON document: positions as [x, y, z] meter
# triples, angles in degrees, gains in dB.  See README for the full schema.


def scene_to_dict(scene: Scene) -> dict:
    doc: dict = {
        "tx_pos": [scene.tx_pos.x, scene.tx_pos.y, scene.tx_pos.z],
        "rx_pos": [scene.rx_pos.x, scene.rx_pos.y, scene.rx_pos.z],
        "carrier_hz": scene.carrier_hz,
        "surfaces": [
            {
                "name": s.name,
                "corners": [[p.x, p.y, p.z] for p in s.corners],
                "reflection_loss_db": s.reflection_loss_db,
            }
            for s in scene.surfaces
        ],
    }
    if scene.reflector is not None:
        r = scene.reflector
        doc["reflector"] = {
            "center": [r.center.x, r.center.y, r.center.z],
            "normal": list(r.normal),
            "width": r.width,
            "height": r.height,
            "kind": r.kind.value,
            "design_incident_deg": r.design_incident_deg,
            "design_reflect_deg": r.design_reflect_deg,
            "peak_efficiency_db": r.peak_efficiency_db,
            "angular_width_deg": r.angular_width_deg,
        }
    if scene.repeater is not None:
        rep = scene.repeater
        doc["repeater"] = {
            "position": [rep.position.x, rep.position.y, rep.position.z],
            "rx_boresight": list(rep.rx_boresight),
            "tx_boresight": list(rep.tx_boresight),
            "gain_db": rep.gain_db,
            "internal_delay_s": rep.internal_delay_s,
            "enabled": rep.enabled,
        }
    return doc


def _point(doc) -> Point3:
    return Point3(float(doc[0]), float(doc[1]), float(doc[2]))


def scene_from_dict(doc: dict) -> Scene:
    try:
        surfaces = tuple(
            Surface(
                corners=tuple(_point(c) for c in s["corners"]),
                reflection_loss_db=float(s.get("reflection_loss_db", 10.0)),
                name=str(s.get("name", "")),
            )
            for s in doc.get("surfaces", [])
        )
        reflector = None
        if doc.get("reflector") is not None:
            r = doc["reflector"]
            reflector = ReflectorSpec(
                center=_point(r["center"]),
                normal=tuple(float(v) for v in r["normal"]),
                width=float(r["width"]),
                height=float(r["height"]),
                kind=ReflectorKind(r["kind"]),
                design_incident_deg=r.get("design_incident_deg"),
                design_reflect_deg=r.get("design_reflect_deg"),
                peak_efficiency_db=float(r.get("peak_efficiency_db", -1.0)),
                angular_width_deg=float(r.get("angular_width_deg", 10.0)),
            )
        repeater = None
        if doc.get("repeater") is not None:
            p = doc["repeater"]
            repeater = RepeaterSpec(
                position=_point(p["position"]),
                rx_boresight=tuple(float(v) for v in p["rx_boresight"]),
                tx_boresight=tuple(float(v) for v in p["tx_boresight"]),
                gain_db=float(p["gain_db"]),
                internal_delay_s=float(p.get("internal_delay_s", 0.0)),
                enabled=bool(p.get("enabled", True)),
            )
        return Scene(
            tx_pos=_point(doc["tx_pos"]),
            rx_pos=_point(doc["rx_pos"]),
            surfaces=surfaces,
            reflector=reflector,
            repeater=repeater,
            carrier_hz=float(doc.get("carrier_hz", 28e9)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError(f"malformed scene document: {exc}") from exc


def scene_to_json(scene: Scene, indent: int = 2) -> str:
    return json.dumps(scene_to_dict(scene), indent=indent, sort_keys=True)


def scene_from_json(text: str) -> Scene:
    return scene_from_dict(json.loads(text))
