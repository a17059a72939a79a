"""Small 3-D vector / angle toolbox shared by the scene and runner modules.

Conventions used everywhere in this package:
  * lengths in meters, angles in degrees unless a ``_rad`` suffix says otherwise
  * azimuth measured in the xy-plane from +x, wrapped to [-180, 180)
  * elevation measured from the horizontal plane, in [-90, 90]
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT_M_S = 299792458.0


class GeometryError(ValueError):
    """Degenerate or inconsistent geometry (zero-length segment, bad quad, ...)."""


@dataclass(frozen=True)
class Point3:
    """A point in the global frame, meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise GeometryError(f"non-finite coordinate in {self!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @staticmethod
    def from_array(a) -> "Point3":
        return Point3(float(a[0]), float(a[1]), float(a[2]))


def vec(p: Point3) -> np.ndarray:
    return p.as_array()


def norm(v) -> float:
    return float(np.linalg.norm(v))


def normalize(v) -> np.ndarray:
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise GeometryError("cannot normalize a zero-length vector")
    return np.asarray(v, dtype=float) / n


def distance(a: Point3, b: Point3) -> float:
    return norm(a.as_array() - b.as_array())


def wrap_az_deg(az: float) -> float:
    """Wrap an azimuth to [-180, 180)."""
    return float((az + 180.0) % 360.0 - 180.0)


def az_el_from_vector(v) -> tuple[float, float]:
    """Azimuth/elevation (degrees) of a direction vector."""
    v = np.asarray(v, dtype=float)
    r = np.linalg.norm(v)
    if r < 1e-12:
        raise GeometryError("direction of a zero-length vector is undefined")
    az = math.degrees(math.atan2(v[1], v[0]))
    el = math.degrees(math.asin(max(-1.0, min(1.0, v[2] / r))))
    return wrap_az_deg(az), el


def vector_from_az_el(az_deg: float, el_deg: float) -> np.ndarray:
    az = math.radians(az_deg)
    el = math.radians(el_deg)
    return np.array(
        [math.cos(el) * math.cos(az), math.cos(el) * math.sin(az), math.sin(el)]
    )


def angle_between_deg(u, v) -> float:
    c = float(np.dot(normalize(u), normalize(v)))
    return math.degrees(math.acos(max(-1.0, min(1.0, c))))


def mirror_across_plane(p, plane_point, unit_normal) -> np.ndarray:
    """Mirror image of point ``p`` across the plane through ``plane_point``."""
    p = np.asarray(p, dtype=float)
    d = float(np.dot(p - np.asarray(plane_point, dtype=float), unit_normal))
    return p - 2.0 * d * np.asarray(unit_normal, dtype=float)


def segment_plane_intersection(a, b, plane_point, unit_normal):
    """Parameter t in (0, 1) where segment a->b crosses the plane, or None."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    da = float(np.dot(a - plane_point, unit_normal))
    db = float(np.dot(b - plane_point, unit_normal))
    if da * db >= 0.0:
        return None
    return da / (da - db)


def point_in_convex_quad(p, corners, unit_normal, tol: float = 1e-9) -> bool:
    """Membership test for a point known to lie in the quad's plane.

    ``corners`` must be ordered along the perimeter of a convex quad.
    """
    p = np.asarray(p, dtype=float)
    corners = [np.asarray(c, dtype=float) for c in corners]
    sign = 0.0
    for i in range(4):
        edge = corners[(i + 1) % 4] - corners[i]
        cross = np.cross(edge, p - corners[i])
        s = float(np.dot(cross, unit_normal))
        if abs(s) < tol:
            continue
        if sign == 0.0:
            sign = s
        elif s * sign < 0.0:
            return False
    return True


def segment_intersects_quad(a, b, corners, unit_normal, eps: float = 1e-9) -> bool:
    """True when the open segment a->b punches through the quad interior.

    Endpoints on the quad plane do not count, so a reflected ray is never
    blocked by the surface it bounces off.
    """
    t = segment_plane_intersection(a, b, np.asarray(corners[0], dtype=float), unit_normal)
    if t is None or t <= eps or t >= 1.0 - eps:
        return False
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    hit = a + t * (b - a)
    return point_in_convex_quad(hit, corners, unit_normal)
