import math
from pathlib import Path

import pytest

from padpsim.geometry import Point3
from padpsim.scene import ReflectorKind, ReflectorSpec, Scene, Surface

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def scenario_dir() -> Path:
    return SCENARIOS


def make_wall_y(y, x0, x1, z0=0.0, z1=3.0, loss=10.0, name=""):
    return Surface(
        corners=(
            Point3(x0, y, z0),
            Point3(x1, y, z0),
            Point3(x1, y, z1),
            Point3(x0, y, z1),
        ),
        reflection_loss_db=loss,
        name=name,
    )


@pytest.fixture
def free_space_scene():
    return Scene(tx_pos=Point3(0.0, 0.0, 1.5), rx_pos=Point3(5.6, 0.0, 1.5))


@pytest.fixture
def echo_reflector():
    return ReflectorSpec(
        center=Point3(0.0, 0.0, 1.5),
        normal=(0.0, 1.0, 0.0),
        width=0.6,
        height=0.6,
        kind=ReflectorKind.ANOMALOUS,
        design_incident_deg=52.0,
        design_reflect_deg=30.0,
        peak_efficiency_db=-1.0,
        angular_width_deg=10.0,
    )


@pytest.fixture
def indoor_arc_positions():
    """TX and design-point receiver of the indoor arc geometry."""
    ti, tr = math.radians(52.0), math.radians(30.0)
    tx = Point3(4.9 * math.sin(ti), 4.9 * math.cos(ti), 1.5)
    c5 = Point3(-3.46 * math.sin(tr), 3.46 * math.cos(tr), 1.5)
    return tx, c5
