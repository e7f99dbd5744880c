"""Shared fixtures: canonical scenes and the 20-scene survey suite."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from quadcover import (
    Circle,
    GenSpec,
    Point,
    Polygon,
    Scene,
    exact_area,
    gen_scene,
)

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

SUITE_SEEDS = tuple(range(1, 21))


def square_polygon(half_side: float) -> Polygon:
    h = float(half_side)
    return Polygon(np.array([[-h, -h], [h, -h], [h, h], [-h, h]]))


@pytest.fixture(scope="session")
def quarter_scene() -> Scene:
    """Unit circle at the corner of [0,2]^2; intersection is a quarter disk."""
    poly = Polygon(np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]))
    return Scene(poly, (Circle(Point(0.0, 0.0), 1.0),))


@pytest.fixture(scope="session")
def lens_scene() -> Scene:
    """Two unit circles at center distance 1/2 inside a [-10,10]^2 square."""
    return Scene(
        square_polygon(10.0),
        (Circle(Point(0.0, 0.0), 1.0), Circle(Point(0.5, 0.0), 1.0)),
    )


@pytest.fixture(scope="session")
def l_scene() -> Scene:
    """L-shaped hexagon with a disk centered on its reflex corner."""
    poly = Polygon(
        np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]])
    )
    return Scene(poly, (Circle(Point(1.0, 1.0), 0.5),))


@pytest.fixture(scope="session")
def suite_scenes() -> list[Scene]:
    return [
        gen_scene(GenSpec(n_vertices=50, n_circles=30, seed=s)) for s in SUITE_SEEDS
    ]


@pytest.fixture(scope="session")
def suite_exact(suite_scenes) -> list[float]:
    return [exact_area(scene) for scene in suite_scenes]


# One human-readable verdict line per acceptance criterion, emitted at the end
# of the run so they survive pytest's output capture.
CRITERION_LINES: list[str] = []


def record_criterion(line: str) -> None:
    CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter) -> None:
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
