"""Shared scenes for the test suite.

``acceptance_scenes`` is the fixed pool of 20 clean scenes (5 per shape)
used by the acceptance tests; the canonical circle/square/hand fixtures are
the single scenes most unit tests poke at.
"""

from __future__ import annotations

import math

import pytest

from projfeat import Scene, SceneSpec, generate

CIRCLE_SPEC = SceneSpec("circle", 101, 101, 50, 50, radius=30)
SQUARE_SPEC = SceneSpec("square", 101, 101, 50, 50, half_side=20)
HAND_SPEC = SceneSpec(
    "hand",
    121,
    121,
    60,
    60,
    palm_radius=20,
    fingers=4,
    finger_length=18,
    finger_width=12,
    rotation=-math.pi / 2,
)

ACCEPTANCE_SPECS: tuple[SceneSpec, ...] = (
    SceneSpec("circle", 41, 41, 20, 20, radius=10),
    SceneSpec("circle", 61, 51, 30, 25, radius=14),
    SceneSpec("circle", 61, 61, 30, 30, radius=18),
    SceneSpec("circle", 81, 71, 40, 35, radius=24),
    CIRCLE_SPEC,
    SceneSpec("square", 41, 41, 20, 20, half_side=8),
    SceneSpec("square", 51, 51, 25, 25, half_side=12),
    SceneSpec("square", 71, 61, 35, 30, half_side=16),
    SQUARE_SPEC,
    SceneSpec("square", 111, 101, 55, 50, half_side=24),
    SceneSpec("ellipse", 71, 51, 35, 25, semi_a=15, semi_b=9),
    SceneSpec("ellipse", 81, 61, 40, 30, semi_a=20, semi_b=12, rotation=0.4),
    SceneSpec("ellipse", 91, 81, 45, 40, semi_a=24, semi_b=15, rotation=0.9),
    SceneSpec("ellipse", 71, 71, 35, 35, semi_a=18, semi_b=10, rotation=1.3),
    SceneSpec("ellipse", 101, 81, 50, 40, semi_a=28, semi_b=16, rotation=2.2),
    SceneSpec("hand", 91, 91, 45, 45, palm_radius=16, fingers=4,
              finger_length=14, finger_width=10, rotation=-math.pi / 2),
    HAND_SPEC,
    SceneSpec("hand", 101, 101, 50, 50, palm_radius=18, fingers=3,
              finger_length=16, finger_width=11, rotation=0.3),
    SceneSpec("hand", 111, 111, 55, 55, palm_radius=24, fingers=5,
              finger_length=16, finger_width=10, rotation=2.0),
    SceneSpec("hand", 111, 111, 55, 55, palm_radius=20, fingers=4,
              finger_length=20, finger_width=12, rotation=-2.2),
)


@pytest.fixture(scope="session")
def circle_scene() -> Scene:
    return generate(CIRCLE_SPEC)


@pytest.fixture(scope="session")
def square_scene() -> Scene:
    return generate(SQUARE_SPEC)


@pytest.fixture(scope="session")
def hand_scene() -> Scene:
    return generate(HAND_SPEC)


@pytest.fixture(scope="session")
def acceptance_scenes() -> tuple[Scene, ...]:
    return tuple(generate(spec) for spec in ACCEPTANCE_SPECS)
