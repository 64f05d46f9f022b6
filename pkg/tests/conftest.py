"""Shared helpers for the test suite."""

import numpy as np
import pytest


def sample_triangle_interior(rng: np.random.Generator, margin: float = 0.05):
    """Random (l, m) strictly inside the stability triangle.

    l is kept ``margin`` away from +-1 and m the same fraction away from the
    edges m = 0 and m = 2l + 2, so spectral radii stay bounded away from 1
    and trajectories converge within a reasonable budget.
    """
    l = float(rng.uniform(-1.0 + margin, 1.0 - margin))
    top = 2.0 * l + 2.0
    m = float(rng.uniform(margin * top, (1.0 - margin) * top))
    return l, m


def _segment_distance(px, py, ax, ay, bx, by):
    """Distance from points (px, py) to the segment (ax, ay)-(bx, by)."""
    px, py = np.asarray(px, dtype=float), np.asarray(py, dtype=float)
    abx, aby = bx - ax, by - ay
    t = ((px - ax) * abx + (py - ay) * aby) / (abx * abx + aby * aby)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (ax + t * abx), py - (ay + t * aby))


def triangle_boundary_distance(l, m):
    """Distance from (l, m) to the stability-region boundary.

    The boundary is the union of the three edges of the triangle with
    vertices (-1, 0), (1, 0), (1, 4).
    """
    edges = [
        (-1.0, 0.0, 1.0, 0.0),  # m = 0
        (1.0, 0.0, 1.0, 4.0),  # l = 1
        (-1.0, 0.0, 1.0, 4.0),  # 2l - m + 2 = 0
    ]
    return np.min([_segment_distance(l, m, *edge) for edge in edges], axis=0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
