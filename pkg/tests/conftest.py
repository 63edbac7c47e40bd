import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hypred import geometry as G


def random_hpoint(rng, radius=0.8):
    """Random point, uniform in disk-model coordinates up to |z| < radius."""
    r = radius * math.sqrt(rng.uniform())
    th = rng.uniform(0.0, 2.0 * math.pi)
    return G.from_poincare(np.array([r * math.cos(th), r * math.sin(th)]))


def random_line(rng, radius=0.6):
    a = random_hpoint(rng, radius)
    b = random_hpoint(rng, radius)
    while G.distance(a, b) < 0.2:
        b = random_hpoint(rng, radius)
    return G.line_through(a, b)


def random_isometry(rng):
    p = random_hpoint(rng, 0.7)
    q = random_hpoint(rng, 0.7)
    rot = G.rotation_about(p, rng.uniform(-math.pi, math.pi))
    trans = G.transvection(p, q) if G.distance(p, q) > 1e-6 else G.IDENTITY
    return trans @ rot


@pytest.fixture
def rng():
    return np.random.default_rng(20240900)
