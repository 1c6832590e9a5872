"""Shared fixtures: sentinel bodies with known closed-form metrics plus a
small random corpus. Session-scoped where construction is not free."""

import math

import numpy as np
import pytest

from ballpoly.ballbody import simplex_body
from ballpoly.diskpoly import reuleaux_triangle
from ballpoly.sphere import GeneratorSet, sample_wide_generator

HALF_PI = math.pi / 2


@pytest.fixture(scope="session")
def reuleaux_03():
    return reuleaux_triangle(0.3)


@pytest.fixture(scope="session")
def reuleaux_07():
    return reuleaux_triangle(0.7)


@pytest.fixture(scope="session")
def reuleaux_half():
    return reuleaux_triangle(HALF_PI)


@pytest.fixture(scope="session", params=[0.3, 0.7, HALF_PI])
def reuleaux_any(request):
    """One Reuleaux triangle per stated radius."""
    return reuleaux_triangle(request.param)


@pytest.fixture(scope="session")
def simplex3_half():
    return simplex_body(3, HALF_PI)


@pytest.fixture(scope="session")
def random_gens_2d():
    """Twelve random wide families on S^2 across both radius regimes."""
    out = []
    for seed in range(6):
        out.append(sample_wide_generator(2, 0.7, 3 + seed % 4, seed))
        out.append(sample_wide_generator(2, HALF_PI, 3 + seed % 4, 100 + seed))
    return out


@pytest.fixture(scope="session")
def random_gens_3d():
    return [sample_wide_generator(3, 0.8, 4 + seed % 3, seed) for seed in range(4)]


@pytest.fixture(scope="session")
def quick_reports():
    """One quick verification campaign, shared by every test that needs it."""
    from ballpoly import campaign

    config = campaign.default_config(quick=True)
    return config, campaign.run_campaign(config)


def two_point_gens(r: float, sep: float) -> GeneratorSet:
    """Two generators at distance ``sep`` along a meridian of S^2."""
    a = np.array([math.sin(sep / 2), 0.0, math.cos(sep / 2)])
    b = np.array([-math.sin(sep / 2), 0.0, math.cos(sep / 2)])
    return GeneratorSet(dim=2, radius=r, points=np.stack([a, b]))
