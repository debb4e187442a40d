from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from khspan import fixtures
from khspan.random_graphs import random_planar_graph

settings.register_profile("khspan", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("khspan")


@pytest.fixture(scope="session")
def fig8_graph():
    return fixtures.figure8_graph()


def graph_from_seed(seed: int, max_edges: int, mixed: bool = True):
    rng = random.Random(seed)
    return random_planar_graph(rng, rng.randint(1, max_edges), mixed, name=f"seed-{seed}")
