import functools

import pytest
from hypothesis import HealthCheck, settings

from orelab.corpus import CATALOGUE, generate_instances
from orelab.rings import build_ring

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def catalogue_ring(name):
    ring = build_ring(CATALOGUE[name][0])
    ring.name = name
    return ring


@functools.lru_cache(maxsize=None)
def corpus_instances(seed=0):
    return tuple(generate_instances())


@pytest.fixture(scope="session")
def instances():
    return corpus_instances()


@pytest.fixture(params=list(CATALOGUE))
def finite_ring(request):
    return catalogue_ring(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
