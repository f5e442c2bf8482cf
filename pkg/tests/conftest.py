import functools

import pytest

from tropcoh import catalog


@functools.lru_cache(maxsize=None)
def fixture_cycle(name: str):
    return {
        "trop_p1": catalog.trop_p1,
        "trop_p2": catalog.trop_p2,
        "trop_p1xp1": catalog.trop_p1xp1,
        "tropical_line": catalog.tropical_line,
        "square_cycle": catalog.square_cycle,
        "square_cycle_3": lambda: catalog.square_cycle(3),
        "honeycomb_quartic": catalog.honeycomb_quartic,
        "segment": catalog.segment,
        "point": catalog.point,
    }[name]()


@pytest.fixture
def cycle():
    return fixture_cycle
