"""Shared fixtures: cached scenario instantiation and frame bundles.

Scenario surfaces and their frame bundles are pure and deterministic, so a
session-scoped cache keeps the suite fast without coupling tests.
"""

import pytest

from prodsurf.calculus import FrameFields
from prodsurf.zoo import instantiate


@pytest.fixture(scope="session")
def zoo():
    """zoo(name, resolution=None) -> (surface, grid, tolerances), cached."""
    cache = {}

    def get(name, resolution=None):
        key = (name, resolution)
        if key not in cache:
            overrides = {} if resolution is None else {"resolution": resolution}
            cache[key] = instantiate(name, overrides)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def fields(zoo):
    """fields(name, resolution=None) -> FrameFields, cached."""
    cache = {}

    def get(name, resolution=None):
        key = (name, resolution)
        if key not in cache:
            surface, grid, _ = zoo(name, resolution)
            cache[key] = FrameFields(surface, grid)
        return cache[key]

    return get
