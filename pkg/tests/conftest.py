"""Shared fixtures for the e3c test suite."""
from __future__ import annotations

from collections.abc import Callable

import pytest

from e3c.cube import E3CParams, E3CVertex, vertex_from_flat


def pytest_configure(config: pytest.Config) -> None:
    """Register the marker of long exhaustive sweeps."""
    config.addinivalue_line("markers", "slow: exhaustive sweeps that take more than a few seconds")


@pytest.fixture
def p111() -> E3CParams:
    """E3C(1,1,1)."""
    return E3CParams(1, 1, 1)


@pytest.fixture
def p112() -> E3CParams:
    """E3C(1,1,2)."""
    return E3CParams(1, 1, 2)


@pytest.fixture
def p122() -> E3CParams:
    """E3C(1,2,2)."""
    return E3CParams(1, 2, 2)


@pytest.fixture
def vertex() -> Callable[[E3CParams, str], E3CVertex]:
    """Parse a flat vertex string of a given graph."""

    def _vertex(params: E3CParams, flat: str) -> E3CVertex:
        return vertex_from_flat(params, flat)

    return _vertex
