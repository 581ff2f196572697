import pytest

from nk_triad.tables import cached_algebra, cached_root_system


@pytest.fixture(scope="session")
def algebra():
    """Session-cached compact-form factory."""
    return cached_algebra


@pytest.fixture(scope="session")
def rootsys():
    return cached_root_system
