import pytest

from trifocal import ideal, orbits


@pytest.fixture(scope="session")
def trifocal_nf():
    return orbits.trifocal_normal_form()


@pytest.fixture(scope="session")
def discovery5(trifocal_nf):
    """Generator discovery through degree 5 (fast)."""
    return ideal.discover(5, trifocal_nf, seed=2024)


@pytest.fixture(scope="session")
def discovery6(trifocal_nf):
    """Full generator discovery through degree 6 (the heavy fixture)."""
    return ideal.discover(6, trifocal_nf, seed=2024)
