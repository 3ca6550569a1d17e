import pytest

from voljump.nefcheck import full_report
from voljump.spectral import eigensystem


@pytest.fixture(scope="session")
def eigen():
    """Certified spectral data at the default 60-digit precision."""
    return eigensystem(60)


@pytest.fixture(scope="session")
def nef(eigen):
    return full_report(eigen)
