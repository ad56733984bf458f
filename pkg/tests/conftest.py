import pytest

from bsskein.algebra import enumerate_basis
from bsskein.diagram import build_skein_arc_diagram
from bsskein.models import transcribed_fixtures


@pytest.fixture(scope="session")
def z():
    return build_skein_arc_diagram()


@pytest.fixture(scope="session")
def basis5(z):
    return enumerate_basis(z, 5)


@pytest.fixture(scope="session")
def fx():
    return transcribed_fixtures()
