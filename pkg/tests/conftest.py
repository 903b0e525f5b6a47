import pytest

from bandforge.fixtures import fixture_text, load_fixture
from bandforge.gluing import build_equations, newton_solve


@pytest.fixture(scope="session")
def tri_a():
    return load_fixture("A")


@pytest.fixture(scope="session")
def tri_b():
    return load_fixture("B")


@pytest.fixture(scope="session")
def text_a():
    return fixture_text("A")


@pytest.fixture(scope="session")
def text_b():
    return fixture_text("B")


@pytest.fixture(scope="session")
def solved_a(tri_a):
    sys_ = build_equations(tri_a)
    return sys_, newton_solve(sys_, [t.shape_hint for t in tri_a.tets])


@pytest.fixture(scope="session")
def solved_b(tri_b):
    sys_ = build_equations(tri_b)
    return sys_, newton_solve(sys_, [t.shape_hint for t in tri_b.tets])
