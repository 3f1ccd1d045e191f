import pytest

from simcurv.generators import (
    boundary_of_simplex,
    join_of_sphere_boundaries,
    solid_simplex,
    triple_book,
)


@pytest.fixture(scope="session")
def sphere2():
    """Boundary of the regular 3-simplex: a 2-sphere."""
    return boundary_of_simplex(3)


@pytest.fixture(scope="session")
def sphere3():
    """Boundary of the regular 4-simplex: a 3-sphere."""
    return boundary_of_simplex(4)


@pytest.fixture(scope="session")
def join_sphere3():
    """Join of two triangle boundaries: another 3-sphere."""
    return join_of_sphere_boundaries(2, 2)


@pytest.fixture(scope="session")
def book():
    """Three tetrahedra glued along a shared triangle."""
    return triple_book()


@pytest.fixture(scope="session")
def solid_tet():
    return solid_simplex(3)
