import numpy as np
import pytest

from slicetrainer.shapes import catalog_mesh, uv_sphere


@pytest.fixture(scope="session")
def sphere128():
    return uv_sphere(1.0, 128)


@pytest.fixture(scope="session")
def hourglass():
    return catalog_mesh("hourglass")


@pytest.fixture(scope="session")
def taper():
    return catalog_mesh("taper")


@pytest.fixture(scope="session")
def y_branch():
    return catalog_mesh("y_branch")


@pytest.fixture(scope="session")
def potato():
    return catalog_mesh("potato_hole")


@pytest.fixture(scope="session")
def capsule():
    return catalog_mesh("tutorial_capsule")


def circle_loop(radius=1.0, n=256, center=(0.0, 0.0, 0.0), plane="xz"):
    """Analytic closed circle in the y=const plane (or a chosen pair)."""
    t = 2 * np.pi * np.arange(n) / n
    c = np.asarray(center, dtype=float)
    pts = np.zeros((n, 3))
    if plane == "xz":
        pts[:, 0] = radius * np.cos(t)
        pts[:, 2] = radius * np.sin(t)
    else:
        pts[:, 0] = radius * np.cos(t)
        pts[:, 1] = radius * np.sin(t)
    return pts + c
