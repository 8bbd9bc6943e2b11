"""Shared fixtures: two reference hypersurfaces in C^4 = R^8.

The hyperplane z1 = 0 is totally geodesic, so every derivative-level
quantity on it is exactly zero; the unit quadric is the curved
counterpart with a nowhere-trivial shape operator.  Seeds match the
shipped scene files so unit tests and the command line exercise the
same geometry.
"""
import numpy as np
import pytest

from cacms_lab import HoloPolynomial, make_structure, project_to_surface

HYPERPLANE_SEEDS = [
    [0.3, -0.2, 0.9, 0.4, -0.5, 0.1, 0.7, -0.3],
    [1.0, 0.5, -0.2, 0.8, 0.1, -0.6, 0.4, 0.2],
    [-0.7, 0.3, 0.5, -0.1, 0.9, 0.2, -0.3, 0.6],
    [0.2, 0.9, -0.4, 0.3, 0.6, -0.2, 0.1, 0.5],
    [-0.1, -0.4, 0.7, 0.6, -0.8, 0.3, 0.2, -0.5],
]

QUADRIC_SEEDS = [
    [1.1, 0.02, 0.03, -0.01, 0.05, 0.04, -0.02, 0.03],
    [0.1, -0.03, 0.95, 0.04, 0.2, -0.05, 0.1, 0.02],
    [-0.2, 0.05, 0.3, -0.02, 0.85, 0.03, 0.3, -0.04],
    [0.5, 0.01, -0.5, 0.02, 0.5, -0.03, 0.55, 0.01],
    [0.4, -0.2, 0.6, 0.3, -0.45, 0.1, 0.5, 0.25],
]


@pytest.fixture(scope="session")
def Q2():
    return make_structure(2)


@pytest.fixture(scope="session")
def hyperplane():
    return HoloPolynomial(4, {(1, 0, 0, 0): 1.0})


@pytest.fixture(scope="session")
def quadric():
    return HoloPolynomial(
        4,
        {
            (2, 0, 0, 0): 1.0,
            (0, 2, 0, 0): 1.0,
            (0, 0, 2, 0): 1.0,
            (0, 0, 0, 2): 1.0,
            (0, 0, 0, 0): -1.0,
        },
    )


@pytest.fixture(scope="session")
def hyperplane_points(Q2, hyperplane):
    return [project_to_surface(Q2, hyperplane, np.array(s)) for s in HYPERPLANE_SEEDS]


@pytest.fixture(scope="session")
def quadric_points(Q2, quadric):
    return [project_to_surface(Q2, quadric, np.array(s)) for s in QUADRIC_SEEDS]
