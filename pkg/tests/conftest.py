"""Shared fixtures: canonical measurements and a seeded generator."""

import numpy as np
import pytest

from kstretch.basis import gell_mann_basis
from kstretch.povm import build_stpovm


@pytest.fixture(scope="session")
def m19():
    """The d=3 (1,9)-POVM at the chi-maximizing endpoint."""
    return build_stpovm(gell_mann_basis(3), 1, 9)


@pytest.fixture(scope="session")
def m19_r0129():
    """The d=3 (1,9)-POVM at r = 0.0129."""
    return build_stpovm(gell_mann_basis(3), 1, 9, 0.0129)


@pytest.fixture(scope="session")
def m14():
    """The d=2 (1,4)-POVM (qubit GSIC) at the endpoint."""
    return build_stpovm(gell_mann_basis(2), 1, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_density(rng, dim):
    """Full-rank Wishart-style random density matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
