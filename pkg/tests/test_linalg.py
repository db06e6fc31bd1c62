"""Hermitian algebra, density-matrix validation, partial trace, embedding."""

import numpy as np
import pytest

from conftest import random_density, random_hermitian
from kstretch.linalg import (
    DensityMatrix,
    check_hermitian,
    embed_site,
    hermitian_eig,
    hs_inner,
    kron,
    partial_trace,
)


def test_check_hermitian_accepts_and_rejects():
    check_hermitian(np.array([[1.0, 2 + 1j], [2 - 1j, 0.5]]))
    with pytest.raises(ValueError):
        check_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        check_hermitian(np.zeros((2, 3)))


def test_hs_inner_matches_trace(rng):
    a = random_hermitian(rng, 4)
    b = random_hermitian(rng, 4)
    assert hs_inner(a, b) == pytest.approx(np.trace(a @ b).real, abs=1e-12)


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix((2,), np.eye(2))
    with pytest.raises(ValueError, match="positive"):
        DensityMatrix((2,), np.diag([1.5, -0.5]))
    with pytest.raises(ValueError, match="shape"):
        DensityMatrix((2, 2), np.eye(2) / 2)
    rho = DensityMatrix((2, 3), np.eye(6) / 6)
    assert rho.dim == 6 and rho.n_sites == 2
    assert rho.purity() == pytest.approx(1 / 6)


def test_hermitian_eig_ascending(rng):
    h = random_hermitian(rng, 5)
    evals, evecs = hermitian_eig(h)
    assert np.all(np.diff(evals) >= 0)
    assert np.max(np.abs(evecs @ np.diag(evals) @ evecs.conj().T - h)) < 1e-12


def test_partial_trace_product_state(rng):
    a = random_density(rng, 2)
    b = random_density(rng, 3)
    rho = DensityMatrix((2, 3), kron(a, b))
    assert np.max(np.abs(partial_trace(rho, {0}).entries - a)) < 1e-12
    assert np.max(np.abs(partial_trace(rho, {1}).entries - b)) < 1e-12


def test_partial_trace_three_sites(rng):
    a = random_density(rng, 2)
    b = random_density(rng, 2)
    c = random_density(rng, 3)
    rho = DensityMatrix((2, 2, 3), kron(kron(a, b), c))
    r02 = partial_trace(rho, {0, 2})
    assert r02.site_dims == (2, 3)
    assert np.max(np.abs(r02.entries - kron(a, c))) < 1e-12
    with pytest.raises(ValueError):
        partial_trace(rho, set())
    with pytest.raises(ValueError):
        partial_trace(rho, {3})


def test_embed_site_matches_kron(rng):
    x = random_hermitian(rng, 3)
    dims = [2, 3, 2]
    expected = kron(kron(np.eye(2), x), np.eye(2))
    assert np.max(np.abs(embed_site(x, 1, dims) - expected)) < 1e-12
    with pytest.raises(ValueError):
        embed_site(x, 0, dims)
