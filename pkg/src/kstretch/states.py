"""Benchmark state families and their exact reduced density matrices.

Each family describes a pure state |psi> to be mixed with white noise,
rho(p) = p |psi><psi| + (1-p)/D.  The 1- and 2-party reduced states are
known in closed form for the built-in families, which is the only data
the large-N fast path needs; they are certified against the
partial-trace oracle at dense-feasible sizes in the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import numpy as np

from .infoquant import DENSE_DIM_LIMIT, CollectiveMoments, DenseSizeError, \
    collective_moments_from_rdms, collective_operator
from .linalg import DensityMatrix, partial_trace


@dataclass(frozen=True)
class IsotropicFamily:
    """A pure state plus the reduced-state data for isotropic mixtures."""

    kind: str  # "ghz" | "antisym" | "custom"
    d: int
    n: int
    rdm1: DensityMatrix
    rdm2: Optional[DensityMatrix]
    amplitudes: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def total_dim(self) -> int:
        return self.d**self.n

    @property
    def dense_feasible(self) -> bool:
        return self.total_dim <= DENSE_DIM_LIMIT


def ghz_qudit(d: int, n: int) -> IsotropicFamily:
    """(|0...0> + ... + |d-1...d-1>) / sqrt(d) on n sites."""
    if d < 2 or n < 2:
        raise ValueError(f"need d >= 2 and n >= 2, got d={d}, n={n}")
    rdm1 = DensityMatrix((d,), np.eye(d) / d)
    rdm2_entries = np.zeros((d * d, d * d), dtype=complex)
    if n == 2:
        # the state itself: coherences survive
        for i in range(d):
            for j in range(d):
                rdm2_entries[i * d + i, j * d + j] = 1 / d
    else:
        # tracing >= 1 site kills the cross-branch coherences
        for i in range(d):
            rdm2_entries[i * d + i, i * d + i] = 1 / d
    rdm2 = DensityMatrix((d, d), rdm2_entries)
    return IsotropicFamily("ghz", d, n, rdm1, rdm2)


def antisymmetric_state(n: int) -> IsotropicFamily:
    """The totally antisymmetric n-qudit state with local dimension d = n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    d = n
    rdm1 = DensityMatrix((d,), np.eye(d) / d)
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    p_antisym = (np.eye(d * d) - swap) / 2
    rdm2 = DensityMatrix((d, d), 2 / (d * (d - 1)) * p_antisym)
    return IsotropicFamily("antisym", d, n, rdm1, rdm2)


def custom_state(site_dims: list[int], amplitudes: np.ndarray) -> IsotropicFamily:
    """A user-supplied pure state; reduced states come from partial traces,
    so the family is restricted to dense-feasible uniform-dimension systems."""
    dims = tuple(int(x) for x in site_dims)
    if len(set(dims)) != 1:
        raise ValueError(f"site dimensions must be uniform, got {dims}")
    d, n = dims[0], len(dims)
    vec = np.asarray(amplitudes, dtype=complex).ravel()
    if vec.size != int(np.prod(dims)):
        raise ValueError(
            f"{vec.size} amplitudes for total dimension {int(np.prod(dims))}"
        )
    if vec.size > DENSE_DIM_LIMIT:
        raise DenseSizeError("custom states are limited to dense-feasible sizes")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector norm is {norm}, expected 1")
    projector = DensityMatrix(dims, np.outer(vec, vec.conj()))
    rdm1 = partial_trace(projector, {0})
    rdm2 = partial_trace(projector, {0, 1}) if n > 1 else None
    return IsotropicFamily("custom", d, n, rdm1, rdm2, amplitudes=vec)


def load_state_file(path) -> IsotropicFamily:
    """Load a pure-state vector from the JSON file format
    {"site_dims": [...], "amplitudes": [[re, im], ...]} (row-major)."""
    with open(path) as fh:
        doc = json.load(fh)
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    return custom_state(doc["site_dims"], amps)


def state_vector(family: IsotropicFamily) -> np.ndarray:
    """Dense state vector; requires a dense-feasible size."""
    d, n = family.d, family.n
    if not family.dense_feasible:
        raise DenseSizeError(f"dense dimension {family.total_dim} exceeds limit")
    if family.kind == "custom":
        return family.amplitudes.copy()
    if family.kind == "ghz":
        vec = np.zeros(d**n, dtype=complex)
        for i in range(d):
            idx = sum(i * d**site for site in range(n))
            vec[idx] = 1 / np.sqrt(d)
        return vec
    # antisymmetric: sum over permutations with parity signs
    vec = np.zeros(d**n, dtype=complex)
    for perm in permutations(range(n)):
        sign = _parity(perm)
        idx = 0
        for level in perm:
            idx = idx * d + level
        vec[idx] = sign / np.sqrt(math.factorial(n))
    return vec


def _parity(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def materialize_dense(family: IsotropicFamily, p: float) -> DensityMatrix:
    """Dense rho(p) = p |psi><psi| + (1-p)/D."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    vec = state_vector(family)
    dim_total = family.total_dim
    entries = p * np.outer(vec, vec.conj()) + (1 - p) / dim_total * np.eye(dim_total)
    return DensityMatrix((family.d,) * family.n, entries)


def effect_moments(family: IsotropicFamily, a: np.ndarray) -> CollectiveMoments:
    """Collective moments of one single-site effect for this family's |psi>."""
    if family.kind in ("ghz", "antisym"):
        return collective_moments_from_rdms(family.rdm1, family.rdm2, a, family.n)
    vec = state_vector(family)
    big = collective_operator(a, family.n)
    mean = float(np.real(vec.conj() @ big @ vec))
    second = float(np.real(vec.conj() @ big @ big @ vec))
    return CollectiveMoments(mean, second,
                             float(np.trace(big).real),
                             float(np.trace(big @ big).real))
