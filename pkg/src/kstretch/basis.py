"""Generalized Gell-Mann operator basis and its (u, v) grouping.

The traceless basis elements are ordered symmetric pairs first
(lexicographic (j, k)), then antisymmetric pairs, then diagonal
operators, all normalized to unit Hilbert-Schmidt norm.  Grouping into
the s x (t-1) grid is lexicographic by flat index, which fixes the
constructed measurements deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class InformationalCompletenessError(ValueError):
    """Raised when s(t-1) != d^2 - 1."""


@dataclass(frozen=True)
class OperatorBasis:
    """Orthonormal traceless Hermitian operators on a d-dimensional space.

    `grouping` maps (u, v) with u in 1..s, v in 1..t-1 to an index into
    `ops`; it is None for an ungrouped basis.
    """

    d: int
    ops: tuple[np.ndarray, ...]
    grouping: Optional[dict[tuple[int, int], int]] = None

    @property
    def s(self) -> int:
        if self.grouping is None:
            raise ValueError("basis is not grouped")
        return max(u for u, _ in self.grouping)

    @property
    def t(self) -> int:
        if self.grouping is None:
            raise ValueError("basis is not grouped")
        return max(v for _, v in self.grouping) + 1

    def op(self, u: int, v: int) -> np.ndarray:
        """Basis element C^(uv) for u in 1..s, v in 1..t-1."""
        if self.grouping is None:
            raise ValueError("basis is not grouped")
        return self.ops[self.grouping[(u, v)]]


def gell_mann_basis(d: int) -> OperatorBasis:
    """The d^2 - 1 generalized Gell-Mann operators at unit HS norm."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    ops: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1 / np.sqrt(2)
            ops.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j / np.sqrt(2)
            m[k, j] = 1j / np.sqrt(2)
            ops.append(m)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        ops.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    return OperatorBasis(d, tuple(ops))


def group_basis(basis: OperatorBasis, s: int, t: int) -> OperatorBasis:
    """Partition the traceless operators into s groups of t-1."""
    d = basis.d
    if s < 1 or t < 2:
        raise InformationalCompletenessError(f"invalid family (s={s}, t={t})")
    if s * (t - 1) != d * d - 1:
        raise InformationalCompletenessError(
            f"s(t-1) = {s * (t - 1)} != d^2 - 1 = {d * d - 1} for d={d}"
        )
    grouping = {
        (u, v): (u - 1) * (t - 1) + (v - 1)
        for u in range(1, s + 1)
        for v in range(1, t)
    }
    return OperatorBasis(d, basis.ops, grouping)
