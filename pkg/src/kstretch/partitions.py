"""k-stretchable partition combinatorics and the piecewise detection bounds.

Only block-size multisets matter here: both the stretchability condition
max(parts) - len(parts) <= k and the quantity sum(parts^2) depend on
sizes alone.  Enumeration is the ground truth for the maximizing value
M; the piecewise closed forms are a validated fast path (they overshoot
for some small N, see `bracket_audit`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

MSource = Literal["enumeration", "closed_form"]


def stretchability(parts: tuple[int, ...]) -> int:
    """max block size minus block count."""
    return max(parts) - len(parts)


def _int_partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _int_partitions_desc(n - first, first):
            yield (first,) + rest


def enumerate_kstretch(n: int, k: int) -> list[tuple[int, ...]]:
    """All block-size partitions of n with stretchability <= k,
    descending-lexicographic order.  Empty (with a warning) if k < 1-n."""
    if k < 1 - n:
        warnings.warn(f"no partition of {n} is {k}-stretchable", stacklevel=2)
        return []
    k_eff = min(k, n - 1)
    return [
        parts
        for parts in _int_partitions_desc(n, n)
        if stretchability(parts) <= k_eff
    ]


def max_sum_squares(n: int, k: int) -> int:
    """Exact max of sum(parts^2) over k-stretchable partitions of n."""
    admissible = enumerate_kstretch(n, k)
    if not admissible:
        raise ValueError(f"no {k}-stretchable partition of {n} exists")
    return max(sum(p * p for p in parts) for parts in admissible)


def closed_form_m(n: int, k: int) -> int | None:
    """Piecewise bracket value for M; None when n+k = 1 (that case is a
    standalone bound formula, not a bracket)."""
    if k + n < 1:
        raise ValueError(f"k + N = {k + n} < 1 has no admissible partition")
    w = n + k
    if w == 1:
        return None
    if w % 2 == 1:
        return (w * w - 1) // 4 + n
    if w == 10 and n >= 8:
        return 34 - k
    if w == 16 and n >= 12:
        return 76 - k
    return w * w // 4 + w // 2 + 2


def young_diagram(parts: tuple[int, ...]) -> str:
    """ASCII Young diagram, one row of boxes per block, descending."""
    return "\n".join("■" * p for p in sorted(parts, reverse=True))


@dataclass(frozen=True)
class BoundInputs:
    """Scalar inputs of the detection bounds."""

    n: int
    k: int
    d: int
    s: int
    t: int
    r: float
    chi: float

    def __post_init__(self):
        if self.k + self.n < 1:
            raise ValueError(f"k + N = {self.k + self.n} must be >= 1")
        if self.s * (self.t - 1) != self.d**2 - 1:
            raise ValueError("measurement family is not informationally complete")

    @classmethod
    def from_measurement(cls, m, n: int, k: int) -> "BoundInputs":
        return cls(n=n, k=k, d=m.d, s=m.s, t=m.t, r=m.r, chi=m.chi)


def _m_value(inputs: BoundInputs, m_source: MSource) -> int:
    if m_source == "enumeration":
        return max_sum_squares(inputs.n, inputs.k)
    value = closed_form_m(inputs.n, inputs.k)
    if value is None:
        # V-bound odd branch evaluates to exactly n at n+k = 1
        return inputs.n
    return value


def bound_i(inputs: BoundInputs, m_source: MSource = "enumeration") -> float:
    """Upper bound on the skew-information sum for k-stretchable states."""
    n, d, s, t, r, chi = (inputs.n, inputs.d, inputs.s, inputs.t,
                          inputs.r, inputs.chi)
    big_t = t * (np.sqrt(t) + 1) ** 2
    if n + inputs.k == 1:
        return n * (
            s / t + r**2 * big_t * (d - 1 / d)
            - (d - 1) * (d**2 + t**2 * chi) / (d * t * (t - 1))
        )
    m_val = _m_value(inputs, m_source)
    return (
        n * (r**2 * big_t * (d - 1) - (d**2 - 1) / (t * (t - 1)))
        + (s / t + r**2 * big_t * (1 - 1 / d)) * m_val
    )


def bound_v(inputs: BoundInputs, m_source: MSource = "enumeration") -> float:
    """Lower bound on the variance sum for k-stretchable states."""
    n, d, s, t, r, chi = (inputs.n, inputs.d, inputs.s, inputs.t,
                          inputs.r, inputs.chi)
    big_t = t * (np.sqrt(t) + 1) ** 2
    m_val = _m_value(inputs, m_source)
    return (
        r**2 * big_t * (d + 1) * n
        + (
            s / t
            - r**2 * big_t * (1 + 1 / d)
            - (d - 1) * (d**2 + t**2 * chi) / (d * t * (t - 1))
        )
        * m_val
    )


def bracket_audit(max_n: int = 14) -> list[dict]:
    """Compare the closed-form bracket against enumeration for every
    (N, k) with N <= max_n, N + k >= 2.  Returns one row per pair."""
    rows = []
    for n in range(2, max_n + 1):
        for k in range(2 - n, n):
            enum = max_sum_squares(n, k)
            closed = closed_form_m(n, k)
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "enumeration": enum,
                    "closed_form": closed,
                    "agree": enum == closed,
                }
            )
    return rows
