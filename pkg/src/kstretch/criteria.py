"""Detection verdicts, noise thresholds, and the operator-bound checks
underlying the two k-nonstretchability inequalities.

A state is reported k-nonstretchable when the skew-information sum
exceeds its upper bound or the variance sum falls below its lower bound
(strict 1e-9 margin, so rounding noise never produces a verdict).
Satisfying both inequalities is always "inconclusive".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import infoquant
from .infoquant import (
    VARIANCE,
    CollectiveMoments,
    MonotoneFunctionSpec,
    collective_operator,
    criterion_lhs_dense,
    criterion_lhs_isotropic,
)
from .linalg import DensityMatrix
from .partitions import BoundInputs, MSource, bound_i, bound_v, enumerate_kstretch
from .povm import SymmetricMeasurement, probability_square_sum_pure
from .states import IsotropicFamily, effect_moments

VERDICT_MARGIN = 1e-9
THRESHOLD_GRID_POINTS = 101
THRESHOLD_PRECISION = 1e-6

Quantity = Union[MonotoneFunctionSpec, str]


class NonMonotoneIndicatorError(RuntimeError):
    """Raised when the violation indicator is not monotone in p."""

    def __init__(self, grid: list[tuple[float, bool]]):
        self.grid = grid
        super().__init__("violation indicator is not monotone on the p-grid")


def quantity_label(quantity: Quantity) -> str:
    return VARIANCE if quantity == VARIANCE else quantity.label


@dataclass(frozen=True)
class CriterionReport:
    """Both inequalities evaluated on one state."""

    n: int
    k: int
    d: int
    s: int
    t: int
    r: float
    f_label: str
    lhs_skew: Optional[float]
    lhs_var: float
    i_bound: float
    v_bound: float
    violated_skew: Optional[bool]
    violated_var: bool
    m_source: str
    p: Optional[float] = None

    @property
    def verdict(self) -> str:
        if self.violated_skew or self.violated_var:
            return "k-nonstretchable"
        return "inconclusive"

    def to_json_dict(self) -> dict:
        return {
            "N": self.n, "k": self.k, "d": self.d, "s": self.s, "t": self.t,
            "r": self.r, "f": self.f_label, "p": self.p,
            "lhs_skew": self.lhs_skew, "i_bound": self.i_bound,
            "violated_skew": self.violated_skew,
            "lhs_var": self.lhs_var, "v_bound": self.v_bound,
            "violated_var": self.violated_var,
            "m_source": self.m_source, "verdict": self.verdict,
        }


def _bounds(m: SymmetricMeasurement, n: int, k: int,
            m_source: MSource) -> tuple[float, float]:
    inputs = BoundInputs.from_measurement(m, n, k)
    return bound_i(inputs, m_source), bound_v(inputs, m_source)


def evaluate(state: Union[DensityMatrix, IsotropicFamily],
             m: SymmetricMeasurement,
             f_spec: Optional[MonotoneFunctionSpec],
             k: int,
             p: Optional[float] = None,
             m_source: MSource = "enumeration") -> CriterionReport:
    """Evaluate both inequalities; f_spec=None skips the skew criterion.

    `state` is a dense DensityMatrix, or an IsotropicFamily together
    with a mixing weight p (the exact fast path).
    """
    if isinstance(state, IsotropicFamily):
        if p is None:
            raise ValueError("isotropic evaluation requires a mixing weight p")
        n, d = state.n, state.d
        moments = [effect_moments(state, a) for a in m.iter_effects()]
        lhs_var = criterion_lhs_isotropic(moments, p, d, n, VARIANCE)
        lhs_skew = (
            criterion_lhs_isotropic(moments, p, d, n, f_spec)
            if f_spec is not None else None
        )
    else:
        n, d = state.n_sites, state.site_dims[0]
        lhs_var = criterion_lhs_dense(state, m, VARIANCE)
        lhs_skew = (
            criterion_lhs_dense(state, m, f_spec) if f_spec is not None else None
        )
    if d != m.d:
        raise ValueError(f"state dimension {d} != measurement dimension {m.d}")
    i_bd, v_bd = (float(b) for b in _bounds(m, n, k, m_source))
    return CriterionReport(
        n=n, k=k, d=d, s=m.s, t=m.t, r=m.r,
        f_label=f_spec.label if f_spec is not None else VARIANCE,
        lhs_skew=lhs_skew, lhs_var=lhs_var, i_bound=i_bd, v_bound=v_bd,
        violated_skew=(bool(lhs_skew > i_bd + VERDICT_MARGIN)
                       if lhs_skew is not None else None),
        violated_var=bool(lhs_var < v_bd - VERDICT_MARGIN),
        m_source=m_source, p=p,
    )


def threshold_p(family: IsotropicFamily, m: SymmetricMeasurement,
                quantity: Quantity, k: int,
                m_source: MSource = "enumeration") -> Optional[float]:
    """Smallest p in [0,1] where the chosen inequality is violated.

    quantity selects the criterion: a MonotoneFunctionSpec runs the
    skew-information inequality, VARIANCE the variance inequality.
    Returns None when even p=1 is not violated.  Raises
    NonMonotoneIndicatorError if the indicator flips more than once on
    the verification grid.
    """
    n, d = family.n, family.d
    moments = [effect_moments(family, a) for a in m.iter_effects()]
    i_bd, v_bd = _bounds(m, n, k, m_source)

    def violated(p: float) -> bool:
        lhs = criterion_lhs_isotropic(moments, p, d, n, quantity)
        if quantity == VARIANCE:
            return lhs < v_bd - VERDICT_MARGIN
        return lhs > i_bd + VERDICT_MARGIN

    grid = [(p, violated(p)) for p in np.linspace(0.0, 1.0, THRESHOLD_GRID_POINTS)]
    flags = [flag for _, flag in grid]
    flips = sum(1 for a, b in zip(flags, flags[1:]) if a != b)
    if flips > 1 or (flips == 1 and not flags[-1]):
        raise NonMonotoneIndicatorError(grid)
    if not flags[-1]:
        return None
    lo = max((p for p, flag in grid if not flag), default=0.0)
    hi = min(p for p, flag in grid if flag)
    while hi - lo > THRESHOLD_PRECISION:
        mid = 0.5 * (lo + hi)
        if violated(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def antisym_variance_threshold(n: int, r: float) -> float:
    """Closed-form variance-criterion threshold for the antisymmetric
    family with the (1, n^2)-POVM at construction parameter r."""
    num = n**3 * (n + 1) * (n + 3) * r**2 + n + 1
    den = n**3 * (n + 1) ** 2 * (n - 1) * r**2 + n - 1
    return num / den


def block_operator_bounds(m: SymmetricMeasurement, n: int) -> dict:
    """Spectral check of the block operator inequality: every eigenvalue
    of the effect-square sum on n sites lies between the two scalar
    bounds (equal at n=1)."""
    d, s, t, r = m.d, m.s, m.t, m.r
    big_t = t * (np.sqrt(t) + 1) ** 2
    lower = r**2 * big_t * (d + 1) * n + (s / t - r**2 * big_t * (1 + 1 / d)) * n**2
    upper = r**2 * big_t * (d - 1) * n + (s / t + r**2 * big_t * (1 - 1 / d)) * n**2
    total = sum(
        (lambda b: b @ b)(collective_operator(a, n)) for a in m.iter_effects()
    )
    evals = np.linalg.eigvalsh(total)
    return {
        "n": n,
        "lower": float(lower),
        "upper": float(upper),
        "min_eigenvalue": float(evals[0]),
        "max_eigenvalue": float(evals[-1]),
        "ok": bool(evals[0] >= lower - 1e-9 and evals[-1] <= upper + 1e-9),
        "equality": bool(n == 1),
    }


def block_probability_bounds(m: SymmetricMeasurement,
                             psi: DensityMatrix) -> dict:
    """Check the pure-state probability square-sum bounds on an n-site block."""
    if psi.purity() < 1 - 1e-10:
        raise ValueError(f"state is not pure (purity {psi.purity()})")
    d, t, chi = m.d, m.t, m.chi
    n = psi.n_sites
    if set(psi.site_dims) != {d}:
        raise ValueError("site dimensions do not match the measurement")
    value = sum(
        float(np.trace(collective_operator(a, n) @ psi.entries).real) ** 2
        for a in m.iter_effects()
    )
    lower = (d**2 - 1) * n / (t * (t - 1))
    upper = (d - 1) * (d**2 + t**2 * chi) * n**2 / (d * t * (t - 1))
    return {
        "n": n,
        "value": float(value),
        "lower": float(lower),
        "upper": float(upper),
        "ok": bool(lower - 1e-9 <= value <= upper + 1e-9),
    }


def random_kstretchable_density(rng: np.random.Generator, d: int, n: int,
                                k: int, max_mixture: int = 3) -> DensityMatrix:
    """Random k-stretchable state: a convex mixture of pure states, each a
    product of Haar-random block states over a random admissible partition."""
    admissible = enumerate_kstretch(n, k)
    if not admissible:
        raise ValueError(f"no {k}-stretchable partition of {n} exists")
    n_pure = int(rng.integers(1, max_mixture + 1))
    weights = rng.dirichlet(np.ones(n_pure))
    dim_total = d**n
    rho = np.zeros((dim_total, dim_total), dtype=complex)
    for w in weights:
        parts = admissible[rng.integers(len(admissible))]
        vec = np.ones(1, dtype=complex)
        for size in parts:
            block = rng.normal(size=d**size) + 1j * rng.normal(size=d**size)
            block /= np.linalg.norm(block)
            vec = np.kron(vec, block)
        rho += w * np.outer(vec, vec.conj())
    return DensityMatrix((d,) * n, rho)
