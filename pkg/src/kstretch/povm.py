"""Construction and certification of informationally complete (s,t)-POVMs.

A measurement is built from a grouped operator basis: for each group u,
B^(uv) = C^(u) - sqrt(t)(sqrt(t)+1) C^(uv) for v < t and
B^(ut) = (sqrt(t)+1) C^(u) with C^(u) the group sum, then
A^(uv) = 1/t + r B^(uv).  All symmetry identities are verified at
construction time; a measurement object that exists is certified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .basis import InformationalCompletenessError, OperatorBasis
from .linalg import check_hermitian

SYMMETRY_TOL = 1e-10
EFFECT_PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-12


class PositivityError(ValueError):
    """Raised when r lies outside the admissible range."""


class ConstructionError(ValueError):
    """Raised when a measurement fails its certification identities."""


def build_b_operators(basis: OperatorBasis) -> list[list[np.ndarray]]:
    """The traceless B^(uv) operators of the general construction, s x t."""
    if basis.grouping is None:
        raise ValueError("basis must be grouped before building a measurement")
    s, t = basis.s, basis.t
    sqt = np.sqrt(t)
    rows = []
    for u in range(1, s + 1):
        group = [basis.op(u, v) for v in range(1, t)]
        c_u = sum(group)
        row = [c_u - sqt * (sqt + 1) * c_uv for c_uv in group]
        row.append((sqt + 1) * c_u)
        rows.append(row)
    return rows


def r_range(b_ops: list[list[np.ndarray]]) -> tuple[float, float]:
    """Admissible interval (r_neg, r_pos) keeping every effect PSD.

    r_neg = -1/(t lambda_max), r_pos = 1/(t |lambda_min|) with the
    extreme eigenvalues taken over all B^(uv).
    """
    t = len(b_ops[0])
    lam_max = -np.inf
    lam_min = np.inf
    for row in b_ops:
        for b in row:
            evals = np.linalg.eigvalsh(b)
            lam_max = max(lam_max, evals[-1])
            lam_min = min(lam_min, evals[0])
    if lam_max <= 0 or lam_min >= 0:
        raise ConstructionError("degenerate B operators: one-sided spectrum")
    return (-1.0 / (t * lam_max), 1.0 / (t * abs(lam_min)))


@dataclass(frozen=True)
class SymmetricMeasurement:
    """A certified informationally complete (s,t)-POVM."""

    d: int
    s: int
    t: int
    r: float
    chi: float
    effects: tuple[tuple[np.ndarray, ...], ...] = field(repr=False)

    def __post_init__(self):
        _certify_or_raise(self)

    def effect(self, u: int, v: int) -> np.ndarray:
        """Effect A^(uv) for u in 1..s, v in 1..t."""
        return self.effects[u - 1][v - 1]

    def iter_effects(self):
        for row in self.effects:
            yield from row

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "t": self.t,
            "r": self.r,
            "chi": self.chi,
            "effects": [
                [[[z.real, z.imag] for z in a.ravel()] for a in row]
                for row in self.effects
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SymmetricMeasurement":
        d = int(doc["d"])
        effects = tuple(
            tuple(
                np.array([complex(re, im) for re, im in flat]).reshape(d, d)
                for flat in row
            )
            for row in doc["effects"]
        )
        return cls(d, int(doc["s"]), int(doc["t"]), float(doc["r"]),
                   float(doc["chi"]), effects)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricMeasurement":
        return cls.from_json_dict(json.loads(text))


def chi_of_r(d: int, t: int, r: float) -> float:
    """Purity parameter chi as a function of the construction parameter r."""
    return d / t**2 + r**2 * (t - 1) * (np.sqrt(t) + 1) ** 2


def build_stpovm(basis: OperatorBasis, s: int, t: int,
                 r: float | str = "max") -> SymmetricMeasurement:
    """Build the (s,t)-POVM A^(uv) = 1/t + r B^(uv) from a grouped basis.

    r="max" selects the chi-maximizing endpoint
    max{1/(t lambda_max), 1/(t |lambda_min|)} with positive sign.
    """
    if basis.grouping is None or basis.s != s or basis.t != t:
        from .basis import group_basis
        basis = group_basis(basis, s, t)
    d = basis.d
    b_ops = build_b_operators(basis)
    r_neg, r_pos = r_range(b_ops)
    if r == "max":
        r_val = max(abs(r_neg), r_pos)
    else:
        r_val = float(r)
    slack = 1e-12 * max(abs(r_neg), r_pos)
    if r_val == 0 or not (r_neg - slack <= r_val <= r_pos + slack):
        raise PositivityError(
            f"r={r_val} outside admissible range [{r_neg}, {r_pos}]"
        )
    eye = np.eye(d, dtype=complex)
    effects = tuple(
        tuple(eye / t + r_val * b for b in row) for row in b_ops
    )
    return SymmetricMeasurement(d, s, t, r_val, chi_of_r(d, t, r_val), effects)


def certification_residuals(m: SymmetricMeasurement) -> dict[str, float]:
    """Residuals of every identity the measurement must satisfy."""
    d, s, t, chi = m.d, m.s, m.t, m.chi
    res: dict[str, float] = {}
    min_eig = min(np.linalg.eigvalsh(a)[0] for a in m.iter_effects())
    res["min_effect_eigenvalue"] = float(min_eig)
    eye = np.eye(d)
    res["completeness"] = max(
        float(np.max(np.abs(sum(row) - eye))) for row in m.effects
    )
    res["trace"] = max(
        abs(np.trace(a).real - d / t) for a in m.iter_effects()
    )
    res["purity"] = max(
        abs(np.trace(a @ a).real - chi) for a in m.iter_effects()
    )
    cross_v = 0.0
    cross_u = 0.0
    within = (d - t * chi) / (t * (t - 1))
    for u in range(s):
        for v in range(t):
            for u2 in range(u, s):
                for v2 in range(t):
                    if (u, v) >= (u2, v2):
                        continue
                    ip = np.trace(m.effects[u][v] @ m.effects[u2][v2]).real
                    if u == u2:
                        cross_v = max(cross_v, abs(ip - within))
                    else:
                        cross_u = max(cross_u, abs(ip - d / t**2))
    res["cross_outcome"] = cross_v
    res["cross_measurement"] = cross_u
    res["square_sum"] = verify_square_sum(m)
    res["chi_consistency"] = abs(chi - chi_of_r(d, t, m.r))
    return res


def _certify_or_raise(m: SymmetricMeasurement) -> None:
    d, s, t = m.d, m.s, m.t
    if s * (t - 1) != d * d - 1:
        raise InformationalCompletenessError(
            f"s(t-1) = {s * (t - 1)} != d^2 - 1 = {d * d - 1}"
        )
    if len(m.effects) != s or any(len(row) != t for row in m.effects):
        raise ConstructionError("effect array is not s x t")
    for a in m.iter_effects():
        check_hermitian(a)
    lo = m.d / m.t**2
    hi = min(m.d**2 / m.t**2, m.d / m.t)
    if not (lo < m.chi <= hi + SYMMETRY_TOL):
        raise ConstructionError(
            f"chi={m.chi} outside ({lo}, {hi}]"
        )
    res = certification_residuals(m)
    if res["min_effect_eigenvalue"] < -EFFECT_PSD_TOL:
        raise PositivityError(
            f"effect not PSD (min eigenvalue {res['min_effect_eigenvalue']:.3e})"
        )
    if res["completeness"] > COMPLETENESS_TOL:
        raise ConstructionError(f"effects do not sum to identity: {res['completeness']:.3e}")
    for key in ("trace", "purity", "cross_outcome", "cross_measurement",
                "square_sum", "chi_consistency"):
        if res[key] > SYMMETRY_TOL:
            raise ConstructionError(f"symmetry identity '{key}' fails: {res[key]:.3e}")


def square_sum_scalar(d: int, s: int, t: int, r: float) -> float:
    """Scalar c with sum over (u,v) of A^2 = c * identity."""
    return s / t + r**2 * t * (np.sqrt(t) + 1) ** 2 * (d - 1 / d)


def verify_square_sum(m: SymmetricMeasurement) -> float:
    """Max entrywise deviation of the effect square sum from its scalar."""
    total = sum(a @ a for a in m.iter_effects())
    target = square_sum_scalar(m.d, m.s, m.t, m.r) * np.eye(m.d)
    return float(np.max(np.abs(total - target)))


def probability_square_sum(m: SymmetricMeasurement, rho: np.ndarray) -> float:
    """Sum over (u,v) of [Tr(A^(uv) rho)]^2 by direct summation."""
    rho = check_hermitian(rho)
    if rho.shape != (m.d, m.d):
        raise ValueError(f"state dimension {rho.shape[0]} != {m.d}")
    return float(sum(np.trace(a @ rho).real ** 2 for a in m.iter_effects()))


def probability_square_sum_formula(m: SymmetricMeasurement, purity: float) -> float:
    """Closed form of the probability square sum as a function of purity."""
    d, t, chi = m.d, m.t, m.chi
    return (d * (t**2 * chi - d) * purity + d**3 - t**2 * chi) / (d * t * (t - 1))


def probability_square_sum_pure(m: SymmetricMeasurement) -> float:
    """The pure-state value (d-1)(d^2 + t^2 chi) / (d t (t-1))."""
    d, t, chi = m.d, m.t, m.chi
    return (d - 1) * (d**2 + t**2 * chi) / (d * t * (t - 1))
