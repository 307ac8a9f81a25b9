"""Qubit calibration primitives in the Bloch representation.

Pure states are unit Bloch 3-vectors; mixed states and measurement
effects are 2x2 Hermitian operators stored canonically as (r0, r) with
M = (r0 * I + r . sigma) / 2.  In this representation positivity checks
reduce to norm inequalities: the eigenvalues of M are (r0 +/- |r|) / 2.

Probabilities are exposed through two deliberately separate primitives:
the pure-state overlap (Born rule / Fubini-Study geometry) and the
POVM trace rule tr(rho * effect).  No cos^2-of-angle identity is offered
for mixed states; none holds in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import NumericalError, ValidationError

NORM_TOL = 1e-12
PSD_EIGENVALUE_TOL = 1e-12


def _as_vec3(values: Iterable[float], label: str) -> np.ndarray:
    v = np.asarray(tuple(values), dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{label} must be a real 3-vector, got shape {v.shape}")
    v.setflags(write=False)
    return v


_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _bloch_matrix(r0: float, r: np.ndarray) -> np.ndarray:
    m = r0 * np.eye(2, dtype=complex)
    for component, sigma in zip(r, _SIGMA):
        m = m + component * sigma
    return m / 2.0


@dataclass(frozen=True, eq=False)
class QubitPureState:
    """A pure qubit state as a unit Bloch vector."""

    bloch: np.ndarray

    def __post_init__(self) -> None:
        v = _as_vec3(self.bloch, "bloch")
        if abs(float(np.linalg.norm(v)) - 1.0) > NORM_TOL:
            raise ValueError(
                f"Bloch vector must have unit norm, got |v| = {np.linalg.norm(v)!r}"
            )
        object.__setattr__(self, "bloch", v)

    def antipode(self) -> "QubitPureState":
        """The orthogonal state, at the opposite point of the sphere."""
        return QubitPureState(-self.bloch)

    def to_density(self) -> "DensityOperator":
        return DensityOperator(r0=1.0, r=self.bloch)

    def to_dict(self) -> dict:
        return {"bloch": [float(x) for x in self.bloch]}

    @classmethod
    def from_dict(cls, d: dict) -> "QubitPureState":
        return cls(bloch=d["bloch"])


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A qubit mixed state, rho = (r0 * I + r . sigma) / 2 with r0 = 1."""

    r0: float
    r: np.ndarray

    def __post_init__(self) -> None:
        if abs(self.r0 - 1.0) > NORM_TOL:
            raise ValueError(f"density operator needs trace one, got r0 = {self.r0!r}")
        v = _as_vec3(self.r, "r")
        if float(np.linalg.norm(v)) > 1.0 + NORM_TOL:
            raise ValueError(
                f"Bloch vector of a state must satisfy |r| <= 1, got {np.linalg.norm(v)!r}"
            )
        object.__setattr__(self, "r", v)

    @classmethod
    def from_bloch(cls, r: Iterable[float]) -> "DensityOperator":
        return cls(r0=1.0, r=np.asarray(tuple(r), dtype=float))

    @classmethod
    def maximally_mixed(cls) -> "DensityOperator":
        return cls(r0=1.0, r=np.zeros(3))

    def matrix(self) -> np.ndarray:
        return _bloch_matrix(self.r0, self.r)

    def determinant(self) -> float:
        # det rho = (r0^2 - |r|^2) / 4; cancellation can leave a tiny
        # negative residue for pure states, clamped by callers.
        return (self.r0**2 - float(self.r @ self.r)) / 4.0

    def to_dict(self) -> dict:
        return {"r0": float(self.r0), "r": [float(x) for x in self.r]}

    @classmethod
    def from_dict(cls, d: dict) -> "DensityOperator":
        return cls(r0=float(d["r0"]), r=d["r"])


@dataclass(frozen=True, eq=False)
class Effect:
    """A measurement effect, E = (r0 * I + r . sigma) / 2 with free r0."""

    r0: float
    r: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", _as_vec3(self.r, "r"))

    @classmethod
    def identity(cls) -> "Effect":
        return cls(r0=2.0, r=np.zeros(3))

    @classmethod
    def projector(cls, direction: Iterable[float]) -> "Effect":
        """Rank-1 projector onto the pure state with the given Bloch
        direction (must be unit length)."""
        v = _as_vec3(direction, "direction")
        if abs(float(np.linalg.norm(v)) - 1.0) > NORM_TOL:
            raise ValueError("projector direction must be a unit vector")
        return cls(r0=1.0, r=v)

    def min_eigenvalue(self) -> float:
        return (self.r0 - float(np.linalg.norm(self.r))) / 2.0

    def matrix(self) -> np.ndarray:
        return _bloch_matrix(self.r0, self.r)

    def to_dict(self) -> dict:
        return {"r0": float(self.r0), "r": [float(x) for x in self.r]}

    @classmethod
    def from_dict(cls, d: dict) -> "Effect":
        return cls(r0=float(d["r0"]), r=d["r"])


@dataclass(frozen=True, eq=False)
class Povm:
    """A measurement context: positive effects summing to the identity."""

    effects: tuple[Effect, ...]

    def __post_init__(self) -> None:
        effects = tuple(self.effects)
        if not effects:
            raise ValueError("a POVM needs at least one effect")
        object.__setattr__(self, "effects", effects)

    @classmethod
    def projective(cls, state: QubitPureState) -> "Povm":
        """The two-outcome projective measurement along a Bloch axis."""
        return cls(effects=(Effect.projector(state.bloch), Effect.projector(-state.bloch)))

    @cached_property
    def validation(self) -> tuple[bool, list[str]]:
        return validate_povm(self)

    @property
    def is_valid(self) -> bool:
        return self.validation[0]

    def to_dict(self) -> dict:
        return {"effects": [e.to_dict() for e in self.effects]}

    @classmethod
    def from_dict(cls, d: dict) -> "Povm":
        return cls(effects=tuple(Effect.from_dict(e) for e in d["effects"]))


def validate_povm(povm: Povm) -> tuple[bool, list[str]]:
    """Check positivity of every effect and completeness of the set.

    Returns (ok, diagnostics); diagnostics list one entry per violation.
    """
    diagnostics: list[str] = []
    for i, effect in enumerate(povm.effects):
        lam = effect.min_eigenvalue()
        if lam < -PSD_EIGENVALUE_TOL:
            diagnostics.append(
                f"effect {i} is not positive semidefinite "
                f"(min eigenvalue {lam:.3e})"
            )
    total = sum((e.matrix() for e in povm.effects), np.zeros((2, 2), dtype=complex))
    deviation = float(np.abs(total - np.eye(2)).max())
    if deviation > NORM_TOL:
        diagnostics.append(
            f"effects sum to identity only within {deviation:.3e} "
            f"(entrywise), tolerance {NORM_TOL:g}"
        )
    return (not diagnostics, diagnostics)


def bloch_angle(a: QubitPureState, b: QubitPureState) -> float:
    """Angle between the two Bloch vectors, in [0, pi].

    Uses atan2 of the cross and dot products, which stays accurate where
    arccos of the dot product loses digits (near 0 and pi).
    """
    cross = np.cross(a.bloch, b.bloch)
    return math.atan2(float(np.linalg.norm(cross)), float(a.bloch @ b.bloch))


def born_probability(a: QubitPureState, b: QubitPureState) -> float:
    """Transition probability |<b|a>|^2 = cos^2(theta/2) in the Bloch
    angle theta between the states."""
    return math.cos(bloch_angle(a, b) / 2.0) ** 2


def fs_distance(a: QubitPureState, b: QubitPureState) -> float:
    """Fubini-Study distance arccos|<b|a>|, equal to half the Bloch angle;
    cos^2 of it recovers born_probability."""
    return bloch_angle(a, b) / 2.0


def fidelity(rho: DensityOperator, sigma: DensityOperator) -> float:
    """Uhlmann fidelity of two qubit states.

    Evaluated with the qubit closed form
    F = tr(rho sigma) + 2 sqrt(det rho * det sigma), which agrees with
    the general sqrt-of-products definition in dimension two and avoids
    matrix square roots.
    """
    overlap = (rho.r0 * sigma.r0 + float(rho.r @ sigma.r)) / 2.0
    # Determinants are clamped at zero: pure states sit on det = 0 and
    # float cancellation can land epsilon below it.
    det_product = max(rho.determinant(), 0.0) * max(sigma.determinant(), 0.0)
    return overlap + 2.0 * math.sqrt(det_product)


def bures_angle(
    rho: DensityOperator, sigma: DensityOperator, out_of_range: str = "raise"
) -> float:
    """Bures angle arccos(sqrt(F)) in [0, pi/2].

    For pure inputs this reduces to the Fubini-Study distance of the
    corresponding Bloch states.  ``out_of_range`` selects what happens if
    the fidelity leaves [-1e-12, 1 + 1e-12] (only possible for invalid
    inputs): "raise" a NumericalError or "clamp" into [0, 1].
    """
    if out_of_range not in ("raise", "clamp"):
        raise ValueError("out_of_range must be 'raise' or 'clamp'")
    f = fidelity(rho, sigma)
    if (f < -NORM_TOL or f > 1.0 + NORM_TOL) and out_of_range == "raise":
        raise NumericalError(f"fidelity {f!r} outside [0, 1] beyond tolerance")
    f = min(max(f, 0.0), 1.0)
    return math.acos(math.sqrt(f))


def povm_probability(rho: DensityOperator, povm: Povm, index: int) -> float:
    """Outcome probability tr(rho * effect) for one effect of a validated
    POVM, clamped to [0, 1].

    Raises ValidationError when the parent POVM fails validation, so
    probabilities are only ever reported within a well-formed context.
    """
    ok, diagnostics = povm.validation
    if not ok:
        raise ValidationError("; ".join(diagnostics))
    effect = povm.effects[index]
    p = (rho.r0 * effect.r0 + float(rho.r @ effect.r)) / 2.0
    return min(max(p, 0.0), 1.0)


def context_distribution(rho: DensityOperator, povm: Povm) -> list[float]:
    """All outcome probabilities of one measurement context; sums to one
    for any valid state and POVM."""
    return [povm_probability(rho, povm, i) for i in range(len(povm.effects))]
