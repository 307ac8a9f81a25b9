"""Correlation and inequality harness for two-wing +/-1 experiments.

Covers the singlet correlator E(phi) = -cos(phi), CHSH evaluation with a
fixed sign convention, the exhaustive local-deterministic bound, and the
marginal-underdetermination construction: a single-argument regraduation
of outcome probabilities pins down the two wings' marginals but leaves the
joint distribution (hence the correlator) free inside the Frechet bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AdmissibilityError, DomainError, FrechetError
from .regraduation import MapLike, RegraduationMap, check_admissibility

CORRELATION_TOL = 1e-12

# Settings (a, a', b, b') maximizing |S| for the singlet correlator; any
# rigid rotation of these is equivalent.
OPTIMAL_SINGLET_SETTINGS = (0.0, math.pi / 2.0, math.pi / 4.0, 3.0 * math.pi / 4.0)

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


def singlet_correlation(phi: float) -> float:
    """Spin-singlet correlator -cos(phi) at relative analyzer angle phi."""
    return -math.cos(phi)


@dataclass(frozen=True, eq=False)
class JointModel:
    """A 2x2 joint outcome table p(a, b) over a, b in {+1, -1}.

    Row index 0 is A=+1, row 1 is A=-1; columns likewise for B.
    """

    table: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2, 2):
            raise ValueError(f"joint table must be 2x2, got {t.shape}")
        if t.min() < -CORRELATION_TOL:
            raise ValueError(f"negative joint probability {t.min()!r}")
        t = np.maximum(t, 0.0)
        if abs(float(t.sum()) - 1.0) > CORRELATION_TOL:
            raise ValueError(f"joint table sums to {t.sum()!r}, expected 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def p_pp(self) -> float:
        return float(self.table[0, 0])

    @property
    def p_pm(self) -> float:
        return float(self.table[0, 1])

    @property
    def p_mp(self) -> float:
        return float(self.table[1, 0])

    @property
    def p_mm(self) -> float:
        return float(self.table[1, 1])

    def marginals(self) -> tuple[float, float]:
        """(P(A=+1), P(B=+1))."""
        return (self.p_pp + self.p_pm, self.p_pp + self.p_mp)

    def to_lists(self) -> list[list[float]]:
        return [[self.p_pp, self.p_pm], [self.p_mp, self.p_mm]]


def correlation_of_joint(j: JointModel) -> float:
    """E = sum_ab a*b*p(a,b) = p(++) + p(--) - p(+-) - p(-+)."""
    return j.p_pp + j.p_mm - j.p_pm - j.p_mp


def marginals_of(j: JointModel) -> tuple[float, float]:
    return j.marginals()


def frechet_bounds(p_a: float, p_b: float) -> tuple[float, float]:
    """Feasible range of p(+,+) given the two +1-marginals."""
    return (max(0.0, p_a + p_b - 1.0), min(p_a, p_b))


def joint_from_marginals(p_a: float, p_b: float, p_pp: float) -> JointModel:
    """The unique joint table with the given marginals and p(+,+) cell.

    Raises FrechetError when p_pp is infeasible for the marginals.  The
    feasibility check carries a 1e-12 boundary tolerance: the float
    evaluation of p_a + p_b - 1 can overshoot the true bound by an ulp,
    and extreme cells sit exactly on the boundary by construction.
    """
    for label, value in (("p_a", p_a), ("p_b", p_b)):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{label}={value!r} outside [0, 1]")
    lo, hi = frechet_bounds(p_a, p_b)
    if not lo - CORRELATION_TOL <= p_pp <= hi + CORRELATION_TOL:
        raise FrechetError(
            f"p(+,+)={p_pp!r} outside Frechet bounds [{lo!r}, {hi!r}] "
            f"for marginals ({p_a!r}, {p_b!r})"
        )
    # clamp boundary-tolerated cells back inside so every table entry is
    # nonnegative up to float dust
    lo, hi = min(lo, hi), max(lo, hi)
    p_pp = min(max(p_pp, lo), hi)
    return JointModel(
        np.array(
            [
                [p_pp, p_a - p_pp],
                [p_b - p_pp, 1.0 - p_a - p_b + p_pp],
            ]
        )
    )


@dataclass(frozen=True)
class ChshScenario:
    """Four settings (a, a', b, b') plus a two-point correlation function."""

    settings: tuple[float, float, float, float]
    correlation_fn: Callable[[float, float], float]


def singlet_scenario(
    settings: tuple[float, float, float, float] = OPTIMAL_SINGLET_SETTINGS,
) -> ChshScenario:
    return ChshScenario(
        settings=settings,
        correlation_fn=lambda x, y: singlet_correlation(y - x),
    )


def chsh_value(s: ChshScenario) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b').

    The sign convention (single minus on the (a, b') term) is fixed here;
    all 4 placements of the minus sign give the same |S| extremes.
    """
    a, a_prime, b, b_prime = s.settings
    correlators = {}
    for x, y in ((a, b), (a, b_prime), (a_prime, b), (a_prime, b_prime)):
        e = s.correlation_fn(x, y)
        if abs(e) > 1.0 + CORRELATION_TOL:
            raise ValueError(f"correlation {e!r} at settings ({x}, {y}) exceeds 1")
        correlators[(x, y)] = e
    return (
        correlators[(a, b)]
        - correlators[(a, b_prime)]
        + correlators[(a_prime, b)]
        + correlators[(a_prime, b_prime)]
    )


@dataclass(frozen=True)
class LocalDeterministicStrategy:
    """Fixed +/-1 outputs per wing and setting choice (index 0 or 1)."""

    output_a: tuple[int, int]
    output_b: tuple[int, int]

    def __post_init__(self) -> None:
        for v in (*self.output_a, *self.output_b):
            if v not in (-1, 1):
                raise ValueError(f"outputs must be +1 or -1, got {v!r}")

    def correlation(self, i: int, j: int) -> int:
        return self.output_a[i] * self.output_b[j]

    def chsh(self) -> int:
        """S under the module's sign convention, computed in exact integer
        arithmetic."""
        return (
            self.correlation(0, 0)
            - self.correlation(0, 1)
            + self.correlation(1, 0)
            + self.correlation(1, 1)
        )


def enumerate_strategies() -> list[LocalDeterministicStrategy]:
    """All 16 local deterministic strategies, in a fixed order."""
    signs = (-1, 1)
    return [
        LocalDeterministicStrategy(output_a=(a0, a1), output_b=(b0, b1))
        for a0, a1, b0, b1 in itertools.product(signs, repeat=4)
    ]


@dataclass(frozen=True)
class LhvBound:
    """Classical CHSH bound certified by exhaustive enumeration.

    Every deterministic strategy attains |S| = 2 exactly, so the bound is
    witnessed 16 times in absolute value; ``maximizer_count`` counts the
    strategies attaining the signed maximum S = +bound (there are 8, the
    other 8 sit at -bound).
    """

    bound: int
    witness: LocalDeterministicStrategy
    maximizer_count: int


def lhv_chsh_bound() -> LhvBound:
    """Maximize |S| over all 16 local deterministic strategies."""
    strategies = enumerate_strategies()
    values = [s.chsh() for s in strategies]
    bound = max(abs(v) for v in values)
    witness = next(s for s, v in zip(strategies, values) if abs(v) == bound)
    maximizer_count = sum(1 for v in values if v == bound)
    return LhvBound(bound=bound, witness=witness, maximizer_count=maximizer_count)


@dataclass(frozen=True)
class UnderdeterminationReport:
    """Two joints sharing the same regraded marginals but different E."""

    marginals: tuple[float, float]
    joints: tuple[JointModel, JointModel]
    correlations: tuple[float, float]
    feasible_correlation: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "marginals": list(self.marginals),
            "joints": [j.to_lists() for j in self.joints],
            "E": list(self.correlations),
            "feasible_E": list(self.feasible_correlation),
        }


def underdetermination_demo(
    g: MapLike, p: float, grid_size: int = 10001, tol: float = 1e-12
) -> UnderdeterminationReport:
    """Show that a marginal-level regraduation leaves E underdetermined.

    Both wings receive the regraded marginal m = g(p).  The report holds
    the independence joint and the maximal-correlation Frechet extreme,
    which agree on marginals yet differ maximally in E, together with the
    full feasible E interval.  ``g`` must pass admissibility; a failing
    certificate raises AdmissibilityError.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p!r} outside [0, 1]")
    certificate = g.certificate if isinstance(g, RegraduationMap) else None
    if certificate is None:
        certificate = check_admissibility(g, grid_size, tol)
    if not certificate.passing:
        name = g.name if isinstance(g, RegraduationMap) else "<callable>"
        raise AdmissibilityError(
            f"map '{name}' failed admissibility "
            f"(boundary_ok={certificate.boundary_ok}, "
            f"monotone_ok={certificate.monotone_ok}, "
            f"complement_ok={certificate.complement_ok})"
        )
    m = g(p)
    lo, hi = frechet_bounds(m, m)
    independent = joint_from_marginals(m, m, m * m)
    comonotone = joint_from_marginals(m, m, hi)
    e_min = correlation_of_joint(joint_from_marginals(m, m, lo))
    e_max = correlation_of_joint(joint_from_marginals(m, m, hi))
    return UnderdeterminationReport(
        marginals=(m, m),
        joints=(independent, comonotone),
        correlations=(
            correlation_of_joint(independent),
            correlation_of_joint(comonotone),
        ),
        feasible_correlation=(e_min, e_max),
    )
