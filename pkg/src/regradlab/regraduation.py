"""Probability regraduation maps g: [0,1] -> [0,1] and their admissibility.

A map is admissible when it fixes the boundaries (g(0)=0, g(1)=1), is
strictly increasing, and is complement-symmetric: g(p) + g(1-p) = 1.  The
complement condition forces the fixed point g(1/2) = 1/2.  Infinitely many
maps satisfy all of this; the module ships three closed-form examples plus
constructors (angle parametrizations, extension from the left half,
tabulated data) that produce more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, JoinError, MonotonicityError, RangeError

DEFAULT_GRID_SIZE = 10001
DEFAULT_TOL = 1e-12

# Adjacent grid values jumping by more than this multiple of the spacing
# flag a (heuristic) continuity violation.
CONTINUITY_JUMP_FACTOR = 10.0


def _require_unit(p: float, label: str = "p") -> None:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"{label}={p!r} outside [0, 1]")


def g_czachor(p: float) -> float:
    """sin^2(pi*p/2), the sinusoidal regraduation map."""
    _require_unit(p)
    return math.sin(math.pi * p / 2.0) ** 2


def g_poly(p: float) -> float:
    """3p^2 - 2p^3, the cubic smoothstep; admissible and distinct from
    g_czachor."""
    _require_unit(p)
    return 3.0 * p * p - 2.0 * p * p * p


def alt_inner(p: float) -> float:
    """s(p) = 1/2 + sin(pi*(p - 1/2))/2, the inner reparametrization of
    g_alt; strictly increasing with s(1-p) = 1 - s(p)."""
    _require_unit(p)
    return 0.5 + 0.5 * math.sin(math.pi * (p - 0.5))


def g_alt(p: float) -> float:
    """sin^2((pi/2) * s(p)) with s = alt_inner; a sine-embedded admissible
    map, evaluated via the two-stage composition."""
    return math.sin(math.pi / 2.0 * alt_inner(p)) ** 2


def g_identity(p: float) -> float:
    """The trivial regraduation: probabilities pass through unchanged."""
    _require_unit(p)
    return p


@dataclass(frozen=True)
class AdmissibilityReport:
    """Result of certifying a candidate map on a uniform grid.

    ``passing`` is boundary_ok and monotone_ok and complement_ok.  The
    continuity fields are a heuristic flag (adjacent jumps bounded by
    CONTINUITY_JUMP_FACTOR / grid_size); they are reported but do not
    enter ``passing`` since a grid cannot certify continuity proper.
    """

    grid_size: int
    tol: float
    boundary_ok: bool
    monotone_ok: bool
    complement_ok: bool
    worst_complement_defect: float
    worst_monotonicity_gap: float
    max_adjacent_jump: float
    continuity_bound: float
    continuity_ok: bool

    @property
    def passing(self) -> bool:
        return self.boundary_ok and self.monotone_ok and self.complement_ok

    def to_dict(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "tol": self.tol,
            "passing": self.passing,
            "boundary_ok": self.boundary_ok,
            "monotone_ok": self.monotone_ok,
            "complement_ok": self.complement_ok,
            "worst_complement_defect": self.worst_complement_defect,
            "worst_monotonicity_gap": self.worst_monotonicity_gap,
            "max_adjacent_jump": self.max_adjacent_jump,
            "continuity_bound": self.continuity_bound,
            "continuity_ok": self.continuity_ok,
        }


@dataclass(frozen=True)
class RegraduationMap:
    """A named candidate map with an optional admissibility certificate."""

    name: str
    fn: Callable[[float], float]
    formula: str = ""
    certificate: Optional[AdmissibilityReport] = None

    def __call__(self, p: float) -> float:
        return self.fn(p)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "formula": self.formula,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


MapLike = Union[RegraduationMap, Callable[[float], float]]


def _as_callable(g: MapLike) -> Callable[[float], float]:
    return g.fn if isinstance(g, RegraduationMap) else g


def check_admissibility(
    g: MapLike, grid_size: int = DEFAULT_GRID_SIZE, tol: float = DEFAULT_TOL
) -> AdmissibilityReport:
    """Certify boundaries, strict monotonicity and complement symmetry of
    ``g`` on a uniform grid.  Failures are reported, never raised."""
    if grid_size < 3:
        raise ValueError("grid_size must be >= 3")
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    fn = _as_callable(g)
    ps = np.linspace(0.0, 1.0, grid_size)
    vals = np.array([fn(float(p)) for p in ps])
    comp = np.array([fn(float(1.0 - p)) for p in ps])

    boundary_ok = abs(vals[0]) <= tol and abs(vals[-1] - 1.0) <= tol
    diffs = np.diff(vals)
    worst_gap = float(diffs.min())
    monotone_ok = bool(np.all(diffs > 0.0))
    defects = np.abs(vals + comp - 1.0)
    worst_defect = float(defects.max())
    complement_ok = worst_defect <= tol
    max_jump = float(np.abs(diffs).max())
    continuity_bound = CONTINUITY_JUMP_FACTOR / grid_size
    return AdmissibilityReport(
        grid_size=grid_size,
        tol=tol,
        boundary_ok=bool(boundary_ok),
        monotone_ok=monotone_ok,
        complement_ok=bool(complement_ok),
        worst_complement_defect=worst_defect,
        worst_monotonicity_gap=worst_gap,
        max_adjacent_jump=max_jump,
        continuity_bound=continuity_bound,
        continuity_ok=bool(max_jump <= continuity_bound),
    )


def certify(
    g: RegraduationMap, grid_size: int = DEFAULT_GRID_SIZE, tol: float = DEFAULT_TOL
) -> RegraduationMap:
    """Return a copy of ``g`` carrying a fresh certificate."""
    return replace(g, certificate=check_admissibility(g, grid_size, tol))


def fixed_point_check(g: MapLike) -> float:
    """|g(1/2) - 1/2|; at most the complement tolerance for any map that
    passes the complement check."""
    return abs(_as_callable(g)(0.5) - 0.5)


@dataclass
class ThetaParametrization:
    """An angle map theta: [0,1] -> [0,pi] inducing g(p) = cos^2(theta(p)/2).

    ``symmetric`` records whether theta(1-p) = pi - theta(p) held on the
    certification grid; it is measured by g_from_theta, not assumed.
    """

    theta: Callable[[float], float]
    name: str = "theta_induced"
    symmetric: Optional[bool] = None


def g_from_theta(
    tp: ThetaParametrization,
    grid_size: int = DEFAULT_GRID_SIZE,
    tol: float = DEFAULT_TOL,
) -> RegraduationMap:
    """Build the map p -> cos^2(theta(p)/2) and certify it.

    Raises RangeError when theta leaves [0, pi] on the grid.  Sets
    ``tp.symmetric`` from the grid test of theta(1-p) = pi - theta(p);
    a symmetric parametrization yields a complement-preserving map, which
    the attached certificate confirms rather than assumes.
    """
    ps = np.linspace(0.0, 1.0, grid_size)
    thetas = np.array([tp.theta(float(p)) for p in ps])
    if thetas.min() < -tol or thetas.max() > math.pi + tol:
        raise RangeError(
            f"theta leaves [0, pi]: range [{thetas.min()!r}, {thetas.max()!r}]"
        )
    mirrored = np.array([tp.theta(float(1.0 - p)) for p in ps])
    tp.symmetric = bool(np.abs(mirrored - (math.pi - thetas)).max() <= tol)

    theta = tp.theta

    def fn(p: float) -> float:
        _require_unit(p)
        return math.cos(theta(p) / 2.0) ** 2

    gmap = RegraduationMap(name=tp.name, fn=fn, formula="cos^2(theta(p)/2)")
    return certify(gmap, grid_size, tol)


HalfMap = Union[Callable[[float], float], Sequence[tuple[float, float]]]


def extend_from_half(
    g_half: HalfMap,
    grid_size: int = DEFAULT_GRID_SIZE,
    tol: float = DEFAULT_TOL,
    name: str = "extended_from_half",
) -> RegraduationMap:
    """Extend a map on [0, 1/2] to [0, 1] by g(p) = 1 - g(1-p).

    ``g_half`` is a callable or a table of (p, value) pairs, interpolated
    piecewise-linearly.  Requires g_half(0) = 0, the join condition
    g_half(1/2) = 1/2 (JoinError otherwise), and strict monotonicity on
    the validation grid (MonotonicityError otherwise).  The extension
    preserves complements by construction; the attached certificate
    verifies it anyway.
    """
    if callable(g_half):
        gh = g_half
    else:
        pts = sorted((float(p), float(v)) for p, v in g_half)
        xs = np.array([p for p, _ in pts])
        ys = np.array([v for _, v in pts])
        if xs[0] != 0.0 or xs[-1] != 0.5:
            raise ValueError("tabulated half-map must span [0, 0.5]")

        def gh(p: float, _xs=xs, _ys=ys) -> float:
            return float(np.interp(p, _xs, _ys))

    if abs(gh(0.0)) > tol:
        raise ValueError(f"g_half(0) = {gh(0.0)!r}, expected 0")
    join = gh(0.5)
    if abs(join - 0.5) > tol:
        raise JoinError(
            f"g_half(1/2) = {join!r}; the complement extension is only "
            f"continuous at the join when g_half(1/2) = 1/2"
        )
    half_grid = np.linspace(0.0, 0.5, max(grid_size // 2 + 1, 3))
    half_vals = np.array([gh(float(p)) for p in half_grid])
    if not np.all(np.diff(half_vals) > 0.0):
        raise MonotonicityError("g_half is not strictly increasing on [0, 1/2]")

    def fn(p: float) -> float:
        _require_unit(p)
        if p <= 0.5:
            return gh(p)
        return 1.0 - gh(1.0 - p)

    gmap = RegraduationMap(
        name=name, fn=fn, formula="g_half(p) on [0,1/2]; 1 - g_half(1-p) above"
    )
    return certify(gmap, grid_size, tol)


def from_table(
    ps: Sequence[float], gs: Sequence[float], name: str = "tabulated"
) -> RegraduationMap:
    """Piecewise-linear map through the given (p, g) points over [0, 1]."""
    xs = np.asarray(ps, dtype=float)
    ys = np.asarray(gs, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 2:
        raise ValueError("need two equal-length 1-d sequences of points")
    if not np.all(np.diff(xs) > 0.0):
        raise ValueError("p column must be strictly increasing")
    if xs[0] != 0.0 or xs[-1] != 1.0:
        raise ValueError("tabulated map must span [0, 1]")

    def fn(p: float) -> float:
        _require_unit(p)
        return float(np.interp(p, xs, ys))

    return RegraduationMap(name=name, fn=fn, formula="piecewise linear table")


def builtin_maps() -> dict[str, RegraduationMap]:
    """The shipped admissible maps, uncertified (certify with the grid and
    tolerance of your choice)."""
    return {
        "identity": RegraduationMap("identity", g_identity, "p"),
        "czachor": RegraduationMap("czachor", g_czachor, "sin^2(pi*p/2)"),
        "poly": RegraduationMap("poly", g_poly, "3*p^2 - 2*p^3"),
        "alt": RegraduationMap(
            "alt", g_alt, "sin^2((pi/2)*(1/2 + sin(pi*(p - 1/2))/2))"
        ),
    }


def catalog(
    grid_size: int = DEFAULT_GRID_SIZE, tol: float = DEFAULT_TOL
) -> list[dict]:
    """Certified catalog of the built-in maps, in serializable form."""
    return [
        certify(m, grid_size, tol).to_dict() for m in builtin_maps().values()
    ]


# Plot data: the three closed-form maps on a fixed 1001-point grid,
# 12 significant digits, byte-stable across runs.
PLOT_ROW_COUNT = 1001
PLOT_HEADER = "p,g_czachor,g_poly,g_alt"


def plot_rows() -> list[tuple[float, float, float, float]]:
    rows = []
    for i in range(PLOT_ROW_COUNT):
        p = i / (PLOT_ROW_COUNT - 1)
        rows.append((p, g_czachor(p), g_poly(p), g_alt(p)))
    return rows


def format_plot_csv() -> str:
    lines = [PLOT_HEADER]
    for row in plot_rows():
        lines.append(",".join(f"{x:.12g}" for x in row))
    return "\n".join(lines) + "\n"
