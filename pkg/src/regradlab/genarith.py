"""Bijection-induced arithmetic with strict partiality semantics.

A strictly monotone bijection f between two real intervals induces an
addition a (+) b = f^-1(f(a) + f(b)) and a multiplication
a (*) b = f^-1(f(a) * f(b)).  Whenever the combined value f(a) op f(b)
escapes the image of f, the induced operation is undefined; this module
makes that partiality explicit instead of silently extending the inverse.

Built-in generators:

* ``identity``  -- ordinary arithmetic on the real line,
* ``artanh``    -- rapidity addition on (-1, 1); the induced (+) is the
  relativistic velocity composition (a + b) / (1 + a*b),
* ``cube``      -- x -> x**3 on (-1, 1), whose image is not closed under
  addition; the canonical example of closure loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NoExtensionError

# Operands this close to an open endpoint are rejected rather than clamped:
# the forward map may diverge there (artanh does).
OPEN_EDGE_EPSILON = 1e-9

# Combined values within this distance of a finite image boundary count as
# inside, so sums landing exactly on a boundary never flap between Defined
# and OutOfImage.
IMAGE_BOUNDARY_TOL = 1e-12

# Unbounded interval directions are truncated to +/- this value when a
# finite window is needed (sampling, verification grids).
SAMPLING_BOUND = 1e3


def _cbrt(y: float) -> float:
    """Sign-preserving real cube root."""
    return float(np.cbrt(y))


@dataclass(frozen=True)
class Interval:
    """A real interval with independently open or closed endpoints."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def contains(self, x: float, open_margin: float = 0.0) -> bool:
        """Membership test; open endpoints exclude a margin of width
        ``open_margin`` as well as the endpoint itself."""
        if self.lo_open:
            if not x > self.lo + open_margin:
                return False
        elif not x >= self.lo:
            return False
        if self.hi_open:
            return x < self.hi - open_margin
        return x <= self.hi

    def contains_with_tolerance(self, x: float, tol: float) -> bool:
        """Membership with an outward tolerance at finite endpoints,
        ignoring openness.  Used for image-membership tests on computed
        sums, where the open/closed distinction is below float noise."""
        lo = self.lo - tol if math.isfinite(self.lo) else self.lo
        hi = self.hi + tol if math.isfinite(self.hi) else self.hi
        return lo <= x <= hi

    def finite_window(
        self, bound: float = SAMPLING_BOUND, edge_epsilon: float = OPEN_EDGE_EPSILON
    ) -> tuple[float, float]:
        """A finite closed [lo, hi] window inside the interval: infinite
        directions truncated to ``bound``, open endpoints pulled inward by
        ``edge_epsilon``."""
        lo = max(self.lo, -bound)
        hi = min(self.hi, bound)
        if self.lo_open and math.isfinite(self.lo):
            lo = self.lo + edge_epsilon
        if self.hi_open and math.isfinite(self.hi):
            hi = self.hi - edge_epsilon
        return lo, hi

    def encloses(self, other: "Interval") -> bool:
        lo_ok = other.lo > self.lo or (
            other.lo == self.lo and (not self.lo_open or other.lo_open)
        )
        hi_ok = other.hi < self.hi or (
            other.hi == self.hi and (not self.hi_open or other.hi_open)
        )
        return lo_ok and hi_ok


REALS = Interval(-math.inf, math.inf, lo_open=True, hi_open=True)
UNIT_OPEN = Interval(-1.0, 1.0, lo_open=True, hi_open=True)


def _closed_under_addition(iv: Interval) -> bool:
    """Whether x + y stays in ``iv`` for all x, y in ``iv``."""
    if iv.lo == -math.inf and iv.hi == math.inf:
        return True
    if iv.lo >= 0.0 and iv.hi == math.inf:
        return True
    if iv.hi <= 0.0 and iv.lo == -math.inf:
        return True
    return False


@dataclass(frozen=True)
class BijectionSpec:
    """A named invertible real map generating an induced arithmetic.

    ``forward`` maps ``domain`` onto ``image``; ``inverse`` is its inverse
    on ``image``.  ``inverse_extension``, when declared, extends the
    inverse beyond ``image`` (e.g. the real cube root on all of R) and is
    only used when an induced operation is explicitly asked to extend.
    ``image_closed_under_addition`` is a declared property; closure_probe
    checks it empirically.
    """

    name: str
    domain: Interval
    image: Interval
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    image_closed_under_addition: bool
    inverse_extension: Optional[Callable[[float], float]] = None


class ResultKind(str, Enum):
    DEFINED = "defined"
    OUT_OF_IMAGE = "out_of_image"
    EXTENDED_INVERSE = "extended_inverse"


@dataclass(frozen=True)
class PartialResult:
    """Outcome of an induced operation.

    ``value`` is set for Defined and ExtendedInverse results; ``raw_sum``
    (the uninverted combination f(a) op f(b)) is set whenever the
    combination left the image, i.e. for OutOfImage and ExtendedInverse.
    """

    kind: ResultKind
    value: Optional[float] = None
    raw_sum: Optional[float] = None

    @property
    def defined(self) -> bool:
        return self.kind is ResultKind.DEFINED

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "raw_sum": self.raw_sum,
        }


@dataclass(frozen=True)
class ClosureReport:
    """Empirical closure check of an induced addition."""

    samples_tested: int
    violations: int
    example_violation: Optional[tuple[float, float]] = None
    violation_fraction: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "violation_fraction", self.violations / self.samples_tested
        )

    def to_dict(self) -> dict:
        example = (
            None
            if self.example_violation is None
            else [self.example_violation[0], self.example_violation[1]]
        )
        return {
            "samples_tested": self.samples_tested,
            "violations": self.violations,
            "violation_fraction": self.violation_fraction,
            "example_violation": example,
        }


def _require_operand(f: BijectionSpec, x: float, label: str) -> None:
    if not f.domain.contains(x, open_margin=OPEN_EDGE_EPSILON):
        raise DomainError(
            f"operand {label}={x!r} outside domain of '{f.name}' "
            f"(open endpoints carry a {OPEN_EDGE_EPSILON:g} exclusion margin)"
        )


def _induced(
    f: BijectionSpec, a: float, b: float, combine, extend: bool
) -> PartialResult:
    _require_operand(f, a, "a")
    _require_operand(f, b, "b")
    raw = combine(f.forward(a), f.forward(b))
    if f.image.contains_with_tolerance(raw, IMAGE_BOUNDARY_TOL):
        return PartialResult(ResultKind.DEFINED, value=f.inverse(raw))
    if not extend:
        return PartialResult(ResultKind.OUT_OF_IMAGE, raw_sum=raw)
    if f.inverse_extension is None:
        raise NoExtensionError(
            f"'{f.name}' declares no inverse extension beyond its image"
        )
    return PartialResult(
        ResultKind.EXTENDED_INVERSE, value=f.inverse_extension(raw), raw_sum=raw
    )


def induced_add(
    f: BijectionSpec, a: float, b: float, extend: bool = False
) -> PartialResult:
    """a (+) b = f^-1(f(a) + f(b)), partial when the sum escapes the image."""
    return _induced(f, a, b, lambda x, y: x + y, extend)


def induced_mul(
    f: BijectionSpec, a: float, b: float, extend: bool = False
) -> PartialResult:
    """a (*) b = f^-1(f(a) * f(b)), with the same partiality contract as
    induced_add."""
    return _induced(f, a, b, lambda x, y: x * y, extend)


def closure_probe(
    f: BijectionSpec, n: int, seed: int, sampling_bound: float = SAMPLING_BOUND
) -> ClosureReport:
    """Sample n pairs from the domain and count additive closure failures.

    Sampling algorithm (fixed so reports are reproducible): a PCG64
    generator (numpy ``default_rng(seed)``) draws an n-by-2 array of
    uniform doubles in [0, 1) in row-major order; row i maps affinely to
    the pair (a_i, b_i) over the finite sampling window of the domain
    (open endpoints pulled in by 1e-9, unbounded directions truncated to
    ``sampling_bound``).  A pair violates closure when f(a) + f(b) falls
    outside the image interval by more than the boundary tolerance.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = f.domain.finite_window(sampling_bound)
    u = np.random.default_rng(seed).random((n, 2))
    pairs = lo + (hi - lo) * u
    violations = 0
    example: Optional[tuple[float, float]] = None
    for a, b in pairs:
        raw = f.forward(float(a)) + f.forward(float(b))
        if not f.image.contains_with_tolerance(raw, IMAGE_BOUNDARY_TOL):
            violations += 1
            if example is None:
                example = (float(a), float(b))
    return ClosureReport(
        samples_tested=n, violations=violations, example_violation=example
    )


_MAX_DIAGNOSTICS = 10


def verify_bijection(
    f: BijectionSpec,
    grid_size: int,
    round_trip_tol: float = 1e-12,
    edge_epsilon: float = OPEN_EDGE_EPSILON,
    sampling_bound: float = SAMPLING_BOUND,
) -> tuple[bool, list[str]]:
    """Grid check that ``f`` really is a strictly monotone bijection.

    Verifies |inverse(forward(x)) - x| <= round_trip_tol and strict
    monotonicity of ``forward`` on a uniform grid over the domain window.
    Returns (ok, diagnostics); diagnostics are truncated after the first
    few failures.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    lo, hi = f.domain.finite_window(sampling_bound, edge_epsilon)
    xs = np.linspace(lo, hi, grid_size)
    diagnostics: list[str] = []
    suppressed = 0

    def diagnose(msg: str) -> None:
        nonlocal suppressed
        if len(diagnostics) < _MAX_DIAGNOSTICS:
            diagnostics.append(msg)
        else:
            suppressed += 1

    values: list[float] = []
    for x in xs:
        x = float(x)
        try:
            y = f.forward(x)
        except Exception as exc:  # diagnose, never propagate
            diagnose(f"forward failed at x={x!r}: {exc}")
            continue
        values.append(y)
        try:
            back = f.inverse(y)
        except Exception as exc:
            diagnose(f"inverse failed at f({x!r})={y!r}: {exc}")
            continue
        if not abs(back - x) <= round_trip_tol:
            diagnose(
                f"round trip |f^-1(f(x)) - x| = {abs(back - x):.3e} "
                f"> {round_trip_tol:g} at x={x!r}"
            )

    diffs = np.diff(values)
    if len(values) < 2:
        diagnose("too few evaluable grid points to assess monotonicity")
    elif not (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
        flat = int(np.sum(diffs == 0.0))
        diagnose(
            f"forward not strictly monotone on grid "
            f"({flat} flat step(s), sign changes present)"
        )
    if suppressed:
        diagnostics.append(f"... {suppressed} further failure(s) suppressed")
    return (not diagnostics, diagnostics)


def invert(f: BijectionSpec, name: Optional[str] = None) -> BijectionSpec:
    """The inverse bijection: swaps domain with image."""
    return BijectionSpec(
        name=name or f"{f.name}_inverse",
        domain=f.image,
        image=f.domain,
        forward=f.inverse,
        inverse=f.forward,
        image_closed_under_addition=_closed_under_addition(f.domain),
    )


def compose(
    outer: BijectionSpec, inner: BijectionSpec, name: Optional[str] = None
) -> BijectionSpec:
    """outer o inner, defined when the inner image fits the outer domain."""
    if not outer.domain.encloses(inner.image):
        raise ValueError(
            f"cannot compose: image of '{inner.name}' is not contained in "
            f"the domain of '{outer.name}'"
        )
    return BijectionSpec(
        name=name or f"{outer.name}.{inner.name}",
        domain=inner.domain,
        image=outer.image,
        forward=lambda x: outer.forward(inner.forward(x)),
        inverse=lambda y: inner.inverse(outer.inverse(y)),
        image_closed_under_addition=outer.image_closed_under_addition,
    )


def transport(src: BijectionSpec, dst: BijectionSpec, name: Optional[str] = None) -> BijectionSpec:
    """The level-translation map dst o src^-1 between two generators that
    share the same base representation."""
    return compose(dst, invert(src), name=name or f"{src.name}->{dst.name}")


def _identity(x: float) -> float:
    return x


BUILTIN_BIJECTIONS: dict[str, BijectionSpec] = {
    "identity": BijectionSpec(
        name="identity",
        domain=REALS,
        image=REALS,
        forward=_identity,
        inverse=_identity,
        image_closed_under_addition=True,
    ),
    "artanh": BijectionSpec(
        name="artanh",
        domain=UNIT_OPEN,
        image=REALS,
        forward=math.atanh,
        inverse=math.tanh,
        image_closed_under_addition=True,
    ),
    "cube": BijectionSpec(
        name="cube",
        domain=UNIT_OPEN,
        image=UNIT_OPEN,
        forward=lambda x: x**3,
        inverse=_cbrt,
        image_closed_under_addition=False,
        inverse_extension=_cbrt,
    ),
}


def get_bijection(name: str) -> BijectionSpec:
    try:
        return BUILTIN_BIJECTIONS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_BIJECTIONS))
        raise KeyError(f"unknown bijection '{name}' (built-ins: {known})") from None
