"""Multivalued mappings with closed images and their class audits.

A mapping T assigns to each point a nonempty closed bounded image, here one
of: a singleton, a finite point set, or a closed ball.  Distances between
images use the Hausdorff metric.  The audit functions sample-check the
defining inequality of a declared mapping class (demicontractive,
quasi-nonexpansive, strictly pseudocontractive) and report the worst slack
together with a witness pair, never just a bare boolean.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .hilbert import DEFAULT_TOL, DimensionMismatch, as_vector, norm


class UnsupportedPairing(TypeError):
    """Hausdorff distance requested for an image pair with no closed form."""


# --------------------------------------------------------------------------
# Image types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Singleton:
    point: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", as_vector(self.point))


@dataclass(frozen=True)
class FiniteSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(as_vector(p) for p in self.points)
        if not pts:
            raise ValueError("finite image must be nonempty")
        if len({p.size for p in pts}) != 1:
            raise DimensionMismatch("points in one image must share a dimension")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class BallImage:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0:
            raise ValueError("image radius must be nonnegative")


SetImage = Singleton | FiniteSet | BallImage


def distance_to_set(x, S: SetImage) -> float:
    """d(x, S) = min over s in S of ||x - s||."""
    xv = as_vector(x)
    if isinstance(S, Singleton):
        return norm(xv - S.point)
    if isinstance(S, FiniteSet):
        return min(norm(xv - p) for p in S.points)
    if isinstance(S, BallImage):
        return max(norm(xv - S.center) - S.radius, 0.0)
    raise TypeError(f"unknown image type {type(S).__name__}")


def _as_ball(S: SetImage) -> BallImage | None:
    if isinstance(S, BallImage):
        return S
    if isinstance(S, Singleton):
        return BallImage(S.point, 0.0)
    return None


def hausdorff(A: SetImage, B: SetImage) -> float:
    """Hausdorff distance between two images.

    Finite/finite pairs use the max-min formula directly (singletons count
    as one-point finite sets).  Pairs involving a ball use the closed form
    for two balls, max(d + r1 - r2, d + r2 - r1, 0) with d the distance of
    the centers; a singleton pairs with a ball as a radius-0 ball.  A finite
    set with more than one point against a ball has no closed form here and
    raises :class:`UnsupportedPairing`.
    """
    ball_a, ball_b = _as_ball(A), _as_ball(B)
    if ball_a is not None and ball_b is not None:
        d = norm(ball_a.center - ball_b.center)
        return max(d + ball_a.radius - ball_b.radius,
                   d + ball_b.radius - ball_a.radius, 0.0)

    def pts(S):
        if isinstance(S, Singleton):
            return (S.point,)
        if isinstance(S, FiniteSet):
            return S.points
        return None

    pa, pb = pts(A), pts(B)
    if pa is None or pb is None:
        raise UnsupportedPairing(
            f"no closed-form Hausdorff distance for "
            f"{type(A).__name__} vs {type(B).__name__}")
    sup_a = max(min(norm(a - b) for b in pb) for a in pa)
    sup_b = max(min(norm(b - a) for a in pa) for b in pb)
    return max(sup_a, sup_b)


# --------------------------------------------------------------------------
# Selection rules
# --------------------------------------------------------------------------

class SelectionRule(Enum):
    """How to pick one point out of an image.

    METRIC picks the nearest point to the query (ties in a finite image go
    to the lowest index; the center of a ball is its own nearest point).
    FIRST_ENUMERATED ignores the query: first listed point of a finite
    image, the center of a ball.
    """

    METRIC = "metric"
    FIRST_ENUMERATED = "first_enumerated"


def select_from(S: SetImage, rule: SelectionRule, x) -> np.ndarray:
    xv = as_vector(x)
    if isinstance(S, Singleton):
        return S.point
    if isinstance(S, FiniteSet):
        if rule is SelectionRule.FIRST_ENUMERATED:
            return S.points[0]
        dists = [norm(xv - p) for p in S.points]
        return S.points[int(np.argmin(dists))]
    if isinstance(S, BallImage):
        if rule is SelectionRule.FIRST_ENUMERATED:
            return S.center
        gap = xv - S.center
        d = norm(gap)
        if d <= S.radius:
            return xv
        return S.center + (S.radius / d) * gap
    raise TypeError(f"unknown image type {type(S).__name__}")


# --------------------------------------------------------------------------
# Multivalued mappings
# --------------------------------------------------------------------------

KIND_DEMICONTRACTIVE = "demicontractive"
KIND_QUASI_NONEXPANSIVE = "quasi_nonexpansive"
KIND_STRICTLY_PSEUDOCONTRACTIVE = "strictly_pseudocontractive"
KIND_NONEXPANSIVE = "nonexpansive"


@dataclass(frozen=True)
class MultiMap:
    """A multivalued mapping with a declared class.

    ``image`` maps a point to a :data:`SetImage`.  ``constant`` is the class
    modulus: beta in [0, 1) for demicontractive maps, k in [0, 1] for
    strictly pseudocontractive ones, unused otherwise.  ``fixed_points``
    lists known members of Fix(T) for audits; it need not be exhaustive.
    """

    image: Callable[[np.ndarray], SetImage]
    kind: str = KIND_DEMICONTRACTIVE
    constant: float | None = None
    fixed_points: tuple = ()
    name: str = ""

    def __post_init__(self):
        kinds = (KIND_DEMICONTRACTIVE, KIND_QUASI_NONEXPANSIVE,
                 KIND_STRICTLY_PSEUDOCONTRACTIVE, KIND_NONEXPANSIVE)
        if self.kind not in kinds:
            raise ValueError(f"unknown mapping kind {self.kind!r}")
        if self.kind == KIND_DEMICONTRACTIVE:
            c = self.constant
            if c is None or not 0.0 <= c < 1.0:
                raise ValueError("demicontractive maps need constant in [0, 1)")
        object.__setattr__(
            self, "fixed_points", tuple(as_vector(p) for p in self.fixed_points))

    def __call__(self, x) -> SetImage:
        return self.image(as_vector(x))


def select(T: MultiMap, rule: SelectionRule, x) -> np.ndarray:
    """One point of T(x) under the given selection rule."""
    return select_from(T(x), rule, as_vector(x))


# --------------------------------------------------------------------------
# Class audits
# --------------------------------------------------------------------------

@dataclass
class AuditResult:
    """Outcome of a sampled inequality audit.

    ``worst_slack`` is max(lhs - rhs) over all tested combinations, so any
    positive value beyond the tolerance is a violation.  ``witness`` holds
    the arguments achieving it.  ``note`` flags degenerate situations such
    as an empty sample or a vacuously true check.
    """

    name: str
    passed: bool
    worst_slack: float
    witness: tuple | None = None
    checked: int = 0
    note: str = ""
    violations: list = field(default_factory=list)


def _fixed_point_pairs(T: MultiMap, points: Sequence) -> list[tuple[np.ndarray, np.ndarray]]:
    if not T.fixed_points:
        raise ValueError("audit needs at least one known fixed point")
    return [(as_vector(x), q) for x in points for q in T.fixed_points]


def check_demicontractive(T: MultiMap, beta: float, points: Sequence,
                          tol: float = DEFAULT_TOL) -> AuditResult:
    """Audit  H(T x, T q)^2 <= ||x - q||^2 + beta * d(x, T x)^2  on a sample.

    q ranges over the declared fixed points of T; for those the left side
    reduces to sup over y in T(x) of ||y - q||^2 whenever T q = {q}, which is
    exactly the Hausdorff form used here.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError("demicontractive constant must lie in [0, 1)")
    worst, witness, count = -np.inf, None, 0
    violations = []
    for x, q in _fixed_point_pairs(T, points):
        img = T(x)
        lhs = hausdorff(img, Singleton(q)) ** 2
        rhs = norm(x - q) ** 2 + beta * distance_to_set(x, img) ** 2
        slack = lhs - rhs
        count += 1
        if slack > worst:
            worst, witness = slack, (x, q)
        if slack > tol:
            violations.append((x, q, lhs, rhs))
    return AuditResult("demicontractive", not violations, worst, witness,
                       count, violations=violations)


def check_quasi_nonexpansive(T: MultiMap, points: Sequence,
                             tol: float = DEFAULT_TOL) -> AuditResult:
    """Audit  H(T x, T q) <= ||x - q||  on a sample, q a fixed point."""
    worst, witness, count = -np.inf, None, 0
    violations = []
    for x, q in _fixed_point_pairs(T, points):
        lhs = hausdorff(T(x), Singleton(q))
        rhs = norm(x - q)
        slack = lhs - rhs
        count += 1
        if slack > worst:
            worst, witness = slack, (x, q)
        if slack > tol:
            violations.append((x, q, lhs, rhs))
    return AuditResult("quasi_nonexpansive", not violations, worst, witness,
                       count, violations=violations)


def check_strictly_pseudocontractive(T: MultiMap, k: float, pairs: Sequence,
                                     tol: float = DEFAULT_TOL) -> AuditResult:
    """Audit  H(T x, T y)^2 <= ||x - y||^2 + k * d((x - y), (Tx - Ty))^2.

    The displacement term is evaluated through selections: with u in T(x)
    and w in T(y) the audited right side uses ||(x - u) - (y - w)||^2
    minimized over the available selections, which upper-bounds the true
    inequality violation.  ``k`` may be any value in [0, 1]; k = 1 is
    accepted and noted, since the class is then only pseudocontractive
    rather than strictly so.
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError("pseudocontractive constant must lie in [0, 1]")
    note = "k = 1 is the non-strict boundary case" if k == 1.0 else ""
    worst, witness, count = -np.inf, None, 0
    violations = []
    for x, y in pairs:
        xv, yv = as_vector(x), as_vector(y)
        img_x, img_y = T(xv), T(yv)
        lhs = hausdorff(img_x, img_y) ** 2
        disp = _min_displacement_gap(xv, yv, img_x, img_y)
        rhs = norm(xv - yv) ** 2 + k * disp ** 2
        slack = lhs - rhs
        count += 1
        if slack > worst:
            worst, witness = slack, (xv, yv)
        if slack > tol:
            violations.append((xv, yv, lhs, rhs))
    return AuditResult("strictly_pseudocontractive", not violations, worst,
                       witness, count, note=note, violations=violations)


def _enumerable(S: SetImage) -> tuple:
    if isinstance(S, Singleton):
        return (S.point,)
    if isinstance(S, FiniteSet):
        return S.points
    raise UnsupportedPairing(
        "displacement audit needs enumerable images, got a ball")


def _min_displacement_gap(x, y, img_x, img_y) -> float:
    return min(norm((x - u) - (y - w))
               for u in _enumerable(img_x) for w in _enumerable(img_y))
