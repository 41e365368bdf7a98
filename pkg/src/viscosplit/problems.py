"""Ready-made mappings and problem instances.

The worked mappings are small enough to verify by hand: halving maps in one
and two dimensions and a scalar oscillation map that keeps changing the side
it sends points to.  The instance builders combine them with projectable
feasible sets, an affine forward operator, and a normal-cone inclusion, so
every catalog instance has a known solution and certifiable audit points.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Callable

import numpy as np

from .hilbert import Ball, Box, ConvexSet, WholeSpace, as_vector
from .monotone import NormalCone, SingleOp, ZeroOperator, affine_op, identity_op, zero_op
from .schedules import Schedule, ViscosityParams, default_schedule
from .setvalued import (KIND_DEMICONTRACTIVE, KIND_NONEXPANSIVE, MultiMap,
                        SelectionRule, Singleton)
from .solvers import ProblemInstance

#: Lipschitz constant declared for an identically-zero contraction term, kept
#: strictly positive because the margin conditions divide by it being below
#: tau; the audits are insensitive to its exact tiny value.
ZERO_CONTRACTION_LIPSCHITZ = 1e-6


def scaling_map(scale: float, dim: int, beta: float = 0.5,
                name: str = "") -> MultiMap:
    """T(x) = {scale * x}; for |scale| < 1 the only fixed point is 0."""
    if not abs(scale) < 1.0:
        raise ValueError("scaling_map needs |scale| < 1 for a fixed point at 0")
    return MultiMap(lambda x: Singleton(scale * x), KIND_DEMICONTRACTIVE,
                    beta, fixed_points=(np.zeros(dim),),
                    name=name or f"scale({scale})")


def identity_map(dim: int) -> MultiMap:
    """T(x) = {x}; every point is fixed."""
    return MultiMap(lambda x: Singleton(x), KIND_NONEXPANSIVE,
                    fixed_points=(np.zeros(dim),), name="identity")


def make_example1(beta: float = 0.5) -> MultiMap:
    """The scalar halving map T(x) = {x/2}, declared demicontractive."""
    return scaling_map(0.5, 1, beta, name="halving_1d")


def make_example2(beta: float = 0.5) -> MultiMap:
    """The planar halving map T(x) = {x/2} on R^2."""
    return scaling_map(0.5, 2, beta, name="halving_2d")


def make_example3(beta: float = 0.5) -> MultiMap:
    """The scalar oscillation map T(x) = {(2/3) x sin(1/x)}, T(0) = {0}.

    The factor (2/3) sin(1/x) stays in [-2/3, 2/3], so 0 is the only fixed
    point and the map is quasi-nonexpansive there, hence demicontractive
    for every constant in [0, 1).
    """

    def image(x):
        v = float(x[0])
        if v == 0.0:
            return Singleton(np.zeros(1))
        return Singleton(np.array([(2.0 / 3.0) * v * np.sin(1.0 / v)]))

    return MultiMap(image, KIND_DEMICONTRACTIVE, beta,
                    fixed_points=(np.zeros(1),), name="oscillation_1d")


# --------------------------------------------------------------------------
# Instance builders
# --------------------------------------------------------------------------

def _contraction(dim: int, coef: float, offset) -> tuple[SingleOp, float]:
    if coef == 0.0 and offset is None:
        return zero_op(name="zero_contraction"), ZERO_CONTRACTION_LIPSCHITZ
    op = affine_op(coef, offset, dim, name="affine_contraction")
    return op, max(abs(coef), ZERO_CONTRACTION_LIPSCHITZ)


def make_inclusion_instance(dim: int = 1, feasible: ConvexSet | None = None,
                            anchor=None, scale: float = 0.5,
                            beta: float = 0.5, phi_coef: float = 0.0,
                            phi_offset=None, gamma: float = 0.25,
                            eta: float = 1.0,
                            selection: SelectionRule = SelectionRule.METRIC,
                            maps: tuple | None = None,
                            name: str = "inclusion") -> ProblemInstance:
    """A normal-cone inclusion coupled with three multivalued mappings.

    The forward operator is x -> x - anchor (inverse strongly monotone with
    modulus 1), the inclusion part is the normal cone of ``feasible``, so
    the splitting solutions are exactly {P(anchor)}.  The mappings default
    to three copies of the scaling map; when P(anchor) is also their common
    fixed point it becomes a certified audit point of the instance.
    """
    if feasible is None:
        feasible = Box(-np.ones(dim), np.ones(dim))
    anchor = (np.zeros(dim) if anchor is None else as_vector(anchor, dim))
    if maps is None:
        maps = tuple(scaling_map(scale, dim, beta) for _ in range(3))
    contraction, b = _contraction(dim, phi_coef, phi_offset)
    params = ViscosityParams(gamma=gamma, eta=eta, k=1.0, L=1.0, b=b)
    solution = feasible.project(anchor)
    instance = ProblemInstance(
        name=name, dim=dim, feasible=feasible,
        forward=affine_op(1.0, -anchor, dim, name="shifted_identity"),
        inclusion=NormalCone(feasible),
        t1=maps[0], t2=maps[1], t3=maps[2],
        contraction=contraction, strong=identity_op(),
        params=params, selection=selection,
        known_solution=solution,
        default_start=0.9 * np.ones(dim))
    if instance.certify_common_point(solution):
        instance = replace(instance, known_common_points=(solution,))
    return instance


def make_box_instance(dim: int = 1, scale: float = 0.5,
                      **overrides) -> ProblemInstance:
    """Inclusion over the unit box [-1, 1]^d with halving-style mappings."""
    return make_inclusion_instance(
        dim=dim, feasible=Box(-np.ones(dim), np.ones(dim)), scale=scale,
        name="inclusion_box", **overrides)


def make_ball_instance(dim: int = 2, scale: float = 0.5,
                       **overrides) -> ProblemInstance:
    """Inclusion over a ball through the origin; the solution sits on its
    boundary, which exercises the projection in earnest."""
    feasible = Ball(np.ones(dim), float(np.sqrt(dim)))
    inst = make_inclusion_instance(
        dim=dim, feasible=feasible, scale=scale, name="inclusion_ball",
        **overrides)
    return replace(inst, default_start=0.75 * np.ones(dim))


def make_trivial_instance(dim: int = 1) -> ProblemInstance:
    """Identity mappings, zero operators, whole space.

    Every point is a common solution, so the iterate just contracts toward
    the origin by the factor 1 - alpha_n*(1 - mu_n) each step.  Useful as
    an exactly-predictable regression instance.
    """
    contraction, b = _contraction(dim, 0.0, None)
    params = ViscosityParams(gamma=0.25, eta=1.0, k=1.0, L=1.0, b=b)
    return ProblemInstance(
        name="trivial_collapse", dim=dim, feasible=WholeSpace(),
        forward=zero_op(), inclusion=ZeroOperator(),
        t1=identity_map(dim), t2=identity_map(dim), t3=identity_map(dim),
        contraction=contraction, strong=identity_op(),
        params=params,
        known_solution=np.zeros(dim),
        known_common_points=(np.zeros(dim), np.ones(dim), -np.ones(dim)),
        default_start=np.ones(dim))


def make_oscillation_instance(beta: float = 0.5) -> ProblemInstance:
    """The oscillation map on [-1, 1] with a pure normal-cone inclusion."""
    feasible = Box(-np.ones(1), np.ones(1))
    osc = make_example3(beta)
    contraction, b = _contraction(1, 0.0, None)
    params = ViscosityParams(gamma=0.25, eta=1.0, k=1.0, L=1.0, b=b)
    return ProblemInstance(
        name="sine_oscillation", dim=1, feasible=feasible,
        forward=zero_op(), inclusion=NormalCone(feasible),
        t1=osc, t2=osc, t3=osc,
        contraction=contraction, strong=identity_op(),
        params=params,
        known_solution=np.zeros(1),
        known_common_points=(np.zeros(1),),
        default_start=np.array([0.9]))


def catalog() -> dict[str, Callable[..., ProblemInstance]]:
    """Instance builders by id, as accepted by the command line."""
    return {
        "inclusion_box": make_box_instance,
        "inclusion_ball": make_ball_instance,
        "trivial_collapse": make_trivial_instance,
        "sine_oscillation": make_oscillation_instance,
    }


def load_instance(instance_id: str, **overrides) -> ProblemInstance:
    builders = catalog()
    if instance_id not in builders:
        known = ", ".join(sorted(builders))
        raise KeyError(f"unknown instance {instance_id!r}; known: {known}")
    return builders[instance_id](**overrides)


def demicontractivity_bound(instance: ProblemInstance) -> float:
    """Largest demicontractivity constant among the three mappings."""
    consts = [t.constant or 0.0 for t in instance.maps
              if t.kind == KIND_DEMICONTRACTIVE]
    return max(consts, default=0.0)


def default_schedule_for(instance: ProblemInstance,
                         **overrides) -> Schedule:
    """The default admissible schedule matched to an instance's constants."""
    ism = instance.forward.inverse_strong_monotonicity
    if ism is None or ism <= 0:
        ism = 1.0
    return default_schedule(instance.params,
                            beta_demi=demicontractivity_bound(instance),
                            alpha_ism=ism, **overrides)


def grid_points(lo: float, hi: float, count: int, dim: int) -> np.ndarray:
    """A deterministic lattice of ``count`` points in [lo, hi]^dim.

    One dimension is a plain linspace; higher dimensions take the first
    ``count`` points of the smallest per-axis lattice that reaches it.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if dim == 1:
        return np.linspace(lo, hi, count).reshape(count, 1)
    per_axis = int(np.ceil(count ** (1.0 / dim)))
    axes = [np.linspace(lo, hi, per_axis)] * dim
    mesh = np.meshgrid(*axes, indexing="ij")
    lattice = np.stack([m.ravel() for m in mesh], axis=1)
    return lattice[:count]
