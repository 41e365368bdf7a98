"""Iterative solvers for the coupled inclusion / common-fixed-point problem.

The problem: find psi in the solution set of the monotone inclusion
0 in (Forward + Inclusion)(psi) that is also a fixed point of three
multivalued mappings T1, T2, T3.  Each iteration first takes one
forward-backward step, then averages through the mappings, and finally
applies a viscosity anchor step that combines a contraction phi and a
strongly monotone operator.

Four update rules share that skeleton:

  main               delta = J(psi - lam*Forward psi)
                     pi    = theta*delta + (1-theta)*v,   v in T1 delta
                     phi_p = beta*pi     + (1-beta)*u,    u in T2 pi
                     xi    = gamma*phi_p + (1-gamma)*z,   z in T3 phi_p
                     psi+  = P_K(alpha*g*phi(psi) + mu*xi
                                 + (1-mu)*(psi - eta*alpha*Strong psi))

  sow                same first three lines, then
                     psi+  = P_K(alpha*g*phi(psi) + (I - eta*alpha*Strong) pi)
                     (anchoring at phi_p instead of pi is a config switch)

  fc                 all four averaging lines, then
                     psi+  = P_K(alpha*g*phi(psi) + (I - eta*alpha*Strong) xi)

  forward_backward   psi+  = J(psi - lam*Forward psi)

Stage points are stored on the state they produce, together with the
previous iterate, so every recorded state carries its own monotonicity
chain ||xi - q|| <= ||phi_p - q|| <= ||pi - q|| <= ||delta - q|| <=
||psi_prev - q||, auditable against any certified common point q.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .hilbert import ConvexSet, as_vector, inner, norm
from .monotone import MaxMonotone, SingleOp, fixed_point_residual, forward_backward_step
from .schedules import Schedule, ValidationReport, ViscosityParams, validate
from .setvalued import (MultiMap, SelectionRule, Singleton, distance_to_set,
                        hausdorff, select_from)

#: Iterates beyond this norm terminate the run as divergent.
DIVERGENCE_LIMIT = 1e12

#: Absolute tolerance for the per-iteration inequality audits.
AUDIT_TOL = 1e-10

#: Absolute tolerance when certifying a point as a common solution.
CERTIFY_TOL = 1e-8

ALGORITHMS = ("main", "sow", "fc", "forward_backward")


class ScheduleValidationError(ValueError):
    """A schedule failed validation; carries the full report."""

    def __init__(self, report: ValidationReport):
        self.report = report
        names = ", ".join(c.name for c in report.failures())
        super().__init__(f"schedule rejected: {names}")


class _Diverged(Exception):
    """Internal: a step produced a non-finite point."""


@dataclass(frozen=True)
class ProblemInstance:
    """Everything the iteration needs, with declared (auditable) constants.

    ``known_common_points`` lists candidate members of the full solution
    set; the solver certifies them before using them in audits.  With
    ``strict_fixed_points`` the certification additionally demands
    T_i(q) = {q} rather than just q in T_i(q), which the monotonicity
    chain requires.
    """

    name: str
    dim: int
    feasible: ConvexSet
    forward: SingleOp
    inclusion: MaxMonotone
    t1: MultiMap
    t2: MultiMap
    t3: MultiMap
    contraction: SingleOp
    strong: SingleOp
    params: ViscosityParams
    selection: SelectionRule = SelectionRule.METRIC
    known_solution: np.ndarray | None = None
    known_common_points: tuple = ()
    strict_fixed_points: bool = True
    default_start: np.ndarray | None = None

    def __post_init__(self):
        if self.known_solution is not None:
            object.__setattr__(self, "known_solution",
                               as_vector(self.known_solution, self.dim))
        object.__setattr__(self, "known_common_points",
                           tuple(as_vector(q, self.dim)
                                 for q in self.known_common_points))
        if self.default_start is not None:
            object.__setattr__(self, "default_start",
                               as_vector(self.default_start, self.dim))

    @property
    def maps(self) -> tuple[MultiMap, MultiMap, MultiMap]:
        return (self.t1, self.t2, self.t3)

    def certification_lambda(self) -> float:
        ism = self.forward.inverse_strong_monotonicity
        if ism is None or ism <= 0:
            ism = 1.0
        return min(1.0, 2.0 * ism) / 2.0

    def common_point_defects(self, q, tol: float = CERTIFY_TOL) -> list[str]:
        """Reasons q is not certifiable as a common solution; empty = good."""
        qv = as_vector(q, self.dim)
        lam = self.certification_lambda()
        defects = []
        res = fixed_point_residual(self.inclusion, self.forward, lam, qv)
        if res > tol:
            defects.append(f"forward-backward residual {res:g} > {tol:g}")
        for i, t in enumerate(self.maps, start=1):
            img = t(qv)
            d = distance_to_set(qv, img)
            if d > tol:
                defects.append(f"d(q, T{i} q) = {d:g} > {tol:g}")
            elif self.strict_fixed_points:
                h = hausdorff(img, Singleton(qv))
                if h > tol:
                    defects.append(
                        f"T{i} q is not the singleton {{q}}: H = {h:g}")
        return defects

    def certify_common_point(self, q, tol: float = CERTIFY_TOL) -> bool:
        return not self.common_point_defects(q, tol)


@dataclass(frozen=True)
class IterState:
    """One iterate with the stage points of the step that produced it.

    ``psi_prev`` is the iterate the step started from (equal to ``psi`` at
    n = 0, where the stage points are mirrors of the start).  Residuals are
    d(stage, T_i(stage)); ``fb_residual`` is measured at ``psi`` itself.
    ``alpha``/``mu`` are nan when the rule does not use them.
    """

    n: int
    psi: np.ndarray
    psi_prev: np.ndarray
    delta: np.ndarray
    pi: np.ndarray
    phi: np.ndarray
    xi: np.ndarray
    residual_t1: float
    residual_t2: float
    residual_t3: float
    fb_residual: float
    dist_to_solution: float
    alpha: float
    mu: float
    lam: float
    fejer_ok: bool | None = None


@dataclass
class RunReport:
    algorithm: str
    instance: str
    trajectory: list
    iterations: int
    terminated_by: str
    final: np.ndarray
    vi_residual: float
    fejer_violations: int
    bound_violations: int
    audit_points: int
    problem: ProblemInstance
    schedule: Schedule

    def summary_dict(self) -> dict:
        final_dist = self.trajectory[-1].dist_to_solution
        return {
            "instance": self.instance,
            "algorithm": self.algorithm,
            "iterations": self.iterations,
            "terminated_by": self.terminated_by,
            "final_point": [float(v) for v in self.final],
            "final_distance_to_solution":
                None if np.isnan(final_dist) else float(final_dist),
            "vi_residual":
                None if np.isnan(self.vi_residual) else float(self.vi_residual),
            "fejer_violations": int(self.fejer_violations),
            "bound_violations": int(self.bound_violations),
            "audit_points": int(self.audit_points),
        }


# --------------------------------------------------------------------------
# Steps
# --------------------------------------------------------------------------

def _selected_stage(t: MultiMap, rule: SelectionRule,
                    x: np.ndarray) -> tuple[np.ndarray, float]:
    img = t.image(x)
    return select_from(img, rule, x), distance_to_set(x, img)


def _finish(problem: ProblemInstance, state: IterState, psi_new: np.ndarray,
            delta, pi, phi_p, xi, residuals, alpha, mu, lam) -> IterState:
    for arr in (psi_new, delta, pi, phi_p, xi):
        if not np.all(np.isfinite(arr)):
            raise _Diverged
    fb = fixed_point_residual(problem.inclusion, problem.forward, lam, psi_new)
    dist = (np.nan if problem.known_solution is None
            else norm(psi_new - problem.known_solution))
    return IterState(
        n=state.n + 1, psi=psi_new, psi_prev=state.psi,
        delta=delta, pi=pi, phi=phi_p, xi=xi,
        residual_t1=residuals[0], residual_t2=residuals[1],
        residual_t3=residuals[2], fb_residual=fb,
        dist_to_solution=dist, alpha=alpha, mu=mu, lam=lam)


def _splitting_stages(problem: ProblemInstance, schedule: Schedule,
                      state: IterState, with_gamma: bool):
    """The forward-backward point and the averaged stage points.

    Uses sequence index n + 1 for the step leaving iterate n; sequences are
    defined from index 1.  When ``with_gamma`` is false the third averaging
    line is skipped and xi mirrors phi_p (its residual is still measured).
    """
    i = state.n + 1
    lam = schedule.lam(i)
    psi = state.psi
    rule = problem.selection
    delta = forward_backward_step(problem.inclusion, problem.forward, lam, psi)
    v, r1 = _selected_stage(problem.t1, rule, delta)
    th = schedule.theta(i)
    pi = th * delta + (1.0 - th) * v
    u, r2 = _selected_stage(problem.t2, rule, pi)
    be = schedule.beta(i)
    phi_p = be * pi + (1.0 - be) * u
    if with_gamma:
        z, r3 = _selected_stage(problem.t3, rule, phi_p)
        ga = schedule.gamma(i)
        xi = ga * phi_p + (1.0 - ga) * z
    else:
        r3 = distance_to_set(phi_p, problem.t3.image(phi_p))
        xi = phi_p
    return i, lam, delta, pi, phi_p, xi, (r1, r2, r3)


def step_main(problem: ProblemInstance, schedule: Schedule,
              state: IterState) -> IterState:
    """One step of the mu-mixed viscosity rule (the full anchor line)."""
    i, lam, delta, pi, phi_p, xi, res = _splitting_stages(
        problem, schedule, state, with_gamma=True)
    a, m = schedule.alpha(i), schedule.mu(i)
    p = problem.params
    psi = state.psi
    target = (a * p.gamma * problem.contraction(psi) + m * xi
              + (1.0 - m) * (psi - p.eta * a * problem.strong(psi)))
    psi_new = problem.feasible.project(target)
    return _finish(problem, state, psi_new, delta, pi, phi_p, xi, res,
                   alpha=a, mu=m, lam=lam)


def step_sow(problem: ProblemInstance, schedule: Schedule, state: IterState,
             use_phi: bool = False) -> IterState:
    """One step of the two-stage variant anchored at pi.

    The printed rule carries pi into the anchor line even though phi_p is
    the last averaged point; ``use_phi`` switches the carry to phi_p.
    """
    i, lam, delta, pi, phi_p, xi, res = _splitting_stages(
        problem, schedule, state, with_gamma=False)
    carried = phi_p if use_phi else pi
    a = schedule.alpha(i)
    p = problem.params
    target = (a * p.gamma * problem.contraction(state.psi)
              + carried - p.eta * a * problem.strong(carried))
    psi_new = problem.feasible.project(target)
    return _finish(problem, state, psi_new, delta, pi, phi_p, xi, res,
                   alpha=a, mu=np.nan, lam=lam)


def step_fc(problem: ProblemInstance, schedule: Schedule,
            state: IterState) -> IterState:
    """One step of the three-stage variant anchored at xi (no mu mixing)."""
    i, lam, delta, pi, phi_p, xi, res = _splitting_stages(
        problem, schedule, state, with_gamma=True)
    a = schedule.alpha(i)
    p = problem.params
    target = (a * p.gamma * problem.contraction(state.psi)
              + xi - p.eta * a * problem.strong(xi))
    psi_new = problem.feasible.project(target)
    return _finish(problem, state, psi_new, delta, pi, phi_p, xi, res,
                   alpha=a, mu=np.nan, lam=lam)


def step_forward_backward(problem: ProblemInstance, schedule: Schedule,
                          state: IterState) -> IterState:
    """One plain forward-backward step; stage points mirror the new iterate."""
    i = state.n + 1
    lam = schedule.lam(i)
    psi_new = forward_backward_step(problem.inclusion, problem.forward,
                                    lam, state.psi)
    if not np.all(np.isfinite(psi_new)):
        raise _Diverged
    res = tuple(distance_to_set(psi_new, t.image(psi_new))
                for t in problem.maps)
    return _finish(problem, state, psi_new, psi_new, psi_new, psi_new,
                   psi_new, res, alpha=np.nan, mu=np.nan, lam=lam)


def initial_state(problem: ProblemInstance, schedule: Schedule,
                  psi0) -> IterState:
    """State n = 0: the start projected onto the feasible set, mirrored."""
    psi = problem.feasible.project(as_vector(psi0, problem.dim))
    res = tuple(distance_to_set(psi, t.image(psi)) for t in problem.maps)
    lam = schedule.lam(1)
    fb = fixed_point_residual(problem.inclusion, problem.forward, lam, psi)
    dist = (np.nan if problem.known_solution is None
            else norm(psi - problem.known_solution))
    return IterState(n=0, psi=psi, psi_prev=psi, delta=psi, pi=psi, phi=psi,
                     xi=psi, residual_t1=res[0], residual_t2=res[1],
                     residual_t3=res[2], fb_residual=fb,
                     dist_to_solution=dist, alpha=np.nan, mu=np.nan, lam=lam)


# --------------------------------------------------------------------------
# Audits
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FejerAudit:
    """The four chain links at one state, each as (name, lhs, rhs, ok)."""

    links: tuple
    q: np.ndarray

    @property
    def ok(self) -> bool:
        return all(link[3] for link in self.links)


def audit_fejer_chain(state: IterState, q, tol: float = AUDIT_TOL) -> FejerAudit:
    """Audit the stage monotonicity chain of one state against a point q.

    Checks ||xi - q|| <= ||phi_p - q|| <= ||pi - q|| <= ||delta - q|| <=
    ||psi_prev - q|| with an absolute tolerance.  The last link is the
    averaging-monotone inequality tying the forward-backward point back to
    the iterate the step started from.
    """
    qv = as_vector(q)
    d_psi = norm(state.psi_prev - qv)
    d_delta = norm(state.delta - qv)
    d_pi = norm(state.pi - qv)
    d_phi = norm(state.phi - qv)
    d_xi = norm(state.xi - qv)
    raw = (("xi_le_phi", d_xi, d_phi),
           ("phi_le_pi", d_phi, d_pi),
           ("pi_le_delta", d_pi, d_delta),
           ("delta_le_psi", d_delta, d_psi))
    links = tuple((name, lhs, rhs, lhs <= rhs + tol) for name, lhs, rhs in raw)
    return FejerAudit(links, qv)


@dataclass(frozen=True)
class BoundAudit:
    bound: float
    checked: int
    violations: tuple
    q: np.ndarray

    @property
    def ok(self) -> bool:
        return not self.violations


def boundedness_radius(problem: ProblemInstance, mu_bar: float, psi0,
                       q) -> float:
    """The a priori radius max(||psi0 - q||, ||g*phi(q) - eta*Strong q|| / m)
    with m = tau*(1 - mu_bar) - gamma*b, valid for every iterate."""
    p = problem.params
    margin = p.tau * (1.0 - mu_bar) - p.gamma * p.b
    if margin <= 0:
        raise ValueError("no contraction margin: tau*(1-mu_bar) <= gamma*b")
    qv = as_vector(q, problem.dim)
    drift = norm(p.gamma * problem.contraction(qv) - p.eta * problem.strong(qv))
    return max(norm(as_vector(psi0, problem.dim) - qv), drift / margin)


def audit_bounded(report: RunReport, q, tol: float = CERTIFY_TOL) -> BoundAudit:
    """Check every recorded iterate against the a priori boundedness radius."""
    qv = as_vector(q, report.problem.dim)
    psi0 = report.trajectory[0].psi
    bound = boundedness_radius(report.problem, report.schedule.mu_bar,
                               psi0, qv)
    violations = []
    for st in report.trajectory:
        d = norm(st.psi - qv)
        if d > bound + tol:
            violations.append((st.n, d))
    return BoundAudit(bound, len(report.trajectory), tuple(violations), qv)


def vi_residual(problem: ProblemInstance, psi, probes=None,
                certify_tol: float = CERTIFY_TOL) -> float:
    """Worst violation of the limiting variational inequality at psi.

    For each certified common point q the solution must satisfy
    <eta*Strong(psi) - g*phi(psi), psi - q> <= 0; the residual is the
    largest positive left side over the probes (0 when all hold).  Probes
    default to the instance's known common points; each probe must certify,
    otherwise the metric would be meaningless.  Returns nan with no probes.
    """
    psiv = as_vector(psi, problem.dim)
    if probes is None:
        probes = problem.known_common_points
    probes = [as_vector(q, problem.dim) for q in probes]
    if not probes:
        return np.nan
    p = problem.params
    direction = p.eta * problem.strong(psiv) - p.gamma * problem.contraction(psiv)
    worst = 0.0
    for q in probes:
        defects = problem.common_point_defects(q, certify_tol)
        if defects:
            raise ValueError(
                f"probe {q} is not a certified common point: "
                + "; ".join(defects))
        worst = max(worst, inner(direction, psiv - q))
    return worst


# --------------------------------------------------------------------------
# Driver
# --------------------------------------------------------------------------

def _default_record(n: int) -> bool:
    return n <= 10_000 or n % 100 == 0


def run(algorithm: str, problem: ProblemInstance, schedule: Schedule,
        psi0=None, tol: float = 1e-8, max_iter: int = 100_000,
        check_schedule: bool = True, sow_use_phi: bool = False,
        record_stride: int | None = None) -> RunReport:
    """Drive one update rule to termination with per-iteration audits.

    Terminates by "tolerance" when both the displacement and all four
    residuals fall below ``tol``, by "max_iter" otherwise, or by
    "divergence_guard" when an iterate leaves the norm ball of radius
    1e12 or turns non-finite.  Every iteration (recorded or not) is
    audited against each certified known common point: the stage chain
    with absolute tolerance 1e-10 and the a priori boundedness radius
    with 1e-8.  Recording keeps every state up to n = 10000 and then
    every hundredth, unless ``record_stride`` forces a fixed stride.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; "
                         f"expected one of {ALGORITHMS}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    if check_schedule:
        rep = validate(schedule, problem.params)
        if not rep.ok:
            raise ScheduleValidationError(rep)

    if psi0 is None:
        psi0 = (problem.default_start if problem.default_start is not None
                else np.ones(problem.dim))

    if algorithm == "main":
        stepper = step_main
    elif algorithm == "sow":
        stepper = lambda p, s, st: step_sow(p, s, st, use_phi=sow_use_phi)
    elif algorithm == "fc":
        stepper = step_fc
    else:
        stepper = step_forward_backward

    qs = [q for q in problem.known_common_points
          if problem.certify_common_point(q)]
    if problem.known_common_points and not qs:
        defects = problem.common_point_defects(problem.known_common_points[0])
        raise ValueError(
            "no declared common point certifies; first defect list: "
            + "; ".join(defects))
    radii = None

    def should_record(n: int) -> bool:
        if record_stride is not None:
            return n % record_stride == 0
        return _default_record(n)

    state = initial_state(problem, schedule, psi0)
    if radii is None:
        radii = [boundedness_radius(problem, schedule.mu_bar, state.psi, q)
                 for q in qs]

    fejer_violations = 0
    bound_violations = 0

    def audited(st: IterState) -> IterState:
        nonlocal fejer_violations, bound_violations
        if not qs:
            return st
        all_ok = True
        for q, radius in zip(qs, radii):
            aud = audit_fejer_chain(st, q)
            fejer_violations += sum(1 for link in aud.links if not link[3])
            all_ok = all_ok and aud.ok
            if norm(st.psi - q) > radius + CERTIFY_TOL:
                bound_violations += 1
        return replace(st, fejer_ok=all_ok)

    state = audited(state)
    recorded = [state]
    terminated = "max_iter"

    for _ in range(max_iter):
        if norm(state.psi) > DIVERGENCE_LIMIT:
            terminated = "divergence_guard"
            break
        try:
            new = audited(stepper(problem, schedule, state))
        except _Diverged:
            terminated = "divergence_guard"
            break
        if should_record(new.n):
            recorded.append(new)
        displacement = norm(new.psi - state.psi)
        state = new
        if norm(state.psi) > DIVERGENCE_LIMIT:
            terminated = "divergence_guard"
            break
        worst_residual = max(state.residual_t1, state.residual_t2,
                             state.residual_t3, state.fb_residual)
        if displacement <= tol and worst_residual <= tol:
            terminated = "tolerance"
            break

    if recorded[-1].n != state.n:
        recorded.append(state)

    final_vi = (vi_residual(problem, state.psi, probes=qs) if qs else np.nan)

    return RunReport(
        algorithm=algorithm, instance=problem.name, trajectory=recorded,
        iterations=state.n, terminated_by=terminated, final=state.psi,
        vi_residual=final_vi, fejer_violations=fejer_violations,
        bound_violations=bound_violations, audit_points=len(qs),
        problem=problem, schedule=schedule)
