"""Parameter sequences and the named admissibility conditions.

The iteration consumes six scalar sequences indexed from n = 1: the anchor
weights alpha_n, the three averaging weights theta_n, beta_n, gamma_n, the
mixing weights mu_n, and the splitting steps lambda_n.  A schedule bundles
them with the constants they must respect.  ``validate`` evaluates every
admissibility condition by name and returns a report instead of raising, so
a caller can surface exactly which condition failed.

Sequences built from the known families (constant, 1/(n+1), 1/(n+1)^2,
1 - c/(n+1)) carry their limits in closed form, which makes every liminf
condition exact.  Custom callables fall back to a horizon scan and the
affected conditions are flagged as empirical.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .monotone import wang_tau


class InfeasibleScheduleError(ValueError):
    """No admissible schedule exists for the given constants."""


# --------------------------------------------------------------------------
# Sequence families
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamSeq:
    """A scalar sequence s_n, n >= 1, from a small analyzable family.

    ``limit`` and ``divergent_sum`` are closed-form facts for the built-in
    families and optional declarations for custom callables; ``None`` means
    unknown, in which case validation falls back to sampling.
    """

    kind: str
    scale: float = 1.0
    fn: Callable[[int], float] | None = None
    limit: float | None = None
    divergent_sum: bool | None = None

    @staticmethod
    def constant(value: float) -> "ParamSeq":
        value = float(value)
        return ParamSeq("constant", value, limit=value,
                        divergent_sum=value > 0)

    @staticmethod
    def inverse(scale: float = 1.0) -> "ParamSeq":
        """s_n = scale / (n + 1): vanishing with a divergent sum."""
        return ParamSeq("inverse", float(scale), limit=0.0, divergent_sum=True)

    @staticmethod
    def inverse_square(scale: float = 1.0) -> "ParamSeq":
        """s_n = scale / (n + 1)^2: vanishing with a finite sum."""
        return ParamSeq("inverse_square", float(scale), limit=0.0,
                        divergent_sum=False)

    @staticmethod
    def approaching_one(scale: float = 1.0) -> "ParamSeq":
        """s_n = 1 - scale / (n + 1): drifts to the boundary value 1."""
        return ParamSeq("approaching_one", float(scale), limit=1.0,
                        divergent_sum=True)

    @staticmethod
    def custom(fn: Callable[[int], float], limit: float | None = None,
               divergent_sum: bool | None = None) -> "ParamSeq":
        return ParamSeq("custom", fn=fn, limit=limit,
                        divergent_sum=divergent_sum)

    def __call__(self, n: int) -> float:
        if n < 1:
            raise ValueError(f"sequences are indexed from 1, got n={n}")
        if self.kind == "constant":
            return self.scale
        if self.kind == "inverse":
            return self.scale / (n + 1)
        if self.kind == "inverse_square":
            return self.scale / (n + 1) ** 2
        if self.kind == "approaching_one":
            return 1.0 - self.scale / (n + 1)
        if self.kind == "custom":
            return float(self.fn(n))
        raise ValueError(f"unknown sequence kind {self.kind!r}")

    def values(self, horizon: int) -> np.ndarray:
        return np.array([self(n) for n in range(1, horizon + 1)])


def _liminf_of(seq: ParamSeq, f: Callable[[float], float],
               horizon: int) -> tuple[float, bool]:
    """liminf of f(s_n): exact through the limit when known, else sampled.

    Returns (value, empirical).  For the built-in families f(limit) is the
    true liminf because f is continuous and the sequences are convergent.
    """
    if seq.limit is not None:
        return f(seq.limit), False
    tail = seq.values(horizon)[horizon // 2:]
    return float(min(f(v) for v in tail)), True


# --------------------------------------------------------------------------
# Constants attached to the viscosity step
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ViscosityParams:
    """Constants of the anchor step: psi+ includes alpha*gamma*phi(psi) and
    (1 - mu)*(psi - eta*alpha*Strong(psi)).

    ``gamma`` scales the contraction phi (Lipschitz constant ``b``); ``eta``
    scales the strongly monotone operator with modulus ``k`` and Lipschitz
    constant ``L``.  ``tau`` is the induced contraction margin.
    """

    gamma: float
    eta: float
    k: float
    L: float
    b: float

    @property
    def tau(self) -> float:
        return wang_tau(self.eta, self.k, self.L)

    def violations(self) -> list[str]:
        """Names of the static constant conditions that fail; empty is good."""
        out = []
        if not self.k > 0:
            out.append("k > 0")
        if not self.L > 0:
            out.append("L > 0")
        if self.k > self.L:
            out.append("k <= L (strong monotonicity cannot exceed Lipschitz)")
        if not self.b > 0:
            out.append("b > 0")
        if not self.gamma > 0:
            out.append("gamma > 0")
        if self.L > 0 and not 0.0 < self.eta < 2.0 * self.k / self.L ** 2:
            out.append("0 < eta < 2k/L^2")
        if not 0.0 < self.gamma * self.b < self.tau:
            out.append("0 < gamma*b < tau")
        return out


@dataclass(frozen=True)
class Schedule:
    """Six sequences plus the constants their conditions refer to.

    ``interval`` is the compact window [a, b] that lambda_n must stay in,
    itself required to sit inside (0, min(1, 2*alpha_ism)).  ``mu_bar`` caps
    mu_n; ``beta_demi`` is the largest demicontractivity constant among the
    mappings, lower-bounding theta_n and beta_n.  ``strict_paper`` switches
    the anchor-weight sum condition from divergent to summable.
    """

    alpha: ParamSeq
    theta: ParamSeq
    beta: ParamSeq
    gamma: ParamSeq
    mu: ParamSeq
    lam: ParamSeq
    beta_demi: float
    alpha_ism: float
    interval: tuple[float, float]
    mu_bar: float
    strict_paper: bool = False

    def __post_init__(self):
        a, b = self.interval
        if not a <= b:
            raise ValueError("interval must satisfy a <= b")
        if not 0.0 <= self.beta_demi < 1.0:
            raise ValueError("beta_demi must lie in [0, 1)")
        if self.alpha_ism <= 0:
            raise ValueError("alpha_ism must be positive")


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    detail: str = ""
    value: float | None = None
    empirical: bool = False


@dataclass(frozen=True)
class ValidationReport:
    conditions: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failures(self) -> list[ConditionResult]:
        return [c for c in self.conditions if not c.passed]

    def summary(self) -> str:
        lines = []
        for c in self.conditions:
            tag = "ok" if c.passed else "FAIL"
            extra = " (empirical)" if c.empirical else ""
            lines.append(f"[{tag}] {c.name}{extra}" +
                         (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _band_in_unit(seq: ParamSeq, horizon: int) -> tuple[bool, bool, str]:
    vals = seq.values(horizon)
    scan_ok = bool(np.all((vals > 0.0) & (vals < 1.0)))
    if seq.limit is not None:
        return scan_ok and 0.0 <= seq.limit <= 1.0, False, ""
    return scan_ok, True, "custom sequence scanned over the horizon only"


def _lower_band(seq: ParamSeq, low: float, horizon: int) -> tuple[bool, bool]:
    """Whether s_n stays in (low, 1) for all n, exactly when the limit is known."""
    vals = seq.values(horizon)
    scan_ok = bool(np.all((vals > low) & (vals < 1.0)))
    if seq.limit is not None:
        return scan_ok and low <= seq.limit <= 1.0, False
    return scan_ok, True


def validate(schedule: Schedule, params: ViscosityParams,
             horizon: int = 500) -> ValidationReport:
    """Evaluate every named admissibility condition for a schedule.

    Nothing is raised; the report lists each condition with its verdict.
    Conditions whose verdict needed sampling (custom sequences with no
    declared limit) are marked empirical.
    """
    horizon = max(int(horizon), 10)
    conds: list[ConditionResult] = []
    tau = params.tau

    # Static constant conditions, including the coupling 0 < gamma*b < tau.
    for name in ("k > 0", "L > 0",
                 "k <= L (strong monotonicity cannot exceed Lipschitz)",
                 "b > 0", "gamma > 0", "0 < eta < 2k/L^2",
                 "0 < gamma*b < tau"):
        failed = name in params.violations()
        detail = ""
        if name == "0 < gamma*b < tau":
            detail = f"gamma*b = {params.gamma * params.b:g}, tau = {tau:g}"
        conds.append(ConditionResult(name, not failed, detail))

    # All six sequences inside (0, 1).
    unit_ok, unit_emp, unit_note = True, False, ""
    for label, seq in (("alpha", schedule.alpha), ("theta", schedule.theta),
                       ("beta", schedule.beta), ("gamma", schedule.gamma),
                       ("mu", schedule.mu), ("lambda", schedule.lam)):
        ok, emp, note = _band_in_unit(seq, horizon)
        if not ok:
            unit_ok = False
            unit_note = f"{label}_n leaves (0, 1)"
        unit_emp = unit_emp or emp
    conds.append(ConditionResult("sequences take values in (0, 1)", unit_ok,
                                 unit_note, empirical=unit_emp))

    # Condition (i): the anchor weights vanish, with the adopted sum reading.
    alpha = schedule.alpha
    if alpha.limit is not None:
        to_zero = alpha.limit == 0.0
        emp = False
    else:
        vals = alpha.values(horizon)
        to_zero = vals[-1] <= 0.05 and vals[-1] <= vals[0]
        emp = True
    conds.append(ConditionResult("condition (i): alpha_n -> 0", to_zero,
                                 empirical=emp))

    if alpha.divergent_sum is not None:
        diverges, emp = alpha.divergent_sum, False
    else:
        # Compare consecutive partial-sum chunks; a divergent tail keeps
        # contributing at a comparable rate, a summable one decays.
        half = alpha.values(horizon)
        chunk_late = float(np.sum(half[horizon // 2:]))
        chunk_early = float(np.sum(half[horizon // 4: horizon // 2]))
        diverges, emp = chunk_late >= 0.8 * chunk_early, True
    if schedule.strict_paper:
        conds.append(ConditionResult(
            "condition (i, strict): sum alpha_n < infinity", not diverges,
            empirical=emp))
    else:
        conds.append(ConditionResult(
            "condition (i): sum alpha_n = infinity", diverges, empirical=emp))

    # Condition (ii): the splitting steps stay in [a, b] inside the window.
    a, b = schedule.interval
    window = min(1.0, 2.0 * schedule.alpha_ism)
    window_ok = 0.0 < a <= b < window
    lam_vals = schedule.lam.values(horizon)
    in_interval = bool(np.all((lam_vals >= a) & (lam_vals <= b)))
    if schedule.lam.limit is not None:
        in_interval = in_interval and a <= schedule.lam.limit <= b
    conds.append(ConditionResult(
        "condition (ii): lambda_n in [a, b] within (0, min(1, 2*alpha_ism))",
        window_ok and in_interval,
        f"[a, b] = [{a:g}, {b:g}], window (0, {window:g})",
        empirical=schedule.lam.limit is None))

    # Condition (ii): theta_n and beta_n stay strictly above the
    # demicontractivity constant with a positive liminf gap.
    for label, seq in (("theta", schedule.theta), ("beta", schedule.beta)):
        band_ok, band_emp = _lower_band(seq, schedule.beta_demi, horizon)
        gap, gap_emp = _liminf_of(
            seq, lambda s: (1.0 - s) * (s - schedule.beta_demi), horizon)
        conds.append(ConditionResult(
            f"condition (ii): {label}_n in (beta_demi, 1) with "
            f"liminf (1 - {label}_n)({label}_n - beta_demi) > 0",
            band_ok and gap > 0.0,
            f"liminf gap = {gap:g}", value=gap,
            empirical=band_emp or gap_emp))

    # Condition (iii): the three averaging products keep a positive liminf.
    for label, seq in (("gamma", schedule.gamma), ("beta", schedule.beta),
                       ("theta", schedule.theta)):
        prod, emp = _liminf_of(seq, lambda s: (1.0 - s) * s, horizon)
        conds.append(ConditionResult(
            f"condition (iii): liminf (1 - {label}_n) {label}_n > 0",
            prod > 0.0, f"liminf product = {prod:g}", value=prod,
            empirical=emp))

    # The mixing weights respect the cap that keeps the anchor contraction.
    mu_vals = schedule.mu.values(horizon)
    sup_mu = float(np.max(mu_vals))
    if schedule.mu.limit is not None:
        sup_mu = max(sup_mu, schedule.mu.limit)
    margin = tau * (1.0 - schedule.mu_bar) - params.gamma * params.b
    conds.append(ConditionResult(
        "mu_n <= mu_bar with tau*(1 - mu_bar) > gamma*b",
        sup_mu <= schedule.mu_bar and margin > 0.0,
        f"sup mu_n = {sup_mu:g}, mu_bar = {schedule.mu_bar:g}, "
        f"margin = {margin:g}",
        value=margin, empirical=schedule.mu.limit is None))

    return ValidationReport(tuple(conds))


# --------------------------------------------------------------------------
# Default construction
# --------------------------------------------------------------------------

def default_schedule(params: ViscosityParams, beta_demi: float,
                     alpha_ism: float, mu_bar: float | None = None,
                     strict_paper: bool = False) -> Schedule:
    """An admissible schedule from the problem constants alone.

    Uses alpha_n = 1/(n+1) (or 1/(n+1)^2 under ``strict_paper``), constant
    theta_n = beta_n = (1 + beta_demi)/2, gamma_n = 1/2, a constant
    splitting step lambda_n = min(1, 2*alpha_ism)/2, and a constant mixing
    weight mu_n = mu_bar, defaulting to 0.8*(tau - gamma*b)/tau.  Raises
    :class:`InfeasibleScheduleError` when the constants admit no schedule.
    """
    bad = params.violations()
    if bad:
        raise InfeasibleScheduleError(
            "constants violate: " + "; ".join(bad))
    if not 0.0 <= beta_demi < 1.0:
        raise InfeasibleScheduleError(
            f"beta_demi = {beta_demi} must lie in [0, 1)")
    if alpha_ism <= 0:
        raise InfeasibleScheduleError("alpha_ism must be positive")

    tau = params.tau
    slack = tau - params.gamma * params.b
    if mu_bar is None:
        mu_bar = 0.8 * slack / tau
    if not 0.0 < mu_bar < 1.0 or tau * (1.0 - mu_bar) - params.gamma * params.b <= 0:
        raise InfeasibleScheduleError(
            f"mu_bar = {mu_bar:g} leaves no contraction margin "
            f"(tau = {tau:g}, gamma*b = {params.gamma * params.b:g})")

    mid = (1.0 + beta_demi) / 2.0
    lam_value = min(1.0, 2.0 * alpha_ism) / 2.0
    alpha = (ParamSeq.inverse_square() if strict_paper else ParamSeq.inverse())
    return Schedule(
        alpha=alpha,
        theta=ParamSeq.constant(mid),
        beta=ParamSeq.constant(mid),
        gamma=ParamSeq.constant(0.5),
        mu=ParamSeq.constant(mu_bar),
        lam=ParamSeq.constant(lam_value),
        beta_demi=beta_demi,
        alpha_ism=alpha_ism,
        interval=(lam_value, lam_value),
        mu_bar=mu_bar,
        strict_paper=strict_paper,
    )
