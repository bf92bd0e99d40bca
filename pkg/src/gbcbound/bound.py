"""Evaluation of the schedule-indexed outer-bound functional.

For a scenario (P, N_1..N_K, b, N_S), distortions D and schedule tau the
left-hand side of the outer-bound inequality is

    lhs = sum_k dN_k * [ (N_S + tau_k) / (D_1 + tau_1)
                         * prod_{j=2..k} (D_j + tau_{j-1}) / (D_j + tau_j) ]^(1/b)

with dN_k = N_k - N_{k+1} (dN_K = N_K), and the distortion tuple can be
achievable only if lhs <= P + N_1 for every admissible schedule.

Each term is evaluated in the log domain (sum of log-ratios, one exp per
term): the bracket raised to 1/b overflows quickly for small b if formed
as a plain product.  Infinite schedule entries are handled by a shared-rate
limit: all +inf entries tend to infinity together, under which every term
stays finite (terms whose factors are all diverging collapse to dN_k, the
rest lose their diverging prefix).  That limit equals the finite
evaluation of the suffix system that starts at the first finite entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .core import (
    BroadcastScenario,
    DistortionTuple,
    TauSchedule,
    check_distortions,
)
from .errors import InvalidTauSchedule, NonFiniteTau, StepOutOfDomain

__all__ = [
    "BoundEvaluation",
    "bound_rhs",
    "eval_lhs",
    "eval_lhs_extended",
    "reduced_bound_value",
    "check_inequality",
    "finite_diff_partials",
]

DEFAULT_REL_TOL = 1e-9

Distortions = Union[DistortionTuple, Sequence[float]]
Schedule = Union[TauSchedule, Sequence[float]]


@dataclass(frozen=True)
class BoundEvaluation:
    """One inequality check: lhs vs rhs = P + N_1.

    ``satisfied`` allows the stated relative tolerance, so it is
    equivalent to slack >= -tolerance * rhs.
    """

    lhs: float
    rhs: float
    satisfied: bool
    slack: float
    tolerance: float = DEFAULT_REL_TOL


def bound_rhs(scenario: BroadcastScenario) -> float:
    """Right-hand side of every inequality in the family: P + N_1."""
    return scenario.power + scenario.noises[0]


def _lhs_raw(
    ns: float,
    b: float,
    deltas: Sequence[float],
    dv: Sequence[float],
    taus: Sequence[float],
) -> float:
    """Finite-schedule evaluation on pre-validated plain values, log domain per term."""
    lead = math.log(dv[0] + taus[0])
    ratio_sum = 0.0  # sum_{j=2..k} log(D_j + tau_{j-1}) - log(D_j + tau_j)
    total = 0.0
    for k in range(len(dv)):
        if k >= 1:
            ratio_sum += math.log(dv[k] + taus[k - 1]) - math.log(dv[k] + taus[k])
        log_bracket = math.log(ns + taus[k]) - lead + ratio_sum
        total += deltas[k] * math.exp(log_bracket / b)
    return total


def _lhs_finite(scenario: BroadcastScenario, d: DistortionTuple, taus: tuple[float, ...]) -> float:
    return _lhs_raw(
        scenario.source_var,
        scenario.bandwidth,
        scenario.delta_noises(),
        d.values,
        taus,
    )


def eval_lhs(
    scenario: BroadcastScenario, distortions: Distortions, tau: Schedule
) -> float:
    """Left-hand side for an all-finite schedule.

    Raises NonFiniteTau if the schedule contains +inf (use
    :func:`eval_lhs_extended` for those).
    """
    d = check_distortions(scenario, distortions)
    t = TauSchedule.of(tau)
    _check_schedule_length(t, scenario)
    if not t.is_finite:
        raise NonFiniteTau("schedule contains +inf; use eval_lhs_extended")
    return _lhs_finite(scenario, d, t.taus)


def _check_schedule_length(t: TauSchedule, scenario: BroadcastScenario) -> None:
    if len(t) != scenario.num_receivers:
        raise InvalidTauSchedule(
            f"schedule length {len(t)} != {scenario.num_receivers} receivers"
        )


def eval_lhs_extended(
    scenario: BroadcastScenario, distortions: Distortions, tau: Schedule
) -> float:
    """Left-hand side with +inf entries allowed (shared-rate limit).

    With m infinite entries (a prefix, by monotonicity), terms 1..m each
    tend to dN_k and the remaining terms reduce to the finite evaluation
    of the suffix system (receivers m+1..K), so the value is

        (N_1 - N_{m+1}) + lhs_finite(suffix).

    Finite schedules take the plain finite path, so the two evaluators
    agree exactly when both apply.
    """
    d = check_distortions(scenario, distortions)
    t = TauSchedule.of(tau)
    _check_schedule_length(t, scenario)
    m = t.num_infinite
    if m == 0:
        return _lhs_finite(scenario, d, t.taus)
    sub = scenario.tail(m + 1)
    sub_d = DistortionTuple(d.values[m:])
    sub_t = t.taus[m:]
    prefix = scenario.noises[0] - scenario.noises[m]
    return prefix + _lhs_finite(sub, sub_d, sub_t)


def reduced_bound_value(
    scenario: BroadcastScenario, distortions: Distortions, k: int
) -> float:
    """Closed form of the bound at the step schedule isolating receiver k:

        (N_1 - N_k) + N_k * (N_S / D_k)^(1/b).

    Comparing this with P + N_1 is algebraically the point-to-point
    constraint D_k >= D_k*.  The expression mirrors the extended
    evaluator's computation path so the two agree to the last few ulps.
    """
    scenario._check_index(k)
    d = check_distortions(scenario, distortions)
    ns = scenario.source_var
    nk = scenario.noises[k - 1]
    log_ratio = math.log(ns) - math.log(d.values[k - 1])
    return (scenario.noises[0] - nk) + nk * math.exp(log_ratio / scenario.bandwidth)


def check_inequality(
    scenario: BroadcastScenario,
    distortions: Distortions,
    tau: Schedule,
    rel_tol: float = DEFAULT_REL_TOL,
) -> BoundEvaluation:
    """Evaluate the inequality lhs <= P + N_1 at one schedule.

    The comparison tolerance is relative to the right-hand side so that
    exact-equality cases (matched bandwidth at the trivial point)
    classify as satisfied under round-off.
    """
    lhs = eval_lhs_extended(scenario, distortions, tau)
    rhs = bound_rhs(scenario)
    slack = rhs - lhs
    satisfied = lhs <= rhs * (1.0 + rel_tol)
    return BoundEvaluation(lhs=lhs, rhs=rhs, satisfied=satisfied, slack=slack, tolerance=rel_tol)


def finite_diff_partials(
    scenario: BroadcastScenario,
    distortions: Distortions,
    tau: Schedule,
    h: float | None = None,
) -> tuple[float, ...]:
    """Central finite-difference estimates of d(lhs)/d(D_k), all k.

    The functional is monotonically nonincreasing in every D_k, so all
    estimates should be <= 0 up to discretisation error.  Requires a
    finite schedule and an interior point: D_k +- h must stay inside
    (0, N_S).
    """
    d = check_distortions(scenario, distortions)
    t = TauSchedule.of(tau)
    _check_schedule_length(t, scenario)
    if not t.is_finite:
        raise NonFiniteTau("partials are defined along the finite-schedule path")
    if h is None:
        h = 1e-7 * scenario.source_var
    if not h > 0.0:
        raise StepOutOfDomain(f"step must be > 0, got {h}")
    out = []
    vals = list(d.values)
    for i in range(len(vals)):
        up, down = vals[i] + h, vals[i] - h
        if not (0.0 < down and up < scenario.source_var):
            raise StepOutOfDomain(
                f"D_{i + 1} +- h leaves (0, N_S): {vals[i]} +- {h}"
            )
        vals[i] = up
        f_up = _lhs_finite(scenario, DistortionTuple(tuple(vals)), t.taus)
        vals[i] = down
        f_down = _lhs_finite(scenario, DistortionTuple(tuple(vals)), t.taus)
        vals[i] = d.values[i]
        out.append((f_up - f_down) / (2.0 * h))
    return tuple(out)
