"""Membership oracle for the outer-bound distortion region.

A tuple D belongs to the region iff lhs(D, tau) <= P + N_1 for *every*
admissible schedule, so membership reduces to maximizing the functional
over the schedule set {0 = tau_K <= ... <= tau_1 <= +inf}.

The search works in compactified coordinates t = tau / (1 + tau), which
map [0, +inf] onto [0, 1] and turn the step schedules (the ones that
recover the per-receiver point-to-point constraints) into ordinary
corners of the grid.  An exhaustive grid over the ordered (K-1)-tuple
set is followed by cyclic per-coordinate golden-section refinement from
the best few grid points.  Grid evaluation is a pure map and could be
parallelized; everything here is reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .bound import Distortions, _lhs_raw, bound_rhs, eval_lhs
from .core import (
    BroadcastScenario,
    DistortionTuple,
    TauSchedule,
    check_distortions,
    trivial_distortion,
    trivial_distortions,
)
from .errors import ClassificationMismatch, InfeasibleEverywhere, InvalidDistortion

__all__ = [
    "SupResult",
    "MembershipVerdict",
    "TrivialComparison",
    "sup_bound_lhs",
    "in_outer_region",
    "trace_boundary",
    "classify_vs_trivial",
    "boundary_trace_rows",
]

DEFAULT_REL_TOL = 1e-9
COORD_TOL = 1e-10
MAX_SWEEPS = 60
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class SupResult:
    """Supremum of the functional over all schedules at a fixed D.

    ``argmax_tau`` lives on the compactified closure: entries may be
    +inf when the maximum is approached along a diverging schedule.
    ``certified_gap`` is an empirical error indicator (improvement the
    refinement stage found beyond the grid, plus the objective movement
    in the final sweep), not a rigorous Lipschitz certificate.
    """

    sup_value: float
    argmax_tau: TauSchedule
    argmax_t: tuple[float, ...]
    iterations: int
    certified_gap: float


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    sup: SupResult
    margin: float  # (P + N_1) - sup_value
    rhs: float
    tolerance: float = DEFAULT_REL_TOL


class TrivialComparison(Enum):
    """How the schedule-indexed bound compares with the trivial (point-to-point) one."""

    DEGENERATE = "degenerate"
    EQUAL = "equal"
    STRICTLY_TIGHTER = "strictly_tighter"


def default_grid(num_receivers: int) -> int:
    if num_receivers <= 3:
        return 64
    if num_receivers <= 5:
        return 16
    if num_receivers <= 8:
        return 8
    return 4


def _tau_from_t(t: float) -> float:
    return math.inf if t >= 1.0 else t / (1.0 - t)


def _make_objective(
    scenario: BroadcastScenario, d: DistortionTuple
) -> Callable[[Sequence[float]], float]:
    """Objective over free compactified coordinates (t_1 >= ... >= t_{K-1}).

    Pre-slices the suffix systems so schedules with infinite entries cost
    the same as finite ones.
    """
    ns = scenario.source_var
    b = scenario.bandwidth
    noises = scenario.noises
    deltas = scenario.delta_noises()
    dv = d.values
    k_total = len(dv)
    prefix_sums = tuple(noises[0] - noises[m] for m in range(k_total))

    def objective(t_free: Sequence[float]) -> float:
        taus = []
        m = 0
        for t in t_free:
            if t >= 1.0:
                m += 1
            else:
                tau = t / (1.0 - t)
                if taus and tau > taus[-1]:
                    tau = taus[-1]  # guard against 1-ulp monotonicity glitches
                taus.append(tau)
        taus.append(0.0)
        if m == 0:
            return _lhs_raw(ns, b, deltas, dv, taus)
        return prefix_sums[m] + _lhs_raw(ns, b, deltas[m:], dv[m:], taus)

    return objective


def _golden_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float, int]:
    """Golden-section maximization on [lo, hi]; returns (x, f(x), evals)."""
    a, b = lo, hi
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x), 1
    n = max(1, int(math.ceil(math.log(tol / h) / math.log(_INVPHI))))
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc, yd = f(c), f(d)
    evals = 2
    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= _INVPHI
            c = a + _INVPHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= _INVPHI
            d = a + _INVPHI * h
            yd = f(d)
        evals += 1
    return (c, yc, evals) if yc > yd else (d, yd, evals)


def _refine(
    objective: Callable[[Sequence[float]], float],
    t_start: Sequence[float],
    start_value: float,
    coord_tol: float,
) -> tuple[tuple[float, ...], float, float, int]:
    """Cyclic per-coordinate golden-section ascent from one start point.

    Never moves to a worse point, so the incumbent value is monotone.
    Returns (t, value, last_sweep_gain, evals).
    """
    t = list(t_start)
    value = start_value
    evals = 0
    sweep_gain = 0.0
    for _ in range(MAX_SWEEPS):
        sweep_start = value
        max_move = 0.0
        for i in range(len(t)):
            lo = t[i + 1] if i + 1 < len(t) else 0.0
            hi = t[i - 1] if i >= 1 else 1.0
            if hi - lo <= coord_tol:
                continue

            def f(x: float, i: int = i) -> float:
                probe = t[:i] + [x] + t[i + 1 :]
                return objective(probe)

            x_best, f_best, used = _golden_max(f, lo, hi, coord_tol)
            evals += used
            if f_best > value:
                max_move = max(max_move, abs(x_best - t[i]))
                t[i] = x_best
                value = f_best
        sweep_gain = value - sweep_start
        if max_move < coord_tol:
            break
    return tuple(t), value, sweep_gain, evals


def sup_bound_lhs(
    scenario: BroadcastScenario,
    distortions: Distortions,
    grid: int | None = None,
    coord_tol: float = COORD_TOL,
    starts: int = 5,
) -> SupResult:
    """Maximize the functional over all admissible schedules.

    Exhaustive ordered grid (``grid`` points per axis, default by K),
    then golden-section refinement from the ``starts`` best grid points.
    The all-zero schedule is always a grid corner, so the result is
    never below the plain tau = 0 evaluation.
    """
    d = check_distortions(scenario, distortions)
    k_total = scenario.num_receivers
    objective = _make_objective(scenario, d)
    free = k_total - 1
    if free == 0:
        value = objective(())
        return SupResult(
            sup_value=value,
            argmax_tau=TauSchedule((0.0,)),
            argmax_t=(),
            iterations=1,
            certified_gap=0.0,
        )
    if grid is None:
        grid = default_grid(k_total)
    if grid < 2:
        raise InvalidDistortion(f"grid resolution must be >= 2, got {grid}")
    axis = [i / (grid - 1) for i in range(grid)]
    scored: list[tuple[float, tuple[float, ...]]] = []
    evals = 0
    for combo in combinations_with_replacement(axis, free):
        t = combo[::-1]  # nonincreasing
        scored.append((objective(t), t))
        evals += 1
    scored.sort(key=lambda item: item[0], reverse=True)
    grid_best = scored[0][0]
    best_t, best_value = scored[0][1], grid_best
    best_gain = 0.0
    for start_value, start_t in scored[:starts]:
        t, value, gain, used = _refine(objective, start_t, start_value, coord_tol)
        evals += used
        if value > best_value:
            best_t, best_value, best_gain = t, value, gain
    argmax_tau = TauSchedule(tuple(_tau_from_t(t) for t in best_t) + (0.0,))
    return SupResult(
        sup_value=best_value,
        argmax_tau=argmax_tau,
        argmax_t=tuple(best_t),
        iterations=evals,
        certified_gap=(best_value - grid_best) + best_gain,
    )


def in_outer_region(
    scenario: BroadcastScenario,
    distortions: Distortions,
    rel_tol: float = DEFAULT_REL_TOL,
    grid: int | None = None,
) -> MembershipVerdict:
    """Does D satisfy the whole inequality family (sup <= P + N_1)?"""
    sup = sup_bound_lhs(scenario, distortions, grid=grid)
    rhs = bound_rhs(scenario)
    margin = rhs - sup.sup_value
    member = sup.sup_value <= rhs * (1.0 + rel_tol)
    return MembershipVerdict(member=member, sup=sup, margin=margin, rhs=rhs, tolerance=rel_tol)


def trace_boundary(
    scenario: BroadcastScenario,
    fixed: Sequence[float],
    search_range: tuple[float, float] | None = None,
    width: float = 1e-10,
    rel_tol: float = DEFAULT_REL_TOL,
    grid: int | None = None,
) -> float:
    """Minimal D_K keeping (fixed_1..fixed_{K-1}, D_K) inside the region.

    Monotonicity of the functional in D_K makes feasibility monotone, so
    plain bisection applies.  The default bracket starts below the
    point-to-point optimum D_K*, which no member can undercut, and ends
    at N_S.  Raises InfeasibleEverywhere when even D_K = N_S fails
    (some fixed distortion is below its own floor).
    """
    k_total = scenario.num_receivers
    fixed_vals = tuple(float(x) for x in fixed)
    if len(fixed_vals) != k_total - 1:
        raise InvalidDistortion(
            f"expected {k_total - 1} fixed distortions, got {len(fixed_vals)}"
        )
    ns = scenario.source_var
    dk_star = trivial_distortion(scenario, k_total)
    if search_range is None:
        lo, hi = 0.5 * dk_star, ns
    else:
        lo, hi = float(search_range[0]), float(search_range[1])
        if not (0.0 < lo <= hi <= ns):
            raise InvalidDistortion(f"search range ({lo}, {hi}) outside (0, N_S]")

    def member(dk: float) -> bool:
        return in_outer_region(
            scenario, fixed_vals + (dk,), rel_tol=rel_tol, grid=grid
        ).member

    if not member(hi):
        raise InfeasibleEverywhere(
            f"no feasible D_{k_total} in ({lo}, {hi}] for fixed prefix {fixed_vals}"
        )
    if member(lo):
        return lo
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    return hi


def classify_vs_trivial(
    scenario: BroadcastScenario,
    rel_tol: float = DEFAULT_REL_TOL,
    grid: int | None = None,
) -> TrivialComparison:
    """Compare the schedule-indexed bound with the trivial one, empirically.

    The analytic rule (degenerate below matched bandwidth, equal at it,
    strictly tighter above it with K >= 2; a single receiver is always
    equal) is re-derived from membership probes at and around the
    point-to-point optimum, plus the sign of the deviation at a generic
    interior schedule.  Any disagreement raises ClassificationMismatch:
    the theorems double as a permanent self-test of the numerics.
    """
    k_total = scenario.num_receivers
    b = scenario.bandwidth
    if k_total == 1 or b == 1.0:
        analytic = TrivialComparison.EQUAL
    elif b < 1.0:
        analytic = TrivialComparison.DEGENERATE
    else:
        analytic = TrivialComparison.STRICTLY_TIGHTER
    dstar = trivial_distortions(scenario)
    rhs = bound_rhs(scenario)
    problems: list[str] = []

    member_at_star = in_outer_region(scenario, dstar, rel_tol=rel_tol, grid=grid).member
    expect_member = analytic is not TrivialComparison.STRICTLY_TIGHTER
    if member_at_star != expect_member:
        problems.append(
            f"trivial point membership {member_at_star}, expected {expect_member}"
        )

    deflated = tuple(0.98 * v for v in dstar)
    if in_outer_region(scenario, deflated, rel_tol=rel_tol, grid=grid).member:
        problems.append("point below every per-receiver floor classified as member")

    if expect_member:
        ns = scenario.source_var
        inflated = tuple(min(1.02 * v, ns) for v in dstar)
        if not in_outer_region(scenario, inflated, rel_tol=rel_tol, grid=grid).member:
            problems.append("inflated trivial point classified as non-member")

    if k_total >= 2:
        generic = (1.0,) + (0.0,) * (k_total - 1)
        dev = (eval_lhs(scenario, dstar, generic) - rhs) / rhs
        if analytic is TrivialComparison.EQUAL and abs(dev) > rel_tol:
            problems.append(f"matched-bandwidth deviation {dev:+.3e} at generic schedule")
        if analytic is TrivialComparison.DEGENERATE and not dev < -rel_tol:
            problems.append(f"compression deviation {dev:+.3e} not strictly negative")
        if analytic is TrivialComparison.STRICTLY_TIGHTER and not dev > rel_tol:
            problems.append(f"expansion deviation {dev:+.3e} not strictly positive")

    if problems:
        raise ClassificationMismatch(
            f"numerics disagree with analytic classification {analytic.value}: "
            + "; ".join(problems)
        )
    return analytic


def boundary_trace_rows(
    scenario: BroadcastScenario,
    fixed_grid: Iterable[Sequence[float]],
    rel_tol: float = DEFAULT_REL_TOL,
    grid: int | None = None,
) -> list[tuple[float, ...]]:
    """Boundary rows (D_1..D_{K-1}, D_K_min, sup_value, margin) for CSV export."""
    rows = []
    for fixed in fixed_grid:
        dk = trace_boundary(scenario, fixed, rel_tol=rel_tol, grid=grid)
        verdict = in_outer_region(
            scenario, tuple(float(x) for x in fixed) + (dk,), rel_tol=rel_tol, grid=grid
        )
        rows.append(tuple(float(x) for x in fixed) + (dk, verdict.sup.sup_value, verdict.margin))
    return rows
