import math
import random

import pytest

from gbcbound.bound import bound_rhs, eval_lhs
from gbcbound.core import (
    trivial_distortion,
    trivial_distortions,
    validate_scenario,
)
from gbcbound.errors import ClassificationMismatch, InfeasibleEverywhere, InvalidDistortion
from gbcbound.membership import (
    TrivialComparison,
    boundary_trace_rows,
    classify_vs_trivial,
    in_outer_region,
    sup_bound_lhs,
    trace_boundary,
)
from gbcbound.verify import random_scenario

S_MATCHED = validate_scenario(3, [3, 1], 1)
S_EXPAND = validate_scenario(3, [3, 1], 2)
S_COMPRESS = validate_scenario(3, [3, 1], 0.5)


def test_sup_flat_landscape_at_matched_bandwidth():
    res = sup_bound_lhs(S_MATCHED, trivial_distortions(S_MATCHED))
    assert res.sup_value == pytest.approx(bound_rhs(S_MATCHED), rel=1e-9)
    assert res.certified_gap >= 0.0


def test_sup_single_receiver_forced_schedule():
    sc = validate_scenario(1, [1], 2)
    res = sup_bound_lhs(sc, (0.5,))
    assert res.sup_value == pytest.approx(1 * (1 / 0.5) ** 0.5, rel=1e-12)
    assert res.argmax_tau.taus == (0.0,)
    assert res.argmax_t == ()


def test_sup_never_below_zero_schedule():
    rng = random.Random(21)
    for _ in range(25):
        sc = random_scenario(rng, k_range=(1, 4))
        d = tuple(rng.uniform(0.05, 1.0) * sc.source_var for _ in range(sc.num_receivers))
        res = sup_bound_lhs(sc, d)
        zero_val = eval_lhs(sc, d, (0.0,) * sc.num_receivers)
        assert res.sup_value >= zero_val - 1e-12 * abs(zero_val)


def test_sup_grid_refinement_consistency():
    """Doubling the grid moves the supremum by < 1e-6 relative."""
    rng = random.Random(31)
    for _ in range(10):
        sc = random_scenario(rng, k_range=(2, 3))
        d = tuple(rng.uniform(0.05, 1.0) * sc.source_var for _ in range(sc.num_receivers))
        coarse = sup_bound_lhs(sc, d, grid=64).sup_value
        fine = sup_bound_lhs(sc, d, grid=128).sup_value
        assert abs(coarse - fine) <= 1e-6 * max(1.0, abs(fine))


def test_membership_examples():
    assert in_outer_region(S_COMPRESS, trivial_distortions(S_COMPRESS)).member
    verdict = in_outer_region(S_EXPAND, trivial_distortions(S_EXPAND))
    assert not verdict.member
    assert verdict.margin < 0
    # zero-information reconstruction is always inside
    assert in_outer_region(S_EXPAND, (1.0, 1.0)).member
    assert in_outer_region(S_EXPAND, (1.0, 1.0)).sup.sup_value == pytest.approx(3.0, rel=1e-9)


def test_membership_single_receiver():
    sc = validate_scenario(1, [1], 2)
    dstar = trivial_distortion(sc, 1)
    assert in_outer_region(sc, (dstar,)).member
    assert in_outer_region(sc, (min(dstar * 1.5, 1.0),)).member
    assert not in_outer_region(sc, (dstar * 0.9,)).member


def test_membership_rejects_bad_distortions():
    with pytest.raises(InvalidDistortion):
        in_outer_region(S_MATCHED, (0.5,))


def test_trace_matched_bandwidth_recovers_trivial():
    d2 = trace_boundary(S_MATCHED, (trivial_distortion(S_MATCHED, 1),))
    assert d2 == pytest.approx(trivial_distortion(S_MATCHED, 2), abs=1e-8)


def test_trace_expansion_strictly_above_trivial():
    d2 = trace_boundary(S_EXPAND, (trivial_distortion(S_EXPAND, 1),))
    assert d2 > trivial_distortion(S_EXPAND, 2) * 1.01


def test_trace_compression_degenerates():
    d2_star = trivial_distortion(S_COMPRESS, 2)
    for d1 in (trivial_distortion(S_COMPRESS, 1), 0.8, 0.95):
        d2 = trace_boundary(S_COMPRESS, (d1,))
        assert d2 == pytest.approx(d2_star, abs=1e-8)


def test_trace_expansion_binding_threshold():
    """The coupling binds only near D_1*; beyond the threshold the floor D_2* rules.

    For K = 2 the large-tau expansion shows the threshold sits at
    (dN_1 N_S + (P+N_2) D_2*) / (dN_1 + P + N_2); for (P=3, N=(3,1), b=2)
    that is 0.375.
    """
    d2_star = trivial_distortion(S_EXPAND, 2)
    for d1 in (0.25, 0.30, 0.37):
        assert trace_boundary(S_EXPAND, (d1,)) > d2_star + 1e-6
    for d1 in (0.40, 0.70, 1.0):
        assert trace_boundary(S_EXPAND, (d1,)) == pytest.approx(d2_star, abs=1e-8)


def test_trace_monotone_in_fixed_distortion():
    cuts = [trace_boundary(S_EXPAND, (d1,)) for d1 in (0.25, 0.28, 0.32, 0.36)]
    assert all(a >= b - 1e-9 for a, b in zip(cuts, cuts[1:]))


def test_trace_infeasible_everywhere():
    with pytest.raises(InfeasibleEverywhere):
        trace_boundary(S_MATCHED, (0.9 * trivial_distortion(S_MATCHED, 1),))


def test_trace_respects_search_range():
    with pytest.raises(InvalidDistortion):
        trace_boundary(S_MATCHED, (0.5,), search_range=(0.0, 2.0))
    with pytest.raises(InvalidDistortion):
        trace_boundary(S_MATCHED, (0.5, 0.2))


def test_boundary_trace_rows_shape():
    rows = boundary_trace_rows(S_MATCHED, [(0.5,), (0.6,)])
    assert len(rows) == 2
    for row in rows:
        assert len(row) == 4  # D_1, D_2_min, sup, margin
        assert row[1] == pytest.approx(0.25, abs=1e-7)
        assert row[2] == pytest.approx(6.0, rel=1e-6)


def test_classification_rules():
    assert classify_vs_trivial(S_COMPRESS) is TrivialComparison.DEGENERATE
    assert classify_vs_trivial(S_MATCHED) is TrivialComparison.EQUAL
    assert classify_vs_trivial(S_EXPAND) is TrivialComparison.STRICTLY_TIGHTER
    assert classify_vs_trivial(validate_scenario(2, [4, 2, 1], 1)) is TrivialComparison.EQUAL
    assert classify_vs_trivial(validate_scenario(1, [1], 2)) is TrivialComparison.EQUAL
    assert classify_vs_trivial(validate_scenario(1, [1], 0.3)) is TrivialComparison.EQUAL


def test_classification_detects_forced_bug(monkeypatch):
    """Self-test: a corrupted membership oracle must trip the mismatch error."""
    import gbcbound.membership as m

    real = m.in_outer_region

    def corrupted(scenario, distortions, rel_tol=1e-9, grid=None):
        verdict = real(scenario, distortions, rel_tol=rel_tol, grid=grid)
        return type(verdict)(
            member=not verdict.member,
            sup=verdict.sup,
            margin=verdict.margin,
            rhs=verdict.rhs,
            tolerance=verdict.tolerance,
        )

    monkeypatch.setattr(m, "in_outer_region", corrupted)
    with pytest.raises(ClassificationMismatch):
        m.classify_vs_trivial(S_MATCHED)


def test_membership_downward_closed():
    rng = random.Random(77)
    checked = 0
    for _ in range(40):
        sc = random_scenario(rng, k_range=(1, 3))
        ns = sc.source_var
        d = tuple(rng.uniform(0.05, 1.0) * ns for _ in range(sc.num_receivers))
        if not in_outer_region(sc, d).member:
            continue
        d_up = tuple(min(v * (1 + rng.uniform(0, 0.5)), ns) for v in d)
        assert in_outer_region(sc, d_up).member
        checked += 1
    assert checked >= 5


def test_trivial_point_membership_by_regime():
    rng = random.Random(13)
    for _ in range(60):
        k_hi = rng.randint(2, 4)
        b = rng.choice((rng.uniform(0.05, 0.95), 1.0, rng.uniform(1.05, 8.0)))
        sc = random_scenario(rng, k_range=(k_hi, k_hi), bandwidth=b)
        member = in_outer_region(sc, trivial_distortions(sc)).member
        assert member == (b <= 1.0)
