import math
import random

import pytest

from gbcbound.capacity import (
    GaussianBC,
    RatePoint,
    boundary_rates,
    containment,
    point_to_point_capacity,
    rate_membership,
    scenario_from_capacities,
    split_grid,
    virtual_channel,
)
from gbcbound.core import trivial_distortions, validate_scenario
from gbcbound.errors import (
    DimensionMismatch,
    DistortionAtSourceVariance,
    InvalidCapacities,
    InvalidSplit,
    NonStrictOrdering,
)
from gbcbound.membership import in_outer_region
from gbcbound.verify import random_scenario

CH = GaussianBC(3, (3, 1))


def test_boundary_rates_corners():
    assert boundary_rates(CH, (1, 0), 1).rates == pytest.approx((0.5 * math.log2(2), 0.0))
    assert boundary_rates(CH, (0, 1), 1).rates == pytest.approx((0.0, 0.5 * math.log2(4)))


def test_boundary_rates_interior_point():
    # independent oracle: the two logs evaluated directly
    point = boundary_rates(CH, (2 / 3, 1 / 3), 1)
    assert point.rates[0] == pytest.approx(0.5 * math.log2(6 / 4), rel=1e-12)
    assert point.rates[1] == pytest.approx(0.5 * math.log2(2 / 1), rel=1e-12)
    assert point.rates[0] == pytest.approx(0.29248125036057813, rel=1e-12)
    assert point.rates[1] == pytest.approx(0.5, rel=1e-12)


def test_boundary_rates_scale_with_bandwidth():
    base = boundary_rates(CH, (0.4, 0.6), 1)
    doubled = boundary_rates(CH, (0.4, 0.6), 2)
    assert doubled.rates == pytest.approx(tuple(2 * r for r in base.rates), rel=1e-12)


def test_boundary_rates_invalid_split():
    with pytest.raises(InvalidSplit):
        boundary_rates(CH, (0.5, 0.6), 1)
    with pytest.raises(InvalidSplit):
        boundary_rates(CH, (-0.1, 1.1), 1)
    with pytest.raises(InvalidSplit):
        boundary_rates(CH, (1.0,), 1)


def test_rate_membership_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        k = rng.randint(1, 4)
        noises = sorted((math.exp(rng.uniform(-3, 3)) for _ in range(k)), reverse=True)
        if any(a / b < 1.05 for a, b in zip(noises, noises[1:])):
            continue
        ch = GaussianBC(math.exp(rng.uniform(-2, 2)), tuple(noises))
        shares = [rng.random() for _ in range(k)]
        split = tuple(s / sum(shares) for s in shares)
        b = math.exp(rng.uniform(math.log(0.3), math.log(4.0)))
        point = boundary_rates(ch, split, b)
        assert rate_membership(ch, point, b)


def test_rate_membership_rejects_inflated_boundary():
    """Oracle: boundary points are Pareto-maximal on a fine split sweep."""
    point = boundary_rates(CH, (0.6, 0.4), 1.0)
    inflated = RatePoint(tuple(1.01 * r for r in point.rates))
    assert not rate_membership(CH, inflated, 1.0)
    for split in split_grid(2, 4001):
        r = boundary_rates(CH, split, 1.0).rates
        assert not (r[0] >= inflated.rates[0] and r[1] >= inflated.rates[1])


def test_rate_membership_zero_rates():
    assert rate_membership(CH, RatePoint((0.0, 0.0)), 1.0)
    assert rate_membership(CH, RatePoint((0.0, 0.0)), 0.3)


def test_rate_membership_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        rate_membership(CH, RatePoint((0.1,)), 1.0)


def test_virtual_channel_examples():
    virt = virtual_channel(1.0, (0.5, 0.25))
    assert virt.power == 1.0
    assert virt.noises == pytest.approx((1.0, 1 / 3), rel=1e-12)
    virt2 = virtual_channel(2.0, (1.0, 0.5))
    assert virt2.power == 2.0
    assert virt2.noises == pytest.approx((2.0, 2 / 3), rel=1e-12)
    # perfect reconstruction needs a noiseless virtual channel
    tiny = virtual_channel(1.0, (1e-9, 1e-12)).noises
    assert tiny[0] < 2e-9 and tiny[1] < 2e-12


def test_virtual_channel_errors():
    with pytest.raises(DistortionAtSourceVariance):
        virtual_channel(1.0, (1.0, 0.5))
    with pytest.raises(NonStrictOrdering):
        virtual_channel(1.0, (0.25, 0.5))
    with pytest.raises(NonStrictOrdering):
        virtual_channel(1.0, (0.5, 0.5))


def test_virtual_channel_preserves_point_to_point_capacity():
    """At the trivial point the virtual user capacities match the b-scaled physical ones."""
    for b in (0.5, 1.0, 2.0):
        sc = validate_scenario(3, [3, 1], b)
        virt = virtual_channel(1.0, trivial_distortions(sc).values)
        for k in (1, 2):
            got = point_to_point_capacity(virt, k, 1.0)
            want = point_to_point_capacity(GaussianBC(3, (3, 1)), k, b)
            assert got == pytest.approx(want, rel=1e-12)


def test_containment_reflexive():
    assert containment(CH, CH, 1.0, 1.0).contained


def test_containment_matched_bandwidth_equality():
    sc = validate_scenario(3, [3, 1], 1)
    virt = virtual_channel(1.0, trivial_distortions(sc).values)
    assert containment(virt, CH, 1.0, 1.0).contained
    assert containment(CH, virt, 1.0, 1.0).contained


def test_containment_expansion_strict():
    sc = validate_scenario(3, [3, 1], 2)
    virt = virtual_channel(1.0, trivial_distortions(sc).values)
    res = containment(virt, CH, 1.0, 2.0)
    assert not res.contained
    assert res.witness is not None and len(res.witness.rates) == 2
    # and the b-scaled physical region sits inside the virtual one
    assert containment(CH, virt, 2.0, 1.0).contained


def test_containment_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        containment(CH, GaussianBC(1, (1,)), 1.0, 1.0)


def test_scenario_from_capacities_values():
    sc = scenario_from_capacities(1, 5, 1)
    assert sc.power == 1.0
    assert sc.noises == pytest.approx((1 / 3, 1 / 1023), rel=1e-12)
    sc2 = scenario_from_capacities(1, 5, 2)
    assert sc2.noises == pytest.approx((1.0, 1 / 31), rel=1e-12)
    # 2 C_1 / b = 1 pins the worse noise at exactly P
    assert scenario_from_capacities(1, 5, 2).noises[0] == pytest.approx(1.0, rel=1e-12)


def test_scenario_from_capacities_errors():
    with pytest.raises(InvalidCapacities):
        scenario_from_capacities(5, 1, 1)
    with pytest.raises(InvalidCapacities):
        scenario_from_capacities(0, 1, 1)
    with pytest.raises(InvalidCapacities):
        scenario_from_capacities(2, 2, 1)


def test_corners_preserved_across_bandwidths():
    for b in (0.5, 1.0, 2.0, 3.7):
        sc = scenario_from_capacities(1, 5, b)
        ch = GaussianBC(sc.power, sc.noises)
        assert boundary_rates(ch, (1, 0), b).rates[0] == pytest.approx(1.0, abs=1e-9)
        assert boundary_rates(ch, (0, 1), b).rates[1] == pytest.approx(5.0, abs=1e-9)


def test_region_shrinks_as_bandwidth_grows():
    pairs = [(0.5, 1.0), (1.0, 2.0), (0.5, 2.0)]
    chans = {
        b: GaussianBC(*[getattr(scenario_from_capacities(1, 5, b), f) for f in ("power", "noises")])
        for b in (0.5, 1.0, 2.0)
    }
    for b_lo, b_hi in pairs:
        assert containment(chans[b_hi], chans[b_lo], b_hi, b_lo, samples=256).contained
        reverse = containment(chans[b_lo], chans[b_hi], b_lo, b_hi, samples=256)
        assert not reverse.contained and reverse.witness is not None


def test_split_grid_properties():
    for k, samples in ((1, 7), (2, 16), (3, 100), (4, 200)):
        grid = split_grid(k, samples)
        assert len(grid) >= min(samples, 1)
        for split in grid:
            assert len(split) == k
            assert abs(sum(split) - 1.0) < 1e-12
            assert all(s >= 0 for s in split)
        for corner in range(k):
            unit = tuple(1.0 if i == corner else 0.0 for i in range(k))
            assert unit in grid
    with pytest.raises(InvalidSplit):
        split_grid(2, 0)


def test_membership_agrees_with_capacity_containment():
    """Region membership == virtual-channel containment on random interior tuples."""
    rng = random.Random(42)
    agreements = 0
    for _ in range(30):
        b = rng.choice((0.5, 1.0, 2.0))
        sc = random_scenario(rng, k_range=(2, 3), bandwidth=b)
        ns = sc.source_var
        while True:
            draws = sorted((rng.uniform(0.05, 0.95) for _ in range(sc.num_receivers)), reverse=True)
            if all(a - c >= 0.02 for a, c in zip(draws, draws[1:])):
                break
        d = tuple(v * ns for v in draws)
        verdict = in_outer_region(sc, d)
        if abs(verdict.sup.sup_value - verdict.rhs) <= 1e-6 * verdict.rhs:
            continue  # too close to the frontier for sampled containment
        virt = virtual_channel(ns, d)
        phys = GaussianBC(sc.power, sc.noises)
        assert containment(virt, phys, 1.0, b, samples=256).contained == verdict.member
        agreements += 1
    assert agreements >= 15
