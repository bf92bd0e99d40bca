import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from gbcbound.errors import InvalidP, LengthMismatch, ZeroP
from gbcbound.minkowski import check_minkowski, equality_condition, power_sum

P_SET = (0.2, 0.5, 0.9, 1.5, 2.0, 4.0)


def power_sum_oracle(entries, p):
    """Direct evaluation, no log domain."""
    return sum(x**p for x in entries) ** (1.0 / p)


def test_power_sum_hand_value():
    # (1^0.5 + 2^0.5)^2 = (1 + sqrt 2)^2
    want = (1.0 + math.sqrt(2.0)) ** 2
    assert power_sum((1, 2), 0.5) == pytest.approx(want, rel=1e-12)
    assert power_sum((1, 2), 0.5) == pytest.approx(5.828427124746190, rel=1e-12)


@given(st.floats(min_value=1e-6, max_value=1e6), st.floats(min_value=0.1, max_value=5.0))
def test_power_sum_single_entry_identity(c, p):
    assert power_sum((c,), p) == pytest.approx(c, rel=1e-12)


def test_power_sum_infinite_entry():
    assert power_sum((1, math.inf), 0.5) == math.inf
    assert power_sum((math.inf,), 2.0) == math.inf


def test_power_sum_zeros():
    assert power_sum((0.0, 0.0), 0.5) == 0.0
    assert power_sum((0.0, 2.0), 2.0) == pytest.approx(2.0, rel=1e-12)


def test_power_sum_negative_p():
    # harmonic-type mean: a zero entry dominates to 0, an inf entry drops out
    assert power_sum((0.0, 1.0), -1.0) == 0.0
    assert power_sum((math.inf, 2.0), -1.0) == pytest.approx(2.0, rel=1e-12)
    assert power_sum((2.0, 3.0), -1.0) == pytest.approx(power_sum_oracle((2, 3), -1.0), rel=1e-12)


def test_power_sum_errors():
    with pytest.raises(ZeroP):
        power_sum((1, 2), 0.0)
    with pytest.raises(LengthMismatch):
        power_sum((), 0.5)
    with pytest.raises(LengthMismatch):
        power_sum((-1.0,), 0.5)


def test_check_equality_case():
    # y = 2x is positively linearly dependent: both sides (sqrt 3 + sqrt 6)^2
    res = check_minkowski((1, 2), (2, 4), 0.5)
    want = (math.sqrt(3.0) + math.sqrt(6.0)) ** 2
    assert res.direction_holds and res.equality
    assert res.lhs == pytest.approx(want, rel=1e-9)
    assert res.rhs == pytest.approx(want, rel=1e-9)
    assert res.lhs == pytest.approx(17.485281374238568, rel=1e-9)


def test_check_strict_cases():
    res = check_minkowski((1, 0), (0, 1), 0.5)
    assert res.direction_holds and not res.equality
    assert res.lhs == pytest.approx(2.0, rel=1e-12)
    assert res.rhs == pytest.approx(4.0, rel=1e-12)
    rev = check_minkowski((1, 0), (0, 1), 2.0)
    assert rev.direction_holds and not rev.equality
    assert rev.lhs == pytest.approx(2.0, rel=1e-12)
    assert rev.rhs == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_check_infinite_entries_equalize():
    res = check_minkowski((1, math.inf), (2, 3), 0.5)
    assert res.direction_holds and res.equality
    assert math.isinf(res.lhs) and math.isinf(res.rhs)


def test_check_errors():
    with pytest.raises(LengthMismatch):
        check_minkowski((1, 2), (1,), 0.5)
    with pytest.raises(InvalidP):
        check_minkowski((1, 2), (2, 4), -0.5)
    with pytest.raises(InvalidP):
        check_minkowski((1, 2), (2, 4), 1.0005)


def test_equality_condition_examples():
    assert equality_condition((1, 2), (2, 4))  # lambda = 2
    assert equality_condition((0, 0), (3, 7))  # x all-zero clause
    assert not equality_condition((1, 2), (2, 5))
    assert equality_condition((1, math.inf), (2, 5))  # infinite entry clause
    assert equality_condition((1, 2), (0, 0))  # lambda = 0
    assert not equality_condition((1, 0), (2, 1))  # zero pattern mismatch


def test_direction_holds_on_random_pairs():
    rng = random.Random(123)
    for _ in range(2000):
        n = rng.randint(1, 8)
        x = [rng.expovariate(1.0) for _ in range(n)]
        y = [rng.expovariate(1.0) for _ in range(n)]
        if rng.random() < 0.1:
            x[rng.randrange(n)] = 0.0
        if rng.random() < 0.05:
            y[rng.randrange(n)] = math.inf
        res = check_minkowski(x, y, rng.choice(P_SET))
        assert res.direction_holds


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.one_of(st.just(0.0), st.floats(min_value=1e-3, max_value=1e3)),
        min_size=1,
        max_size=6,
    ),
    st.one_of(st.just(0.0), st.floats(min_value=1e-3, max_value=1e2)),
    st.sampled_from(P_SET),
)
def test_dependent_pairs_always_classify_equality(x, lam, p):
    # entry and scale ranges keep lam * x away from underflow, where the
    # float vectors would stop being proportional in the first place
    y = [lam * v for v in x]
    assert equality_condition(x, y)
    res = check_minkowski(x, y, p)
    assert res.direction_holds and res.equality


def test_noise_splitting_inequality_grid():
    """The two-user splitting step: <= for b < 1, >= (reversed) for b > 1."""
    rng = random.Random(9)
    for _ in range(200):
        p_pow = math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
        n2 = math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
        dn1 = math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
        for b in (0.3, 0.7, 1.5, 3.0):
            for t in (0.0, 1e-3, 0.1, 1.0, 10.0, 1e3):
                w = t ** (1.0 / b) if t > 0 else 0.0
                x = (dn1, dn1 * w)
                y = (n2, (p_pow + n2) * w)
                res = check_minkowski(x, y, b)
                assert res.direction_holds
                lhs_direct = (dn1**b * (1 + t)) ** (1 / b) + (n2**b + (p_pow + n2) ** b * t) ** (1 / b)
                rhs_direct = ((dn1 + n2) ** b + (p_pow + dn1 + n2) ** b * t) ** (1 / b)
                if b < 1:
                    assert lhs_direct <= rhs_direct * (1 + 1e-9)
                else:
                    assert lhs_direct >= rhs_direct * (1 - 1e-9)
                assert res.lhs == pytest.approx(lhs_direct, rel=1e-9)
                assert res.rhs == pytest.approx(rhs_direct, rel=1e-9)
