import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lutmod import (
    ConfigurationError,
    ContractViolation,
    barrett_constants,
    barrett_reduce,
    barrett_reduce_shift_add,
    shift_add_multiply,
    shift_add_plan,
)
from lutmod.barrett import (
    BarrettConstants,
    ShiftAddPlan,
    barrett_reduce_batch,
    barrett_reduce_shift_add_batch,
)

# shift set listed for m = 5039 in the Kyber-specific shift-add Barrett
KYBER_M_SHIFTS = (12, 9, 8, 7, 5, 3, 2, 1, 0)


def test_kyber_constants():
    c = barrett_constants(3329)
    assert (c.k, c.m) == (24, 5039)


def test_modulus_two_constants():
    c = barrett_constants(2)
    assert (c.k, c.m) == (2, 2)


def test_dilithium_constants():
    c = barrett_constants(8380417)
    assert c.k == 46
    assert c.m == (1 << 46) // 8380417 == 8396807


def test_listed_kyber_shifts_sum_to_m():
    assert sum(1 << s for s in KYBER_M_SHIFTS) == 5039
    assert set(shift_add_plan(5039).shifts) == set(KYBER_M_SHIFTS)


@pytest.mark.parametrize("q", range(2, 257))
def test_constants_relation_and_inner_bound(q):
    c = barrett_constants(q)
    assert c.m * q <= (1 << c.k) < (c.m + 1) * q
    assert c.k == 2 * (q - 1).bit_length()
    # products of residues, then the full 2n-bit range
    for limit in (q * q, c.input_limit):
        x = np.arange(limit, dtype=np.int64)
        inner = x - ((x * c.m) >> c.k) * q
        assert inner.min() >= 0 and inner.max() < 2 * q


def test_constants_reject_wrong_multiplier():
    with pytest.raises(ConfigurationError):
        BarrettConstants(13, 8, 20)


@pytest.mark.parametrize(
    "value, q, expected",
    [(210, 13, 2), (0, 13, 0), (0, 3329, 0), (3328**2, 3329, 1), (168, 13, 12)],
)
def test_barrett_examples(value, q, expected):
    assert barrett_reduce(value, barrett_constants(q)) == expected
    assert barrett_reduce_shift_add(value, q) == expected


def test_shift_add_examples():
    assert barrett_reduce_shift_add(210 * 3329 + 7, 3329) == 7
    assert barrett_reduce_shift_add(11075584, 3329) == 1


def test_barrett_domain():
    c = barrett_constants(13)
    assert c.input_limit == 256
    assert barrett_reduce(255, c) == 255 % 13
    with pytest.raises(ContractViolation):
        barrett_reduce(256, c)
    with pytest.raises(ContractViolation):
        barrett_reduce(-1, c)
    with pytest.raises(ContractViolation):
        barrett_reduce_shift_add(256, 13)
    with pytest.raises(ContractViolation):
        barrett_reduce_batch(np.array([256]), c)


def test_unsigned_plans():
    kq = shift_add_plan(3329)
    assert kq.shifts == (0, 8, 10, 11) and kq.nonzero_digits == 4
    assert shift_add_plan(5039).nonzero_digits == 9


def test_signed_plans():
    assert shift_add_plan(8380417, signed=True).terms == ((0, 1), (13, -1), (23, 1))
    # 8396807 = 2**23 + 2**13 + 2**3 - 1
    assert shift_add_plan(8396807, signed=True).terms == ((0, -1), (3, 1), (13, 1), (23, 1))


def _min_signed_weight(c, max_terms, max_shift):
    """Fewest signed powers of two summing to ``c``, by brute force."""
    import itertools

    powers = [sign << s for s in range(max_shift + 1) for sign in (1, -1)]
    for t in range(1, max_terms + 1):
        if any(sum(combo) == c for combo in itertools.combinations(powers, t)):
            return t
    return None


def test_naf_weight_is_minimal():
    # independent check that no three signed terms reach 8396807
    assert _min_signed_weight(8380417, 4, 25) == 3
    assert _min_signed_weight(8396807, 4, 25) == 4
    for c in range(1, 200):
        assert _min_signed_weight(c, 5, 9) == shift_add_plan(c, signed=True).nonzero_digits


def test_shift_add_multiply_examples():
    assert shift_add_multiply(1, shift_add_plan(3329)) == 3329
    assert shift_add_multiply(100, shift_add_plan(5039)) == 503900
    assert shift_add_multiply(0, shift_add_plan(5039, signed=True)) == 0


def test_shift_add_plan_rejects():
    with pytest.raises(ConfigurationError):
        shift_add_plan(0)
    with pytest.raises(ConfigurationError):
        ShiftAddPlan(5, ((0, 1), (1, 1)))
    with pytest.raises(ConfigurationError):
        ShiftAddPlan(5, ((2, 1), (0, 1)))


def _naf_is_nonadjacent(plan):
    shifts = plan.shifts
    return all(b - a >= 2 for a, b in zip(shifts, shifts[1:]))


@given(st.integers(1, 2**64))
def test_plans_reconstruct_constant(c):
    for signed in (False, True):
        plan = shift_add_plan(c, signed)
        assert sum(sign << s for s, sign in plan.terms) == c
    assert shift_add_plan(c).nonzero_digits == bin(c).count("1")
    naf = shift_add_plan(c, signed=True)
    assert naf.nonzero_digits <= bin(c).count("1")
    assert _naf_is_nonadjacent(naf)


@given(st.integers(0, 2**40), st.integers(1, 2**30))
def test_shift_add_multiply_matches_product(a, c):
    assert shift_add_multiply(a, shift_add_plan(c)) == a * c
    assert shift_add_multiply(a, shift_add_plan(c, signed=True)) == a * c


def test_naf_minimal_weight_small_constants():
    # oracle: shortest signed-digit form found by breadth-first search over +-2**i
    def min_weight(c, limit=4):
        frontier = {0}
        for w in range(limit + 1):
            if c in frontier:
                return w
            frontier = {v + s * (1 << i) for v in frontier for i in range(12) for s in (1, -1)}
        return None

    for c in range(1, 600):
        w = min_weight(c)
        if w is not None:
            assert shift_add_plan(c, signed=True).nonzero_digits == w


@pytest.mark.parametrize("q", [2, 3, 13, 251, 256, 3329, 8380417, 2**31 - 1])
def test_batch_paths_match_scalar(q):
    rng = random.Random(q)
    limit = barrett_constants(q).input_limit
    values = [rng.randrange(limit) for _ in range(500)] + [0, q * q - 1, limit - 1]
    want = [v % q for v in values]
    c = barrett_constants(q)
    assert [barrett_reduce(v, c) for v in values] == want
    assert [barrett_reduce_shift_add(v, q, signed=True) for v in values] == want
    assert list(barrett_reduce_batch(values, c)) == want
    assert list(barrett_reduce_shift_add_batch(values, q)) == want
    assert list(barrett_reduce_shift_add_batch(values, q, signed=True)) == want
