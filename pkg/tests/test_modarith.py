import pytest
from hypothesis import given
from hypothesis import strategies as st

from lutmod import ConfigurationError, ContractViolation, Modulus, conditional_subtract, pow2_mod


@pytest.mark.parametrize(
    "i, q, expected",
    [(4, 13, 3), (5, 13, 6), (6, 13, 12), (7, 13, 11), (3, 13, 8), (24, 3329, 2385)],
)
def test_pow2_mod_examples(i, q, expected):
    assert pow2_mod(i, q) == expected


@given(st.integers(0, 300), st.integers(2, 10**9))
def test_pow2_mod_matches_builtin(i, q):
    assert pow2_mod(i, q) == pow(2, i, q)


def test_pow2_mod_rejects_small_modulus():
    with pytest.raises(ConfigurationError):
        pow2_mod(3, 1)


@pytest.mark.parametrize("value, expected", [(5, 5), (15, 2), (25, 12), (0, 0), (13, 0)])
def test_conditional_subtract(value, expected):
    assert conditional_subtract(value, 13) == expected


@pytest.mark.parametrize("value", [26, 100, -1])
def test_conditional_subtract_out_of_range(value):
    with pytest.raises(ContractViolation):
        conditional_subtract(value, 13)


@pytest.mark.parametrize(
    "q, n",
    [(2, 1), (3, 2), (4, 2), (5, 3), (13, 4), (16, 4), (17, 5), (3329, 12), (8380417, 23), (1024, 10)],
)
def test_modulus_bit_count(q, n):
    assert Modulus(q).n == n


@given(st.integers(2, 2**40))
def test_modulus_bounds(q):
    n = Modulus(q).n
    if q & (q - 1):
        assert 2 ** (n - 1) <= q <= 2**n - 1
    else:
        assert q == 2**n


@pytest.mark.parametrize("q", [0, 1, -7, 2.5, True])
def test_modulus_rejects(q):
    with pytest.raises(ConfigurationError):
        Modulus(q)
