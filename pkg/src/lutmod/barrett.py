"""Barrett reduction baselines: the general form and a shift-add form for constant multipliers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core.modarith import Modulus, conditional_subtract
from .errors import ConfigurationError, ContractViolation

# exhaustive check of the single-subtraction property up to this n
EXHAUSTIVE_CHECK_BITS = 8


@dataclass(frozen=True)
class BarrettConstants:
    """Shift ``k`` and multiplier ``m`` for reducing inputs below ``input_limit``.

    The input range is ``[0, 2**(2n))``, which contains every product of two
    residues.
    """

    q: int
    k: int
    m: int

    def __post_init__(self) -> None:
        if not self.m * self.q <= (1 << self.k) < (self.m + 1) * self.q:
            raise ConfigurationError(f"m={self.m} is not floor(2**{self.k}/{self.q})")

    @property
    def input_limit(self) -> int:
        return 1 << (2 * Modulus(self.q).n)


@dataclass(frozen=True)
class ShiftAddPlan:
    """``constant`` as a sum of signed powers of two, shifts ascending."""

    constant: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        shifts = [s for s, _ in self.terms]
        if shifts != sorted(set(shifts)):
            raise ConfigurationError(f"shifts must be strictly increasing, got {shifts}")
        if any(sign not in (1, -1) for _, sign in self.terms):
            raise ConfigurationError("term signs must be +1 or -1")
        if sum(sign << s for s, sign in self.terms) != self.constant:
            raise ConfigurationError(f"terms do not sum to {self.constant}")

    @property
    def nonzero_digits(self) -> int:
        return len(self.terms)

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.terms)


def _single_subtraction_holds(q: int, k: int, m: int) -> bool:
    """Whether one conditional subtraction finishes every input below ``2**(2n)``."""
    n = Modulus(q).n
    if n > EXHAUSTIVE_CHECK_BITS:
        # t undershoots floor(c/q) by c*(2**k/q - m)/2**k < c/2**k, below 1 while c < 2**k
        return k >= 2 * n
    c = np.arange(1 << (2 * n), dtype=np.int64)
    r = c - ((c * m) >> k) * q
    return bool(r.min() >= 0 and r.max() < 2 * q)


@lru_cache(maxsize=None)
def barrett_constants(q: int) -> BarrettConstants:
    """Shift ``k`` (starting at ``2n``) and multiplier ``m = floor(2**k / q)``."""
    k = 2 * Modulus(q).n
    while not _single_subtraction_holds(q, k, (1 << k) // q):
        k += 1
    return BarrettConstants(q, k, (1 << k) // q)


def _check(value: int, constants: BarrettConstants) -> None:
    if not 0 <= value < constants.input_limit:
        raise ContractViolation(
            f"Barrett input must lie in [0, {constants.input_limit}), got {value}"
        )


def barrett_reduce(value: int, constants: BarrettConstants) -> int:
    q = constants.q
    _check(value, constants)
    t = (value * constants.m) >> constants.k
    return conditional_subtract(value - t * q, q)


def _naf_digits(value: int) -> list[int]:
    digits = []
    while value:
        if value & 1:
            d = 2 - (value & 3)
            value -= d
        else:
            d = 0
        digits.append(d)
        value >>= 1
    return digits


def shift_add_plan(constant: int, signed: bool = False) -> ShiftAddPlan:
    """Decompose ``constant`` into shifted terms.

    Unsigned mode keeps one positive term per set bit. Signed mode uses the
    non-adjacent form, which has the fewest nonzero digits of any signed
    binary representation.
    """
    if constant < 1:
        raise ConfigurationError(f"constant must be >= 1, got {constant}")
    if signed:
        terms = [(i, d) for i, d in enumerate(_naf_digits(constant)) if d]
    else:
        terms = [(i, 1) for i in range(constant.bit_length()) if (constant >> i) & 1]
    return ShiftAddPlan(constant, tuple(terms))


def shift_add_multiply(a, plan: ShiftAddPlan):
    """``a * plan.constant`` from shifts, additions and subtractions.

    Works elementwise on signed numpy integer arrays as well as on ints.
    """
    acc = 0
    for shift, sign in plan.terms:
        if sign > 0:
            acc = acc + (a << shift)
        else:
            acc = acc - (a << shift)
    return acc


@lru_cache(maxsize=None)
def _shift_add_setup(q: int, signed: bool) -> tuple[BarrettConstants, ShiftAddPlan, ShiftAddPlan]:
    consts = barrett_constants(q)
    return consts, shift_add_plan(consts.m, signed), shift_add_plan(q, signed)


def barrett_reduce_shift_add(value: int, q: int, signed: bool = False) -> int:
    consts, m_plan, q_plan = _shift_add_setup(q, signed)
    _check(value, consts)
    t = shift_add_multiply(value, m_plan) >> consts.k
    return conditional_subtract(value - shift_add_multiply(t, q_plan), q)


def _as_batch(values, constants: BarrettConstants):
    limit = constants.input_limit
    # int64 is enough while c*m stays well below 2**63; otherwise use Python ints
    if limit * constants.m < (1 << 62):
        v = np.asarray(values, dtype=np.int64)
    else:
        v = np.asarray([int(x) for x in values], dtype=object)
    if v.size and (v.min() < 0 or v.max() >= limit):
        raise ContractViolation(f"Barrett inputs must lie in [0, {limit})")
    return v


def _finish(c, q: int):
    if c.size and (c.min() < 0 or c.max() >= 2 * q):
        raise ContractViolation("Barrett estimate left more than one subtraction")
    return c - q * (c >= q)


def barrett_reduce_batch(values, constants: BarrettConstants):
    q = constants.q
    v = _as_batch(values, constants)
    t = (v * constants.m) >> constants.k
    return _finish(v - t * q, q)


def barrett_reduce_shift_add_batch(values, q: int, signed: bool = False):
    consts, m_plan, q_plan = _shift_add_setup(q, signed)
    v = _as_batch(values, consts)
    t = shift_add_multiply(v, m_plan) >> consts.k
    return _finish(v - shift_add_multiply(t, q_plan), q)
