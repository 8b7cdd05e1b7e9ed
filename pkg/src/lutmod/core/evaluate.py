"""Bit-exact evaluation of a reduction plan."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation
from .plan import ReductionPlan


@dataclass
class OpCounts:
    """Tally of primitive operations executed by :func:`reduce`."""

    lookup: int = 0
    add: int = 0
    compare: int = 0
    subtract: int = 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.lookup, self.add, self.compare, self.subtract)


@dataclass(frozen=True)
class Trace:
    intermediate: int
    index: int
    result: int


def _check_input(plan: ReductionPlan, value: int) -> None:
    if not 0 <= value < (1 << plan.width):
        raise ContractViolation(
            f"value must lie in [0, 2**{plan.width}), got {value}"
        )


def _adder_tree(operands: list[int], counts: OpCounts | None) -> int:
    # balanced pairwise summation, one level at a time
    while len(operands) > 1:
        nxt = [operands[i] + operands[i + 1] for i in range(0, len(operands) - 1, 2)]
        if counts is not None:
            counts.add += len(nxt)
        if len(operands) % 2:
            nxt.append(operands[-1])
        operands = nxt
    return operands[0]


def _intermediate(plan: ReductionPlan, value: int, counts: OpCounts | None) -> int:
    operands = [value & ((1 << plan.passthrough) - 1)]
    for table in plan.tables:
        operands.append(table.entries[table.group.address(value)])
    if counts is not None:
        counts.lookup += len(plan.tables)
    return _adder_tree(operands, counts)


def _final_stage(plan: ReductionPlan, c_hat: int, counts: OpCounts | None) -> tuple[int, int]:
    # every comparison is evaluated; the true ones form a thermometer code
    flags = [c_hat >= m for m in plan.multiples[1:]]
    index = sum(flags)
    if counts is not None:
        counts.compare += len(flags)
        counts.subtract += 1
    return index, c_hat - plan.multiples[index]


def intermediate_sum(plan: ReductionPlan, value: int) -> int:
    """Passthrough bits plus every table output, before the final stage."""
    _check_input(plan, value)
    return _intermediate(plan, value, None)


def reduce(plan: ReductionPlan, value: int, counts: OpCounts | None = None) -> int:
    """Return ``value mod q`` using only table lookups, additions and one subtraction.

    Pass an :class:`OpCounts` to tally the operations performed; the tally
    depends on the plan alone.
    """
    _check_input(plan, value)
    c_hat = _intermediate(plan, value, counts)
    return _final_stage(plan, c_hat, counts)[1]


def trace(plan: ReductionPlan, value: int) -> Trace:
    """Reduce ``value`` and report the intermediate sum and the selected multiple."""
    _check_input(plan, value)
    c_hat = _intermediate(plan, value, None)
    index, result = _final_stage(plan, c_hat, None)
    return Trace(c_hat, index, result)


def reduce_batch(plan: ReductionPlan, values) -> np.ndarray:
    """Vectorised :func:`reduce` over an integer array.

    Plans up to 62 bits wide run in int64; wider plans fall back to the
    scalar path element by element.
    """
    if plan.width > 62:
        return np.array([reduce(plan, int(v)) for v in values], dtype=object)
    v = np.asarray(values, dtype=np.int64)
    if v.size and (v.min() < 0 or v.max() >= (1 << plan.width)):
        raise ContractViolation(f"values must lie in [0, 2**{plan.width})")
    total = v & ((1 << plan.passthrough) - 1)
    for table in plan.tables:
        addr = np.zeros_like(v)
        for j, b in enumerate(table.group.bit_indices):
            addr |= ((v >> b) & 1) << j
        total = total + np.asarray(table.entries, dtype=np.int64)[addr]
    index = np.zeros_like(v)
    for m in plan.multiples[1:]:
        index += total >= m
    return total - np.asarray(plan.multiples, dtype=np.int64)[index]
