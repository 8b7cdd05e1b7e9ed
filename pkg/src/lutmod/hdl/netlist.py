"""Word-level netlist lowered from a reduction plan, and its simulator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from ..core.plan import ReductionPlan
from ..errors import ConfigurationError, ContractViolation

OPS = ("input", "constant", "slice", "rom_lookup", "add", "compare_ge", "select", "subtract")

# pipeline boundary after which each kind of node sits
_NOMINAL_STAGE = {
    "input": 0,
    "constant": 0,
    "slice": 0,
    "rom_lookup": 0,
    "add": 1,
    "compare_ge": 2,
    "select": 3,
    "subtract": 3,
}

MAX_PIPELINE_STAGES = 3


@dataclass(frozen=True)
class Node:
    """One netlist node.

    ``param`` carries the op-specific constant: the bit position for
    ``input``, the value for ``constant``, the table id for ``rom_lookup``,
    the threshold for ``compare_ge`` and the candidate tuple for ``select``.
    """

    op: str
    operands: tuple[int, ...]
    width: int
    max_value: int
    param: Any = None
    stage: int = 0


@dataclass(frozen=True)
class Netlist:
    input_width: int
    output_width: int
    nodes: tuple[Node, ...]
    roms: tuple[tuple[int, ...], ...]
    output: int
    pipeline_stages: int = 0

    def __post_init__(self) -> None:
        for i, node in enumerate(self.nodes):
            if node.op not in OPS:
                raise ConfigurationError(f"node {i}: unknown op {node.op!r}")
            if any(not 0 <= o < i for o in node.operands):
                raise ConfigurationError(f"node {i}: operand does not precede it")
        if not 0 <= self.output < len(self.nodes):
            raise ConfigurationError("output does not reference a node")

    def count(self, op: str) -> int:
        return sum(1 for node in self.nodes if node.op == op)

    @property
    def latency(self) -> int:
        return self.nodes[self.output].stage


class _Builder:
    def __init__(self, stages: int) -> None:
        self.nodes: list[Node] = []
        self.stages = stages

    def add(self, op: str, operands=(), max_value: int = 1, param=None, width: int | None = None) -> int:
        if width is None:
            width = max(1, max_value.bit_length())
        stage = min(_NOMINAL_STAGE[op], self.stages)
        self.nodes.append(Node(op, tuple(operands), width, max_value, param, stage))
        return len(self.nodes) - 1


def lower(plan: ReductionPlan, pipeline_stages: int = 0) -> Netlist:
    """Lower ``plan`` to table lookups, a balanced adder tree and the final select.

    ``pipeline_stages`` registers the boundaries after the lookups, after the
    adder tree and after the comparisons, in that order.
    """
    if not 0 <= pipeline_stages <= MAX_PIPELINE_STAGES:
        raise ConfigurationError(
            f"pipeline_stages must be in [0, {MAX_PIPELINE_STAGES}], got {pipeline_stages}"
        )
    b = _Builder(pipeline_stages)
    bits = [b.add("input", param=i) for i in range(plan.width)]

    p = plan.passthrough
    if p:
        low = b.add("slice", bits[:p], max_value=(1 << p) - 1)
    else:
        low = b.add("constant", max_value=0, param=0)
    operands = [low]
    for tid, table in enumerate(plan.tables):
        refs = [bits[i] for i in table.group.bit_indices]
        operands.append(b.add("rom_lookup", refs, max_value=table.max_entry, param=tid, width=plan.n))

    while len(operands) > 1:
        nxt = []
        for i in range(0, len(operands) - 1, 2):
            lhs, rhs = operands[i], operands[i + 1]
            bound = b.nodes[lhs].max_value + b.nodes[rhs].max_value
            nxt.append(b.add("add", (lhs, rhs), max_value=bound))
        if len(operands) % 2:
            nxt.append(operands[-1])
        operands = nxt
    c_hat = operands[0]
    c_width = b.nodes[c_hat].width

    flags = [b.add("compare_ge", (c_hat,), param=m) for m in plan.multiples[1:]]
    chosen = b.add("select", flags, max_value=plan.multiples[-1], param=plan.multiples, width=c_width)
    out = b.add("subtract", (c_hat, chosen), max_value=plan.q - 1, width=c_width)

    roms = tuple(t.entries for t in plan.tables)
    return Netlist(plan.width, plan.n, tuple(b.nodes), roms, out, pipeline_stages)


def eval_netlist(netlist: Netlist, value):
    """Evaluate ``netlist`` on an int or an int64 array; registers are transparent."""
    limit = 1 << netlist.input_width
    vector = isinstance(value, np.ndarray)
    if vector:
        if netlist.input_width > 62:
            return np.array([eval_netlist(netlist, int(v)) for v in value], dtype=object)
        value = value.astype(np.int64)
        if value.size and (value.min() < 0 or value.max() >= limit):
            raise ContractViolation(f"inputs must fit in {netlist.input_width} bits")
        roms = [np.asarray(r, dtype=np.int64) for r in netlist.roms]
    else:
        if not 0 <= value < limit:
            raise ContractViolation(f"input {value} does not fit in {netlist.input_width} bits")
        roms = netlist.roms

    vals: list[Any] = []
    for node in netlist.nodes:
        args = [vals[o] for o in node.operands]
        if node.op == "input":
            v = (value >> node.param) & 1
        elif node.op == "constant":
            v = node.param
        elif node.op in ("slice", "rom_lookup"):
            v = 0
            for j, bit in enumerate(args):
                v = v | (bit << j)
            if node.op == "rom_lookup":
                v = roms[node.param][v]
        elif node.op == "add":
            v = args[0] + args[1]
        elif node.op == "compare_ge":
            v = (args[0] >= node.param) * 1
        elif node.op == "select":
            # thermometer-coded flags drive a mux over the candidates
            cands = node.param
            v = cands[0]
            for j, flag in enumerate(args):
                v = v + flag * (cands[j + 1] - cands[j])
        else:
            v = args[0] - args[1]
        vals.append(v)
    out = vals[netlist.output]
    return out & ((1 << netlist.output_width) - 1)
