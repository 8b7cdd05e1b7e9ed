"""Multiplier-free modular reduction for static moduli via residue lookup tables."""

__version__ = "0.1.0"

from .barrett import (
    BarrettConstants,
    ShiftAddPlan,
    barrett_constants,
    barrett_reduce,
    barrett_reduce_shift_add,
    shift_add_multiply,
    shift_add_plan,
)
from .core import (
    BitGroup,
    GroupingSpec,
    LutTable,
    Modulus,
    OpCounts,
    ReductionPlan,
    build_basic_plan,
    build_grouped_plan,
    conditional_subtract,
    intermediate_sum,
    optimize_grouping,
    pow2_mod,
    reduce,
    reduce_batch,
)
from .cost import ComparisonReport, CostReport, compare, cost_of_barrett, cost_of_plan
from .errors import ConfigurationError, ContractViolation
from .hdl import Netlist, emit_testbench, emit_verilog, eval_netlist, lower

__all__ = [
    "BarrettConstants",
    "BitGroup",
    "ComparisonReport",
    "ConfigurationError",
    "ContractViolation",
    "CostReport",
    "GroupingSpec",
    "LutTable",
    "Modulus",
    "Netlist",
    "OpCounts",
    "ReductionPlan",
    "ShiftAddPlan",
    "barrett_constants",
    "barrett_reduce",
    "barrett_reduce_shift_add",
    "build_basic_plan",
    "build_grouped_plan",
    "compare",
    "conditional_subtract",
    "cost_of_barrett",
    "cost_of_plan",
    "emit_testbench",
    "emit_verilog",
    "eval_netlist",
    "intermediate_sum",
    "lower",
    "optimize_grouping",
    "pow2_mod",
    "reduce",
    "reduce_batch",
    "shift_add_multiply",
    "shift_add_plan",
]
