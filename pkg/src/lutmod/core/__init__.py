from .evaluate import OpCounts, Trace, intermediate_sum, reduce, reduce_batch, trace
from .grouping import assignment_max_intermediate, optimize_grouping
from .modarith import Modulus, as_modulus, conditional_subtract, pow2_mod
from .plan import (
    BitGroup,
    GroupingSpec,
    LutTable,
    ReductionPlan,
    build_basic_plan,
    build_grouped_plan,
    make_table,
    natural_grouping,
    plan_from_groups,
    resolve_layout,
    table_entries,
)
from .serialize import dumps, load, loads, plan_from_dict, plan_to_dict, save

__all__ = [
    "BitGroup",
    "GroupingSpec",
    "LutTable",
    "Modulus",
    "OpCounts",
    "ReductionPlan",
    "Trace",
    "as_modulus",
    "assignment_max_intermediate",
    "build_basic_plan",
    "build_grouped_plan",
    "conditional_subtract",
    "dumps",
    "intermediate_sum",
    "load",
    "loads",
    "make_table",
    "natural_grouping",
    "optimize_grouping",
    "plan_from_dict",
    "plan_from_groups",
    "plan_to_dict",
    "pow2_mod",
    "reduce",
    "reduce_batch",
    "resolve_layout",
    "save",
    "table_entries",
    "trace",
]
