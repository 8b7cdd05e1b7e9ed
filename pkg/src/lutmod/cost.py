"""Structural resource counts for the table scheme and the Barrett baselines.

These are operation and storage counts, not technology-mapped LUT/DSP or
area figures.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .barrett import barrett_constants, shift_add_plan
from .core.modarith import Modulus, as_modulus
from .core.plan import GroupingSpec, ReductionPlan, build_basic_plan, build_grouped_plan, resolve_layout

BARRETT_MODES = ("general", "shift_add", "shift_add_signed")

# Published synthesis figures for the two standard moduli. Vendor tool
# outputs, shown for context only; nothing here derives from them.
REPORTED_REFERENCE = {
    3329: {
        "fpga_luts_dsps": {
            "barrett_general": (54, 2),
            "barrett_optimized": (74, 1),
            "barrett_optimized_no_dsp": (212, 0),
            "lut_based": (82, 0),
        },
        "asic_area_vs_optimized_barrett": {
            "barrett_optimized_tool": 1.0,
            "barrett_optimized_manual": 0.97,
            "barrett_general": 2.7,
            "lut_based": 0.59,
        },
    },
    8380417: {
        "fpga_luts_dsps": {
            "barrett_general": (130, 5),
            "barrett_optimized": (255, 0),
            "lut_based": (200, 0),
        },
        "asic_area_vs_optimized_barrett": {
            "barrett_optimized_tool": 1.0,
            "barrett_optimized_manual": 1.0,
            "barrett_general": 6.0,
            "lut_based": 0.63,
        },
    },
}


@dataclass(frozen=True)
class CostReport:
    scheme: str
    storage_bits: int
    table_count: int
    adder_count: int
    adder_width: int
    final_cases: int
    multiplier_count: int
    shift_add_terms: int

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if name != "scheme" and value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value}")


def cost_of_plan(plan: ReductionPlan, scheme: str = "lut") -> CostReport:
    return CostReport(
        scheme=scheme,
        storage_bits=sum((1 << t.k) * plan.n for t in plan.tables),
        table_count=len(plan.tables),
        adder_count=len(plan.tables),
        adder_width=plan.max_intermediate.bit_length(),
        final_cases=plan.final_cases,
        multiplier_count=0,
        shift_add_terms=0,
    )


def cost_of_barrett(q: int | Modulus, mode: str = "general") -> CostReport:
    """Counts for Barrett reduction; ``mode`` is general, shift_add or shift_add_signed."""
    mod = as_modulus(q)
    if mode not in BARRETT_MODES:
        raise ValueError(f"unknown Barrett mode {mode!r}; expected one of {BARRETT_MODES}")
    consts = barrett_constants(mod.q)
    # widest value in the datapath is the c*m product
    width = ((mod.q * mod.q - 1) * consts.m).bit_length()
    if mode == "general":
        return CostReport(f"barrett_{mode}", 0, 0, 2, width, 2, 2, 0)
    signed = mode == "shift_add_signed"
    terms = (shift_add_plan(consts.m, signed).nonzero_digits
             + shift_add_plan(mod.q, signed).nonzero_digits)
    # (terms - 2) accumulation adders, plus the subtraction and the conditional subtraction
    adders = terms - 2 + 2
    return CostReport(f"barrett_{mode}", 0, 0, adders, width, 2, 0, terms)


def _ratio(a: int, b: int) -> float | None:
    return round(a / b, 4) if b else None


@dataclass(frozen=True)
class ComparisonReport:
    q: int
    n: int
    width: int
    passthrough_bits: int
    table_sizes: list[int]
    lut: CostReport
    lut_basic: CostReport
    barrett_general: CostReport
    barrett_shift_add: CostReport
    barrett_shift_add_signed: CostReport
    ratios: dict[str, float | None] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def compare(
    q: int | Modulus,
    width: int,
    grouping: GroupingSpec | Sequence[int] | None = None,
    nth_bit: bool | None = None,
) -> ComparisonReport:
    """Cost the grouped table plan against the single-bit plan and Barrett baselines."""
    mod = as_modulus(q)
    if isinstance(grouping, GroupingSpec):
        sizes, strategy = list(grouping.table_sizes), grouping.strategy
    else:
        sizes, strategy = list(grouping or []), "natural"
    p, sizes = resolve_layout(mod, width, sizes, nth_bit)
    plan = build_grouped_plan(mod, width, GroupingSpec(tuple(sizes), strategy), passthrough=p)
    basic = build_basic_plan(mod, width, nth_bit=p == mod.n - 1)

    lut = cost_of_plan(plan)
    lut_basic = cost_of_plan(basic, scheme="lut_basic")
    general = cost_of_barrett(mod, "general")
    sa = cost_of_barrett(mod, "shift_add")
    sa_signed = cost_of_barrett(mod, "shift_add_signed")
    ratios = {
        "final_cases_vs_basic": _ratio(lut.final_cases, lut_basic.final_cases),
        "adders_vs_basic": _ratio(lut.adder_count, lut_basic.adder_count),
        "storage_vs_basic": _ratio(lut.storage_bits, lut_basic.storage_bits),
        "adders_vs_barrett_shift_add": _ratio(lut.adder_count, sa.adder_count),
        "adder_width_vs_barrett": _ratio(lut.adder_width, general.adder_width),
    }
    return ComparisonReport(
        q=mod.q,
        n=mod.n,
        width=width,
        passthrough_bits=p,
        table_sizes=sizes,
        lut=lut,
        lut_basic=lut_basic,
        barrett_general=general,
        barrett_shift_add=sa,
        barrett_shift_add_signed=sa_signed,
        ratios=ratios,
    )
