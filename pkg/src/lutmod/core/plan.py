"""Reduction plans: passthrough bits, grouped residue tables and final-stage constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import ConfigurationError
from .modarith import Modulus, as_modulus, conditional_subtract, pow2_mod

# 2**24 entries per table is already far past any sensible ROM
MAX_TABLE_BITS = 24

STRATEGIES = ("natural", "exhaustive", "greedy")


@dataclass(frozen=True)
class BitGroup:
    """Input-bit positions feeding one table; ``bit_indices[j]`` is address bit ``j``."""

    bit_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bit_indices", tuple(int(b) for b in self.bit_indices))
        if not self.bit_indices:
            raise ConfigurationError("a bit group needs at least one bit")
        if len(set(self.bit_indices)) != len(self.bit_indices):
            raise ConfigurationError(f"duplicate bit index in group {self.bit_indices}")
        if min(self.bit_indices) < 0:
            raise ConfigurationError(f"negative bit index in group {self.bit_indices}")
        if len(self.bit_indices) > MAX_TABLE_BITS:
            raise ConfigurationError(
                f"table with {len(self.bit_indices)} inputs exceeds the {MAX_TABLE_BITS}-bit limit"
            )

    def __len__(self) -> int:
        return len(self.bit_indices)

    def address(self, value: int) -> int:
        """Gather the group's bits of ``value`` into a table address."""
        addr = 0
        for j, b in enumerate(self.bit_indices):
            addr |= ((value >> b) & 1) << j
        return addr


@dataclass(frozen=True)
class LutTable:
    group: BitGroup
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != 1 << len(self.group):
            raise ConfigurationError(
                f"table over {len(self.group)} bits needs {1 << len(self.group)} entries, "
                f"got {len(self.entries)}"
            )
        if self.entries[0] != 0:
            raise ConfigurationError("table entry for the all-zero address must be 0")

    @property
    def k(self) -> int:
        return len(self.group)

    @property
    def max_entry(self) -> int:
        return max(self.entries)

    def expected_entries(self, q: int) -> tuple[int, ...]:
        return table_entries(self.group.bit_indices, q)

    def is_sound(self, q: int) -> bool:
        return self.entries == self.expected_entries(q)


def table_entries(bit_indices: Sequence[int], q: int) -> tuple[int, ...]:
    """Residues of every address of a table over ``bit_indices``.

    Each entry extends a smaller one by its lowest set address bit, so every
    intermediate stays below ``2q``.
    """
    weights = [pow2_mod(b, q) for b in bit_indices]
    entries = [0] * (1 << len(weights))
    for x in range(1, len(entries)):
        low = (x & -x).bit_length() - 1
        entries[x] = conditional_subtract(entries[x ^ (1 << low)] + weights[low], q)
    return tuple(entries)


def make_table(bit_indices: Iterable[int], q: int) -> LutTable:
    group = BitGroup(tuple(bit_indices))
    return LutTable(group, table_entries(group.bit_indices, q))


@dataclass(frozen=True)
class GroupingSpec:
    """Table sizes (address widths) and how bits are assigned to them."""

    table_sizes: tuple[int, ...]
    strategy: str = "natural"

    def __post_init__(self) -> None:
        object.__setattr__(self, "table_sizes", tuple(int(k) for k in self.table_sizes))
        if any(k < 1 for k in self.table_sizes):
            raise ConfigurationError(f"table sizes must be >= 1, got {list(self.table_sizes)}")
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(
                f"unknown grouping strategy {self.strategy!r}; expected one of {STRATEGIES}"
            )

    @property
    def bit_count(self) -> int:
        return sum(self.table_sizes)


@dataclass(frozen=True)
class ReductionPlan:
    """Everything precomputed for reducing ``width``-bit values modulo ``q``.

    The low ``passthrough`` bits enter the intermediate sum unchanged; each
    table contributes the residue of its bits' place values. ``multiples``
    holds ``0, q, ..., i_max*q`` for the final stage.
    """

    modulus: Modulus
    width: int
    passthrough: int
    tables: tuple[LutTable, ...]
    max_intermediate: int = field(default=-1)
    i_max: int = field(default=-1)
    multiples: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.modulus.n
        if self.width < n:
            raise ConfigurationError(f"width {self.width} is narrower than n={n}")
        if self.passthrough not in (n - 1, n) or self.passthrough > self.width:
            raise ConfigurationError(
                f"passthrough count {self.passthrough} must be n-1 or n (n={n})"
            )
        tables = tuple(sorted(self.tables, key=lambda t: min(t.group.bit_indices)))
        object.__setattr__(self, "tables", tables)
        covered = sorted(b for t in tables for b in t.group.bit_indices)
        if covered != list(range(self.passthrough, self.width)):
            raise ConfigurationError(
                f"tables must partition bits [{self.passthrough}, {self.width}), got {covered}"
            )
        q = self.modulus.q
        for t in tables:
            if t.max_entry >= q:
                raise ConfigurationError(f"table entry {t.max_entry} is not a residue mod {q}")

        max_c = (1 << self.passthrough) - 1 + sum(t.max_entry for t in tables)
        i_max = max_c // q
        if self.max_intermediate not in (-1, max_c):
            raise ConfigurationError(
                f"max_intermediate {self.max_intermediate} disagrees with tables ({max_c})"
            )
        if self.i_max not in (-1, i_max):
            raise ConfigurationError(f"i_max {self.i_max} disagrees with tables ({i_max})")
        object.__setattr__(self, "max_intermediate", max_c)
        object.__setattr__(self, "i_max", i_max)
        object.__setattr__(self, "multiples", tuple(i * q for i in range(i_max + 1)))

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def table_bits(self) -> int:
        """Bits routed through tables (``W - p``)."""
        return self.width - self.passthrough

    @property
    def table_sizes(self) -> tuple[int, ...]:
        return tuple(t.k for t in self.tables)

    @property
    def final_cases(self) -> int:
        return self.i_max + 1

    def groups(self) -> list[tuple[int, ...]]:
        return [t.group.bit_indices for t in self.tables]

    def is_sound(self) -> bool:
        return all(t.is_sound(self.q) for t in self.tables)


def natural_grouping(passthrough: int, table_sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Assign consecutive bits starting at ``passthrough`` to tables in order."""
    groups = []
    start = passthrough
    for k in table_sizes:
        groups.append(tuple(range(start, start + k)))
        start += k
    return groups


def resolve_layout(
    modulus: int | Modulus,
    width: int,
    table_sizes: Sequence[int] | None = None,
    nth_bit: bool | None = None,
    default_k: int = 6,
) -> tuple[int, list[int]]:
    """Pick the passthrough count and final table sizes for a configuration.

    With ``nth_bit=None`` and explicit sizes covering exactly ``W-n`` or
    ``W-n+1`` bits, the passthrough count follows from the sizes. Otherwise
    ``p = n-1`` (or ``n`` when ``nth_bit`` is False, or when ``W == n``). A
    single size ``k`` splits the table bits into ``k``-bit tables; a longer
    list is used as given, its last size repeating while bits remain. Either
    way the final table takes whatever bits are left.
    """
    mod = as_modulus(modulus)
    n = mod.n
    if width < n:
        raise ConfigurationError(f"width {width} is narrower than n={n}")
    sizes = [int(k) for k in (table_sizes or [])]
    if any(k < 1 for k in sizes):
        raise ConfigurationError(f"table sizes must be >= 1, got {sizes}")

    if nth_bit is None and sizes and width - sum(sizes) in (n - 1, n):
        return width - sum(sizes), sizes

    p = n - 1 if (nth_bit is not False and width > n) else n
    remaining = width - p
    if len(sizes) <= 1:
        k = sizes[0] if sizes else default_k
        sizes = [k] * (remaining // k) + ([remaining % k] if remaining % k else [])
        return p, sizes
    if sum(sizes) > remaining:
        raise ConfigurationError(
            f"table sizes {sizes} cover {sum(sizes)} bits but only {remaining} are available"
        )
    while sum(sizes) < remaining:
        sizes.append(min(sizes[-1], remaining - sum(sizes)))
    return p, sizes


def build_basic_plan(modulus: int | Modulus, width: int, nth_bit: bool = False) -> ReductionPlan:
    """One single-bit table per bit above the passthrough range."""
    mod = as_modulus(modulus)
    if width < mod.n:
        raise ConfigurationError(f"width {width} is narrower than n={mod.n}")
    p = mod.n - 1 if (nth_bit and width > mod.n) else mod.n
    tables = tuple(make_table((b,), mod.q) for b in range(p, width))
    return ReductionPlan(mod, width, p, tables)


def build_grouped_plan(
    modulus: int | Modulus,
    width: int,
    grouping: GroupingSpec | Sequence[int],
    passthrough: int | None = None,
) -> ReductionPlan:
    """Build a plan with tables of the given sizes.

    The passthrough count defaults to ``width - sum(table_sizes)`` and must
    come out as ``n-1`` or ``n``.
    """
    mod = as_modulus(modulus)
    if not isinstance(grouping, GroupingSpec):
        grouping = GroupingSpec(tuple(grouping))
    if width < mod.n:
        raise ConfigurationError(f"width {width} is narrower than n={mod.n}")
    p = width - grouping.bit_count if passthrough is None else passthrough
    if p not in (mod.n - 1, mod.n) or p + grouping.bit_count != width:
        raise ConfigurationError(
            f"table sizes {list(grouping.table_sizes)} sum to {grouping.bit_count}; "
            f"width {width} needs {width - mod.n} or {width - mod.n + 1} table bits"
        )
    if grouping.strategy == "natural":
        groups = natural_grouping(p, grouping.table_sizes)
    else:
        from .grouping import optimize_grouping

        groups = optimize_grouping(mod, width, grouping.table_sizes, method=grouping.strategy)
    tables = tuple(make_table(g, mod.q) for g in groups)
    return ReductionPlan(mod, width, p, tables)


def plan_from_groups(
    modulus: int | Modulus, width: int, groups: Sequence[Sequence[int]]
) -> ReductionPlan:
    """Build a plan from an explicit bit-to-table assignment."""
    mod = as_modulus(modulus)
    bits = sum(len(g) for g in groups)
    tables = tuple(make_table(g, mod.q) for g in groups)
    return ReductionPlan(mod, width, width - bits, tables)
