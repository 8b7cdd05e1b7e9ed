"""Search for a bit-to-table assignment with a small intermediate maximum.

The intermediate maximum is ``2**p - 1`` plus the sum of the per-table
maxima, so only the table maxima depend on the assignment. Up to
``EXHAUSTIVE_BITS`` table bits every set partition with the requested block
sizes is tried; above that a pairwise-swap descent starts from natural order.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from ..errors import ConfigurationError
from .modarith import Modulus, as_modulus, pow2_mod
from .plan import natural_grouping

EXHAUSTIVE_BITS = 12
# forcing exhaustive search past this gets impractically slow
EXHAUSTIVE_HARD_LIMIT = 16


def _group_max_fn(q: int) -> Callable[[tuple[int, ...]], int]:
    @lru_cache(maxsize=None)
    def weight(b: int) -> int:
        return pow2_mod(b, q)

    @lru_cache(maxsize=None)
    def group_max(group: tuple[int, ...]) -> int:
        sums = [0]
        for b in group:
            w = weight(b)
            sums += [(s + w) % q for s in sums]
        return max(sums)

    return lambda group: group_max(tuple(sorted(group)))


def _cost(groups: Sequence[Sequence[int]], group_max) -> int:
    return sum(group_max(g) for g in groups)


def _arrange(blocks: Sequence[tuple[int, ...]], table_sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Order blocks to follow ``table_sizes``; equal-sized blocks go by lowest bit."""
    pool: dict[int, list[tuple[int, ...]]] = {}
    for blk in sorted(blocks, key=min):
        pool.setdefault(len(blk), []).append(tuple(sorted(blk)))
    return [pool[k].pop(0) for k in table_sizes]


def _exhaustive(bits, table_sizes, group_max, best_groups, best_cost):
    counts = Counter(table_sizes)
    blocks: list[tuple[int, ...]] = []
    best: list[tuple[int, ...]] | None = None

    def search(remaining: tuple[int, ...], cost: int) -> None:
        nonlocal best, best_cost
        if cost >= best_cost:
            return
        if not remaining:
            best, best_cost = list(blocks), cost
            return
        first, rest = remaining[0], remaining[1:]
        for k in sorted(counts):
            if not counts[k]:
                continue
            counts[k] -= 1
            for others in combinations(rest, k - 1):
                blk = (first,) + others
                blocks.append(blk)
                left = tuple(b for b in rest if b not in others)
                search(left, cost + group_max(blk))
                blocks.pop()
            counts[k] += 1

    search(tuple(bits), 0)
    if best is None:
        return best_groups
    return _arrange(best, table_sizes)


def _greedy(bits, groups, group_max):
    groups = [tuple(g) for g in groups]
    owner = {b: gi for gi, g in enumerate(groups) for b in g}
    budget = 10 * len(bits) ** 2
    improved = True
    while improved and budget > 0:
        improved = False
        for ai, a in enumerate(bits):
            for b in bits[ai + 1:]:
                ga, gb = owner[a], owner[b]
                if ga == gb:
                    continue
                if budget <= 0:
                    break
                budget -= 1
                new_a = tuple(sorted(b if x == a else x for x in groups[ga]))
                new_b = tuple(sorted(a if x == b else x for x in groups[gb]))
                delta = (group_max(new_a) + group_max(new_b)
                         - group_max(groups[ga]) - group_max(groups[gb]))
                if delta < 0:
                    groups[ga], groups[gb] = new_a, new_b
                    owner[a], owner[b] = gb, ga
                    improved = True
                    break
            if improved or budget <= 0:
                break
    return [tuple(sorted(g)) for g in groups]


def optimize_grouping(
    modulus: int | Modulus,
    width: int,
    table_sizes: Sequence[int],
    method: str | None = None,
) -> list[tuple[int, ...]]:
    """Assign the table bits ``[W - sum(table_sizes), W)`` to tables.

    Returns one ascending tuple of bit indices per entry of ``table_sizes``.
    The result never has a larger intermediate maximum than natural order,
    and is deterministic. ``method`` is ``"exhaustive"``, ``"greedy"``,
    ``"natural"`` or None to choose by bit count.
    """
    mod = as_modulus(modulus)
    sizes = [int(k) for k in table_sizes]
    if any(k < 1 for k in sizes):
        raise ConfigurationError(f"table sizes must be >= 1, got {sizes}")
    p = width - sum(sizes)
    if p not in (mod.n - 1, mod.n):
        raise ConfigurationError(
            f"table sizes {sizes} do not fit width {width} with n={mod.n}"
        )
    bits = list(range(p, width))
    natural = natural_grouping(p, sizes)
    if method is None:
        method = "exhaustive" if len(bits) <= EXHAUSTIVE_BITS else "greedy"
    if method == "natural" or len(sizes) < 2:
        return natural

    group_max = _group_max_fn(mod.q)
    if method == "exhaustive":
        if len(bits) > EXHAUSTIVE_HARD_LIMIT:
            raise ConfigurationError(
                f"exhaustive grouping over {len(bits)} bits exceeds {EXHAUSTIVE_HARD_LIMIT}"
            )
        return _exhaustive(bits, sizes, group_max, natural, _cost(natural, group_max))
    if method == "greedy":
        return _greedy(bits, natural, group_max)
    raise ConfigurationError(f"unknown grouping method {method!r}")


def assignment_max_intermediate(
    modulus: int | Modulus, passthrough: int, groups: Sequence[Sequence[int]]
) -> int:
    """Intermediate maximum a given assignment would produce."""
    mod = as_modulus(modulus)
    return (1 << passthrough) - 1 + _cost(groups, _group_max_fn(mod.q))
