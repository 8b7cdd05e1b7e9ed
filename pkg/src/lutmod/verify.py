"""Differential check of every reduction engine against the builtin ``%``."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

import numpy as np

from .barrett import barrett_constants, barrett_reduce_batch, barrett_reduce_shift_add_batch
from .core.evaluate import reduce_batch
from .core.plan import ReductionPlan
from .hdl.netlist import eval_netlist, lower

CHUNK = 1 << 20
MAX_EXHAUSTIVE_WIDTH = 24


@dataclass
class EngineResult:
    engine: str
    checked: int = 0
    mismatches: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


@dataclass
class VerifyReport:
    q: int
    width: int
    mode: str
    vectors: int
    engines: list[EngineResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.engines)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["passed"] = self.passed
        return doc


def _chunks_exhaustive(width: int) -> Iterator[np.ndarray]:
    total = 1 << width
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(total, start + CHUNK), dtype=np.int64)


def _chunks_random(width: int, count: int, seed: int) -> Iterator[np.ndarray]:
    if width <= 62:
        rng = np.random.default_rng(seed)
        for start in range(0, count, CHUNK):
            yield rng.integers(0, 1 << width, size=min(CHUNK, count - start), dtype=np.int64)
    else:
        rng = random.Random(seed)
        for start in range(0, count, CHUNK):
            size = min(CHUNK, count - start)
            yield np.array([rng.getrandbits(width) for _ in range(size)], dtype=object)


def _engines(plan: ReductionPlan) -> list[tuple[str, Callable, bool]]:
    """(name, batch function, limited to the Barrett input range)."""
    q = plan.q
    netlist = lower(plan)
    consts = barrett_constants(q)
    return [
        ("lut", lambda v: reduce_batch(plan, v), False),
        ("netlist", lambda v: eval_netlist(netlist, v), False),
        ("barrett_general", lambda v: barrett_reduce_batch(v, consts), True),
        ("barrett_shift_add", lambda v: barrett_reduce_shift_add_batch(v, q), True),
    ]


def verify_plan(
    plan: ReductionPlan,
    exhaustive: bool = False,
    count: int = 100_000,
    seed: int = 0,
) -> VerifyReport:
    """Run each engine over the test set and record the first disagreement.

    Barrett engines only see inputs below ``2**(2n)``, their valid domain.
    """
    if exhaustive:
        if plan.width > MAX_EXHAUSTIVE_WIDTH:
            raise ValueError(
                f"exhaustive verification is limited to width <= {MAX_EXHAUSTIVE_WIDTH}"
            )
        chunks = _chunks_exhaustive(plan.width)
        mode, vectors = "exhaustive", 1 << plan.width
    else:
        chunks = _chunks_random(plan.width, count, seed)
        mode, vectors = "random", count

    q = plan.q
    engines = _engines(plan)
    results = {name: EngineResult(name) for name, _, _ in engines}
    for values in chunks:
        want = values % q
        in_domain = values < barrett_constants(q).input_limit
        for name, fn, barrett_domain in engines:
            res = results[name]
            v, w = (values[in_domain], want[in_domain]) if barrett_domain else (values, want)
            if not len(v):
                continue
            got = np.asarray(fn(v))
            bad = np.nonzero(got != w)[0]
            res.checked += len(v)
            res.mismatches += len(bad)
            if len(bad) and res.counterexample is None:
                j = bad[0]
                res.counterexample = {"input": int(v[j]), "got": int(got[j]), "want": int(w[j])}
    return VerifyReport(q, plan.width, mode, vectors, list(results.values()))
