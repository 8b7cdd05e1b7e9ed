"""JSON form of a reduction plan.

Tables are written in order of their lowest input bit; derived fields are
rechecked on load but table contents are taken as given, so a damaged plan
still loads and can be caught by verification.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import ConfigurationError
from .modarith import Modulus
from .plan import BitGroup, LutTable, ReductionPlan


def plan_to_dict(plan: ReductionPlan) -> dict[str, Any]:
    return {
        "q": plan.q,
        "n": plan.n,
        "width": plan.width,
        "passthrough_bits": plan.passthrough,
        "tables": [
            {"input_bits": list(t.group.bit_indices), "entries": list(t.entries)}
            for t in plan.tables
        ],
        "max_intermediate": plan.max_intermediate,
        "i_max": plan.i_max,
    }


def plan_from_dict(doc: dict[str, Any]) -> ReductionPlan:
    try:
        modulus = Modulus(int(doc["q"]))
        if "n" in doc and int(doc["n"]) != modulus.n:
            raise ConfigurationError(f"n={doc['n']} does not match q={modulus.q}")
        tables = tuple(
            LutTable(BitGroup(tuple(t["input_bits"])), tuple(t["entries"]))
            for t in doc["tables"]
        )
        return ReductionPlan(
            modulus,
            int(doc["width"]),
            int(doc["passthrough_bits"]),
            tables,
            max_intermediate=int(doc.get("max_intermediate", -1)),
            i_max=int(doc.get("i_max", -1)),
        )
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed plan document: {exc!r}") from exc


def dumps(plan: ReductionPlan, indent: int | None = 2) -> str:
    """Canonical text; with ``indent`` each table's arrays stay on one line."""
    doc = plan_to_dict(plan)
    if indent is None:
        return json.dumps(doc)
    pad = " " * indent
    tables = [pad * 2 + json.dumps(t) for t in doc.pop("tables")]
    lines = [f'{pad}"{k}": {json.dumps(v)}' for k, v in doc.items()]
    table_block = f'{pad}"tables": [\n' + ",\n".join(tables) + f"\n{pad}]" if tables \
        else f'{pad}"tables": []'
    lines.insert(4, table_block)
    return "{\n" + ",\n".join(lines) + "\n}"


def loads(text: str) -> ReductionPlan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"plan file is not valid JSON: {exc}") from exc
    return plan_from_dict(doc)


def save(plan: ReductionPlan, path: str | Path) -> None:
    Path(path).write_text(dumps(plan) + "\n")


def load(path: str | Path) -> ReductionPlan:
    return loads(Path(path).read_text())
