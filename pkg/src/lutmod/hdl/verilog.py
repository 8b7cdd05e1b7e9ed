"""Verilog-2001 text for a lowered netlist, plus an optional self-checking testbench."""
from __future__ import annotations

import random
import re
from typing import Sequence

from ..errors import ConfigurationError
from .netlist import Netlist, eval_netlist

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_KEYWORDS = frozenset(
    "always and assign begin buf case casex casez default defparam else end endcase "
    "endfunction endmodule endtask for function if initial inout input integer module "
    "negedge nor not or output parameter posedge reg repeat task tri wait while wire xor".split()
)


def check_identifier(name: str) -> str:
    if not _IDENT.match(name or "") or name in _KEYWORDS:
        raise ConfigurationError(f"{name!r} is not a usable Verilog identifier")
    return name


def _range(width: int) -> str:
    return f"[{width - 1}:0] " if width > 1 else ""


def _lit(width: int, value: int) -> str:
    return f"{width}'d{value}"


def emit_verilog(netlist: Netlist, module_name: str) -> str:
    """Render ``netlist`` as one Verilog module with input ``x`` and output ``y``.

    Node ``i`` becomes signal ``n<i>``; a value consumed ``d`` stages after
    it is produced is read from register ``n<i>_r<d>``.
    """
    check_identifier(module_name)
    nodes = netlist.nodes
    piped = netlist.pipeline_stages > 0
    delay: dict[int, int] = {}
    for node in nodes:
        for src in node.operands:
            d = node.stage - nodes[src].stage
            if d > 0:
                delay[src] = max(delay.get(src, 0), d)

    def ref(src: int, consumer_stage: int) -> str:
        d = consumer_stage - nodes[src].stage
        return f"n{src}_r{d}" if d > 0 else f"n{src}"

    body: list[str] = []
    for i, node in enumerate(nodes):
        args = [ref(o, node.stage) for o in node.operands]
        w = node.width
        if node.op == "input":
            body.append(f"    wire n{i} = x[{node.param}];")
        elif node.op == "constant":
            body.append(f"    wire {_range(w)}n{i} = {_lit(w, node.param)};")
        elif node.op == "slice":
            body.append(f"    wire {_range(w)}n{i} = {{{', '.join(reversed(args))}}};")
        elif node.op == "rom_lookup":
            entries = netlist.roms[node.param]
            k = len(node.operands)
            addr = ", ".join(reversed(args))
            body.append(f"    reg  {_range(w)}n{i};")
            body.append("    always @* begin")
            body.append(f"        case ({{{addr}}})")
            for a, e in enumerate(entries):
                body.append(f"            {_lit(k, a)}: n{i} = {_lit(w, e)};")
            body.append("        endcase")
            body.append("    end")
        elif node.op == "add":
            body.append(f"    wire {_range(w)}n{i} = {args[0]} + {args[1]};")
        elif node.op == "compare_ge":
            src_w = nodes[node.operands[0]].width
            body.append(f"    wire n{i} = {args[0]} >= {_lit(src_w, node.param)};")
        elif node.op == "select":
            cands = node.param
            expr = _lit(w, cands[0])
            # right-associative ?: chain, highest threshold tested first
            for j, flag in enumerate(args):
                expr = f"{flag} ? {_lit(w, cands[j + 1])} : {expr}"
            body.append(f"    wire {_range(w)}n{i} = {expr};")
        elif node.op == "subtract":
            body.append(f"    wire {_range(w)}n{i} = {args[0]} - {args[1]};")

    decls = [
        f"    reg  {_range(nodes[src].width)}n{src}_r{d};"
        for src in sorted(delay)
        for d in range(1, delay[src] + 1)
    ]
    regs: list[str] = []
    if delay:
        regs.append("")
        regs.append("    always @(posedge clk) begin")
        for src in sorted(delay):
            for d in range(1, delay[src] + 1):
                prev = f"n{src}" if d == 1 else f"n{src}_r{d - 1}"
                regs.append(f"        n{src}_r{d} <= {prev};")
        regs.append("    end")

    out = netlist.output
    ports = []
    if piped:
        ports.append("    input  wire clk,")
    ports.append(f"    input  wire {_range(netlist.input_width)}x,")
    ports.append(f"    output wire {_range(netlist.output_width)}y")
    tables = len(netlist.roms)
    lines = [
        f"// generated by lutmod: input width {netlist.input_width}, output width "
        f"{netlist.output_width}, tables {tables}, pipeline stages {netlist.pipeline_stages}",
        f"module {module_name} (",
        *ports,
        ");",
        *decls,
        *body,
        *regs,
        "",
        f"    assign y = n{out}[{netlist.output_width - 1}:0];"
        if nodes[out].width > 1 else f"    assign y = n{out};",
        "endmodule",
        "",
    ]
    return "\n".join(lines)


def emit_testbench(
    netlist: Netlist,
    module_name: str,
    vectors: int | Sequence[int] = 64,
    seed: int = 0,
) -> str:
    """Testbench driving ``module_name`` with vectors and expected outputs as literals.

    Expected values come from :func:`eval_netlist`. ``vectors`` is a count
    of random inputs or an explicit list.
    """
    check_identifier(module_name)
    W, n = netlist.input_width, netlist.output_width
    if isinstance(vectors, int):
        rng = random.Random(seed)
        values = [0, (1 << W) - 1] + [rng.getrandbits(W) for _ in range(max(0, vectors - 2))]
        values = values[:vectors]
    else:
        values = [int(v) for v in vectors]
    piped = netlist.pipeline_stages > 0
    latency = netlist.latency
    lines = [
        "`timescale 1ns/1ps",
        f"module {module_name}_tb;",
        f"    reg  {_range(W)}x;",
        f"    wire {_range(n)}y;",
        "    integer errors;",
    ]
    if piped:
        lines += [
            "    reg clk;",
            "    initial clk = 1'b0;",
            "    always #5 clk = ~clk;",
            f"    {module_name} dut (.clk(clk), .x(x), .y(y));",
        ]
    else:
        lines.append(f"    {module_name} dut (.x(x), .y(y));")
    lines += [
        "",
        f"    task check(input {_range(W)}xin, input {_range(n)}want);",
        "        begin",
        "            x = xin;",
    ]
    if piped:
        lines.append(f"            repeat ({latency}) @(posedge clk);")
    lines += [
        "            #1;",
        "            if (y !== want) begin",
        '                $display("FAIL x=%0d y=%0d want=%0d", xin, y, want);',
        "                errors = errors + 1;",
        "            end",
        "        end",
        "    endtask",
        "",
        "    initial begin",
        "        errors = 0;",
    ]
    for v in values:
        lines.append(f"        check({_lit(W, v)}, {_lit(n, int(eval_netlist(netlist, v)))});")
    lines += [
        '        if (errors == 0) $display("PASS %0d vectors", ' + str(len(values)) + ");",
        '        else $display("FAILED %0d of %0d vectors", errors, ' + str(len(values)) + ");",
        "        $finish;",
        "    end",
        "endmodule",
        "",
    ]
    return "\n".join(lines)
