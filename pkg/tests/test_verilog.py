import re
from pathlib import Path

import pytest

from lutmod.core import build_basic_plan, build_grouped_plan
from lutmod.errors import ConfigurationError
from lutmod.hdl import emit_testbench, emit_verilog, eval_netlist, lower

GOLDEN = Path(__file__).parent / "golden"


def _cases():
    p13 = build_grouped_plan(13, 8, [2, 2])
    cases = {f"red13_p{s}.v": (p13, s, "red13") for s in range(4)}
    cases["basic13.v"] = (build_basic_plan(13, 8), 0, "basic13")
    cases["zero13.v"] = (build_basic_plan(13, 4), 0, "zero13")
    cases["kyber_p3.v"] = (build_grouped_plan(3329, 24, [7, 6]), 3, "kyber_reduce")
    return cases


CASES = _cases()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_byte_match(name):
    plan, stages, module = CASES[name]
    text = emit_verilog(lower(plan, stages), module)
    assert text == (GOLDEN / name).read_text()


def test_deterministic(kyber_plan):
    a = emit_verilog(lower(kyber_plan, 2), "m")
    b = emit_verilog(lower(kyber_plan, 2), "m")
    assert a == b


def test_rom_arms_match_tables(grouped13):
    text = emit_verilog(lower(grouped13), "red13")
    arms = re.findall(r"2'd(\d): n(\d+) = 4'd(\d+);", text)
    by_node = {}
    for addr, node, val in arms:
        by_node.setdefault(node, []).append((int(addr), int(val)))
    assert [v for _, v in sorted(by_node["9"])] == [0, 3, 6, 9]
    assert [v for _, v in sorted(by_node["10"])] == [0, 12, 11, 10]


def test_rom_case_is_complete_without_default(kyber_plan):
    text = emit_verilog(lower(kyber_plan), "k")
    assert "default" not in text
    blocks = re.findall(r"case \(.*?\)\n(.*?)endcase", text, re.S)
    assert [len(b.strip().splitlines()) for b in blocks] == [128, 64]


def test_single_subtraction():
    text = emit_verilog(lower(build_basic_plan(13, 4)), "zero13")
    assert text.count(" - ") == 1
    assert text.count(" >= ") == 1


def test_registers_declared_before_use(grouped13):
    text = emit_verilog(lower(grouped13, 3), "r")
    lines = text.splitlines()
    for m in re.finditer(r"\b(n\d+_r\d+)\b", text):
        name = m.group(1)
        decl = next(i for i, ln in enumerate(lines) if ln.strip().startswith("reg") and name in ln)
        first = next(i for i, ln in enumerate(lines) if name in ln)
        assert decl == first


def test_combinational_has_no_clock(grouped13):
    text = emit_verilog(lower(grouped13), "r")
    assert "clk" not in text
    assert "posedge" not in text


def test_header_has_no_dash(kyber_plan):
    header = emit_verilog(lower(kyber_plan), "m").splitlines()[0]
    assert header.startswith("//") and "-" not in header


@pytest.mark.parametrize("name", ["1abc", "module", "a-b", "", "wire"])
def test_bad_identifier(grouped13, name):
    with pytest.raises(ConfigurationError):
        emit_verilog(lower(grouped13), name)


def test_testbench_random(grouped13):
    net = lower(grouped13, 1)
    tb = emit_testbench(net, "red13", vectors=10, seed=3)
    checks = re.findall(r"check\(8'd(\d+), 4'd(\d+)\);", tb)
    assert len(checks) == 10
    assert checks[0] == ("0", "0") and checks[1] == ("255", str(255 % 13))
    assert all(int(y) == int(x) % 13 for x, y in checks)
    assert "repeat (1) @(posedge clk);" in tb
    assert "red13 dut (.clk(clk), .x(x), .y(y));" in tb
    assert tb == emit_testbench(net, "red13", vectors=10, seed=3)


def test_testbench_explicit_vectors(grouped13):
    net = lower(grouped13)
    tb = emit_testbench(net, "red13", vectors=[210, 7])
    assert "check(8'd210, 4'd2);" in tb
    assert "check(8'd7, 4'd7);" in tb
    assert "clk" not in tb
    assert eval_netlist(net, 210) == 2
