from .netlist import Netlist, Node, eval_netlist, lower
from .verilog import emit_testbench, emit_verilog

__all__ = ["Netlist", "Node", "emit_testbench", "emit_verilog", "eval_netlist", "lower"]
