"""Compilers from classical machine models into array rewriting systems."""
from .arba import MarkedRule, check_normal_form, compile_arba_to_psystem, prepare_marked_rules
from .pcp import PCPInstance, compile_pcp, parse_pcp
from .tm import TuringMachine, compile_tm_to_grammar, parse_tm

__all__ = [
    "PCPInstance", "parse_pcp", "compile_pcp",
    "MarkedRule", "check_normal_form", "prepare_marked_rules", "compile_arba_to_psystem",
    "TuringMachine", "parse_tm", "compile_tm_to_grammar",
]
