"""Workbench for one-dimensional array grammars with insertion and deletion rules.

Typical use::

    import agw
    g = agw.parse_grammar(open("gline.agw").read())
    res = agw.language(g, "t", agw.Budget(max_cells=8))
    print(res.rendered(), res.complete)
"""
from .arrays import (BLANK, Array1D, ParseError, ShapeMetrics, bar, equivalent, normalize,
                     parse_array, prime, render_array, shape_equal, shape_of, translate)
from .constructions import (MarkedRule, PCPInstance, TuringMachine, check_normal_form,
                            compile_arba_to_psystem, compile_pcp, compile_tm_to_grammar,
                            parse_pcp, parse_tm, prepare_marked_rules)
from .engine import Budget, LangResult, Mode, explore, is_halting, language, reach, successors
from .oracles import (EquivalenceReport, Verdict, arba_language, compare_languages,
                      pcp_solutions, tm_generate)
from .psystem import (HERE, IN, OUT, Configuration, MembraneTree, PSystem, Target, TargetedRule,
                      format_psystem, in_label, is_simple, parse_membranes, parse_psystem,
                      psystem_successors, run_t_bounded, tree_height, wrap_grammar)
from .rules import (Grammar, Kind, PatternCell, Rule, applications, apply_at, cls, dele,
                    format_grammar, format_rule, ins, is_applicable, match_sites, parse_grammar,
                    parse_rule, rule_norm, rules_norm, string_ops_to_rules)

__version__ = "0.1.0"
