"""Compile a small classical grammar into a height-two P system of norm one.

The compiled system simulates each classical rule by a round trip through a
pair of membranes, so it needs a few cells of workspace beyond the arrays it
produces.  Its halting results are compared with a direct derivation.
Run: ``python3 demos/03_grammar_to_psystem.py`` (about ten seconds)
"""
from pathlib import Path

from agw import (Budget, arba_language, compare_languages, compile_arba_to_psystem, is_simple,
                 parse_grammar, prepare_marked_rules, run_t_bounded, tree_height)

DATA = Path(__file__).parent / "data"

g = parse_grammar((DATA / "ba.agw").read_text())
marked = prepare_marked_rules(g)
print(f"{len(g.rules)} source rules became {len(marked)} marked rules, for example:")
for m in marked[:3]:
    print("  ", m)

p = compile_arba_to_psystem(g)
print(f"\ncompiled system: {len(p.rules)} rules, norm {p.norm}, height {tree_height(p)}, simple {is_simple(p)}")

region, workspace = 3, 4
budget = Budget(max_cells=region + workspace)
left = run_t_bounded(p, budget)
right = arba_language(g, budget)
print(f"explored {left.explored} configurations")
print(compare_languages(left, right, region).render())
