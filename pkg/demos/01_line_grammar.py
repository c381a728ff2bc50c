"""Grow a marked line with four insertion rules and look at both language modes.

The halting (t-mode) language keeps only finished lines ``L E..E S! E..E R``;
the *-mode language, with every symbol terminal, also keeps the half-built
ones.  Run: ``python3 demos/01_line_grammar.py``
"""
from pathlib import Path

from agw import Budget, language, parse_grammar, successors, parse_array, render_array
from agw.rules import make_grammar

DATA = Path(__file__).parent / "data"

g = parse_grammar((DATA / "gline.agw").read_text())
print("rules:")
for r in g.rules:
    print("  ", r)

seed = parse_array("E S! E")
print("\none step from the seed:", [render_array(a) for a in successors(g, seed)])

t = language(g, "t", Budget(max_cells=8))
print(f"\nhalting results up to 8 cells ({len(t)}, complete={t.complete}):")
for line in t.rendered():
    print("  ", line)

star = language(make_grammar(g.axiom, g.rules, terminals=g.alphabet), "star", Budget(max_cells=5))
print(f"\nevery derivable array up to 5 cells ({len(star)}):")
for line in star.rendered():
    print("  ", line)
