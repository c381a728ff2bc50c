"""Turn a Turing machine into an insertion/deletion grammar of norm two.

The head is a composite symbol ``[left.state.scanned.right]``; each move is a
short chain of norm-two rules.  The script prints one complete derivation of
the compiled grammar, from the initial tape to the terminal result.
Run: ``python3 demos/04_machine_to_grammar.py``
"""
from pathlib import Path

from agw import Budget, compile_tm_to_grammar, parse_tm, render_array, tm_generate
from agw.rules import applications

DATA = Path(__file__).parent / "data"

m = parse_tm((DATA / "write_ab.tm").read_text())
g = compile_tm_to_grammar(m)
print(f"machine: {len(m.delta)} transitions -> grammar: {len(g.rules)} rules of norm {g.norm}")
print("simulator result:", tm_generate(m, Budget(max_cells=6)).rendered())

# breadth-first search with parent links, stopping at the first terminal halting array
parent = {g.axiom: None}
frontier = [g.axiom]
goal = None
while frontier and goal is None:
    nxt = []
    for a in frontier:
        succ = [b for r in g.rules for b in applications(r, a)]
        if not succ and a.symbols <= g.terminals:
            goal = a
            break
        for b in succ:
            if b not in parent and len(b) <= 9:
                parent[b] = (a, b)
                nxt.append(b)
    frontier = nxt

path = []
while goal is not None:
    path.append(goal)
    goal = parent[goal][0] if parent[goal] else None
print(f"\na shortest derivation ({len(path) - 1} steps):")
for a in reversed(path):
    print("  ", render_array(a) or "(empty)")
