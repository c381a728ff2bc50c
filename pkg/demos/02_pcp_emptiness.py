"""Encode correspondence-problem instances as insertion P systems.

A solvable instance yields the interleaved solution word between the markers;
an instance whose first letters already disagree yields nothing, and the
bounded search says so with a completeness flag.
Run: ``python3 demos/02_pcp_emptiness.py``
"""
from pathlib import Path

from agw import Budget, compile_pcp, parse_pcp, pcp_solutions, run_t_bounded, tree_height

DATA = Path(__file__).parent / "data"

for name in ("ab.pcp", "nosol.pcp"):
    inst = parse_pcp((DATA / name).read_text())
    p = compile_pcp(inst)
    res = run_t_bounded(p, Budget(max_cells=12))
    print(f"{name}: u={inst.u} v={inst.v}")
    print(f"  compiled: {len(p.rules)} insertion rules, {len(p.tree.labels)} membranes, height {tree_height(p)}")
    print(f"  brute force (up to 4 indices): {pcp_solutions(inst, 4)}")
    print(f"  system results within 12 cells: {res.rendered()} (complete={res.complete}, "
          f"{res.explored} configurations)")
