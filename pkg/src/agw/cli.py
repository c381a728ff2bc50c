"""Command-line interface: ``agw lang | run-ps | compile | verify | render``.

Exit codes: 0 success, 1 input or precondition error, 2 verification found a
difference, 3 verification was inconclusive and ``--strict`` was given.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .arrays import ParseError, parse_array, render_array, shape_of, sort_key
from .constructions.arba import NormalFormError, compile_arba_to_psystem
from .constructions.pcp import compile_pcp, encode_solution, parse_pcp
from .constructions.tm import compile_tm_to_grammar, parse_tm
from .engine import Budget, LangResult, Mode, explore, language
from .oracles import Verdict, arba_language, compare_languages, pcp_solutions, tm_generate
from .psystem import (PSystem, PSystemAdapter, format_psystem, is_simple, looks_like_psystem,
                      parse_psystem, psystem_doomed_symbols, run_t_bounded, tree_height)
from .rules import Grammar, Kind, format_grammar, parse_grammar, rules_norm

EXIT_OK, EXIT_INPUT, EXIT_DIFFER, EXIT_INCONCLUSIVE = 0, 1, 2, 3
# cells a compiled system may need beyond its largest result (markers and scratch symbols)
DEFAULT_WORKSPACE = 4


class InputError(Exception):
    """Raised for anything the user has to fix in the inputs (exit code 1)."""


@dataclass
class CommandResult:
    code: int
    out: str = ""
    err: str = ""


# -- helpers -------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_system(path: str) -> Grammar | PSystem:
    text = _read(path)
    try:
        return parse_psystem(text) if looks_like_psystem(text) else parse_grammar(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _budget(args, cells: int | None = None) -> Budget:
    def cap(v):
        return None if v is not None and v < 0 else v
    try:
        return Budget(max_steps=cap(args.max_steps), max_cells=cap(cells if cells is not None else args.max_cells),
                      max_extent=cap(args.max_extent), max_results=cap(args.max_results))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _footer(res: LangResult) -> str:
    lines = [f"complete: {'true' if res.complete else 'false'}"]
    if res.truncated:
        lines.append("truncated: " + ",".join(sorted(res.truncated)))
    return "\n".join(lines) + "\n"


def _listing(res: LangResult) -> str:
    return "".join(line + "\n" for line in res.rendered())


def _run_system(system: Grammar | PSystem, mode: Mode, budget: Budget, jobs: int) -> LangResult:
    if isinstance(system, PSystem):
        if mode is Mode.T:
            return run_t_bounded(system, budget, jobs=jobs)
        adapter = PSystemAdapter(system, psystem_doomed_symbols(system, Mode.STAR))
        return explore(adapter, budget, Mode.STAR, jobs=jobs)
    return language(system, mode, budget, jobs=jobs)


def _audit_psystem(p: PSystem) -> str:
    kinds = sorted({tr.rule.kind.value for tr in p.rules})
    return (f"rules: {len(p.rules)}\nmax_norm: {p.norm}\ntree_height: {tree_height(p)}\n"
            f"simple: {'true' if is_simple(p) else 'false'}\nmembranes: {len(p.tree.labels)}\n"
            f"rule_kinds: {','.join(kinds)}\n"
            f"insertion_only: {'true' if all(tr.rule.kind is Kind.INSERTION for tr in p.rules) else 'false'}\n")


def _audit_grammar(g: Grammar) -> str:
    kinds = sorted({r.kind.value for r in g.rules})
    return (f"rules: {len(g.rules)}\nmax_norm: {rules_norm(g.rules)}\n"
            f"rule_kinds: {','.join(kinds)}\nalphabet_size: {len(g.alphabet)}\n")


# -- commands ------------------------------------------------------------------

def cmd_lang(args) -> CommandResult:
    if bool(args.grammar) == bool(args.ps):
        raise InputError("give exactly one of --grammar or --ps")
    system = _load_system(args.grammar or args.ps)
    if bool(args.ps) != isinstance(system, PSystem):
        kind = "a P-system" if args.ps else "a grammar"
        raise InputError(f"{args.grammar or args.ps} is not {kind} file")
    res = _run_system(system, Mode(args.mode), _budget(args), args.jobs)
    return CommandResult(EXIT_OK, _listing(res) + _footer(res))


def cmd_run_ps(args) -> CommandResult:
    text = _read(args.ps)
    try:
        p = parse_psystem(text)
    except ParseError as exc:
        raise InputError(f"{args.ps}: {exc}") from exc
    res = run_t_bounded(p, _budget(args), jobs=args.jobs)
    out = [f"results: {len(res)}", *("  " + a for a in res.rendered())]
    out.append(f"halting_nonterminal: {len(res.nonterminal_halting)}")
    out += ["  " + c for c in res.nonterminal_halting]
    out.append(f"explored: {res.explored}")
    if res.first_pruned is not None:
        out.append(f"first_pruned: {res.first_pruned}")
    return CommandResult(EXIT_OK, "\n".join(out) + "\n" + _footer(res))


def cmd_compile(args) -> CommandResult:
    text = _read(args.inp)
    try:
        if args.kind == "pcp":
            obj = compile_pcp(parse_pcp(text))
        elif args.kind == "arba2ps":
            obj = compile_arba_to_psystem(parse_grammar(text))
        else:
            obj = compile_tm_to_grammar(parse_tm(text))
    except NormalFormError as exc:
        raise InputError(str(exc)) from exc
    except (ParseError, ValueError) as exc:
        raise InputError(f"{args.inp}: {exc}") from exc
    if isinstance(obj, PSystem):
        body, audit = format_psystem(obj), _audit_psystem(obj)
    else:
        body, audit = format_grammar(obj), _audit_grammar(obj)
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        audit = body + audit
    return CommandResult(EXIT_OK, audit)


def _side(source: str, args, budget: Budget) -> LangResult:
    """Evaluate one side of ``verify``: a file, ``oracle:<kind>:<file>`` or ``empty``."""
    if source == "empty":
        return LangResult((), complete=True)
    if source.startswith("oracle:"):
        _, kind, path = (source.split(":", 2) + ["", ""])[:3]
        if not path:
            raise InputError(f"oracle source needs a file: {source!r}")
        text = _read(path)
        try:
            if kind == "tm":
                return tm_generate(parse_tm(text), budget)
            if kind == "arba":
                return arba_language(parse_grammar(text), budget)
            if kind == "pcp":
                return _pcp_oracle(parse_pcp(text), args.max_cells)
        except (ParseError, ValueError) as exc:
            raise InputError(f"{path}: {exc}") from exc
        raise InputError(f"unknown oracle kind {kind!r} (expected tm, arba or pcp)")
    return _run_system(_load_system(source), Mode(args.mode), budget, args.jobs)


def _pcp_oracle(inst, region: int) -> LangResult:
    # an encoded solution has 4 marker cells plus two cells per letter, and
    # each index adds at least one letter, so this index bound is exhaustive
    max_letters = max(0, (region - 4) // 2)
    found = pcp_solutions(inst, max(1, max_letters))
    arrays = {parse_array(encode_solution(w)) for _, w in found if len(w) <= max_letters}
    return LangResult(tuple(sorted(arrays, key=sort_key)), complete=True)


def cmd_verify(args) -> CommandResult:
    region = args.max_cells
    if region is None or region < 0:
        raise InputError("--max-cells must be a non-negative region size")
    explore_cells = args.explore_cells if args.explore_cells is not None else region + DEFAULT_WORKSPACE
    budget = _budget(args, explore_cells)
    left = _side(args.left, args, budget)
    right = _side(args.right, args, budget)
    report = compare_languages(left, right, region)
    code = EXIT_OK
    if report.verdict is Verdict.DIFFER:
        code = EXIT_DIFFER
    elif report.verdict is Verdict.INCONCLUSIVE and args.strict:
        code = EXIT_INCONCLUSIVE
    return CommandResult(code, report.render())


def cmd_render(args) -> CommandResult:
    text = args.array if args.array is not None else _read(args.file)
    out = []
    for raw in text.splitlines() or [""]:
        try:
            a = parse_array(raw)
        except ParseError as exc:
            raise InputError(str(exc)) from exc
        line = render_array(a)
        if args.shape:
            s = shape_of(a)
            line += f"\t size={s.size} extent={s.extent}"
        out.append(line)
    return CommandResult(EXIT_OK, "\n".join(out) + "\n")


# -- argument parsing ------------------------------------------------------------

def _add_budget(p: argparse.ArgumentParser, cells_default: int | None = 16) -> None:
    d = Budget()
    g = p.add_argument_group("budget (negative means unbounded)")
    g.add_argument("--max-steps", type=int, default=d.max_steps)
    g.add_argument("--max-cells", type=int, default=cells_default)
    g.add_argument("--max-extent", type=int, default=d.max_extent)
    g.add_argument("--max-results", type=int, default=d.max_results)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for frontier expansion")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="agw", description="One-dimensional array grammar workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lang", help="enumerate a bounded language")
    p.add_argument("--grammar")
    p.add_argument("--ps")
    p.add_argument("--mode", choices=["star", "t"], default="t")
    _add_budget(p)
    p.set_defaults(func=cmd_lang)

    p = sub.add_parser("run-ps", help="run a P system and report halting configurations")
    p.add_argument("--ps", required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_run_ps)

    p = sub.add_parser("compile", help="compile a PCP instance, normal-form grammar or Turing machine")
    p.add_argument("kind", choices=["pcp", "arba2ps", "tm2g"])
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="compare two bounded languages")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--mode", choices=["star", "t"], default="t", help="mode for grammar sides")
    p.add_argument("--explore-cells", type=int,
                   help=f"cell cap while exploring (default: region + {DEFAULT_WORKSPACE})")
    p.add_argument("--strict", action="store_true", help="exit 3 on an inconclusive verdict")
    _add_budget(p, cells_default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="normalize and print arrays")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--array")
    src.add_argument("--file")
    p.add_argument("--shape", action="store_true", help="append size and extent")
    p.set_defaults(func=cmd_render)
    return ap


def run(argv: list[str] | None = None) -> CommandResult:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        return CommandResult(EXIT_INPUT, err="agw: --jobs must be at least 1\n")
    if args.command == "verify" and args.max_cells is None:
        return CommandResult(EXIT_INPUT, err="agw: verify needs --max-cells (the compared region)\n")
    try:
        return args.func(args)
    except InputError as exc:
        return CommandResult(EXIT_INPUT, err=f"agw: {exc}\n")


def main(argv: list[str] | None = None) -> int:
    res = run(argv)
    sys.stdout.write(res.out)
    sys.stderr.write(res.err)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
