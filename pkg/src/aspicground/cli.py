"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 budget exceeded, 3 comparison mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Callable, Sequence

from .analysis import pred_dependencies
from .argumentation import DEFAULT_ARG_BUDGET, AttackGraph, induced_af
from .datalog import format_program
from .errors import BudgetExceeded
from .generator import GenConfig, generate
from .grounder import Mode, ground
from .naive import DEFAULT_RULE_BUDGET
from .semantics import DEFAULT_EXT_BUDGET, SEMANTICS, claim_sets, extensions
from .syntax import (
    Atom,
    DefeasibleRule,
    GroundTheory,
    InvalidTheory,
    ParseError,
    Theory,
    check_valid,
    format_theory,
    parse_theory,
)
from .transform import transform1_theory, transform2_theory

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3

MODES = [m.value for m in Mode]


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def _load(path: str) -> Theory:
    theory = parse_theory(_read(path))
    check_valid(theory)
    return theory


def _atoms(atoms) -> list[str]:
    return sorted(str(a) for a in atoms)


def theory_to_json(theory: Theory) -> dict:
    return {
        "contraries": [
            {"subject": str(c.subject), "contraries": _atoms(c.contraries)}
            for c in sorted(theory.contraries, key=str)
        ],
        "strict": [
            {"head": str(r.head), "body": _atoms(r.body)} for r in sorted(theory.strict, key=str)
        ],
        "defeasible": [
            {"name": str(r.name), "head": str(r.head), "body": _atoms(r.body)}
            for r in sorted(theory.defeasible, key=str)
        ],
        "facts": _atoms(theory.facts),
        "assumptions": _atoms(theory.assumptions),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _ground(theory: Theory, mode: str, args) -> GroundTheory:
    return ground(theory, mode, rule_budget=args.rule_budget)


def cmd_ground(args) -> int:
    theory = _load(args.input)
    if args.dump_deps:
        _write(args.dump_deps, pred_dependencies(theory).to_dot())
    if args.dump_datalog:
        if args.mode == Mode.NAIVE.value:
            raise InputError("--dump-datalog needs a Datalog-based mode (t1, t2 or full)")
        program, _ = (transform1_theory if args.mode == Mode.T1.value else transform2_theory)(theory)
        _write(args.dump_datalog, format_program(program))
    gt = _ground(theory, args.mode, args)
    if args.dump_af:
        _write(args.dump_af, induced_af(gt, args.arg_budget).to_iccma())
    text = _dumps(theory_to_json(gt)) if args.format == "json" else format_theory(gt)
    _write(args.out, text)
    return EXIT_OK


def _argument_json(af: AttackGraph) -> list[dict]:
    out = []
    for i, a in enumerate(af.arguments):
        out.append(
            {
                "id": af.name(i),
                "argument": str(a),
                "conclusion": str(a.conclusion),
                "premises": _atoms(a.premises),
                "rules": sorted(str(r) for r in a.rules),
            }
        )
    return out


def cmd_solve(args) -> int:
    theory = _load(args.input)
    af = induced_af(_ground(theory, args.mode, args), args.arg_budget)
    es = extensions(af, args.semantics, args.ext_budget)
    claims = [_atoms(c) for c in claim_sets(es)]
    if args.claims_only:
        payload: object = claims
    else:
        payload = {
            "semantics": es.semantics,
            "mode": args.mode,
            "arguments": _argument_json(af),
            "extensions": [[af.name(i) for i in sorted(e)] for e in es.extensions],
            "claims": claims,
        }
    if args.format == "json":
        text = json.dumps(payload) + "\n" if args.claims_only else _dumps(payload)
    else:
        text = _solve_text(af, es, claims) if not args.claims_only else "".join(
            "{" + ", ".join(c) + "}\n" for c in claims
        )
    _write(args.out, text)
    return EXIT_OK


def _solve_text(af: AttackGraph, es, claims: list[list[str]]) -> str:
    lines = [f"{af.name(i)}: {a}" for i, a in enumerate(af.arguments)]
    lines.append(f"{es.semantics} extensions: {len(es)}")
    for e in es.extensions:
        lines.append("  {" + ", ".join(af.name(i) for i in sorted(e)) + "}")
    lines.append("claim sets:")
    lines += ["  {" + ", ".join(c) + "}" for c in claims]
    return "".join(line + "\n" for line in lines)


def _family(af: AttackGraph, semantics: str, level: str, budget: int) -> dict[frozenset, list[str]]:
    """Extensions (or claim sets) keyed by a grounding-independent identity, mapped to display form."""
    es = extensions(af, semantics, budget)
    out: dict[frozenset, list[str]] = {}
    if level == "claims":
        for c in es.claims:
            out[frozenset(c)] = _atoms(c)
    else:
        for e in es.extensions:
            args = [af.arguments[i] for i in e]
            out[frozenset(a.key for a in args)] = sorted(str(a) for a in args)
    return out


def _against(args) -> list[str]:
    if args.against != "all":
        return [args.against]
    return ["t1", "t2", "full"] if args.level == "claims" else ["t1", "t2"]


def cmd_compare(args) -> int:
    theory = _load(args.input)
    base = _family(induced_af(_ground(theory, "naive", args), args.arg_budget), args.semantics, args.level, args.ext_budget)
    reports = []
    for mode in _against(args):
        other = _family(
            induced_af(_ground(theory, mode, args), args.arg_budget), args.semantics, args.level, args.ext_budget
        )
        extra = sorted((other[k] for k in other.keys() - base.keys()), key=lambda s: (len(s), s))
        missing = sorted((base[k] for k in base.keys() - other.keys()), key=lambda s: (len(s), s))
        reports.append({"against": mode, "equal": not extra and not missing, "extra": extra, "missing": missing})
    payload = {"semantics": args.semantics, "level": args.level, "baseline": "naive", "results": reports}
    if args.format == "json":
        _write(args.out, _dumps(payload))
    else:
        lines = []
        for r in reports:
            status = "equal" if r["equal"] else "MISMATCH"
            lines.append(f"naive vs {r['against']} ({args.semantics}, {args.level}): {status}")
            lines += ["  extra   {" + ", ".join(s) + "}" for s in r["extra"]]
            lines += ["  missing {" + ", ".join(s) + "}" for s in r["missing"]]
        _write(args.out, "".join(line + "\n" for line in lines))
    return EXIT_OK if all(r["equal"] for r in reports) else EXIT_MISMATCH


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def cmd_gen(args) -> int:
    config = replace(
        GenConfig(),
        seed=args.seed,
        n_strict=args.strict,
        n_defeasible=args.defeasible,
        n_contraries=args.contraries,
        n_atoms_in_kb=args.kb,
        max_vars_per_rule=args.max_vars,
        constant_range=args.constants,
        preds_per_arity=args.preds_per_arity,
        assumption_ratio=args.assumption_ratio,
        acyclic=args.acyclic,
    )
    try:
        theory = generate(config)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = _dumps(theory_to_json(theory)) if args.format == "json" else format_theory(theory)
    _write(args.out, text)
    return EXIT_OK


def _common(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--out", "-o", help="output file (default: stdout)")
    p.add_argument("--format", choices=["text", "json"], default=default_format)
    p.add_argument("--rule-budget", type=int, default=DEFAULT_RULE_BUDGET, help="max naive rule instances")
    p.add_argument("--arg-budget", type=int, default=DEFAULT_ARG_BUDGET, help="max constructed arguments")
    p.add_argument(
        "--ext-budget", type=int, default=DEFAULT_EXT_BUDGET, help="max undecided arguments for enumeration"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aspicground", description="Ground first-order ASPIC+ theories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="ground a theory")
    p.add_argument("input")
    p.add_argument("--mode", choices=MODES, default="full")
    p.add_argument("--dump-deps", metavar="PATH", help="write the predicate dependency graph (DOT)")
    p.add_argument("--dump-datalog", metavar="PATH", help="write the generated Datalog program")
    p.add_argument("--dump-af", metavar="PATH", help="write the induced AF (ICCMA-style)")
    _common(p, "text")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("solve", help="ground, build the AF and enumerate extensions")
    p.add_argument("input")
    p.add_argument("--mode", choices=MODES, default="full")
    p.add_argument("--semantics", choices=SEMANTICS, default="com")
    p.add_argument("--claims-only", action="store_true")
    _common(p, "json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="compare the naive grounding with the optimized ones")
    p.add_argument("input")
    p.add_argument("--semantics", choices=SEMANTICS, default="com")
    p.add_argument("--level", choices=["extensions", "claims"], default="extensions")
    p.add_argument("--against", choices=["t1", "t2", "full", "all"], default="all")
    _common(p, "text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="generate a random theory")
    defaults = GenConfig()
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--strict", type=int, default=defaults.n_strict)
    p.add_argument("--defeasible", type=int, default=defaults.n_defeasible)
    p.add_argument("--contraries", type=int, default=defaults.n_contraries)
    p.add_argument("--kb", type=int, default=defaults.n_atoms_in_kb)
    p.add_argument("--max-vars", type=int, default=defaults.max_vars_per_rule)
    p.add_argument("--constants", type=_range, default=defaults.constant_range, metavar="LO:HI")
    p.add_argument("--preds-per-arity", type=int, default=defaults.preds_per_arity)
    p.add_argument("--assumption-ratio", type=float, default=defaults.assumption_ratio)
    p.add_argument("--acyclic", action="store_true")
    _common(p, "text")
    p.set_defaults(func=cmd_gen)
    return parser


def _guard(func: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return func(args)
    except ParseError as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
    except InvalidTheory as exc:
        print(f"{args.input}: invalid theory", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _guard(args.func, args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
