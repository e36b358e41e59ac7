"""Command line front end.

Every subcommand is a thin adapter around one library call: parse
arguments, load JSON inputs, emit JSON (or DOT) once at the end. Exit
codes: 0 success/pass, 1 a checked property failed, 2 malformed input or
usage, 3 budget exceeded, 4 inconclusive verification.
"""

import argparse
import json
import re
import sys

from .algebras import BiHeytingAlgebra, chain_algebra
from .battery import BatteryConfig, products_with_two, run_battery
from .duality import dual_poset, join_irreducibles, upset_algebra
from .errors import (
    BiheytError,
    BudgetExceededError,
    RuleSyntaxError,
)
from .free import free_algebra
from .morphisms import embeddings, is_isomorphic, is_subdirectly_irreducible
from .posets import Poset, to_dot
from .rules import (
    admissible_up_to,
    dense_codense_rule,
    format_rule,
    load_rule,
    premise_unifier,
    valid_in_all,
    variety_counterexample,
)

_CHAIN = re.compile(r"chain([0-9]+)$")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _algebra_from_spec(token: str) -> BiHeytingAlgebra:
    m = _CHAIN.match(token)
    if m:
        return chain_algebra(int(m.group(1)))
    return BiHeytingAlgebra.from_json_dict(json.loads(_read(token)))


def _poset_from_spec(token: str) -> Poset:
    m = _CHAIN.match(token)
    if m:
        return Poset.chain(int(m.group(1)))
    return Poset.from_json_dict(json.loads(_read(token)))


def _rule_from_spec(token: str):
    if token == "dense-codense":
        return dense_codense_rule()
    return load_rule(_read(token))


def _targets_from_specs(tokens: list) -> list[BiHeytingAlgebra]:
    out = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "enum-products-with-2":
            if i + 1 >= len(tokens) or not tokens[i + 1].isdigit():
                raise ValueError("enum-products-with-2 needs a poset size bound")
            out.extend(products_with_two(int(tokens[i + 1])))
            i += 2
        else:
            out.append(_algebra_from_spec(tok))
            i += 1
    return out


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_json(args, payload) -> None:
    _emit(args, json.dumps(payload, indent=2))


def _resolve_algebra_arg(args) -> BiHeytingAlgebra:
    if getattr(args, "chain", None) is not None:
        return chain_algebra(args.chain)
    return _algebra_from_spec(args.chain_or_file)


def _resolve_poset_arg(args) -> Poset:
    if getattr(args, "chain", None) is not None:
        if args.chain < 1:
            raise ValueError("chain posets need at least one point")
        return Poset.chain(args.chain)
    return _poset_from_spec(args.chain_or_file)


def _cmd_dual(args) -> int:
    a = _resolve_algebra_arg(args)
    p = dual_poset(a)
    if args.dot is not None:
        labels = [a.label(j) for j in join_irreducibles(a)]
        dot = to_dot(p, labels=labels)
        if args.dot == "-":
            _emit(args, dot)
            return 0
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    _emit_json(args, p.to_json_dict())
    return 0


def _cmd_updual(args) -> int:
    p = _resolve_poset_arg(args)
    _emit_json(args, upset_algebra(p).to_json_dict())
    return 0


def _cmd_hasse(args) -> int:
    p = _resolve_poset_arg(args)
    _emit(args, to_dot(p))
    return 0


def _cmd_free(args) -> int:
    gens = [_algebra_from_spec(tok) for tok in args.gen]
    result = free_algebra(gens, args.vars)
    _emit_json(
        args,
        {
            "algebra": result.algebra.to_json_dict(),
            "generators": list(result.generators),
        },
    )
    return 0


def _cmd_check_rule(args) -> int:
    r = _rule_from_spec(args.rule)
    targets = _targets_from_specs(args.on)
    result = valid_in_all(targets, r)
    _emit_json(
        args,
        {
            "rule": format_rule(r),
            "targets": len(targets),
            "holds": result.holds,
            "failing_target": result.failing_index,
            "witness": None if result.witness is None else list(result.witness),
        },
    )
    return 0 if result.holds else 1


def _cmd_admissible(args) -> int:
    r = _rule_from_spec(args.rule)
    gens = [_algebra_from_spec(tok) for tok in args.gen]
    evidence = admissible_up_to(gens, r, args.max_vars)
    _emit_json(
        args,
        {
            "rule": format_rule(r),
            "verdicts": list(evidence.verdicts),
            "witnesses": {str(n): list(w) for n, w in evidence.witnesses.items()},
            "truncated_at": evidence.truncated_at,
            "refuted": evidence.refuted(),
        },
    )
    if evidence.refuted():
        return 1
    if evidence.truncated_at is not None:
        return 4
    return 0


def _cmd_derivable(args) -> int:
    r = _rule_from_spec(args.rule)
    gen = _algebra_from_spec(args.gen)
    found = variety_counterexample(gen, r, args.power_bound)
    if found is None:
        _emit_json(
            args,
            {
                "rule": format_rule(r),
                "counterexample": None,
                "power_bound": args.power_bound,
            },
        )
        return 0
    _emit_json(
        args,
        {
            "rule": format_rule(r),
            "counterexample": {
                "size": found.algebra.size,
                "power": found.power,
                "subuniverse": [
                    i for i in range(gen.size ** found.power)
                    if (found.subuniverse_mask >> i) & 1
                ],
                "congruence_parts": list(found.congruence_parts),
                "assignment": list(found.assignment),
            },
            "power_bound": args.power_bound,
        },
    )
    return 1


def _cmd_unify(args) -> int:
    r = _rule_from_spec(args.rule)
    gens = [_algebra_from_spec(tok) for tok in args.gen]
    found = premise_unifier(gens, r, args.max_vars)
    _emit_json(
        args,
        {
            "rule": format_rule(r),
            "found": found.found,
            "free_vars": found.n_vars,
            "assignment": None if found.assignment is None else list(found.assignment),
            "bound": found.bound,
        },
    )
    return 0 if found.found else 1


def _cmd_embed(args) -> int:
    source = _algebra_from_spec(args.source)
    target = _algebra_from_spec(args.target)
    found = embeddings(source, target, limit=args.limit)
    _emit_json(
        args,
        {"count": len(found), "maps": [list(m.map) for m in found]},
    )
    return 0 if found else 1


def _cmd_iso(args) -> int:
    left = _algebra_from_spec(args.left)
    right = _algebra_from_spec(args.right)
    iso = is_isomorphic(left, right)
    _emit_json(
        args,
        {
            "isomorphic": iso is not None,
            "map": None if iso is None else list(iso.map),
        },
    )
    return 0 if iso is not None else 1


def _cmd_si(args) -> int:
    a = _algebra_from_spec(args.algebra)
    si, monolith = is_subdirectly_irreducible(a)
    _emit_json(
        args,
        {
            "subdirectly_irreducible": si,
            "monolith_blocks": None
            if monolith is None
            else [list(b) for b in monolith.blocks()],
        },
    )
    return 0 if si else 1


def _cmd_verify(args) -> int:
    if args.config:
        cfg = BatteryConfig.from_json_dict(json.loads(_read(args.config)))
    else:
        cfg = BatteryConfig()
    if args.no_timing:
        cfg = BatteryConfig(
            **{**cfg.__dict__, "record_timing": False}
        )
    only = args.only.split(",") if args.only else None
    report = run_battery(cfg, only=only)
    if args.verbose:
        for c in report.checks:
            print(f"{c.id} {c.verdict} ({c.ms} ms)", file=sys.stderr)
    _emit(args, report.dumps())
    if report.has_failure():
        return 1
    if report.has_inconclusive():
        return 4
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="biheyt",
        description="finite bi-Heyting algebra workbench",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    p = add("dual", _cmd_dual, "dual poset of an algebra")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--algebra", dest="chain_or_file",
                   help="chainN or an algebra JSON file")
    g.add_argument("--chain", type=int, help="the N element chain algebra")
    p.add_argument("--dot", nargs="?", const="-", default=None, metavar="FILE",
                   help="emit the Hasse diagram as DOT ('-' or no value: stdout)")

    p = add("updual", _cmd_updual, "algebra of upsets of a poset")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poset", dest="chain_or_file",
                   help="chainN or a poset JSON file")
    g.add_argument("--chain", type=int, help="the N point chain poset")

    p = add("hasse", _cmd_hasse, "Hasse diagram of a poset as DOT")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poset", dest="chain_or_file")
    g.add_argument("--chain", type=int)

    p = add("free", _cmd_free, "free algebra over generating algebras")
    p.add_argument("--gen", action="append", required=True,
                   help="chainN or algebra JSON file (repeatable)")
    p.add_argument("--vars", type=int, required=True)

    p = add("check-rule", _cmd_check_rule, "evaluate a rule on algebras")
    p.add_argument("--rule", required=True,
                   help="rule file (text or JSON) or the name dense-codense")
    p.add_argument("--on", nargs="+", required=True,
                   help="chainN, algebra file, or: enum-products-with-2 BOUND")

    p = add("admissible", _cmd_admissible, "rule validity on free algebras")
    p.add_argument("--rule", required=True)
    p.add_argument("--gen", action="append", required=True)
    p.add_argument("--max-vars", type=int, required=True)

    p = add("derivable", _cmd_derivable,
            "search the generated variety for a counterexample")
    p.add_argument("--rule", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--power-bound", type=int, required=True)

    p = add("unify", _cmd_unify, "search free algebras for a premise unifier")
    p.add_argument("--rule", required=True)
    p.add_argument("--gen", action="append", required=True)
    p.add_argument("--max-vars", type=int, required=True)

    p = add("embed", _cmd_embed, "embeddings between two algebras")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--limit", type=int, default=None)

    p = add("iso", _cmd_iso, "isomorphism between two algebras")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("si", _cmd_si, "subdirect irreducibility of an algebra")
    p.add_argument("--algebra", required=True)

    p = add("verify", _cmd_verify, "run the verification battery")
    p.add_argument("--config", help="battery config JSON file")
    p.add_argument("--no-timing", action="store_true",
                   help="zero the ms fields for reproducible reports")
    p.add_argument("--only", help="comma separated check ids")
    p.add_argument("--verbose", action="store_true",
                   help="per-check progress on stderr")

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (RuleSyntaxError, json.JSONDecodeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (BiheytError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
