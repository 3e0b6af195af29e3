"""The `deak` command line: check, eliminate, lint, mc and corpus."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from .calculus import builtin
from .parser import parse_document, parse_formula, parse_sequent, render, render_decls
from .proofs import check, is_cut_free
from .syntax import DeakError, Declarations, translate_sequent

OK, FAILED, USAGE, FUEL = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _load(decls_path: Optional[str], proof_path: Optional[str] = None):
    decls = parse_document(_read(decls_path)).decls if decls_path else Declarations()
    if proof_path is None:
        return decls, None
    doc = parse_document(_read(proof_path), decls)
    if not doc.proofs:
        raise _Usage(f"{proof_path}: no proof found")
    return doc.decls, doc


def _calc(args, decls):
    return builtin(args.calculus, decls, classical=args.classical == "on")


def cmd_check(args) -> int:
    decls, doc = _load(args.decls, args.proof)
    calc = _calc(args, decls)
    status = OK
    for i, p in enumerate(doc.proofs):
        rep = check(p, calc)
        prefix = f"proof {i}: " if len(doc.proofs) > 1 else ""
        print(prefix + rep.text())
        if not rep.ok:
            status = FAILED
    return status


def _default_fuel() -> int:
    from .cutelim import DEFAULT_FUEL
    env = os.environ.get("DEAK_FUEL")
    if env is None:
        return DEFAULT_FUEL
    try:
        return int(env)
    except ValueError:
        raise _Usage(f"DEAK_FUEL must be an integer, got {env!r}") from None


def cmd_eliminate(args) -> int:
    from .cutelim import Eliminator, FuelExhausted

    text = _read(args.proof)
    decls, doc = _load(args.decls, args.proof)
    calc = _calc(args, decls)
    fuel = args.fuel if args.fuel is not None else _default_fuel()
    if all(is_cut_free(p) for p in doc.proofs):
        out_text = text
        print("cuts eliminated: 0")
        status = OK
    else:
        outs = []
        status = OK
        for p in doc.proofs:
            el = Eliminator(calc, fuel)
            try:
                outs.append(el.run(p))
            except FuelExhausted as e:
                outs.append(e.partial)
                print(f"fuel exhausted after {e.stats.built} generated nodes", file=sys.stderr)
                status = FUEL
            print(el.stats.text())
        head = render_decls(Declarations(hyps=decls.hyps), with_hyps=True)
        body = "\n".join(render(p, decls) for p in outs)
        out_text = (head + "\n" if head else "") + body + "\n"
    if args.out:
        Path(args.out).write_text(out_text)
    else:
        sys.stdout.write(out_text)
    return status


def cmd_lint(args) -> int:
    from .cutelim import lint, rule_table
    from .corpus import load_decls

    decls = parse_document(_read(args.decls)).decls if args.decls else load_decls()
    calc = _calc(args, decls)
    if args.list:
        print(rule_table(calc))
        return OK
    rep = lint(calc)
    print(rep.text())
    return OK if rep.conditions_ok else FAILED


def cmd_mc(args) -> int:
    from .semantics import (
        Bounds, announcement_pool, axiom_instances, check_many, model_from_spec, render_model,
    )

    doc = parse_document(_read(args.decls)) if args.decls else None
    decls = doc.decls if doc else Declarations()
    atoms = tuple(a for a in args.atoms.split(",") if a) if args.atoms else ("p", "q")
    agents = tuple(sorted(decls.agents)) or ("a",)
    models = [model_from_spec(s) for s in doc.models] if doc and doc.models else None
    if args.axioms:
        pool = announcement_pool(atoms, agents)
        for act in pool:
            if act.base in decls.action_map:
                raise _Usage(f"action name {act.base} is reserved for the announcement pool")
        d = Declarations(decls.agents | frozenset(agents),
                         tuple(sorted({**decls.action_map, **{a.base: a for a in pool}}.items())))
        labels = [a.label() for a in pool]
        if args.declared:
            labels += [lab for lab in decls.labels()]
        insts = axiom_instances(d, labels, agents[0])
        pairs, names = [], []
        for name, lhs, rhs in insts:
            pairs += [(lhs, rhs), (rhs, lhs)]
            names += [f"{name} ->", f"{name} <-"]
        bounds = Bounds(args.worlds, atoms, agents)
        verdicts = check_many(pairs, bounds, d, models)
    else:
        pair = _seq_formulas(args.seq, decls)
        verdicts = check_many([pair], Bounds(args.worlds, atoms, agents), decls, models)
        names = [args.seq]
    status = OK
    for name, v in zip(names, verdicts):
        if v.valid:
            print(f"{name}: {v.text()}")
        else:
            status = FAILED
            print(f"{name}: {v.text(render_model)}")
    return status


def _seq_formulas(text: str, decls):
    """Read `A |- B` with plain formulas, falling back to structure syntax."""
    parts = text.split("|-")
    if len(parts) == 2:
        try:
            return parse_formula(parts[0], decls), parse_formula(parts[1], decls)
        except DeakError:
            pass
    return translate_sequent(parse_sequent(text, decls))


def cmd_corpus(args) -> int:
    from . import corpus

    if args.list:
        for e in corpus.list_entries():
            print(f"{e.id}\t{' '.join(e.tags)}\t{e.source}")
        return OK
    if args.show:
        e = corpus.get(args.show)
        print("\n".join(render(p, e.decls) for p in e.proofs))
        return OK
    rep = corpus.verify_all(lambda d: builtin(args.calculus, d, classical=args.classical == "on"))
    print(rep.text())
    return OK if rep.ok else FAILED


def _calc_flags(p):
    p.add_argument("--calculus", choices=["deak-prime", "deak-legacy"], default="deak-prime")
    p.add_argument("--classical", choices=["on", "off"], default="on")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deak", description="Proof kernel for the display calculus D'.EAK")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="check proofs")
    p.add_argument("decls")
    p.add_argument("proof")
    _calc_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eliminate", help="eliminate cuts")
    p.add_argument("decls")
    p.add_argument("proof")
    p.add_argument("--fuel", type=int)
    p.add_argument("--out")
    _calc_flags(p)
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("lint", help="check the cut-elimination conditions of a calculus")
    p.add_argument("--decls")
    p.add_argument("--list", action="store_true", help="print the rule table instead")
    _calc_flags(p)
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("mc", help="bounded model checking")
    p.add_argument("decls", nargs="?")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--seq")
    g.add_argument("--axioms", action="store_true")
    p.add_argument("--worlds", type=int, default=3)
    p.add_argument("--atoms", default="p,q")
    p.add_argument("--declared", action="store_true",
                   help="also instantiate the axioms at declared actions")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("corpus", help="the bundled derivations")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--verify", action="store_true")
    g.add_argument("--list", action="store_true")
    g.add_argument("--show", metavar="ID")
    _calc_flags(p)
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except DeakError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
