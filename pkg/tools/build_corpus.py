"""Compile hand-written proof outlines into checked corpus proof files.

An outline lists the sequents of a derivation in bussproofs order (leaves first,
one stack operation per line).  Printed derivations often compress display
steps, exchange and associativity, so each outline step may be separated from
its premises by any number of such "glue" inferences.  The compiler finds the
glue by a bounded search and emits a fully explicit proof, then checks it.

Outline syntax, one command per line:

    proof                 start a derivation
    AX  <sequent>         axiom leaf (Id, atom, oneR, topR, botL or Hyp)
    UI[rule] <sequent>    unary step; the rule name is optional
    BI[rule] <sequent>    binary step
    NI n[rule] <sequent>  n-ary step (swap-out)
    GL  <sequent>         glue only (display postulates, exchange, associativity)
    end                   finish; the stack must hold exactly one proof
    hyp <sequent>         declare an open premise (derived-rule entries)

Header lines `# source:` and `# tags:` are copied to the output.  Entries tagged
`schematic` are written with the atoms p, q replaced by $A, $B.

Usage: python tools/build_corpus.py [outline ...]
"""
from __future__ import annotations

import re
import sys
from collections import deque
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from deak.calculus import _Match, builtin, instantiate_term  # noqa: E402
from deak.corpus import DATA_DIR, load_decls  # noqa: E402
from deak.parser import parse_sequent, render  # noqa: E402
from deak.proofs import ProofTree, check  # noqa: E402
from deak.syntax import DeakError, Fm, Sequent  # noqa: E402

GLUE = ["dp-semi-lt", "dp-lt-semi", "dp-semi-gt", "dp-gt-semi", "dp-ag", "dp-ag-adj",
        "dp-act", "dp-act-adj", "EL", "ER", "AL", "AR"]
AXIOMS = ["Id", "atom", "oneR", "topR", "botL", "Hyp"]
MAX_DEPTH = 6
MAX_STATES = 40000


def forward(calc, name, seq):
    """Conclusions obtainable from `seq` by one application of `name`."""
    rule = calc.get(name)
    orients = [(rule.premises[0], rule.conclusion)]
    if rule.invertible:
        orients.append((rule.conclusion, rule.premises[0]))
    for prem, concl in orients:
        m = _Match(calc.decls)
        if not m.sequent(prem, seq) or not m.finish(rule.side):
            continue
        try:
            yield instantiate_term(concl, m.env, calc.decls)
        except DeakError:
            continue


def backward(calc, name, seq):
    for inst in calc.instances(name, seq):
        env = inst.assignment
        try:
            yield instantiate_term(inst.premises[0], env, calc.decls)
        except DeakError:
            continue


def closure(calc, start, step):
    """BFS over glue rules; returns {sequent: (rule, parent)} in discovery order."""
    seen = {start: None}
    q = deque([(start, 0)])
    while q:
        s, d = q.popleft()
        if d >= MAX_DEPTH or len(seen) > MAX_STATES:
            continue
        for name in GLUE:
            for t in step(calc, name, s):
                if t not in seen:
                    seen[t] = (name, s)
                    q.append((t, d + 1))
    return seen


def glue_down(fwd, target, top: ProofTree) -> ProofTree:
    """Proof of `target` from the proof `top`, following forward-closure links."""
    chain = []
    s = target
    while fwd[s] is not None:
        name, parent = fwd[s]
        chain.append((name, s))
        s = parent
    assert s == top.conclusion
    node = top
    for name, s in reversed(chain):
        node = ProofTree(name, s, (node,))
    return node


def glue_up(bwd, start, node: ProofTree) -> ProofTree:
    """Extend `node` (proving `start`) down to the root of the backward closure."""
    s = start
    while bwd[s] is not None:
        name, child = bwd[s]
        node = ProofTree(name, child, (node,))
        s = child
    return node


class StepError(Exception):
    pass


def candidate_rules(calc, arity, rule):
    if rule:
        return [rule]
    out = []
    for r in calc.rules.values():
        if r.name in GLUE or r.macro or r.name in ("Cut", "Hyp"):
            continue
        if r.per_beta:
            if arity >= 1:
                out.append(r.name)
        elif len(r.premises) == arity:
            out.append(r.name)
    return out


def step(calc, target, subs, rule=None):
    fwds = [closure(calc, p.conclusion, forward) for p in subs]
    bwd = closure(calc, target, backward)
    if not subs:
        for t in bwd:
            for name in ([rule] if rule else AXIOMS):
                for _ in calc.instances(name, t):
                    return glue_up(bwd, t, ProofTree(name, t))
        raise StepError(f"no axiom for {render(target, calc.decls)}")
    if rule is None and len(subs) == 1:
        for t in bwd:
            if t in fwds[0]:
                return glue_up(bwd, t, glue_down(fwds[0], t, subs[0]))
    names = candidate_rules(calc, len(subs), rule)
    for t in bwd:
        for name in names:
            for prems in _premise_options(calc, name, t, subs, len(subs)):
                if all(p in f for p, f in zip(prems, fwds)):
                    kids = tuple(glue_down(f, p, s) for p, f, s in zip(prems, fwds, subs))
                    return glue_up(bwd, t, ProofTree(name, t, kids))
    raise StepError(f"no step to {render(target, calc.decls)}")


def _premise_options(calc, name, concl, subs, n):
    r = calc.get(name)
    if name == "Cut":
        a = subs[0].conclusion.succ
        if isinstance(a, Fm):
            yield (Sequent(concl.ante, a), Sequent(a, concl.succ))
        return
    if r.per_beta:
        insts = calc.instances(name, concl, None)
    else:
        insts = calc.instances(name, concl)
    for inst in insts:
        if len(inst.premises) != n:
            continue
        try:
            yield tuple(instantiate_term(p, inst.assignment, calc.decls) for p in inst.premises)
        except DeakError:
            continue


CMD = re.compile(r"^(AX|UI|BI|NI|GL)\s*(\d+)?\s*(?:\[([^\]]+)\])?\s+(.*)$")


def compile_outline(text, base_decls):
    header, hyps, proofs, stack = [], [], [], []
    decls = base_decls
    calc = builtin("deak-prime", decls)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(("# source:", "# tags:")):
                header.append(line)
            continue
        try:
            if line == "proof":
                stack = []
                continue
            if line == "end":
                if len(stack) != 1:
                    raise StepError(f"stack holds {len(stack)} proofs at end")
                proofs.append(stack.pop())
                continue
            if line.startswith("hyp "):
                seq = parse_sequent(line[4:], decls)
                hyps.append(line[4:].strip())
                decls = decls.with_hyps([seq])
                calc = builtin("deak-prime", decls)
                continue
            m = CMD.match(line)
            if not m:
                raise StepError(f"bad line {line!r}")
            op, n, rule, seqtext = m.groups()
            target = parse_sequent(seqtext, decls)
            arity = {"AX": 0, "UI": 1, "GL": 1, "BI": 2}.get(op) if op != "NI" else int(n)
            subs = stack[len(stack) - arity:] if arity else []
            del stack[len(stack) - arity:]
            if op == "GL":
                fwd = closure(calc, subs[0].conclusion, forward)
                if target not in fwd:
                    raise StepError("glue search failed")
                stack.append(glue_down(fwd, target, subs[0]))
            else:
                stack.append(step(calc, target, subs, rule))
        except (StepError, DeakError) as e:
            raise SystemExit(f"line {lineno}: {line}\n  {e}")
    for p in proofs:
        rep = check(p, calc)
        if not rep.ok:
            raise SystemExit(f"generated proof does not check: {rep.text()}")
    return header, hyps, proofs, decls


def emit(header, hyps, proofs, decls):
    out = list(header)
    out += [f'hyp "{h}";' for h in hyps]
    for p in proofs:
        out.append(render(p, decls))
    text = "\n".join(out) + "\n"
    if any("schematic" in h for h in header if h.startswith("# tags:")):
        text = re.sub(r"(?<![A-Za-z0-9_$])p(?![A-Za-z0-9_])", "$A", text)
        text = re.sub(r"(?<![A-Za-z0-9_$])q(?![A-Za-z0-9_])", "$B", text)
    return text


def main(argv):
    outlines = [Path(a) for a in argv] or sorted((ROOT / "tools" / "outlines").glob("*.txt"))
    decls = load_decls()
    for path in outlines:
        header, hyps, proofs, d = compile_outline(path.read_text(), decls)
        dest = DATA_DIR / (path.stem + ".proof")
        dest.write_text(emit(header, hyps, proofs, d))
        sizes = ", ".join(str(p.size()) for p in proofs)
        print(f"{path.stem}: {len(proofs)} proof(s), nodes {sizes}")


if __name__ == "__main__":
    main(sys.argv[1:])
