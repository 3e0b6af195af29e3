"""Belnap-style cut elimination and the quasi-proper display calculus linter."""
from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .calculus import (
    AXIOM, CUT, OP_LEFT, OP_RIGHT, Calculus, Instance, RuleSchema, build_atom,
    match_atom,
)
from .proofs import (
    ProofTree, _Fail, check, check_node, classify, display_chain, expand_macros, is_cut_free,
)
from .syntax import (
    Agent, Atom, DeakError, Fm, FVar, PreOf, Sequent, SVar, complexity,
    PRECEDENT, SUCCEDENT, get_at, iter_paths, polarity_of, subformulas, substitute,
)

DEFAULT_FUEL = 100_000


# --- reduction templates ----------------------------------------------------


@dataclass(frozen=True)
class AuxStep:
    """Display one auxiliary formula of the tonic premise and cut it away."""
    var: str            # formula metavariable of the auxiliary formula
    path: tuple         # its path in the tonic rule's premise pattern
    premise: int        # index of the matching premise of the other rule
    other_side: str     # side of that premise holding the formula


@dataclass(frozen=True)
class ReductionTemplate:
    connective: str
    left: str           # rule introducing the cut formula in the antecedent
    right: str          # rule introducing it in the succedent
    tonic: str = ""     # the one-premise rule whose premise gets rewritten
    steps: Tuple[AuxStep, ...] = ()
    kind: str = "operational"   # or "axiom"

    @property
    def rewrite(self) -> str:
        if self.kind == "axiom":
            return f"{self.left}+{self.right}->{self.left if self.left != 'Id' else self.right}"
        cuts = ",".join(s.var for s in self.steps) or "none"
        return f"premise of {self.tonic}; cut on {cuts}"


def intro_side(rule: RuleSchema) -> Optional[str]:
    """'L' or 'R' for rules introducing a compound formula, else None."""
    if rule.family == OP_LEFT:
        return "L"
    if rule.family == OP_RIGHT:
        return "R"
    if rule.family == AXIOM and not rule.custom:
        c = rule.conclusion
        for side, s in (("L", c.ante), ("R", c.succ)):
            if isinstance(s, Fm) and not isinstance(s.formula, (FVar, Atom)):
                return side
    return None


def _is_tonic(rule: RuleSchema) -> bool:
    if len(rule.premises) != 1:
        return False
    c = rule.conclusion
    other = c.succ if intro_side(rule) == "L" else c.ante
    return isinstance(other, SVar)


def _aux_steps(tonic: RuleSchema, other: RuleSchema) -> Tuple[AuxStep, ...]:
    steps = []
    for path, node in iter_paths(tonic.premises[0]):
        if not (isinstance(node, Fm) and isinstance(node.formula, FVar)):
            continue
        name = node.formula.name
        for k, prem in enumerate(other.premises):
            for side in ("ante", "succ"):
                s = getattr(prem, side)
                if isinstance(s, Fm) and isinstance(s.formula, FVar) and s.formula.name == name:
                    steps.append(AuxStep(name, path, k, side))
    return tuple(steps)


def reduction_table(calc: Calculus) -> Dict[Tuple[str, str], ReductionTemplate]:
    """One template per (left-intro, right-intro) pair of each connective."""
    by_group: Dict[str, Dict[str, List[RuleSchema]]] = defaultdict(lambda: {"L": [], "R": []})
    for r in calc.rules.values():
        side = intro_side(r)
        if side:
            by_group[r.group][side].append(r)
    table = {}
    for group, sides in by_group.items():
        for lr in sides["L"]:
            for rr in sides["R"]:
                tonic = lr if _is_tonic(lr) else rr if _is_tonic(rr) else None
                if tonic is None:
                    continue
                other = rr if tonic is lr else lr
                table[(lr.name, rr.name)] = ReductionTemplate(
                    group, lr.name, rr.name, tonic.name, _aux_steps(tonic, other))
    for left, right in (("Id", "Id"), ("Id", "atom"), ("atom", "Id"), ("atom", "atom")):
        if left in calc and right in calc:
            table[(left, right)] = ReductionTemplate("axiom", left, right, kind="axiom")
    return table


def builtin_reductions(calc: Optional[Calculus] = None) -> List[ReductionTemplate]:
    if calc is None:
        from .calculus import builtin
        from .corpus import load_decls
        calc = builtin("deak-prime", load_decls())
    return list(reduction_table(calc).values())


# --- the eliminator ---------------------------------------------------------


@dataclass
class ElimStats:
    cuts: int = 0           # Cut nodes of the input removed
    reductions: int = 0     # principal reductions performed
    max_complexity: int = 0
    built: int = 0          # proof nodes generated (fuel consumption)
    size: int = 0           # size of the output proof

    def text(self) -> str:
        return (f"cuts eliminated: {self.cuts}\nprincipal reductions: {self.reductions}\n"
                f"max cut complexity: {self.max_complexity}\noutput size: {self.size}")


class FuelExhausted(DeakError):
    def __init__(self, partial: ProofTree, stats: ElimStats):
        super().__init__("fuel-exhausted", f"generated {stats.built} nodes")
        self.partial = partial
        self.stats = stats


class _OutOfFuel(Exception):
    pass


class Eliminator:
    """Cut elimination over a calculus.

    In residual mode, new cuts are not eliminated recursively but left as Cut
    nodes; this performs exactly one parametric or principal step.
    """

    def __init__(self, calc: Calculus, fuel: int = DEFAULT_FUEL, residual: bool = False):
        self.calc = calc
        self.fuel = fuel
        self.residual = residual
        self.stats = ElimStats()
        self.table = reduction_table(calc)
        self._insts: Dict[int, Tuple[ProofTree, Instance]] = {}

    # bookkeeping ----------------------------------------------------------

    def _spend(self, n: int = 1):
        self.stats.built += n
        if self.stats.built > self.fuel:
            raise _OutOfFuel

    def _node(self, rule, concl, kids=()) -> ProofTree:
        self._spend()
        return ProofTree(rule, concl, tuple(kids))

    def _inst(self, pt: ProofTree) -> Instance:
        if pt.assignment is not None:
            return pt.assignment
        hit = self._insts.get(id(pt))
        if hit is not None and hit[0] is pt:
            return hit[1]
        try:
            inst, _ = check_node(pt, self.calc)
        except _Fail as e:
            raise DeakError("internal-invariant-violation", f"{pt.rule}: {e.reason}") from None
        self._insts[id(pt)] = (pt, inst)
        return inst

    # cut dispatch ---------------------------------------------------------

    def cut(self, p1: ProofTree, p2: ProofTree) -> ProofTree:
        if self.residual:
            return self._node("Cut", Sequent(p1.conclusion.ante, p2.conclusion.succ), (p1, p2))
        return self.elim(p1, p2)

    def elim(self, p1: ProofTree, p2: ProofTree) -> ProofTree:
        """Cut-free proof of X |- Y from cut-free proofs of X |- A and A |- Y."""
        a = p1.conclusion.succ
        if not isinstance(a, Fm) or p2.conclusion.ante != a:
            raise DeakError("internal-invariant-violation", "cut premises do not share a formula")
        self.stats.max_complexity = max(self.stats.max_complexity, complexity(a.formula))
        target = Sequent(p1.conclusion.ante, p2.conclusion.succ)
        if p1.rule == "Id" or p2.conclusion == target:
            return p2
        if p2.rule == "Id" or p1.conclusion == target:
            return p1
        kind, _ = classify(self._inst(p2), ("ante",))
        if kind == "param":
            return self.subst(p2, [("ante",)], p1, left=False)
        if kind == "hypothesis":
            raise DeakError("open-hypothesis", "cut formula traced to a hypothesis")
        kind, _ = classify(self._inst(p1), ("succ",))
        if kind == "param":
            return self.subst(p1, [("succ",)], p2, left=True)
        if kind == "hypothesis":
            raise DeakError("open-hypothesis", "cut formula traced to a hypothesis")
        return self.principal(p1, p2)

    # parametric stage -----------------------------------------------------

    def subst(self, node: ProofTree, occs, other: ProofTree, left: bool) -> ProofTree:
        """Replace the congruent occurrences `occs` of the cut formula in `node`.

        left=True: node proves ...|- A side (succedent occurrences), filled with
        the other premise's succedent; otherwise precedent occurrences are
        filled with the other premise's antecedent.
        """
        fill = other.conclusion.succ if left else other.conclusion.ante
        inst = self._inst(node)
        params, princ = [], []
        links = defaultdict(list)
        for o in occs:
            kind, ls = classify(inst, o)
            if kind == "hypothesis":
                raise DeakError("open-hypothesis", "cut formula traced to a hypothesis")
            if kind == "param":
                params.append(o)
                for k, p in ls:
                    links[k].append(p)
            else:
                princ.append(o)
        if len(princ) > 1:
            raise DeakError("internal-invariant-violation", f"{node.rule}: two principal occurrences")
        kids = tuple(self.subst(c, links[k], other, left) if links.get(k) else c
                     for k, c in enumerate(node.children))
        if params:
            base = self._node(node.rule, substitute(node.conclusion, params, fill), kids)
        else:
            base = node
        if not princ:
            return base
        occ = princ[0]
        side = "succ" if left else "ante"
        if occ == (side,):
            return self.cut(base, other) if left else self.cut(other, base)
        # principal but not displayed: only possible in an atom axiom
        if base.rule != "atom":
            raise DeakError("internal-invariant-violation", f"{base.rule}: undisplayed principal")
        chain = display_chain(base.conclusion, occ, self.calc)
        top = chain.displayed(get_at(base.conclusion, occ))
        want = SUCCEDENT if left else PRECEDENT
        if chain.side != want or match_atom(top) is None:
            raise DeakError("internal-invariant-violation", "atom not closed under display")
        ax = self._node("atom", top)
        r = self.cut(ax, other) if left else self.cut(other, ax)
        self._spend(len(chain.steps))
        return chain.down(r, fill)

    # principal stage ------------------------------------------------------

    def principal(self, p1: ProofTree, p2: ProofTree) -> ProofTree:
        target = Sequent(p1.conclusion.ante, p2.conclusion.succ)
        tmpl = self.table.get((p2.rule, p1.rule))
        if tmpl is None:
            raise DeakError("no-template", f"{p2.rule}/{p1.rule}")
        self.stats.reductions += 1
        if tmpl.kind == "axiom":
            if match_atom(target) is None:
                raise DeakError("internal-invariant-violation", "atom cut does not close")
            return self._node("atom", target)
        if tmpl.tonic == p2.rule:
            tonic_pt, other_pt = p2, p1
        else:
            tonic_pt, other_pt = p1, p2
        cur = tonic_pt.children[0]
        for st in tmpl.steps:
            chain = display_chain(cur.conclusion, st.path, self.calc)
            a = get_at(cur.conclusion, st.path)
            self._spend(2 * len(chain.steps))
            up = chain.up(cur, a)
            sub = other_pt.children[st.premise]
            if st.other_side == "succ":
                r, fill = self.cut(sub, up), sub.conclusion.ante
            else:
                r, fill = self.cut(up, sub), sub.conclusion.succ
            cur = chain.down(r, fill)
        if cur.conclusion != target:
            raise DeakError("internal-invariant-violation", f"{tmpl.connective} template mismatch")
        return cur

    # driver ---------------------------------------------------------------

    def run(self, proof: ProofTree) -> ProofTree:
        if is_cut_free(proof):
            self.stats.size = proof.size()
            return proof
        rep = check(proof, self.calc)
        if not rep.ok:
            raise DeakError(rep.reason, rep.text())
        proof = expand_macros(rep.proof, self.calc)
        exhausted = [False]

        def go(pt: ProofTree) -> ProofTree:
            kids = tuple(go(c) for c in pt.children)
            if pt.rule != "Cut" or exhausted[0]:
                if all(k is c for k, c in zip(kids, pt.children)):
                    return pt
                return ProofTree(pt.rule, pt.conclusion, kids)
            try:
                out = self.elim(kids[0], kids[1])
            except _OutOfFuel:
                exhausted[0] = True
                return ProofTree(pt.rule, pt.conclusion, kids)
            self.stats.cuts += 1
            return out

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20000))
        try:
            out = go(proof)
        finally:
            sys.setrecursionlimit(old)
        self.stats.size = out.size()
        if exhausted[0]:
            raise FuelExhausted(out, self.stats)
        return out


def eliminate(proof: ProofTree, calc: Calculus, fuel: int = DEFAULT_FUEL) -> ProofTree:
    return Eliminator(calc, fuel).run(proof)


def _cut_premises(proof: ProofTree, calc: Calculus):
    if proof.rule != "Cut" or len(proof.children) != 2:
        raise DeakError("not-a-cut", proof.rule)
    rep = check(proof, calc)
    if not rep.ok:
        raise DeakError(rep.reason, rep.text())
    return rep.proof.children


def reduce_principal(proof: ProofTree, calc: Calculus) -> ProofTree:
    """One principal reduction at a Cut whose cut formulas are both principal."""
    p1, p2 = _cut_premises(proof, calc)
    el = Eliminator(calc, residual=True)
    target = proof.conclusion
    if p1.rule == "Id" or p2.conclusion == target:
        return p2
    if p2.rule == "Id" or p1.conclusion == target:
        return p1
    for pt, occ in ((p2, ("ante",)), (p1, ("succ",))):
        if classify(el._inst(pt), occ)[0] != "principal":
            raise DeakError("not-principal", f"{pt.rule} does not introduce the cut formula")
    return el.principal(p1, p2)


def parametric_step(proof: ProofTree, calc: Calculus) -> ProofTree:
    """Push a Cut with a parametric cut formula up to the principal occurrences."""
    p1, p2 = _cut_premises(proof, calc)
    el = Eliminator(calc, residual=True)
    if classify(el._inst(p2), ("ante",))[0] == "param":
        return el.subst(p2, [("ante",)], p1, left=False)
    if classify(el._inst(p1), ("succ",))[0] == "param":
        return el.subst(p1, [("succ",)], p2, left=True)
    raise DeakError("not-parametric", "both cut formulas are principal")


# --- the linter -------------------------------------------------------------

C_CONDITIONS = ["C1", "C2", "C3", "C4", "C5'", "C5''", "C6", "C7", "C8", "C8'"]
WANSING = ["separation", "weak-symmetry", "symmetry", "weak-explicitness", "explicitness",
           "segregation"]


@dataclass(frozen=True)
class Verdict:
    cond: str
    ok: bool
    rule: str = "-"
    witness: str = "-"

    def line(self) -> str:
        return f"{self.cond} {'PASS' if self.ok else 'FAIL'} {self.rule} {self.witness}"


@dataclass
class LintReport:
    calculus: str
    verdicts: List[Verdict] = field(default_factory=list)

    def get(self, cond: str) -> Verdict:
        return next(v for v in self.verdicts if v.cond == cond)

    @property
    def conditions_ok(self) -> bool:
        return all(v.ok for v in self.verdicts if v.cond in C_CONDITIONS)

    def text(self) -> str:
        return "\n".join(v.line() for v in self.verdicts)


def _compact(x) -> str:
    from .parser import render
    return render(x).replace(" ", "")


def _rule_variants(calc: Calculus):
    """Every fixed-arity schema (per-beta rules expanded for 1..3 premises)."""
    for r in calc.rules.values():
        if r.custom or r.macro:
            continue
        if r.per_beta:
            for n in (1, 2, 3):
                yield r.expand(n)
        else:
            yield r


def _formulas(seq: Sequent):
    return [n.formula for _, n in iter_paths(seq) if isinstance(n, Fm)]


def _first_fail(cond, items) -> Verdict:
    for rule, witness in items:
        return Verdict(cond, False, rule, witness)
    return Verdict(cond, True)


def _c1(calc):
    for r in _rule_variants(calc):
        if r.family == CUT:
            continue
        allowed = set()
        for f in _formulas(r.conclusion):
            allowed |= subformulas(f)
        for prem in r.premises:
            for f in _formulas(prem):
                if f not in allowed:
                    yield r.group, f"{r.name}:{_compact(f)}"


def _param_nodes(seq: Sequent):
    from .calculus import _param_leaves
    return _param_leaves(seq)


def _c2(calc):
    for r in _rule_variants(calc):
        for i, pp, cp in r.congruence():
            if get_at(r.premises[i], pp) != get_at(r.conclusion, cp):
                yield r.group, r.name


def _c3(calc):
    for r in _rule_variants(calc):
        seen = defaultdict(int)
        for key, _ in _param_nodes(r.conclusion):
            seen[key] += 1
        prem_keys = {k for p in r.premises for k, _ in _param_nodes(p)}
        for key, n in seen.items():
            if n > 1 and key in prem_keys:
                yield r.group, f"{r.name}:{key[1]}"


def _c4(calc):
    for r in _rule_variants(calc):
        for i, pp, cp in r.congruence():
            if polarity_of(r.premises[i], pp) != polarity_of(r.conclusion, cp):
                yield r.group, r.name


def _c5p(calc):
    for r in calc.rules.values():
        if r.family in (OP_LEFT, OP_RIGHT):
            c = r.conclusion
            s = c.ante if r.family == OP_LEFT else c.succ
            if not (isinstance(s, Fm) and not isinstance(s.formula, FVar)):
                yield r.group, r.name


def _sample_atoms(calc: Calculus) -> List[Sequent]:
    labels = calc.decls.labels()[:1]
    prefixes = [()]
    for lab in labels:
        prefixes += [(("dyn", lab),), (("adj", lab),), (("dyn", lab), ("adj", lab)),
                     (("adj", lab), ("dyn", lab))]
    p = Atom("p")
    return [build_atom({"p": p, "Gamma": g, "Delta": d}) for g in prefixes for d in prefixes]


def _c5pp(calc):
    if "atom" not in calc:
        return
    for s in _sample_atoms(calc):
        for dp in calc.display_postulates():
            for inst in calc.instances(dp.name, s):
                prem = calc.instantiate(dp.name, inst.assignment, inst.reverse).premises[0]
                if match_atom(prem) is None:
                    yield "atom", f"{dp.name}:{_compact(prem)}"


def _restricted(calc, want_pol):
    for r in _rule_variants(calc):
        for i, pp, cp in r.congruence():
            node = get_at(r.conclusion, cp)
            if isinstance(node, Fm) and isinstance(node.formula, PreOf):
                pol = polarity_of(r.conclusion, cp)
                if (pol == PRECEDENT) == (want_pol == PRECEDENT):
                    yield r.group, f"{r.name}:Pre({node.formula.act.name})"
                    break


def _instantiate_pair(calc: Calculus, name: str, tag: str):
    """Concrete instance of a rule: atoms for formula variables, opaque structures."""
    rule = calc.get(name)
    env = {"A": Atom("p"), "B": Atom("q")}
    for key, _ in {k: 0 for p in rule.premises + (rule.conclusion,) for k, _ in _param_nodes(p)}.items():
        if key[0] == "S":
            env[key[1]] = SVar(f"{key[1]}{tag}")
    if calc.decls.agents:
        env["a"] = Agent(sorted(calc.decls.agents)[0])
    labels = calc.decls.labels()
    if labels:
        env["alpha"] = labels[0]
    return calc.instantiate(name, env)


def validate_template(calc: Calculus, tmpl: ReductionTemplate) -> Optional[str]:
    """None if the template's residual proof checks, else a reason."""
    if tmpl.kind == "axiom":
        return None
    li = _instantiate_pair(calc, tmpl.left, "l")
    ri = _instantiate_pair(calc, tmpl.right, "r")
    if li.conclusion.ante != ri.conclusion.succ:
        return "principal formulas differ"
    hyps = list(li.premises) + list(ri.premises)
    hc = calc.with_decls(calc.decls.with_hyps(hyps))
    lp = ProofTree(tmpl.left, li.conclusion, tuple(ProofTree("Hyp", h) for h in li.premises))
    rp = ProofTree(tmpl.right, ri.conclusion, tuple(ProofTree("Hyp", h) for h in ri.premises))
    el = Eliminator(hc, residual=True)
    try:
        out = el.principal(rp, lp)
    except DeakError as e:
        return e.code
    rep = check(out, hc)
    if not rep.ok:
        return rep.text().replace(" ", ":")
    if out.conclusion != Sequent(ri.conclusion.ante, li.conclusion.succ):
        return "conclusion-changed"
    cut_f = li.conclusion.ante.formula
    for n in out.nodes():
        if n.rule == "Cut":
            f = n.children[0].conclusion.succ.formula
            if f == cut_f or f not in subformulas(cut_f):
                return "residual-cut-not-smaller"
    return None


def _c8(calc) -> Verdict:
    table = reduction_table(calc)
    pairs = [(lr.name, rr.name) for lr in calc.rules.values() if intro_side(lr) == "L"
             for rr in calc.rules.values() if intro_side(rr) == "R" and rr.group == lr.group]
    for key in pairs:
        tmpl = table.get(key)
        if tmpl is None:
            return Verdict("C8", False, key[0], f"no-template:{key[1]}")
        why = validate_template(calc, tmpl)
        if why:
            return Verdict("C8", False, tmpl.connective, f"{tmpl.left}/{tmpl.right}:{why}")
    return Verdict("C8", True, "table", str(len(pairs)))


def _c8p(calc) -> Verdict:
    samples = []
    if "Id" in calc:
        samples.append(Sequent(Fm(Atom("p")), Fm(Atom("p"))))
    if "atom" in calc:
        samples += _sample_atoms(calc)
    for r in calc.axioms:
        if not r.custom and r.name != "Id" and not r.premises:
            try:
                samples.append(_instantiate_pair(calc, r.name, "").conclusion)
            except DeakError:
                pass
    for s1 in samples:
        for s2 in samples:
            if not isinstance(s1.succ, Fm) or s1.succ != s2.ante:
                continue
            cut = Sequent(s1.ante, s2.succ)
            if not any(True for r in calc.axioms for _ in calc.instances(r.name, cut)):
                return Verdict("C8'", False, "axiom", _compact(cut))
    return Verdict("C8'", True)


def _intro_rules(calc):
    return [r for r in calc.rules.values() if intro_side(r) or r.family == AXIOM and r.custom == "atom"
            or r.name == "Id"]


def _principal_formula(r: RuleSchema):
    side = intro_side(r)
    s = r.conclusion.ante if side == "L" else r.conclusion.succ
    return s.formula if isinstance(s, Fm) else None


def _separation(calc):
    for r in calc.rules.values():
        if intro_side(r):
            f = _principal_formula(r)
            from .syntax import children
            for _, ch in children(f):
                if not isinstance(ch, (FVar, Atom)):
                    yield r.group, r.name


def _groups(calc):
    g = defaultdict(set)
    for r in calc.rules.values():
        s = intro_side(r)
        if s:
            g[r.group].add(s)
    return g


def _weak_symmetry(calc):
    for r in calc.rules.values():
        if r.family in (OP_LEFT, OP_RIGHT) and intro_side(r) is None:
            yield r.group, r.name


def _symmetry(calc):
    for group, sides in sorted(_groups(calc).items()):
        if sides != {"L", "R"}:
            yield group, f"{group}:only-{''.join(sorted(sides))}"


def _weak_explicitness(calc):
    for r in calc.rules.values():
        if intro_side(r):
            f = _principal_formula(r)
            if any(f in _formulas(p) for p in r.premises):
                yield r.group, r.name


def _explicitness(calc):
    for r in calc.rules.values():
        if intro_side(r):
            f = _principal_formula(r)
            from .syntax import children
            imm = {ch for _, ch in children(f)}
            for p in r.premises:
                for g in _formulas(p):
                    if g not in imm:
                        yield r.group, f"{r.name}:{_compact(g)}"


def _segregation(calc):
    for r in _intro_rules(calc):
        # principal atoms of the atom rule sit under dynamic proxies in general
        if r.custom == "atom" or (r.name != "Id" and _principal_formula(r) is None):
            yield r.group, r.name


def lint(calc: Calculus) -> LintReport:
    rep = LintReport(calc.name)
    v = rep.verdicts
    v.append(_first_fail("C1", _c1(calc)))
    v.append(_first_fail("C2", _c2(calc)))
    v.append(_first_fail("C3", _c3(calc)))
    v.append(_first_fail("C4", _c4(calc)))
    v.append(_first_fail("C5'", _c5p(calc)))
    v.append(_first_fail("C5''", _c5pp(calc)))
    v.append(_first_fail("C6", _restricted(calc, SUCCEDENT)))
    v.append(_first_fail("C7", _restricted(calc, PRECEDENT)))
    v.append(_c8(calc))
    v.append(_c8p(calc))
    v.append(_first_fail("separation", _separation(calc)))
    v.append(_first_fail("weak-symmetry", _weak_symmetry(calc)))
    v.append(_first_fail("symmetry", _symmetry(calc)))
    v.append(_first_fail("weak-explicitness", _weak_explicitness(calc)))
    v.append(_first_fail("explicitness", _explicitness(calc)))
    v.append(_first_fail("segregation", _segregation(calc)))
    return rep


def rule_table(calc: Calculus) -> str:
    """Name, family, arity and congruence pairs of every rule, one per line."""
    lines = []
    for r in calc.rules.values():
        base = r.expand(1) if r.per_beta else r
        cong = " ".join(f"{i}:{'/'.join(pp)}={'/'.join(cp)}" for i, pp, cp in base.congruence())
        lines.append(f"{r.name:<12} {r.family:<20} {r.arity:<8} {cong or '-'}")
    return "\n".join(lines)
