"""Proof trees: checking, history trees and the display engine."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import Calculus, Instance, instantiate_term
from .syntax import (
    DeakError, Fm, FVar, Phi, PreOf, PRECEDENT, SUCCEDENT, Sequent, SVar, formula_leaves,
    get_at, iter_paths, polarity_of, subformulas,
)


@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Sequent
    children: Tuple["ProofTree", ...] = ()
    assignment: Optional[Instance] = field(default=None, compare=False, repr=False)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())


def node_name(path: Sequence[int]) -> str:
    return ".".join(["root"] + [str(i) for i in path])


@dataclass
class CheckReport:
    ok: bool
    nodes: int = 0
    fail_path: Tuple[int, ...] = ()
    reason: str = ""
    proof: Optional[ProofTree] = None
    ambiguous: List[Tuple[int, ...]] = field(default_factory=list)

    def text(self) -> str:
        if self.ok:
            return f"OK {self.nodes}"
        return f"FAIL {node_name(self.fail_path)} {self.reason}"


class _Fail(Exception):
    def __init__(self, path, reason):
        self.path = tuple(path)
        self.reason = reason


def phi_ok(seq: Sequent) -> bool:
    for path, node in iter_paths(seq):
        if isinstance(node, Phi) and polarity_of(seq, path) != PRECEDENT:
            return False
    return True


def check_node(pt: ProofTree, calc: Calculus, path=()) -> Tuple[Instance, bool]:
    """Check a single inference; returns its instance and an ambiguity flag."""
    if pt.rule not in calc:
        raise _Fail(path, "unknown-rule")
    rule = calc.get(pt.rule)
    n = len(pt.children)
    if rule.custom:
        want_ok = n == 0
    elif rule.per_beta:
        want_ok = n >= 1
    else:
        want_ok = n == len(rule.premises)
    if not want_ok:
        raise _Fail(path, "arity-mismatch")
    if not phi_ok(pt.conclusion):
        raise _Fail(path, "phi-position")
    if rule.custom == "hyp" and pt.conclusion not in calc.decls.hyps:
        raise _Fail(path, "undeclared-hypothesis")
    prems = [c.conclusion for c in pt.children]
    found = []
    for inst in calc.instances(pt.rule, pt.conclusion, prems):
        found.append(inst)
        if len(found) > 1:
            break
    if found:
        return found[0], len(found) > 1
    if next(iter(calc.instances(pt.rule, pt.conclusion)), None) is None and not rule.per_beta:
        raise _Fail(path, "no-matching-assignment")
    if rule.per_beta and not any(True for _ in calc.instances(pt.rule, pt.conclusion)):
        raise _Fail(path, "no-matching-assignment")
    raise _Fail(path, "premise-mismatch")


def check(proof: ProofTree, calc: Calculus, decls=None) -> CheckReport:
    if decls is not None and decls is not calc.decls:
        calc = calc.with_decls(decls)
    ambiguous = []
    count = [0]

    def go(pt, path):
        inst, amb = check_node(pt, calc, path)
        if amb:
            ambiguous.append(tuple(path))
        count[0] += 1
        kids = tuple(go(c, path + (i,)) for i, c in enumerate(pt.children))
        return ProofTree(pt.rule, pt.conclusion, kids, inst)

    try:
        checked = go(proof, ())
    except _Fail as e:
        return CheckReport(False, count[0], e.path, e.reason)
    return CheckReport(True, count[0], (), "", checked, ambiguous)


def annotate(proof: ProofTree, calc: Calculus) -> ProofTree:
    rep = check(proof, calc)
    if not rep.ok:
        raise DeakError(rep.reason, rep.text())
    return rep.proof


# --- occurrences ------------------------------------------------------------

INTRODUCED = "introduced-parametric"
PRINCIPAL_DISPLAYED = "principal-displayed"
PRINCIPAL_UNDISPLAYED = "principal-undisplayed-axiom"
HYPOTHESIS = "hypothesis"


def _param_key(node):
    if isinstance(node, SVar):
        return ("S", node.name)
    if isinstance(node, Fm) and isinstance(node.formula, FVar) and not node.formula.atomic:
        return ("F", node.formula.name)
    if isinstance(node, Fm) and isinstance(node.formula, PreOf):
        return ("P", node.formula.act.name)
    return None


def _find_param(pat: Sequent, key):
    return [p for p, n in iter_paths(pat) if _param_key(n) == key]


def classify(inst: Instance, occ: Tuple[str, ...]):
    """Classify a formula occurrence of an instance's conclusion.

    Returns ("principal", None) or ("param", [(premise index, path), ...]).
    """
    rule = inst.rule
    if rule.custom == "atom":
        return "principal", None
    if rule.custom == "hyp":
        return "hypothesis", None
    pat = inst.conclusion
    for i in range(1, len(occ) + 1):
        node = get_at(pat, occ[:i])
        key = _param_key(node)
        if key is not None:
            suffix = occ[i:]
            out = []
            for k, prem in enumerate(inst.premises):
                for pp in _find_param(prem, key):
                    out.append((k, pp + suffix))
            return "param", out
        if isinstance(node, Fm):
            break
    return "principal", None


def ancestors(pt: ProofTree, occ):
    kind, links = classify(pt.assignment, occ)
    return kind, links


@dataclass
class HistoryNode:
    node: Tuple[int, ...]
    occ: Tuple[str, ...]
    children: List["HistoryNode"]
    kind: Optional[str] = None


@dataclass
class HistoryTree:
    root: HistoryNode
    formula: object

    def leaves(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            if n.kind is not None:
                yield n
            stack.extend(reversed(n.children))

    def all_nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))


def history_tree(proof: ProofTree, occ, calc: Optional[Calculus] = None) -> HistoryTree:
    if proof.assignment is None:
        if calc is None:
            raise DeakError("unchecked-proof", "history_tree needs a checked proof")
        proof = annotate(proof, calc)
    occ = tuple(occ)
    leaf = get_at(proof.conclusion, occ)
    if not isinstance(leaf, Fm):
        raise DeakError("occurrence-not-formula", "/".join(occ))

    def go(pt, path, o):
        kind, links = classify(pt.assignment, o)
        if kind == "param":
            if not links:
                return HistoryNode(path, o, [], INTRODUCED)
            kids = [go(pt.children[k], path + (k,), po) for k, po in links]
            return HistoryNode(path, o, kids)
        if kind == "hypothesis":
            return HistoryNode(path, o, [], HYPOTHESIS)
        return HistoryNode(path, o, [], PRINCIPAL_DISPLAYED if len(o) == 1 else PRINCIPAL_UNDISPLAYED)

    return HistoryTree(go(proof, (), occ), leaf.formula)


# --- display engine ---------------------------------------------------------

HOLE = SVar("§")


def _abstract(seq: Sequent, path) -> Tuple[Sequent, Dict[SVar, object]]:
    """Replace the target with a hole and every hole-free maximal subtree with
    a fresh opaque placeholder."""
    mapping = {}
    counter = [0]

    def fresh(node):
        v = SVar(f"§{counter[0]}")
        counter[0] += 1
        mapping[v] = node
        return v

    def go(node, rest):
        if not rest:
            return HOLE
        from .syntax import children as kids, with_children
        new = {}
        for sel, ch in kids(node):
            new[sel] = go(ch, rest[1:]) if sel == rest[0] else fresh(ch)
        return with_children(node, new)

    side = path[0]
    if side == "ante":
        a, s = go(seq.ante, path[1:]), fresh(seq.succ)
    else:
        a = fresh(seq.ante)
        s = go(seq.succ, path[1:])
    return Sequent(a, s), mapping


def _fill(x, mapping):
    if isinstance(x, Sequent):
        return Sequent(_fill(x.ante, mapping), _fill(x.succ, mapping))
    if isinstance(x, SVar) and x in mapping:
        return mapping[x]
    from .syntax import children as kids, with_children
    ks = kids(x)
    if not ks or isinstance(x, Fm):
        return x
    return with_children(x, {sel: _fill(ch, mapping) for sel, ch in ks})


@dataclass
class DisplayChain:
    """Display-postulate steps from an end sequent up to a displayed one.

    steps[i] = (rule name, reverse flag, abstract sequent above step i); the
    abstract sequents contain the hole and opaque placeholders.
    """
    start: Sequent
    steps: List[Tuple[str, Sequent]]
    mapping: Dict[SVar, object]
    side: str

    def sequents(self, fill=None) -> List[Sequent]:
        m = dict(self.mapping)
        m[HOLE] = fill
        return [_fill(s, m) for s in [self.start] + [s for _, s in self.steps]]

    @property
    def top_abstract(self) -> Sequent:
        return self.steps[-1][1] if self.steps else self.start

    def displayed(self, fill) -> Sequent:
        return self.sequents(fill)[-1]

    def down(self, top: ProofTree, fill) -> ProofTree:
        """Proof of the start sequent (hole := fill) from a proof of the top."""
        seqs = self.sequents(fill)
        pt = top
        for i in range(len(self.steps) - 1, -1, -1):
            pt = ProofTree(self.steps[i][0], seqs[i], (pt,))
        return pt

    def up(self, bottom: ProofTree, fill) -> ProofTree:
        """Proof of the displayed sequent from a proof of the start sequent."""
        seqs = self.sequents(fill)
        pt = bottom
        for i, (rule, _) in enumerate(self.steps):
            pt = ProofTree(rule, seqs[i + 1], (pt,))
        return pt


def _predecessors(seq: Sequent, calc: Calculus, dps):
    for r in dps:
        for inst in calc.instances(r.name, seq):
            prem = instantiate_term(inst.premises[0], inst.assignment, calc.decls)
            yield r.name, prem


def display_chain(seq: Sequent, path, calc: Calculus, max_depth: int = 64) -> DisplayChain:
    path = tuple(path)
    get_at(seq, path)
    start, mapping = _abstract(seq, path)
    if start.ante == HOLE:
        return DisplayChain(start, [], mapping, PRECEDENT)
    if start.succ == HOLE:
        return DisplayChain(start, [], mapping, SUCCEDENT)
    dps = calc.display_postulates()
    parent = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if d >= max_depth:
            continue
        for rule, prem in _predecessors(cur, calc, dps):
            if prem in parent:
                continue
            parent[prem] = (cur, rule)
            if prem.ante == HOLE or prem.succ == HOLE:
                steps = []
                node = prem
                while parent[node] is not None:
                    below, r = parent[node]
                    steps.append((r, node))
                    node = below
                steps.reverse()
                side = PRECEDENT if prem.ante == HOLE else SUCCEDENT
                return DisplayChain(start, steps, mapping, side)
            frontier.append((prem, d + 1))
    raise DeakError("not-displayable", "/".join(path))


def display_at(seq: Sequent, path, calc: Calculus) -> Tuple[ProofTree, Sequent]:
    """Display-postulate derivation of seq from a sequent displaying the target.

    The top of the returned tree is a Hyp leaf holding the displayed sequent.
    """
    ch = display_chain(seq, path, calc)
    target = get_at(seq, tuple(path))
    top = ch.displayed(target)
    return ch.down(ProofTree("Hyp", top), target), top


def display_sides(seq: Sequent, path, calc: Calculus, limit: int = 200000) -> set:
    """Every side on which the target can be displayed (exhaustive closure)."""
    start, _ = _abstract(seq, tuple(path))
    dps = calc.display_postulates()
    seen = {start}
    todo = [start]
    sides = set()
    while todo:
        cur = todo.pop()
        if cur.ante == HOLE:
            sides.add(PRECEDENT)
        if cur.succ == HOLE:
            sides.add(SUCCEDENT)
        for _, prem in _predecessors(cur, calc, dps):
            if prem not in seen:
                seen.add(prem)
                if len(seen) > limit:
                    raise DeakError("display-closure-too-large", str(limit))
                todo.append(prem)
    return sides


# --- global properties ------------------------------------------------------


def is_cut_free(proof: ProofTree) -> bool:
    return all(n.rule != "Cut" for n in proof.nodes())


def subformula_property(proof: ProofTree) -> bool:
    allowed = set()
    for _, f in formula_leaves(proof.conclusion):
        allowed |= subformulas(f)
    for n in proof.nodes():
        for _, f in formula_leaves(n.conclusion):
            if f not in allowed:
                return False
    return True


def expand_macros(proof: ProofTree, calc: Calculus) -> ProofTree:
    """Replace macro rule applications (contextual weakening) by primitive steps."""
    kids = tuple(expand_macros(c, calc) for c in proof.children)
    rule = calc.get(proof.rule) if proof.rule in calc else None
    if rule is None or not rule.macro:
        return ProofTree(proof.rule, proof.conclusion, kids, proof.assignment)
    inst = proof.assignment
    if inst is None:
        inst = next(iter(calc.instances(proof.rule, proof.conclusion,
                                        [c.conclusion for c in proof.children])), None)
        if inst is None:
            raise DeakError("no-matching-assignment", proof.rule)
    env = inst.assignment
    pt = kids[0]
    for name, pat in rule.macro:
        pt = ProofTree(name, instantiate_term(pat, env, calc.decls), (pt,))
    return pt
