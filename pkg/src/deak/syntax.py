"""Term algebra for D'.EAK: formulas, structures, sequents and occurrence paths."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Mapping, Tuple, Union


class DeakError(Exception):
    """Error carrying a stable machine-readable code."""

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}" if detail else code)


# --- labels -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Agent:
    name: str

    def __post_init__(self):
        if not self.name:
            raise DeakError("invalid-agent", "empty agent name")


@dataclass(frozen=True, order=True)
class ActionLabel:
    base: str
    state: str


# Pattern-only label variables (used by rule schemas).
@dataclass(frozen=True, order=True)
class AgentVar:
    name: str


@dataclass(frozen=True, order=True)
class ActVar:
    name: str


# --- formulas ---------------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class One(Formula):
    act: ActionLabel


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    """left -> right"""
    left: Formula
    right: Formula


@dataclass(frozen=True)
class LImp(Formula):
    """left <- right (right implies left), written in reading order."""
    left: Formula
    right: Formula


@dataclass(frozen=True)
class CoImp(Formula):
    """left *> right"""
    left: Formula
    right: Formula


@dataclass(frozen=True)
class LCoImp(Formula):
    """left <* right"""
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Dia(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class AdjDia(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class AdjBox(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class DDia(Formula):
    act: ActionLabel
    body: Formula


@dataclass(frozen=True)
class DBox(Formula):
    act: ActionLabel
    body: Formula


@dataclass(frozen=True)
class AdjDDia(Formula):
    act: ActionLabel
    body: Formula


@dataclass(frozen=True)
class AdjDBox(Formula):
    act: ActionLabel
    body: Formula


# Pattern-only formulas.
@dataclass(frozen=True)
class FVar(Formula):
    """Formula metavariable; atomic=True restricts it to atoms (Id, atom)."""
    name: str
    atomic: bool = False


@dataclass(frozen=True)
class PreOf(Formula):
    """Pre(alpha): the precondition of the designated state, as a pattern."""
    act: ActVar


BINARY_FORMULAS = (And, Or, Imp, LImp, CoImp, LCoImp)
AGENT_MODALS = (Dia, Box, AdjDia, AdjBox)
ACTION_MODALS = (DDia, DBox, AdjDDia, AdjDBox)
MODALS = AGENT_MODALS + ACTION_MODALS


# --- structures -------------------------------------------------------------


class Structure:
    __slots__ = ()


@dataclass(frozen=True)
class Fm(Structure):
    formula: Formula


@dataclass(frozen=True)
class I(Structure):
    pass


@dataclass(frozen=True)
class Semi(Structure):
    left: Structure
    right: Structure


@dataclass(frozen=True)
class Gt(Structure):
    left: Structure
    right: Structure


@dataclass(frozen=True)
class Lt(Structure):
    left: Structure
    right: Structure


@dataclass(frozen=True)
class Prox(Structure):
    agent: Agent
    body: Structure


@dataclass(frozen=True)
class AdjProx(Structure):
    agent: Agent
    body: Structure


@dataclass(frozen=True)
class DProx(Structure):
    act: ActionLabel
    body: Structure


@dataclass(frozen=True)
class AdjDProx(Structure):
    act: ActionLabel
    body: Structure


@dataclass(frozen=True)
class Phi(Structure):
    act: ActionLabel


@dataclass(frozen=True)
class SVar(Structure):
    """Structure variable: a metavariable in rule patterns, an opaque constant
    (schematic X, Y, ...) in concrete sequents."""
    name: str


BINARY_STRUCTS = (Semi, Gt, Lt)
UNARY_STRUCTS = (Prox, AdjProx, DProx, AdjDProx)


@dataclass(frozen=True)
class Sequent:
    ante: Structure
    succ: Structure

    def side(self, name: str) -> Structure:
        if name == "ante":
            return self.ante
        if name == "succ":
            return self.succ
        raise DeakError("invalid-path", f"bad side selector {name!r}")


Term = Union[Formula, Structure]
Path = Tuple[str, ...]

PRECEDENT = "precedent"
SUCCEDENT = "succedent"


def flip(pol: str) -> str:
    return SUCCEDENT if pol == PRECEDENT else PRECEDENT


# --- generic tree helpers ---------------------------------------------------


def children(t) -> Tuple[Tuple[str, object], ...]:
    """Selector/child pairs of a structure or formula node."""
    if isinstance(t, (Semi, Gt, Lt) + BINARY_FORMULAS):
        return (("L", t.left), ("R", t.right))
    if isinstance(t, UNARY_STRUCTS + MODALS):
        return (("C", t.body),)
    if isinstance(t, Fm):
        return (("C", t.formula),)
    return ()


def with_children(t, new: Mapping[str, object]):
    if isinstance(t, (Semi, Gt, Lt) + BINARY_FORMULAS):
        return type(t)(new.get("L", t.left), new.get("R", t.right))
    if isinstance(t, (Prox, AdjProx) + AGENT_MODALS):
        return type(t)(t.agent, new.get("C", t.body))
    if isinstance(t, (DProx, AdjDProx) + ACTION_MODALS):
        return type(t)(t.act, new.get("C", t.body))
    if isinstance(t, Fm):
        return Fm(new.get("C", t.formula))
    raise DeakError("invalid-path", f"{type(t).__name__} has no children")


def get_at(x, path: Path):
    """Subterm of a sequent (path starts with ante/succ) or of a term."""
    cur = x
    steps = path
    if isinstance(x, Sequent):
        if not path:
            return x
        cur = x.side(path[0])
        steps = path[1:]
    for s in steps:
        for sel, ch in children(cur):
            if sel == s:
                cur = ch
                break
        else:
            raise DeakError("invalid-path", f"selector {s!r} at {type(cur).__name__}")
    return cur


def replace_at(x, path: Path, new):
    if isinstance(x, Sequent):
        if not path:
            raise DeakError("invalid-path", "empty path into sequent")
        side, rest = path[0], path[1:]
        if side == "ante":
            return Sequent(replace_at(x.ante, rest, new), x.succ)
        if side == "succ":
            return Sequent(x.ante, replace_at(x.succ, rest, new))
        raise DeakError("invalid-path", f"bad side selector {side!r}")
    if not path:
        return new
    sel = path[0]
    for s, ch in children(x):
        if s == sel:
            return with_children(x, {sel: replace_at(ch, path[1:], new)})
    raise DeakError("invalid-path", f"selector {sel!r} at {type(x).__name__}")


def iter_paths(x, prefix: Path = ()) -> Iterator[Tuple[Path, object]]:
    """Pre-order walk over structure nodes (formula interiors are not entered)."""
    if isinstance(x, Sequent):
        yield from iter_paths(x.ante, ("ante",))
        yield from iter_paths(x.succ, ("succ",))
        return
    yield prefix, x
    if isinstance(x, Fm):
        return
    for sel, ch in children(x):
        yield from iter_paths(ch, prefix + (sel,))


def formula_leaves(x) -> Iterator[Tuple[Path, Formula]]:
    for p, node in iter_paths(x):
        if isinstance(node, Fm):
            yield p, node.formula


# --- polarity / translation -------------------------------------------------


def polarity_of(seq: Sequent, path: Path) -> str:
    if not path or path[0] not in ("ante", "succ"):
        raise DeakError("invalid-path", "path must start with ante or succ")
    pol = PRECEDENT if path[0] == "ante" else SUCCEDENT
    cur = seq.side(path[0])
    for s in path[1:]:
        if isinstance(cur, Fm) or not isinstance(cur, Structure):
            # inside a formula leaf polarity is that of the leaf
            get_at(cur, (s,))
            cur = get_at(cur, (s,))
            continue
        if isinstance(cur, Gt) and s == "L":
            pol = flip(pol)
        elif isinstance(cur, Lt) and s == "R":
            pol = flip(pol)
        cur = get_at(cur, (s,))
    return pol


_TRANSLATION = {
    Semi: (And, Or),
    Prox: (Dia, Box),
    AdjProx: (AdjDia, AdjBox),
    DProx: (DDia, DBox),
    AdjDProx: (AdjDDia, AdjDBox),
}


def translate(s: Structure, pol: str) -> Formula:
    pre = pol == PRECEDENT
    if isinstance(s, Fm):
        return s.formula
    if isinstance(s, I):
        return Top() if pre else Bot()
    if isinstance(s, Semi):
        return (And if pre else Or)(translate(s.left, pol), translate(s.right, pol))
    if isinstance(s, Gt):
        l = translate(s.left, flip(pol))
        r = translate(s.right, pol)
        return CoImp(l, r) if pre else Imp(l, r)
    if isinstance(s, Lt):
        l = translate(s.left, pol)
        r = translate(s.right, flip(pol))
        return LCoImp(l, r) if pre else LImp(l, r)
    if isinstance(s, (Prox, AdjProx)):
        ctor = _TRANSLATION[type(s)][0 if pre else 1]
        return ctor(s.agent, translate(s.body, pol))
    if isinstance(s, (DProx, AdjDProx)):
        ctor = _TRANSLATION[type(s)][0 if pre else 1]
        return ctor(s.act, translate(s.body, pol))
    if isinstance(s, Phi):
        if not pre:
            raise DeakError("phi-in-succedent", "Phi has no succedent reading")
        return One(s.act)
    raise DeakError("not-translatable", f"{type(s).__name__} has no formula reading")


def translate_sequent(seq: Sequent) -> Tuple[Formula, Formula]:
    return translate(seq.ante, PRECEDENT), translate(seq.succ, SUCCEDENT)


# --- substitution -----------------------------------------------------------


def substitute(s, occs, repl: Structure):
    """Replace the formula leaves addressed by occs with repl."""
    occs = list(occs)
    target = None
    for p in occs:
        node = get_at(s, p)
        if not isinstance(node, Fm):
            raise DeakError("non-formula-target", f"path {'/'.join(p) or 'root'}")
        if target is None:
            target = node
        elif node != target:
            raise DeakError("non-formula-target", "addressed leaves hold different formulas")
    for p in occs:
        s = replace_at(s, p, repl) if p else repl
    return s


def subformulas(f: Formula) -> FrozenSet[Formula]:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        for _, ch in children(g):
            stack.append(ch)
    return frozenset(out)


def size(x) -> int:
    if isinstance(x, Sequent):
        return size(x.ante) + size(x.succ)
    return 1 + sum(size(ch) for _, ch in children(x))


def complexity(f: Formula) -> int:
    return size(f)


def atoms_of(x) -> FrozenSet[str]:
    if isinstance(x, Sequent):
        return atoms_of(x.ante) | atoms_of(x.succ)
    if isinstance(x, Atom):
        return frozenset([x.name])
    out = frozenset()
    for _, ch in children(x):
        out |= atoms_of(ch)
    return out


def formulas_of(x) -> Tuple[Formula, ...]:
    return tuple(f for _, f in formula_leaves(x))


# --- action structures and declarations ------------------------------------


@dataclass(frozen=True)
class ActionStructure:
    base: str
    states: Tuple[str, ...]
    designated: str
    rels: Tuple[Tuple[str, FrozenSet[Tuple[str, str]]], ...]
    pre: Tuple[Tuple[str, Formula], ...]

    def __post_init__(self):
        if not self.states:
            raise DeakError("invalid-action", f"{self.base}: no states")
        if self.designated not in self.states:
            raise DeakError("invalid-action", f"{self.base}: designated state not declared")
        st = set(self.states)
        for ag, rel in self.rels:
            for i, j in rel:
                if i not in st or j not in st:
                    raise DeakError("invalid-action", f"{self.base}: rel {ag} uses unknown state")
        if set(dict(self.pre)) != st:
            raise DeakError("invalid-action", f"{self.base}: pre must be total on states")

    def rel(self, agent: str) -> FrozenSet[Tuple[str, str]]:
        return dict(self.rels).get(agent, frozenset())

    def pre_of(self, state: str) -> Formula:
        return dict(self.pre)[state]

    def label(self, state: str = None) -> ActionLabel:
        return ActionLabel(self.base, state or self.designated)


@dataclass(frozen=True)
class Declarations:
    agents: FrozenSet[str] = frozenset()
    actions: Tuple[Tuple[str, ActionStructure], ...] = ()
    hyps: Tuple[Sequent, ...] = ()

    @property
    def action_map(self) -> Dict[str, ActionStructure]:
        return dict(self.actions)

    def action(self, base: str) -> ActionStructure:
        try:
            return self.action_map[base]
        except KeyError:
            raise DeakError("unknown-action", base) from None

    def pre(self, lab: ActionLabel) -> Formula:
        return self.action(lab.base).pre_of(lab.state)

    def betas(self, lab: ActionLabel, agent: Agent) -> Tuple[ActionLabel, ...]:
        """The labels beta with lab -agent-> beta, sorted by state identifier."""
        act = self.action(lab.base)
        return tuple(ActionLabel(lab.base, j)
                     for j in sorted(j for (i, j) in act.rel(agent.name) if i == lab.state))

    def labels(self) -> Tuple[ActionLabel, ...]:
        return tuple(ActionLabel(b, s) for b, a in self.actions for s in a.states)

    def with_hyps(self, hyps) -> "Declarations":
        return Declarations(self.agents, self.actions, self.hyps + tuple(hyps))

    def merge(self, other: "Declarations") -> "Declarations":
        acts = dict(self.actions)
        acts.update(other.actions)
        return Declarations(self.agents | other.agents, tuple(sorted(acts.items())),
                            self.hyps + other.hyps)


def neg(f: Formula) -> Formula:
    return Imp(f, Bot())
