"""Finite Kripke models, product update, satisfaction and a bounded validity oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .syntax import (
    ActionLabel, ActionStructure, AdjBox, Agent, AdjDBox, AdjDDia, AdjDia, And, Atom, Bot, Box,
    CoImp, DBox, DDia, DeakError, Declarations, Dia, Formula, Imp, LCoImp, LImp, One, Or, Top,
    children,
)


@dataclass(frozen=True)
class KripkeModel:
    worlds: Tuple[Hashable, ...]
    rels: Tuple[Tuple[str, FrozenSet[Tuple[Hashable, Hashable]]], ...] = ()
    val: Tuple[Tuple[str, FrozenSet[Hashable]], ...] = ()
    _frame: list = field(default_factory=list, compare=False, repr=False, hash=False)

    @classmethod
    def build(cls, worlds: Sequence, rels: Optional[Dict] = None, val: Optional[Dict] = None):
        ws = tuple(worlds)
        if len(set(ws)) != len(ws):
            raise DeakError("invalid-model", "duplicate world")
        wset = set(ws)
        rr = []
        for a, pairs in sorted((rels or {}).items()):
            pairs = frozenset(tuple(p) for p in pairs)
            if any(x not in wset or y not in wset for x, y in pairs):
                raise DeakError("invalid-model", f"relation {a} leaves the world set")
            rr.append((a, pairs))
        vv = []
        for p, ext in sorted((val or {}).items()):
            ext = frozenset(ext)
            if not ext <= wset:
                raise DeakError("invalid-model", f"valuation of {p} leaves the world set")
            vv.append((p, ext))
        return cls(ws, tuple(rr), tuple(vv))

    def rel(self, agent: str) -> FrozenSet[Tuple[Hashable, Hashable]]:
        return dict(self.rels).get(agent, frozenset())

    def valuation(self, atom: str) -> FrozenSet[Hashable]:
        return dict(self.val).get(atom, frozenset())

    @property
    def agents(self) -> Tuple[str, ...]:
        return tuple(a for a, _ in self.rels)

    def frame(self) -> "_Frame":
        if not self._frame:
            self._frame.append(_Frame.of_model(self))
        return self._frame[0]


# --- bitmask evaluation engine ----------------------------------------------


class _Frame:
    """A model with worlds 0..n-1 and extensions as int bitmasks."""

    __slots__ = ("n", "succ", "pred", "val", "names", "memo", "updates")

    def __init__(self, n, succ, val, names):
        self.n = n
        self.succ = succ            # agent -> list of successor masks
        self.val = val              # atom -> mask
        self.names = names          # index -> world name
        self.memo: Dict[Formula, int] = {}
        self.updates: Dict[str, Tuple["_Frame", Dict[Tuple[int, str], int]]] = {}
        self.pred = {}
        for a, ss in succ.items():
            pr = [0] * n
            for i, m in enumerate(ss):
                for j in range(n):
                    if m >> j & 1:
                        pr[j] |= 1 << i
            self.pred[a] = pr

    @classmethod
    def of_model(cls, m: KripkeModel) -> "_Frame":
        idx = {w: i for i, w in enumerate(m.worlds)}
        succ = {}
        for a, pairs in m.rels:
            ss = [0] * len(m.worlds)
            for x, y in pairs:
                ss[idx[x]] |= 1 << idx[y]
            succ[a] = ss
        val = {p: sum(1 << idx[w] for w in ext) for p, ext in m.val}
        return cls(len(m.worlds), succ, val, list(m.worlds))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def to_model(self) -> KripkeModel:
        rels = {a: {(self.names[i], self.names[j]) for i, m in enumerate(ss)
                    for j in range(self.n) if m >> j & 1} for a, ss in self.succ.items()}
        val = {p: {self.names[i] for i in range(self.n) if m >> i & 1} for p, m in self.val.items()}
        return KripkeModel.build(self.names, rels, val)


class Evaluator:
    def __init__(self, decls: Declarations):
        self.decls = decls

    def ext(self, fr: _Frame, f: Formula) -> int:
        hit = fr.memo.get(f)
        if hit is not None:
            return hit
        r = self._ext(fr, f)
        fr.memo[f] = r
        return r

    def _ext(self, fr: _Frame, f: Formula) -> int:
        full = fr.full
        if isinstance(f, Atom):
            return fr.val.get(f.name, 0)
        if isinstance(f, Top):
            return full
        if isinstance(f, Bot):
            return 0
        if isinstance(f, And):
            return self.ext(fr, f.left) & self.ext(fr, f.right)
        if isinstance(f, Or):
            return self.ext(fr, f.left) | self.ext(fr, f.right)
        if isinstance(f, Imp):
            return (~self.ext(fr, f.left) | self.ext(fr, f.right)) & full
        if isinstance(f, LImp):         # left <- right
            return (~self.ext(fr, f.right) | self.ext(fr, f.left)) & full
        if isinstance(f, CoImp):        # left *> right: right and not left
            return self.ext(fr, f.right) & ~self.ext(fr, f.left) & full
        if isinstance(f, LCoImp):       # left <* right: left and not right
            return self.ext(fr, f.left) & ~self.ext(fr, f.right) & full
        if isinstance(f, (Dia, Box, AdjDia, AdjBox)):
            body = self.ext(fr, f.body)
            table = fr.pred if isinstance(f, (AdjDia, AdjBox)) else fr.succ
            rel = table.get(f.agent.name, [0] * fr.n)
            out = 0
            for i in range(fr.n):
                if isinstance(f, (Dia, AdjDia)):
                    hit = rel[i] & body
                else:
                    hit = not (rel[i] & ~body)
                if hit:
                    out |= 1 << i
            return out
        if isinstance(f, One):
            return self.ext(fr, self.decls.pre(f.act))
        if isinstance(f, (DDia, DBox)):
            pre = self.ext(fr, self.decls.pre(f.act))
            up, index = self.update(fr, f.act.base)
            body = self.ext(up, f.body)
            out = 0
            for w in range(fr.n):
                inside = pre >> w & 1
                if isinstance(f, DDia):
                    hit = inside and body >> index[(w, f.act.state)] & 1
                else:
                    hit = not inside or body >> index[(w, f.act.state)] & 1
                if hit:
                    out |= 1 << w
            return out
        if isinstance(f, (AdjDDia, AdjDBox)):
            raise DeakError("unsupported-connective",
                            "adjoint dynamic modalities have no pointwise Kripke reading")
        raise DeakError("unsupported-connective", type(f).__name__)

    def update(self, fr: _Frame, base: str):
        hit = fr.updates.get(base)
        if hit is not None:
            return hit
        act = self.decls.action(base)
        pres = {j: self.ext(fr, act.pre_of(j)) for j in act.states}
        worlds = [(w, j) for w in range(fr.n) for j in act.states if pres[j] >> w & 1]
        index = {wj: i for i, wj in enumerate(worlds)}
        succ = {}
        for a, ss in fr.succ.items():
            arel = act.rel(a)
            new = [0] * len(worlds)
            for k, (w, i) in enumerate(worlds):
                for (u, j), t in index.items():
                    if ss[w] >> u & 1 and (i, j) in arel:
                        new[k] |= 1 << t
            succ[a] = new
        val = {p: sum(1 << k for k, (w, _) in enumerate(worlds) if m >> w & 1)
               for p, m in fr.val.items()}
        names = [(fr.names[w], j) for w, j in worlds]
        out = (_Frame(len(worlds), succ, val, names), index)
        fr.updates[base] = out
        return out


def update(m: KripkeModel, alpha: ActionStructure,
           decls: Optional[Declarations] = None) -> Tuple[KripkeModel, Dict]:
    """Product update; returns the updated model and the map (w, j) -> (w, j).

    Worlds of the updated model are the pairs (w, j) themselves.
    """
    decls = _with_action(decls, alpha)
    up, index = Evaluator(decls).update(m.frame(), alpha.base)
    model = up.to_model()
    names = m.worlds
    return model, {(names[w], j): (names[w], j) for (w, j) in index}


def _with_action(decls: Optional[Declarations], alpha: ActionStructure) -> Declarations:
    decls = decls or Declarations()
    acts = decls.action_map
    acts[alpha.base] = alpha
    return Declarations(decls.agents, tuple(sorted(acts.items())), decls.hyps)


def extension(m: KripkeModel, f: Formula, decls: Optional[Declarations] = None) -> FrozenSet:
    fr = m.frame()
    mask = Evaluator(decls or Declarations()).ext(fr, f)
    return frozenset(fr.names[i] for i in range(fr.n) if mask >> i & 1)


def satisfies(m: KripkeModel, w, f: Formula, decls: Optional[Declarations] = None) -> bool:
    fr = m.frame()
    try:
        i = fr.names.index(w)
    except ValueError:
        raise DeakError("unknown-world", str(w)) from None
    return bool(Evaluator(decls or Declarations()).ext(fr, f) >> i & 1)


# --- bounded validity -------------------------------------------------------


def public_announcement(name: str, pre: Formula, agents: Iterable[str]) -> ActionStructure:
    return ActionStructure(name, ("k",), "k",
                           tuple((a, frozenset({("k", "k")})) for a in sorted(agents)),
                           (("k", pre),))


def announcement_pool(atoms: Sequence[str], agents: Sequence[str]) -> List[ActionStructure]:
    """Public announcements of each atom and of T (named ann_<atom>, ann_T)."""
    pool = [public_announcement(f"ann_{p}", Atom(p), agents) for p in atoms]
    pool.append(public_announcement("ann_T", Top(), agents))
    return pool


@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 3
    atoms: Tuple[str, ...] = ("p", "q")
    agents: Tuple[str, ...] = ("a",)
    pool: Tuple[ActionStructure, ...] = ()


@dataclass(frozen=True)
class Verdict:
    valid: bool
    model: Optional[KripkeModel] = None
    world: Optional[Hashable] = None
    checked: int = 0

    def text(self, render_model=None) -> str:
        if self.valid:
            return f"valid up to bound ({self.checked} models)"
        body = render_model(self.model) if render_model else repr(self.model)
        return f"counterexample at {self.world}\n{body}"


def atoms_in(f, decls: Declarations, seen=None) -> set:
    seen = set() if seen is None else seen
    out = set()
    if isinstance(f, Atom):
        out.add(f.name)
    lab = getattr(f, "act", None)
    if isinstance(lab, ActionLabel) and lab.base not in seen:
        seen.add(lab.base)
        for _, pre in decls.action(lab.base).pre:
            out |= atoms_in(pre, decls, seen)
    for _, ch in children(f):
        out |= atoms_in(ch, decls, seen)
    return out


def agents_in(f) -> set:
    out = set()
    ag = getattr(f, "agent", None)
    if ag is not None:
        out.add(ag.name)
    for _, ch in children(f):
        out |= agents_in(ch)
    return out


def enumerate_frames(n: int, atoms: Sequence[str], agents: Sequence[str]) -> Iterator[_Frame]:
    """All models on worlds w0..w(n-1): relations then valuations in bitmask order."""
    names = [f"w{i}" for i in range(n)]
    cells = n * n
    for rmasks in itertools.product(range(1 << cells), repeat=len(agents)):
        succ = {a: [(rm >> (i * n)) & ((1 << n) - 1) for i in range(n)]
                for a, rm in zip(agents, rmasks)}
        for vmasks in itertools.product(range(1 << n), repeat=len(atoms)):
            yield _Frame(n, succ, dict(zip(atoms, vmasks)), names)


def check_many(pairs: Sequence[Tuple[Formula, Formula]], bounds: Bounds = Bounds(),
               decls: Optional[Declarations] = None,
               models: Optional[Sequence[KripkeModel]] = None) -> List[Verdict]:
    """valid_bounded for several sequents, sharing one pass over the models."""
    decls = decls or Declarations()
    for act in bounds.pool:
        decls = _with_action(decls, act)
    ev = Evaluator(decls)
    atoms = set(bounds.atoms)
    agents = set(bounds.agents)
    for a, b in pairs:
        for f in (a, b):
            atoms |= atoms_in(f, decls)
            agents |= agents_in(f)
    for _, act in decls.actions:
        for ag, _ in act.rels:
            agents.add(ag)
    atoms, agents = sorted(atoms), sorted(agents)
    result: List[Optional[Verdict]] = [None] * len(pairs)
    count = 0
    if models is not None:
        frames = (m.frame() for m in models)
    else:
        frames = (fr for n in range(1, bounds.max_worlds + 1)
                  for fr in enumerate_frames(n, atoms, agents))
    for fr in frames:
        count += 1
        for k, (a, b) in enumerate(pairs):
            if result[k] is not None:
                continue
            bad = ev.ext(fr, a) & ~ev.ext(fr, b)
            if bad:
                w = (bad & -bad).bit_length() - 1
                result[k] = Verdict(False, fr.to_model(), fr.names[w], count)
        if all(r is not None for r in result):
            break
    return [r or Verdict(True, checked=count) for r in result]


def valid_bounded(antecedent: Formula, consequent: Formula, bounds: Bounds = Bounds(),
                  decls: Optional[Declarations] = None,
                  models: Optional[Sequence[KripkeModel]] = None) -> Verdict:
    return check_many([(antecedent, consequent)], bounds, decls, models)[0]


# --- relation-level operators -----------------------------------------------


@dataclass(frozen=True)
class RelationOps:
    X: FrozenSet
    Y: FrozenSet
    R: FrozenSet[Tuple]

    def dia(self, U) -> FrozenSet:
        """<R>U, a subset of X, for U a subset of Y."""
        return frozenset(x for x in self.X if any((x, y) in self.R for y in U))

    def box(self, U) -> FrozenSet:
        return frozenset(x for x in self.X if all(y in U for y in self.Y if (x, y) in self.R))

    def cdia(self, V) -> FrozenSet:
        """Converse diamond, a subset of Y, for V a subset of X."""
        return frozenset(y for y in self.Y if any((x, y) in self.R for x in V))

    def cbox(self, V) -> FrozenSet:
        return frozenset(y for y in self.Y if all(x in V for x in self.X if (x, y) in self.R))

    def adjunction_dia_cbox(self, U, V) -> bool:
        """<R>U <= V iff U <= converse-[R]V."""
        return (self.dia(U) <= V) == (frozenset(U) <= self.cbox(V))

    def adjunction_cdia_box(self, U, V) -> bool:
        """converse-<R>V <= U iff V <= [R]U."""
        return (self.cdia(V) <= U) == (frozenset(V) <= self.box(U))


def relation_modalities(R, X, Y=None) -> RelationOps:
    Y = X if Y is None else Y
    X, Y, R = frozenset(X), frozenset(Y), frozenset(R)
    if any(x not in X or y not in Y for x, y in R):
        raise DeakError("invalid-relation", "pair outside the carriers")
    return RelationOps(X, Y, R)


def comp_fact(R, X) -> bool:
    """[Dom(R) x Dom(R)] intersected with the diagonal is included in R;R^-1."""
    R = frozenset(R)
    dom = {x for x, _ in R}
    comp = {(x, z) for x, y in R for z, y2 in R if y == y2}
    return all((x, x) in comp for x in dom if x in set(X))


# --- model text format ------------------------------------------------------


def model_from_spec(spec) -> KripkeModel:
    return KripkeModel.build(spec.worlds, dict(spec.rels), dict(spec.val))


def parse_model(text: str) -> KripkeModel:
    from .parser import parse_document
    doc = parse_document(text)
    if len(doc.models) != 1:
        raise DeakError("syntax-error", f"expected one model, found {len(doc.models)}")
    return model_from_spec(doc.models[0])


def _wname(w) -> str:
    if isinstance(w, tuple):
        return "_".join(_wname(x) for x in w)
    return str(w)


def render_model(m: KripkeModel) -> str:
    parts = [f"worlds: {' '.join(_wname(w) for w in m.worlds)};"]
    for p, ext in m.val:
        ws = [w for w in m.worlds if w in ext]
        parts.append(f"val {p}: {' '.join(_wname(w) for w in ws)};" if ws else f"val {p}: ;")
    for a, pairs in m.rels:
        order = {w: i for i, w in enumerate(m.worlds)}
        ps = sorted(pairs, key=lambda xy: (order[xy[0]], order[xy[1]]))
        parts.append(f"rel {a}: {', '.join(f'{_wname(x)}->{_wname(y)}' for x, y in ps)};")
    return "model { " + " ".join(parts) + " }"


# --- the reduction axioms ---------------------------------------------------


def axiom_instances(decls: Declarations, labels: Sequence[ActionLabel], agent: str,
                    A: Formula = Atom("p"), B: Formula = Atom("q")):
    """(name, lhs, rhs) for the EAK reduction axioms (1)-(4) at each action label."""
    from functools import reduce

    ag = Agent(agent)
    out = []
    for al in labels:
        pre = decls.pre(al)
        tag = al.base if al.state == decls.action(al.base).designated else f"{al.base}@{al.state}"
        betas = decls.betas(al, ag)
        disj = reduce(Or, (Dia(ag, DDia(b, A)) for b in betas)) if betas else Bot()
        out += [
            (f"facts[{tag}]", DDia(al, A), And(pre, A)),
            (f"neg[{tag}]", DDia(al, Imp(A, Bot())), And(pre, Imp(DDia(al, A), Bot()))),
            (f"vee[{tag}]", DDia(al, Or(A, B)), Or(DDia(al, A), DDia(al, B))),
            (f"interact[{tag}]", DDia(al, Dia(ag, A)), And(pre, disj)),
        ]
    return out
