"""Rule schemas, the bundled D'.EAK and legacy D.EAK rule sets, matching."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .parser import parse_pattern
from .syntax import (
    ActionLabel, ActVar, AdjDProx, Agent, AgentVar, Atom, DeakError, Declarations,
    DProx, Fm, Formula, FVar, PreOf, Semi, Sequent, Structure, SVar, children,
    iter_paths, with_children,
)

AXIOM = "axiom"
CUT = "cut"
STRUCTURAL = "structural"
DISPLAY = "display-postulate"
OP_LEFT = "operational-left"
OP_RIGHT = "operational-right"


@dataclass(frozen=True)
class RuleSchema:
    name: str
    group: str
    family: str
    premises: Tuple[Sequent, ...]
    conclusion: Sequent
    invertible: bool = False
    side: Tuple[tuple, ...] = ()
    per_beta: str = ""          # "", "prime" or "legacy"
    restricted: bool = False    # Pre(alpha) occurs as a concrete parameter
    macro: Tuple[Tuple[str, Sequent], ...] = ()
    custom: str = ""            # "atom" or "hyp" for non-pattern rules

    @property
    def arity(self) -> str:
        return "per-beta" if self.per_beta else str(len(self.premises))

    def expand(self, n: int) -> "RuleSchema":
        """Fixed-arity instance of a per-beta rule with n premises."""
        if not self.per_beta:
            return self
        if n < 1:
            raise DeakError("arity-mismatch", f"{self.name} needs at least one premise")
        return _swapout(self.name, self.group, self.per_beta, self.conclusion.succ != SVar("_R"), n)

    def congruence(self) -> List[Tuple[int, tuple, tuple]]:
        """(premise index, premise path, conclusion path) of congruent parameters."""
        conc = _param_leaves(self.conclusion)
        out = []
        for i, prem in enumerate(self.premises):
            for name, ppath in _param_leaves(prem):
                for cname, cpath in conc:
                    if cname == name:
                        out.append((i, ppath, cpath))
        return out


def _param_leaves(seq: Sequent):
    out = []
    for path, node in iter_paths(seq):
        if isinstance(node, SVar):
            out.append((("S", node.name), path))
        elif isinstance(node, Fm) and isinstance(node.formula, (FVar, PreOf)):
            f = node.formula
            if isinstance(f, FVar) and f.atomic:
                continue
            key = ("F", f.name) if isinstance(f, FVar) else ("P", f.act.name)
            out.append((key, path))
    return out


# --- matching ---------------------------------------------------------------


class _Match:
    def __init__(self, decls: Declarations, env: Optional[dict] = None):
        self.decls = decls
        self.env = dict(env or {})
        self.deferred: List[Tuple[PreOf, Formula]] = []

    def bind(self, name, value) -> bool:
        old = self.env.get(name)
        if old is None:
            self.env[name] = value
            return True
        return old == value

    def label(self, pat, val) -> bool:
        if isinstance(pat, AgentVar):
            return isinstance(val, Agent) and self.bind(pat.name, val)
        if isinstance(pat, ActVar):
            return isinstance(val, ActionLabel) and self.bind(pat.name, val)
        return pat == val

    def term(self, pat, val) -> bool:
        if isinstance(pat, SVar):
            return isinstance(val, Structure) and self.bind(pat.name, val)
        if isinstance(pat, FVar):
            if not isinstance(val, Formula):
                return False
            if pat.atomic and not isinstance(val, Atom):
                return False
            return self.bind(pat.name, val)
        if isinstance(pat, PreOf):
            if not isinstance(val, Formula):
                return False
            self.deferred.append((pat, val))
            return True
        if type(pat) is not type(val):
            return False
        for lab in ("agent", "act"):
            if hasattr(pat, lab) and not self.label(getattr(pat, lab), getattr(val, lab)):
                return False
        pk = children(pat)
        vk = children(val)
        if len(pk) != len(vk):
            return False
        if not pk and pat != val and not hasattr(pat, "act"):
            return False
        return all(self.term(p, v) for (_, p), (_, v) in zip(pk, vk))

    def sequent(self, pat: Sequent, val: Sequent) -> bool:
        return self.term(pat.ante, val.ante) and self.term(pat.succ, val.succ)

    def finish(self, side=()) -> bool:
        for pat, val in self.deferred:
            lab = self.env.get(pat.act.name)
            if lab is None or self.decls.pre(lab) != val:
                return False
        self.deferred = []
        for cond in side:
            if not _side_ok(cond, self.env, self.decls):
                return False
        return True


def _side_ok(cond, env, decls) -> bool:
    kind = cond[0]
    if kind == "rel":
        _, al, ag, be = cond
        if al not in env or ag not in env or be not in env:
            return True  # not yet decidable (conclusion-only match)
        return env[be] in decls.betas(env[al], env[ag])
    if kind == "betas":
        _, al, ag, bes = cond
        if al not in env or ag not in env:
            return True
        return tuple(env.get(b) for b in bes) == decls.betas(env[al], env[ag])
    if kind == "same":
        vals = {env[v] for v in cond[1] if v in env}
        return len(vals) <= 1
    raise DeakError("internal", f"unknown side condition {kind}")


def instantiate_term(pat, env, decls: Declarations):
    if isinstance(pat, (SVar, FVar)):
        if pat.name not in env:
            raise DeakError("unbound-metavariable", pat.name)
        val = env[pat.name]
        want = Structure if isinstance(pat, SVar) else Formula
        if not isinstance(val, want):
            raise DeakError("sort-mismatch", pat.name)
        return val
    if isinstance(pat, PreOf):
        lab = env.get(pat.act.name)
        if lab is None:
            raise DeakError("unbound-metavariable", pat.act.name)
        return decls.pre(lab)
    if isinstance(pat, (AgentVar, ActVar)):
        if pat.name not in env:
            raise DeakError("unbound-metavariable", pat.name)
        val = env[pat.name]
        want = Agent if isinstance(pat, AgentVar) else ActionLabel
        if not isinstance(val, want):
            raise DeakError("sort-mismatch", pat.name)
        return val
    if isinstance(pat, Sequent):
        return Sequent(instantiate_term(pat.ante, env, decls), instantiate_term(pat.succ, env, decls))
    kids = children(pat)
    labs = {}
    for lab in ("agent", "act"):
        if hasattr(pat, lab):
            labs[lab] = instantiate_term(getattr(pat, lab), env, decls)
    if not kids:
        return type(pat)(**labs) if labs else pat
    new = {sel: instantiate_term(ch, env, decls) for sel, ch in kids}
    t = with_children(pat, new)
    if labs:
        t = type(t)(**labs, **{k: getattr(t, k) for k in t.__dataclass_fields__ if k not in labs})
    return t


@dataclass(frozen=True)
class Inference:
    premises: Tuple[Sequent, ...]
    conclusion: Sequent


@dataclass(frozen=True)
class Instance:
    """A rule application: the (possibly expanded/reversed) schema and its assignment."""
    rule: RuleSchema
    env: Tuple[tuple, ...]
    reverse: bool = False

    @property
    def assignment(self) -> dict:
        return dict(self.env)

    @property
    def premises(self) -> Tuple[Sequent, ...]:
        return (self.rule.conclusion,) if self.reverse else self.rule.premises

    @property
    def conclusion(self) -> Sequent:
        return self.rule.premises[0] if self.reverse else self.rule.conclusion


def _freeze(env: dict) -> tuple:
    return tuple(sorted(env.items(), key=lambda kv: kv[0]))


# --- the calculus -----------------------------------------------------------


class Calculus:
    def __init__(self, name: str, rules: Sequence[RuleSchema], decls: Declarations,
                 classical: bool = True):
        self.name = name
        self.decls = decls
        self.classical = classical
        self.rules: Dict[str, RuleSchema] = {}
        for r in rules:
            if r.name in self.rules:
                raise DeakError("duplicate-rule", r.name)
            self.rules[r.name] = r

    def __contains__(self, name):
        return name in self.rules

    def get(self, name: str) -> RuleSchema:
        try:
            return self.rules[name]
        except KeyError:
            raise DeakError("unknown-rule", name) from None

    @property
    def axioms(self) -> List[RuleSchema]:
        return [r for r in self.rules.values() if r.family == AXIOM]

    def display_postulates(self) -> List[RuleSchema]:
        return sorted((r for r in self.rules.values() if r.family == DISPLAY), key=lambda r: r.name)

    def with_decls(self, decls: Declarations) -> "Calculus":
        return Calculus(self.name, list(self.rules.values()), decls, self.classical)

    # matching -------------------------------------------------------------

    def instances(self, name: str, concl: Sequent,
                  prems: Optional[Sequence[Sequent]] = None) -> Iterator[Instance]:
        """Instances of rule `name` with the given conclusion (and premises, if given)."""
        rule = self.get(name)
        decls = self.decls
        if rule.custom == "atom":
            env = match_atom(concl)
            if env is not None and not prems:
                yield Instance(rule, _freeze(env))
            return
        if rule.custom == "hyp":
            if concl in decls.hyps and not prems:
                yield Instance(rule, ())
            return
        if rule.per_beta:
            ns = [len(prems)] if prems is not None else range(1, _semi_count(concl) + 2)
            variants = [rule.expand(n) for n in ns if n >= 1]
        else:
            variants = [rule]
        for var in variants:
            orients = [False, True] if var.invertible else [False]
            for rev in orients:
                pp = (var.conclusion,) if rev else var.premises
                cc = var.premises[0] if rev else var.conclusion
                if prems is not None and len(prems) != len(pp):
                    continue
                m = _Match(decls)
                if not m.sequent(cc, concl):
                    continue
                if rule.per_beta:
                    _bind_betas(var, m, decls)
                if prems is not None and not all(m.sequent(p, q) for p, q in zip(pp, prems)):
                    continue
                if not m.finish(var.side):
                    continue
                yield Instance(var, _freeze(m.env), rev)

    def match_rule(self, name: str, concl: Sequent) -> List[dict]:
        return [inst.assignment for inst in self.instances(name, concl)]

    def instantiate(self, name: str, asg: dict, reverse: bool = False, n: int = 0) -> Inference:
        rule = self.get(name)
        if rule.custom == "atom":
            return Inference((), build_atom(asg))
        if rule.custom == "hyp":
            raise DeakError("unbound-metavariable", "Hyp has no pattern")
        if rule.per_beta:
            lab, ag = asg.get("alpha"), asg.get("a")
            if lab is None or ag is None:
                raise DeakError("unbound-metavariable", "alpha/a")
            betas = self.decls.betas(lab, ag)
            rule = rule.expand(n or len(betas))
            asg = dict(asg)
            for i, b in enumerate(betas):
                asg.setdefault(f"beta{i + 1}", b)
        prems = rule.premises
        concl = rule.conclusion
        if reverse:
            prems, concl = (concl,), prems[0]
        env = dict(asg)
        for cond in rule.side:
            if not _side_ok(cond, env, self.decls):
                raise DeakError("side-condition", f"{name}: {cond}")
        return Inference(tuple(instantiate_term(p, env, self.decls) for p in prems),
                         instantiate_term(concl, env, self.decls))


def _semi_count(seq: Sequent) -> int:
    return sum(1 for _, n in iter_paths(seq) if isinstance(n, Semi))


def _bind_betas(var: RuleSchema, m: _Match, decls: Declarations):
    for cond in var.side:
        if cond[0] == "betas":
            _, al, ag, bes = cond
            if al in m.env and ag in m.env:
                found = decls.betas(m.env[al], m.env[ag])
                if len(found) == len(bes):
                    for b, lab in zip(bes, found):
                        m.bind(b, lab)


# --- atom -------------------------------------------------------------------


def _strip_dynamic(s: Structure):
    prefix = []
    while isinstance(s, (DProx, AdjDProx)):
        prefix.append(("adj" if isinstance(s, AdjDProx) else "dyn", s.act))
        s = s.body
    return tuple(prefix), s


def match_atom(seq: Sequent) -> Optional[dict]:
    g, left = _strip_dynamic(seq.ante)
    d, right = _strip_dynamic(seq.succ)
    if isinstance(left, Fm) and isinstance(left.formula, Atom) and left == right:
        return {"p": left.formula, "Gamma": g, "Delta": d}
    return None


def build_atom(asg: dict) -> Sequent:
    def wrap(prefix, s):
        for kind, lab in reversed(prefix):
            s = (AdjDProx if kind == "adj" else DProx)(lab, s)
        return s
    p = Fm(asg["p"])
    return Sequent(wrap(asg.get("Gamma", ()), p), wrap(asg.get("Delta", ()), p))


def atom_paths(seq: Sequent) -> Tuple[tuple, tuple]:
    """Paths of the two principal atom occurrences of an atom instance."""
    env = match_atom(seq)
    if env is None:
        raise DeakError("no-matching-assignment", "not an atom instance")
    return (("ante",) + ("C",) * len(env["Gamma"]), ("succ",) + ("C",) * len(env["Delta"]))


# --- rule tables ------------------------------------------------------------


def _rule(name, group, family, prems, concl, **kw) -> RuleSchema:
    return RuleSchema(name, group, family, tuple(parse_pattern(p) for p in prems),
                      parse_pattern(concl), **kw)


def _swapout(name: str, group: str, kind: str, left: bool, n: int) -> RuleSchema:
    bes = tuple(f"beta{i}" for i in range(1, n + 1))
    ys = [f"Y{i}" for i in range(1, n + 1)]
    side = (("betas", "alpha", "a", bes),)
    if kind == "legacy":
        # one Y shared by every premise, kept positional for congruence
        side += (("same", tuple(ys)),)
    fold = " ; ".join(ys) if n == 1 else "(" * (n - 1) + ys[0] + "".join(f" ; {y})" for y in ys[1:])
    pre = "'Pre(alpha)' ; " if kind == "legacy" else ""
    pre_r = "'Pre(alpha)' > " if kind == "legacy" else ""
    if left:
        prems = [f"{pre}{{a}}{{{b}}}X |- {y}" for b, y in zip(bes, ys)]
        concl = f"{pre}{{alpha}}{{a}}X |- {fold}"
    else:
        prems = [f"{y} |- {pre_r}{{a}}{{{b}}}X" for b, y in zip(bes, ys)]
        concl = f"{fold} |- {pre_r}{{alpha}}{{a}}X"
    r = _rule(name, group, STRUCTURAL, prems, concl, side=side, restricted=kind == "legacy")
    return r


def _per_beta(name: str, group: str, kind: str, left: bool) -> RuleSchema:
    base = _swapout(name, group, kind, left, 1)
    # The stored conclusion records the side via a marker used by expand().
    concl = base.conclusion if left else Sequent(base.conclusion.ante, SVar("_R"))
    return RuleSchema(name, group, STRUCTURAL, base.premises, concl,
                      side=base.side, per_beta=kind, restricted=kind == "legacy")


# (name, group, family, premises, conclusion, invertible)
_PROP_STRUCT = [
    ("I1L", "I", ["X |- Y"], "I |- Y < X", True),
    ("I1R", "I", ["X |- Y"], "X < Y |- I", True),
    ("I2L", "I", ["X |- Y"], "I |- X > Y", True),
    ("I2R", "I", ["X |- Y"], "Y > X |- I", True),
    ("IWL", "IW", ["I |- X"], "Y |- X", False),
    ("IWR", "IW", ["X |- I"], "X |- Y", False),
    ("W1L", "W", ["X |- Z"], "Y |- Z < X", False),
    ("W1R", "W", ["X |- Z"], "X < Z |- Y", False),
    ("W2L", "W", ["X |- Z"], "Y |- X > Z", False),
    ("W2R", "W", ["X |- Z"], "Z > X |- Y", False),
    ("CL", "C", ["X ; X |- Y"], "X |- Y", False),
    ("CR", "C", ["Y |- X ; X"], "Y |- X", False),
    ("EL", "E", ["X ; Y |- Z"], "Y ; X |- Z", False),
    ("ER", "E", ["Z |- X ; Y"], "Z |- Y ; X", False),
    ("AL", "A", ["X ; (Y ; Z) |- W"], "(X ; Y) ; Z |- W", False),
    ("AR", "A", ["W |- (Z ; Y) ; X"], "W |- Z ; (Y ; X)", False),
]

_PROP_DP = [
    ("dp-semi-lt", ["X ; Y |- Z"], "X |- Z < Y"),
    ("dp-lt-semi", ["Z |- X ; Y"], "Z < Y |- X"),
    ("dp-semi-gt", ["X ; Y |- Z"], "Y |- X > Z"),
    ("dp-gt-semi", ["Z |- X ; Y"], "X > Z |- Y"),
]

_GRISHIN = [
    ("GriL", ["X > (Y ; Z) |- W"], "(X > Y) ; Z |- W"),
    ("GriR", ["W |- X > (Y ; Z)"], "W |- (X > Y) ; Z"),
]

# (name, group, family, premises, conclusion)
_PROP_OP = [
    ("topL", "T", OP_LEFT, ["I |- X"], "T |- X"),
    ("botR", "F", OP_RIGHT, ["X |- I"], "X |- F"),
    ("andL", "and", OP_LEFT, ["A ; B |- Z"], "'A & B' |- Z"),
    ("andR", "and", OP_RIGHT, ["X |- A", "Y |- B"], "X ; Y |- 'A & B'"),
    ("orL", "or", OP_LEFT, ["A |- X", "B |- Y"], "'A | B' |- X ; Y"),
    ("orR", "or", OP_RIGHT, ["Z |- A ; B"], "Z |- 'A | B'"),
    ("limpL", "limp", OP_LEFT, ["B |- Y", "X |- A"], "'B <- A' |- Y < X"),
    ("limpR", "limp", OP_RIGHT, ["Z |- B < A"], "Z |- 'B <- A'"),
    ("lcoimpL", "lcoimp", OP_LEFT, ["B < A |- Z"], "'B <* A' |- Z"),
    ("lcoimpR", "lcoimp", OP_RIGHT, ["Y |- B", "A |- X"], "Y < X |- 'B <* A'"),
    ("impL", "imp", OP_LEFT, ["X |- A", "B |- Y"], "'A -> B' |- X > Y"),
    ("impR", "imp", OP_RIGHT, ["Z |- A > B"], "Z |- 'A -> B'"),
    ("coimpL", "coimp", OP_LEFT, ["A > B |- Z"], "'A *> B' |- Z"),
    ("coimpR", "coimp", OP_RIGHT, ["A |- X", "Y |- B"], "X > Y |- 'A *> B'"),
]


def _modal_struct(tag: str, p: str, lab: str) -> list:
    """Necessitation, Fischer Servi and monotonicity rules for one proxy pair.

    p is the proxy prefix (e.g. '{a}'), its adjoint is p + '^'.
    """
    q = p + "^"
    return [
        (f"nec-{tag}-L", "nec", ["I |- X"], f"{p}I |- X"),
        (f"nec-{tag}-R", "nec", ["X |- I"], f"X |- {p}I"),
        (f"{tag}-nec-L", "nec", ["I |- X"], f"{q}I |- X"),
        (f"{tag}-nec-R", "nec", ["X |- I"], f"X |- {q}I"),
        (f"FS-{tag}-L", "FS", [f"{p}Y > {p}Z |- X"], f"{p}(Y > Z) |- X"),
        (f"FS-{tag}-R", "FS", [f"Y |- {p}X > {p}Z"], f"Y |- {p}(X > Z)"),
        (f"{tag}-FS-L", "FS", [f"{q}Y > {q}X |- Z"], f"{q}(Y > X) |- Z"),
        (f"{tag}-FS-R", "FS", [f"Y |- {q}X > {q}Z"], f"Y |- {q}(X > Z)"),
        (f"mon-{tag}-L", "mon", [f"{p}X ; {p}Y |- Z"], f"{p}(X ; Y) |- Z"),
        (f"mon-{tag}-R", "mon", [f"Z |- {p}Y ; {p}X"], f"Z |- {p}(Y ; X)"),
        (f"{tag}-mon-L", "mon", [f"{q}X ; {q}Y |- Z"], f"{q}(X ; Y) |- Z"),
        (f"{tag}-mon-R", "mon", [f"Z |- {q}Y ; {q}X"], f"Z |- {q}(Y ; X)"),
    ]


def _modal_op(d: str, b: str, p: str, tag: str) -> list:
    """Operational rules for <l>, [l], <l>^ and [l]^ where l is the label text."""
    q = p + "^"
    return [
        (f"{tag}diaL", f"{tag}dia", OP_LEFT, [f"{p}A |- X"], f"'{d}A' |- X"),
        (f"{tag}diaR", f"{tag}dia", OP_RIGHT, ["X |- A"], f"{p}X |- '{d}A'"),
        (f"{tag}boxL", f"{tag}box", OP_LEFT, ["A |- X"], f"'{b}A' |- {p}X"),
        (f"{tag}boxR", f"{tag}box", OP_RIGHT, [f"X |- {p}A"], f"X |- '{b}A'"),
        (f"adj{tag}diaL", f"adj{tag}dia", OP_LEFT, [f"{q}A |- X"], f"'{d}^A' |- X"),
        (f"adj{tag}diaR", f"adj{tag}dia", OP_RIGHT, ["X |- A"], f"{q}X |- '{d}^A'"),
        (f"adj{tag}boxL", f"adj{tag}box", OP_LEFT, ["A |- X"], f"'{b}^A' |- {q}X"),
        (f"adj{tag}boxR", f"adj{tag}box", OP_RIGHT, [f"X |- {q}A"], f"X |- '{b}^A'"),
    ]


_EPI_CONJ = [
    ("conj-ep-L", ["{a}(X ; {a}^Y) |- Z"], "{a}X ; Y |- Z"),
    ("conj-ep-R", ["X |- {a}(Y ; {a}^Z)"], "X |- {a}Y ; Z"),
    ("ep-conj-L", ["{a}^(X ; {a}Y) |- Z"], "{a}^X ; Y |- Z"),
    ("ep-conj-R", ["X |- {a}^(Y ; {a}Z)"], "X |- {a}^Y ; Z"),
]

_DYN_STRUCT = [
    ("balance", "balance", ["X |- Y"], "{alpha}X |- {alpha}Y", ()),
    ("compL", "comp", ["{alpha}{alpha}^X |- Y"], "Phi[alpha] ; X |- Y", ()),
    ("compR", "comp", ["X |- {alpha}{alpha}^Y"], "X |- Phi[alpha] > Y", ()),
    ("reduceL", "reduce", ["Phi[alpha] ; {alpha}X |- Y"], "{alpha}X |- Y", ()),
    ("reduceR", "reduce", ["Y |- Phi[alpha] > {alpha}X"], "Y |- {alpha}X", ()),
    ("swapinL", "swap-in", ["{alpha}{a}X |- Y"], "Phi[alpha] ; {a}{beta}X |- Y",
     (("rel", "alpha", "a", "beta"),)),
    ("swapinR", "swap-in", ["Y |- {alpha}{a}X"], "Y |- Phi[alpha] > {a}{beta}X",
     (("rel", "alpha", "a", "beta"),)),
]

_LEGACY = [
    ("reduce-L", "reduce", ["'Pre(alpha)' ; {alpha}A |- X"], "{alpha}A |- X", ()),
    ("reduce-R", "reduce", ["X |- 'Pre(alpha)' > {alpha}A"], "X |- {alpha}A", ()),
    ("swap-in-L", "swap-in", ["'Pre(alpha)' ; {alpha}{a}X |- Y"],
     "'Pre(alpha)' ; {a}{beta}X |- Y", (("rel", "alpha", "a", "beta"),)),
    ("swap-in-R", "swap-in", ["Y |- 'Pre(alpha)' > {alpha}{a}X"],
     "Y |- 'Pre(alpha)' > {a}{beta}X", (("rel", "alpha", "a", "beta"),)),
]

_LEGACY_REVERSE = [
    ("reverse-L", "reverse", ["'Pre(alpha)' ; {alpha}A |- X"], "'Pre(alpha)' ; '[alpha]A' |- X", ()),
    ("reverse-R", "reverse", ["X |- 'Pre(alpha)' > {alpha}A"], "X |- 'Pre(alpha)' > '<alpha>A'", ()),
]


def _base_rules(classical: bool) -> List[RuleSchema]:
    rules = [
        _rule("Id", "Id", AXIOM, [], "p |- p"),
        RuleSchema("atom", "atom", AXIOM, (), Sequent(SVar("_G"), SVar("_D")), custom="atom"),
        _rule("Cut", "Cut", CUT, ["X |- A", "A |- Y"], "X |- Y"),
        _rule("topR", "T", AXIOM, [], "I |- T"),
        _rule("botL", "F", AXIOM, [], "F |- I"),
    ]
    for name, group, prems, concl, inv in _PROP_STRUCT:
        rules.append(_rule(name, group, STRUCTURAL, prems, concl, invertible=inv))
    for name, prems, concl in _PROP_DP:
        rules.append(_rule(name, "dp", DISPLAY, prems, concl, invertible=True))
    if classical:
        for name, prems, concl in _GRISHIN:
            rules.append(_rule(name, "Gri", STRUCTURAL, prems, concl, invertible=True))
    for name, group, fam, prems, concl in _PROP_OP:
        rules.append(_rule(name, group, fam, prems, concl))
    # epistemic
    for name, group, prems, concl in _modal_struct("ep", "{a}", "a"):
        rules.append(_rule(name, group, STRUCTURAL, prems, concl))
    for name, prems, concl in _EPI_CONJ:
        rules.append(_rule(name, "conj", STRUCTURAL, prems, concl))
    rules.append(_rule("dp-ag", "dp", DISPLAY, ["{a}X |- Y"], "X |- {a}^Y", invertible=True))
    rules.append(_rule("dp-ag-adj", "dp", DISPLAY, ["X |- {a}Y"], "{a}^X |- Y", invertible=True))
    for name, group, fam, prems, concl in _modal_op("<a>", "[a]", "{a}", ""):
        rules.append(_rule(name, group, fam, prems, concl))
    # dynamic
    for name, group, prems, concl in _modal_struct("dyn", "{alpha}", "alpha"):
        rules.append(_rule(name, group, STRUCTURAL, prems, concl))
    rules.append(_rule("dp-act", "dp", DISPLAY, ["{alpha}X |- Y"], "X |- {alpha}^Y", invertible=True))
    rules.append(_rule("dp-act-adj", "dp", DISPLAY, ["X |- {alpha}Y"], "{alpha}^X |- Y", invertible=True))
    return rules


def _dyn_ops() -> List[RuleSchema]:
    rules = []
    for name, group, fam, prems, concl in _modal_op("<alpha>", "[alpha]", "{alpha}", "d"):
        rules.append(_rule(name, group, fam, prems, concl))
    return rules


_WEAKENING_MACROS = [
    ("WL", ["X |- Z"], "X ; Y |- Z", [("W2L", "Y |- X > Z"), ("dp-semi-gt", "X ; Y |- Z")]),
    ("WR", ["X |- Z"], "X |- Z ; Y", [("W2R", "Z > X |- Y"), ("dp-gt-semi", "X |- Z ; Y")]),
]


def _macros() -> List[RuleSchema]:
    out = []
    for name, prems, concl, steps in _WEAKENING_MACROS:
        out.append(_rule(name, "W", STRUCTURAL, prems, concl,
                         macro=tuple((r, parse_pattern(s)) for r, s in steps)))
    return out


HYP = RuleSchema("Hyp", "Hyp", AXIOM, (), Sequent(SVar("_H"), SVar("_H")), custom="hyp")


def builtin_deak_prime(decls: Declarations, classical: bool = True) -> Calculus:
    if not decls.agents and not decls.actions:
        raise DeakError("empty-declarations", "declare at least one agent or action")
    rules = _base_rules(classical)
    for name, group, prems, concl, side in _DYN_STRUCT:
        rules.append(_rule(name, group, STRUCTURAL, prems, concl, side=side))
    rules.append(_per_beta("swapoutL", "swap-out", "prime", True))
    rules.append(_per_beta("swapoutR", "swap-out", "prime", False))
    rules += _dyn_ops()
    rules.append(_rule("oneL", "one", OP_LEFT, ["Phi[alpha] |- X"], "'1[alpha]' |- X"))
    rules.append(_rule("oneR", "one", AXIOM, [], "Phi[alpha] |- '1[alpha]'"))
    rules += _macros()
    rules.append(HYP)
    return Calculus("deak-prime", rules, decls, classical)


def builtin_deak_legacy(decls: Declarations, classical: bool = True) -> Calculus:
    if not decls.agents and not decls.actions:
        raise DeakError("empty-declarations", "declare at least one agent or action")
    rules = _base_rules(classical)
    rules.append(_rule("balance", "balance", STRUCTURAL, ["X |- Y"], "{alpha}X |- {alpha}Y"))
    for name, group, prems, concl, side in _LEGACY:
        rules.append(_rule(name, group, STRUCTURAL, prems, concl, side=side,
                           restricted="swap" in group))
    rules.append(_per_beta("swap-out-L", "swap-out", "legacy", True))
    rules.append(_per_beta("swap-out-R", "swap-out", "legacy", False))
    for name, group, prems, concl, side in _LEGACY_REVERSE:
        rules.append(_rule(name, group, STRUCTURAL, prems, concl, side=side, restricted=True))
    rules += _dyn_ops()
    rules += _macros()
    rules.append(HYP)
    return Calculus("deak-legacy", rules, decls, classical)


def builtin(name: str, decls: Declarations, classical: bool = True) -> Calculus:
    if name == "deak-prime":
        return builtin_deak_prime(decls, classical)
    if name == "deak-legacy":
        return builtin_deak_legacy(decls, classical)
    raise DeakError("unknown-calculus", name)
