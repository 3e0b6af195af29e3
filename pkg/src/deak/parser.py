"""Concrete ASCII syntax: parsing and rendering of terms, declarations and proofs."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Tuple

from .syntax import (
    ActionLabel, ActionStructure, ActVar, AdjBox, AdjDBox, AdjDDia, AdjDia, AdjDProx,
    AdjProx, Agent, AgentVar, And, Atom, Bot, Box, CoImp, DBox, DDia, DeakError,
    Declarations, Dia, DProx, Fm, FVar, Gt, I, Imp, LCoImp, LImp, Lt, One, Or, Phi,
    PreOf, Prox, Semi, Sequent, SVar, Top,
)

if TYPE_CHECKING:
    from .proofs import ProofTree


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class ParseError(DeakError):
    def __init__(self, msg: str, span: Optional[SourceSpan] = None):
        where = f" at line {span.line} col {span.column}" if span else ""
        super().__init__("syntax-error", msg + where)
        self.span = span


@dataclass
class Token:
    kind: str  # ident, num, string, sym, eof
    text: str
    start: int
    end: int


_SYMS = ["|-", "->", "<-", "*>", "<*", "<", ">", "[", "]", "{", "}", "(", ")",
         "^", ";", "&", "|", "@", "'", ",", ":", "="]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM = re.compile(r"[0-9]+")
_WS = re.compile(r"(\s+|#[^\n]*)+")


def _span(text: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, col)


class Lexer:
    """On-demand tokenizer; position can be advanced by raw scanners too."""

    def __init__(self, text: str, pos: int = 0, end: Optional[int] = None):
        self.text = text
        self.pos = pos
        self.end = len(text) if end is None else end
        self._peeked: Optional[Token] = None

    def skip_ws(self):
        m = _WS.match(self.text, self.pos, self.end)
        if m:
            self.pos = m.end()

    def _scan(self) -> Token:
        self.skip_ws()
        p = self.pos
        if p >= self.end:
            return Token("eof", "", p, p)
        c = self.text[p]
        if c == '"':
            q = p + 1
            while q < self.end and self.text[q] != '"':
                q += 1
            if q >= self.end:
                raise ParseError("unterminated string", _span(self.text, p, p + 1))
            return Token("string", self.text[p + 1:q], p, q + 1)
        m = _IDENT.match(self.text, p, self.end)
        if m:
            return Token("ident", m.group(), p, m.end())
        m = _NUM.match(self.text, p, self.end)
        if m:
            return Token("num", m.group(), p, m.end())
        for s in _SYMS:
            if self.text.startswith(s, p) and p + len(s) <= self.end:
                return Token("sym", s, p, p + len(s))
        raise ParseError(f"unexpected character {c!r}", _span(self.text, p, p + 1))

    def peek(self) -> Token:
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def next(self) -> Token:
        t = self.peek()
        self._peeked = None
        self.pos = t.end
        return t

    def reset_peek(self):
        if self._peeked is not None:
            self.pos = self._peeked.start
            self._peeked = None

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, _span(self.text, tok.start, tok.end))

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, text: str) -> bool:
        t = self.peek()
        if t.kind in ("sym", "ident") and t.text == text:
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.kind in ("sym", "ident") and t.text == text:
            return self.next()
        raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")

    def ident(self) -> Token:
        t = self.peek()
        if t.kind != "ident":
            raise self.error(f"expected identifier, found {t.text or 'end of input'!r}")
        return self.next()


_ATOM = re.compile(r"[a-z][a-z0-9_]*\Z")
_RESERVED = {"I", "T", "F", "Phi", "Pre"}

# Names given special meaning when parsing rule patterns.
PATTERN_SVARS = re.compile(r"[WXYZ][0-9]*\Z")
PATTERN_FVARS = re.compile(r"[AB][0-9]*\Z")
PATTERN_ATOMS = {"p", "q"}
PATTERN_AGENTS = {"a", "b"}
PATTERN_ACTS = re.compile(r"(alpha|beta|gamma)[0-9]*\Z")


class TermParser:
    def __init__(self, lex: Lexer, decls: Optional[Declarations], pattern: bool = False):
        self.lex = lex
        self.decls = decls or Declarations()
        self.pattern = pattern

    # labels
    def label(self, want: Optional[str] = None):
        """Parse an agent or action label; want in {None, 'agent', 'action'}."""
        tok = self.lex.ident()
        name = tok.text
        if self.pattern:
            if name in PATTERN_AGENTS and want != "action":
                return AgentVar(name)
            if PATTERN_ACTS.match(name) and want != "agent":
                return ActVar(name)
            raise self.lex.error(f"unknown label variable {name!r}", tok)
        if name in self.decls.agents and want != "action":
            if self.lex.at("sym", "@"):
                raise self.lex.error("agents take no state")
            return Agent(name)
        acts = self.decls.action_map
        if name in acts and want != "agent":
            act = acts[name]
            state = act.designated
            if self.lex.accept("@"):
                st = self.lex.ident()
                if st.text not in act.states:
                    raise DeakError("unknown-action", f"{name}@{st.text}")
                state = st.text
            return ActionLabel(name, state)
        if want == "action" or (want is None and name not in self.decls.agents):
            code = "unknown-action" if want == "action" else "unknown-agent"
            raise DeakError(code, name)
        raise DeakError("unknown-agent", name)

    # formulas
    def formula(self):
        left = self.disj()
        t = self.lex.peek()
        if t.kind == "sym" and t.text in ("->", "<-", "*>", "<*"):
            self.lex.next()
            right = self.formula()
            return {"->": Imp, "<-": LImp, "*>": CoImp, "<*": LCoImp}[t.text](left, right)
        return left

    def disj(self):
        f = self.conj()
        while self.lex.at("sym", "|"):
            self.lex.next()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.lex.at("sym", "&"):
            self.lex.next()
            f = And(f, self.unary())
        return f

    def unary(self):
        lex = self.lex
        t = lex.peek()
        if t.kind == "sym" and t.text in ("<", "["):
            lex.next()
            lab = self.label()
            lex.expect(">" if t.text == "<" else "]")
            adj = lex.accept("^")
            body = self.unary()
            dia = t.text == "<"
            if isinstance(lab, (Agent, AgentVar)):
                ctor = (AdjDia if adj else Dia) if dia else (AdjBox if adj else Box)
                return ctor(lab, body)
            ctor = (AdjDDia if adj else DDia) if dia else (AdjDBox if adj else DBox)
            return ctor(lab, body)
        if t.kind == "sym" and t.text == "(":
            lex.next()
            f = self.formula()
            lex.expect(")")
            return f
        if t.kind == "num" and t.text == "1":
            lex.next()
            lex.expect("[")
            lab = self.label("action")
            lex.expect("]")
            return One(lab)
        if t.kind == "ident":
            return self.formula_leaf()
        raise lex.error(f"expected formula, found {t.text or 'end of input'!r}")

    def formula_leaf(self):
        lex = self.lex
        t = lex.peek()
        name = t.text
        if name == "T":
            lex.next()
            return Top()
        if name == "F":
            lex.next()
            return Bot()
        if self.pattern:
            if name == "Pre":
                lex.next()
                lex.expect("(")
                lab = self.label("action")
                lex.expect(")")
                return PreOf(lab)
            if PATTERN_FVARS.match(name):
                lex.next()
                return FVar(name)
            if name in PATTERN_ATOMS:
                lex.next()
                return FVar(name, atomic=True)
        if _ATOM.match(name):
            lex.next()
            return Atom(name)
        raise lex.error(f"expected formula, found {name!r}")

    # structures
    def structure(self):
        left = self.semis()
        t = self.lex.peek()
        if t.kind == "sym" and t.text in (">", "<"):
            self.lex.next()
            right = self.semis()
            nt = self.lex.peek()
            if nt.kind == "sym" and nt.text in (">", "<"):
                raise self.lex.error("'>' and '<' are non-associative; add parentheses")
            return (Gt if t.text == ">" else Lt)(left, right)
        return left

    def semis(self):
        s = self.sunary()
        while self.lex.at("sym", ";"):
            self.lex.next()
            s = Semi(s, self.sunary())
        return s

    def sunary(self):
        lex = self.lex
        t = lex.peek()
        if t.kind == "sym" and t.text == "{":
            lex.next()
            lab = self.label()
            lex.expect("}")
            adj = lex.accept("^")
            body = self.sunary()
            if isinstance(lab, (Agent, AgentVar)):
                return (AdjProx if adj else Prox)(lab, body)
            return (AdjDProx if adj else DProx)(lab, body)
        if t.kind == "sym" and t.text == "(":
            lex.next()
            s = self.structure()
            lex.expect(")")
            return s
        if t.kind == "sym" and t.text == "'":
            lex.next()
            f = self.formula()
            lex.expect("'")
            return Fm(f)
        if t.kind == "num" and t.text == "1":
            return Fm(self.unary())
        if t.kind == "ident":
            name = t.text
            if name == "I":
                lex.next()
                return I()
            if name == "Phi":
                lex.next()
                lex.expect("[")
                lab = self.label("action")
                lex.expect("]")
                return Phi(lab)
            if self.pattern and PATTERN_SVARS.match(name):
                lex.next()
                return SVar(name)
            if not self.pattern and name[0].isupper() and name not in _RESERVED:
                lex.next()
                return SVar(name)
            return Fm(self.formula_leaf())
        raise lex.error(f"expected structure, found {t.text or 'end of input'!r}")

    def sequent(self):
        a = self.structure()
        self.lex.expect("|-")
        s = self.structure()
        return Sequent(a, s)


def _parse_whole(text: str, decls, what: str, pattern: bool = False,
                 base: int = 0, full: Optional[str] = None):
    if full is None:
        lex = Lexer(text)
    else:
        lex = Lexer(full, base, base + len(text))
    p = TermParser(lex, decls, pattern)
    out = getattr(p, what)()
    if not lex.at("eof"):
        raise lex.error(f"unexpected trailing input {lex.peek().text!r}")
    return out


def parse_formula(text: str, decls: Optional[Declarations] = None):
    return _parse_whole(text, decls, "formula")


def parse_structure(text: str, decls: Optional[Declarations] = None):
    return _parse_whole(text, decls, "structure")


def parse_sequent(text: str, decls: Optional[Declarations] = None):
    return _parse_whole(text, decls, "sequent")


def parse_pattern(text: str):
    """Parse a rule-pattern sequent (metavariables instead of declarations)."""
    return _parse_whole(text, None, "sequent", pattern=True)


# --- declarations and documents --------------------------------------------


@dataclass(frozen=True)
class ModelSpec:
    worlds: Tuple[str, ...]
    val: Tuple[Tuple[str, Tuple[str, ...]], ...]
    rels: Tuple[Tuple[str, Tuple[Tuple[str, str], ...]], ...]


@dataclass
class Document:
    decls: Declarations
    proofs: List["ProofTree"]
    models: List[ModelSpec]


def _parse_action(lex: Lexer, decls: Declarations) -> ActionStructure:
    name = lex.ident().text
    lex.expect("{")
    states: List[str] = []
    designated = None
    pre_src = []
    rels = {}
    while not lex.accept("}"):
        key = lex.ident()
        if key.text == "states":
            lex.expect(":")
            while lex.at("ident"):
                states.append(lex.next().text)
                lex.accept(",")
        elif key.text == "designated":
            lex.expect(":")
            designated = lex.ident().text
        elif key.text == "pre":
            lex.expect(":")
            while lex.at("ident"):
                st = lex.next().text
                lex.expect("=")
                s = lex.peek()
                if s.kind != "string":
                    raise lex.error("expected quoted formula")
                lex.next()
                pre_src.append((st, s))
                lex.accept(",")
        elif key.text == "rel":
            ag = lex.ident().text
            if ag not in decls.agents:
                raise DeakError("unknown-agent", ag)
            lex.expect(":")
            pairs = set()
            while lex.at("ident"):
                i = lex.next().text
                lex.expect("->")
                j = lex.ident().text
                pairs.add((i, j))
                lex.accept(",")
            rels[ag] = frozenset(pairs)
        else:
            raise lex.error(f"unknown action field {key.text!r}", key)
        lex.expect(";")
    if designated is None:
        raise lex.error("action needs a designated state")
    # Preconditions may mention the action itself, so parse them once the
    # states are known.
    stub = ActionStructure(name, tuple(states), designated, (),
                           tuple((s, Top()) for s in states))
    d2 = Declarations(decls.agents, tuple(sorted({**decls.action_map, name: stub}.items())))
    pre = []
    for st, tok in pre_src:
        if st not in states:
            raise DeakError("invalid-action", f"{name}: pre for unknown state {st}")
        pre.append((st, _parse_whole(tok.text, d2, "formula", base=tok.start + 1, full=lex.text)))
    return ActionStructure(name, tuple(states), designated,
                           tuple(sorted(rels.items())), tuple(pre))


def _parse_model(lex: Lexer) -> ModelSpec:
    lex.expect("{")
    worlds: List[str] = []
    val = {}
    rels = {}
    while not lex.accept("}"):
        key = lex.ident()
        if key.text == "worlds":
            lex.expect(":")
            while lex.at("ident"):
                worlds.append(lex.next().text)
                lex.accept(",")
        elif key.text == "val":
            atom = lex.ident().text
            lex.expect(":")
            ws = []
            while lex.at("ident"):
                ws.append(lex.next().text)
                lex.accept(",")
            val[atom] = tuple(ws)
        elif key.text == "rel":
            ag = lex.ident().text
            lex.expect(":")
            pairs = []
            while lex.at("ident"):
                i = lex.next().text
                lex.expect("->")
                pairs.append((i, lex.ident().text))
                lex.accept(",")
            rels[ag] = tuple(pairs)
        else:
            raise lex.error(f"unknown model field {key.text!r}", key)
        lex.expect(";")
    return ModelSpec(tuple(worlds), tuple(sorted(val.items())), tuple(sorted(rels.items())))


_RULE_NAME = re.compile(r"[^\s()\"]+")


def _parse_sexpr(lex: Lexer, decls: Declarations):
    from .proofs import ProofTree

    lex.expect("(")
    lex.skip_ws()
    m = _RULE_NAME.match(lex.text, lex.pos, lex.end)
    if not m:
        raise lex.error("expected rule name")
    rule = m.group()
    lex.pos = m.end()
    s = lex.peek()
    if s.kind != "string":
        raise lex.error("expected quoted sequent")
    lex.next()
    seq = _parse_whole(s.text, decls, "sequent", base=s.start + 1, full=lex.text)
    kids = []
    while not lex.accept(")"):
        if lex.at("eof"):
            raise lex.error("unterminated proof node")
        kids.append(_parse_sexpr(lex, decls))
    return ProofTree(rule, seq, tuple(kids))


def parse_document(text: str, decls: Optional[Declarations] = None) -> Document:
    """Parse declarations, hypotheses, models and proofs from one file."""
    decls = decls or Declarations()
    lex = Lexer(text)
    proofs = []
    models = []
    while not lex.at("eof"):
        t = lex.peek()
        if t.kind == "sym" and t.text == "(":
            proofs.append(_parse_sexpr(lex, decls))
            continue
        if t.kind != "ident":
            raise lex.error(f"unexpected {t.text!r}")
        lex.next()
        if t.text == "agent":
            names = []
            while lex.at("ident"):
                names.append(lex.next().text)
                lex.accept(",")
            lex.expect(";")
            clash = [n for n in names if n in decls.action_map]
            if clash:
                raise DeakError("name-clash", clash[0])
            decls = Declarations(decls.agents | frozenset(names), decls.actions, decls.hyps)
        elif t.text == "action":
            act = _parse_action(lex, decls)
            if act.base in decls.agents:
                raise DeakError("name-clash", act.base)
            acts = decls.action_map
            acts[act.base] = act
            decls = Declarations(decls.agents, tuple(sorted(acts.items())), decls.hyps)
        elif t.text == "hyp":
            s = lex.peek()
            if s.kind != "string":
                raise lex.error("expected quoted sequent")
            lex.next()
            seq = _parse_whole(s.text, decls, "sequent", base=s.start + 1, full=text)
            lex.expect(";")
            decls = decls.with_hyps([seq])
        elif t.text == "model":
            models.append(_parse_model(lex))
        else:
            raise lex.error(f"unknown declaration {t.text!r}", t)
    return Document(decls, proofs, models)


def parse_declarations(text: str) -> Declarations:
    return parse_document(text).decls


def parse_proof_file(text: str, decls: Optional[Declarations] = None):
    doc = parse_document(text, decls)
    if len(doc.proofs) != 1:
        raise DeakError("syntax-error", f"expected exactly one proof, found {len(doc.proofs)}")
    return doc.proofs[0]


# --- rendering --------------------------------------------------------------


def _label(lab, decls: Optional[Declarations]) -> str:
    if isinstance(lab, (Agent, AgentVar, ActVar)):
        return lab.name
    if decls is not None:
        act = decls.action_map.get(lab.base)
        if act is not None and act.designated == lab.state:
            return lab.base
    return f"{lab.base}@{lab.state}"


_FPREC = {Imp: 1, LImp: 1, CoImp: 1, LCoImp: 1, Or: 2, And: 3}
_FSYM = {Imp: "->", LImp: "<-", CoImp: "*>", LCoImp: "<*", Or: "|", And: "&"}
_MODAL = {Dia: ("<", ">", ""), Box: ("[", "]", ""), AdjDia: ("<", ">", "^"),
          AdjBox: ("[", "]", "^"), DDia: ("<", ">", ""), DBox: ("[", "]", ""),
          AdjDDia: ("<", ">", "^"), AdjDBox: ("[", "]", "^")}


def render_formula(f, decls=None, level: int = 0) -> str:
    t = type(f)
    if t in _FPREC:
        p = _FPREC[t]
        if p == 1:  # right associative
            s = f"{render_formula(f.left, decls, 2)} {_FSYM[t]} {render_formula(f.right, decls, 1)}"
        else:  # left associative
            s = f"{render_formula(f.left, decls, p)} {_FSYM[t]} {render_formula(f.right, decls, p + 1)}"
        return f"({s})" if level > p else s
    if t in _MODAL:
        o, c, hat = _MODAL[t]
        lab = f.agent if hasattr(f, "agent") else f.act
        return f"{o}{_label(lab, decls)}{c}{hat}{render_formula(f.body, decls, 4)}"
    if t is Atom:
        return f.name
    if t is Top:
        return "T"
    if t is Bot:
        return "F"
    if t is One:
        return f"1[{_label(f.act, decls)}]"
    if t is FVar:
        return f.name
    if t is PreOf:
        return f"Pre({f.act.name})"
    raise TypeError(f"not a formula: {f!r}")


def render_structure(s, decls=None, level: int = 0) -> str:
    t = type(s)
    if t in (Gt, Lt):
        op = ">" if t is Gt else "<"
        out = f"{render_structure(s.left, decls, 2)} {op} {render_structure(s.right, decls, 2)}"
        return f"({out})" if level > 1 else out
    if t is Semi:
        out = f"{render_structure(s.left, decls, 2)} ; {render_structure(s.right, decls, 3)}"
        return f"({out})" if level > 2 else out
    if t in (Prox, AdjProx, DProx, AdjDProx):
        lab = s.agent if t in (Prox, AdjProx) else s.act
        hat = "^" if t in (AdjProx, AdjDProx) else ""
        return "{" + _label(lab, decls) + "}" + hat + render_structure(s.body, decls, 3)
    if t is Fm:
        return "'" + render_formula(s.formula, decls) + "'"
    if t is I:
        return "I"
    if t is Phi:
        return f"Phi[{_label(s.act, decls)}]"
    if t is SVar:
        return s.name
    raise TypeError(f"not a structure: {s!r}")


def render_sequent(q: Sequent, decls=None) -> str:
    return f"{render_structure(q.ante, decls)} |- {render_structure(q.succ, decls)}"


def render_proof(pt, decls=None, indent: int = 0) -> str:
    pad = "  " * indent
    head = f'{pad}({pt.rule} "{render_sequent(pt.conclusion, decls)}"'
    if not pt.children:
        return head + ")"
    kids = "\n".join(render_proof(c, decls, indent + 1) for c in pt.children)
    return head + "\n" + kids + ")"


def render_decls(decls: Declarations, with_hyps: bool = True) -> str:
    lines = []
    if decls.agents:
        lines.append("agent " + " ".join(sorted(decls.agents)) + ";")
    for name, act in decls.actions:
        parts = [f"states: {' '.join(act.states)};", f"designated: {act.designated};"]
        pre = " ".join(f'{k} = "{render_formula(f, decls)}"' for k, f in act.pre)
        parts.append(f"pre: {pre};")
        for ag, rel in act.rels:
            pairs = ", ".join(f"{i} -> {j}" for i, j in sorted(rel))
            parts.append(f"rel {ag}: {pairs};")
        lines.append(f"action {name} {{ " + " ".join(parts) + " }")
    if with_hyps:
        for h in decls.hyps:
            lines.append(f'hyp "{render_sequent(h, decls)}";')
    return "\n".join(lines)


def render(x, decls=None) -> str:
    from .proofs import ProofTree

    if isinstance(x, ProofTree):
        return render_proof(x, decls)
    if isinstance(x, Sequent):
        return render_sequent(x, decls)
    if isinstance(x, (Fm, I, Semi, Gt, Lt, Prox, AdjProx, DProx, AdjDProx, Phi, SVar)):
        return render_structure(x, decls)
    return render_formula(x, decls)
