"""The bundled derivation corpus: text proof files shipped as package data."""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .calculus import Calculus
from .parser import parse_declarations, parse_document
from .proofs import CheckReport, ProofTree, check, is_cut_free, subformula_property
from .syntax import Declarations, DeakError, Sequent

DATA_DIR = Path(str(resources.files("deak") / "data" / "corpus"))
DECLS_FILE = "_decls.deak"

# schematic letters and the fresh atoms they become when an entry is loaded
SCHEMATIC = {"$A": "p", "$B": "q"}


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    source: str
    tags: Tuple[str, ...]
    text: str
    decls: Declarations
    proofs: Tuple[ProofTree, ...]

    @property
    def ends(self) -> Tuple[Sequent, ...]:
        return tuple(p.conclusion for p in self.proofs)

    @property
    def closed(self) -> bool:
        """True when the entry proves theorems rather than a derived rule."""
        return not self.decls.hyps


def load_decls() -> Declarations:
    return parse_declarations((DATA_DIR / DECLS_FILE).read_text())


def instantiate_schematic(text: str) -> str:
    for k, v in SCHEMATIC.items():
        text = text.replace(k, v)
    return text


def _header(text: str, key: str) -> str:
    m = re.search(rf"^# {key}:\s*(.*)$", text, re.M)
    return m.group(1).strip() if m else ""


def load_entry(path: Path, base: Optional[Declarations] = None) -> CorpusEntry:
    text = path.read_text()
    doc = parse_document(instantiate_schematic(text), base or load_decls())
    if not doc.proofs:
        raise DeakError("syntax-error", f"{path.name}: no proof")
    return CorpusEntry(path.stem, _header(text, "source"),
                       tuple(_header(text, "tags").split()), text, doc.decls, tuple(doc.proofs))


_cache: Dict[str, CorpusEntry] = {}


def _load_all() -> Dict[str, CorpusEntry]:
    if not _cache:
        base = load_decls()
        for path in sorted(DATA_DIR.glob("*.proof")):
            entry = load_entry(path, base)
            _cache[entry.id] = entry
    return _cache


def list_entries() -> List[CorpusEntry]:
    return list(_load_all().values())


def ids() -> List[str]:
    return list(_load_all())


def get(entry_id: str) -> CorpusEntry:
    try:
        return _load_all()[entry_id]
    except KeyError:
        raise DeakError("unknown-id", entry_id) from None


@dataclass
class EntryResult:
    id: str
    reports: Tuple[CheckReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def line(self) -> str:
        return f"{self.id} " + " ".join(r.text() for r in self.reports)


@dataclass
class VerifyReport:
    results: List[EntryResult]

    @property
    def failures(self) -> List[EntryResult]:
        return [r for r in self.results if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        lines.append(f"{len(self.results)} entries, {len(self.failures)} failures")
        return "\n".join(lines)


def verify_all(calc_factory) -> VerifyReport:
    """Check every entry.  `calc_factory(decls)` builds the calculus for an entry."""
    results = []
    for entry in list_entries():
        calc: Calculus = calc_factory(entry.decls)
        results.append(EntryResult(entry.id, tuple(check(p, calc) for p in entry.proofs)))
    return VerifyReport(results)


def invariants_hold(entry: CorpusEntry, calc: Calculus) -> bool:
    """Closed entries are cut-free and enjoy the subformula property."""
    for p in entry.proofs:
        rep = check(p, calc)
        if not rep.ok:
            return False
        if entry.closed and not (is_cut_free(p) and subformula_property(p)):
            return False
    return True
