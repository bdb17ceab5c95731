"""Conjecturing triples, minting conjectural predicates, and conjectural-graph checks."""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (Dataset, GraphKind, IRI, ModelError, NamedGraph, Term, Triple,
                    conjectural_predicates, is_link)
from .report import ValidationReport, Violation
from .vocab import IS_CONJECTURAL_FORM_OF, MINTED_NS


class AlreadyConjectural(ModelError):
    pass


class AmbiguousForm(ModelError):
    pass


@dataclass(frozen=True)
class ConjectureRecord:
    original_predicate: IRI
    conjectural_predicate: IRI
    subject: Term
    object: Term
    graph: Optional[IRI] = None


_LOCAL = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*$")


def local_name(iri: str) -> str:
    tail = re.split(r"[#/:]", iri.rstrip("/#"))[-1]
    tail = re.sub(r"[^A-Za-z0-9_-]", "_", tail)
    if not tail or not _LOCAL.match(tail):
        tail = "p" + tail
    return tail


class PredicateMinter:
    """Source of fresh conjectural predicate IRIs.

    Minted IRIs look like ``<base>conj0042/creator`` and are abbreviated
    as ``conj0042:creator`` through the prefix recorded in ``prefixes``.
    The minter is stateful and not thread-safe.
    """

    def __init__(self, base: str = MINTED_NS, used_iris: Iterable[str] = (),
                 used_prefixes: Iterable[str] = (), conjectural: Iterable[IRI] = ()):
        self.base = base
        self.used_iris = set(used_iris)
        self.used_prefixes = set(used_prefixes)
        self.conjectural = set(conjectural)
        self.taken = {iri[len(base):].split("/", 1)[0]
                      for iri in self.used_iris if iri.startswith(base)}
        self.prefixes: dict[str, str] = {}
        self.records: list[ConjectureRecord] = []
        self._counter = 0

    @classmethod
    def for_dataset(cls, d: Dataset, base: str = MINTED_NS) -> "PredicateMinter":
        iris = {t.value for t in d.terms() if isinstance(t, IRI)}
        iris.update(d.prefixes.values())
        return cls(base, iris, d.prefixes.keys(), conjectural_predicates(d))

    def new_namespace(self) -> str:
        while True:
            self._counter += 1
            label = f"conj{self._counter:04d}"
            if label not in self.used_prefixes and label not in self.taken:
                break
        ns = f"{self.base}{label}/"
        self.used_prefixes.add(label)
        self.prefixes[label] = ns
        return ns

    def mint(self, predicate: IRI, namespace: Optional[str] = None) -> IRI:
        ns = namespace or self.new_namespace()
        stem = local_name(predicate.value)
        candidate, n = ns + stem, 1
        while candidate in self.used_iris:
            n += 1
            candidate = f"{ns}{stem}_{n}"
        self.used_iris.add(candidate)
        cp = IRI(candidate)
        self.conjectural.add(cp)
        return cp

    def is_conjectural(self, iri: IRI) -> bool:
        return iri in self.conjectural


def conjecture_triple(t: Triple, minter: PredicateMinter, graph: Optional[IRI] = None,
                      namespace: Optional[str] = None) -> tuple[Triple, Triple, ConjectureRecord]:
    """Replace the predicate of ``t`` by a fresh conjectural predicate.

    Returns the conjectural triple, the ``isAConjecturalFormOf`` link and
    the record binding the new predicate to the subject/object pair.
    """
    if minter.is_conjectural(t.p):
        raise AlreadyConjectural(
            f"{t.p} is already a conjectural predicate; nest conjectures through graph names")
    cp = minter.mint(t.p, namespace)
    record = ConjectureRecord(t.p, cp, t.s, t.o, graph)
    minter.records.append(record)
    return Triple(t.s, cp, t.o), Triple(cp, IRI(IS_CONJECTURAL_FORM_OF), t.p), record


def weaken_graph(name: IRI, triples: Iterable[Triple], minter: PredicateMinter) -> NamedGraph:
    """Lower a strong-form conjecture body to a weak-form conjectural graph."""
    triples = list(dict.fromkeys(triples))
    out: list[Triple] = []
    if triples:
        ns = minter.new_namespace()
        for t in triples:
            c, link, _ = conjecture_triple(t, minter, name, ns)
            out += (c, link)
    return NamedGraph(name, GraphKind.CONJECTURAL, tuple(out))


def conjectural_form_of(q: IRI, d: Dataset) -> Optional[IRI]:
    originals = {t.o for t in d.all_triples() if is_link(t) and t.s == q}
    if len(originals) > 1:
        raise AmbiguousForm(f"{q} is a conjectural form of {len(originals)} predicates")
    if not originals:
        return None
    p = originals.pop()
    if not isinstance(p, IRI):
        raise AmbiguousForm(f"{q} is linked to non-IRI {p}")
    return p


def conjectures_in(g: NamedGraph, d: Dataset) -> list[Triple]:
    """The conjectural (non-link) triples of ``g``, judged against ``d``."""
    cps = conjectural_predicates(d) | {t.s for t in g if is_link(t)}
    return [t for t in g if not is_link(t) and t.p in cps]


def validate_conjectural_graph(g: NamedGraph, d: Dataset, lenient: bool = False) -> ValidationReport:
    """Check the well-formedness rules of a conjectural graph.

    Every triple must either use a conjectural predicate (once) or link one
    to its original predicate; every conjectural predicate used needs exactly
    one link in the body.  ``lenient`` tolerates plain triples in the body.
    """
    cps = conjectural_predicates(d) | {t.s for t in g if is_link(t)}
    out: list[Violation] = []
    uses: Counter = Counter()
    links = defaultdict(set)
    for t in g:
        if is_link(t):
            links[t.s].add(t.o)
        elif t.p in cps:
            uses[t.p] += 1
        elif not lenient:
            out.append(Violation("non-conjectural-triple",
                                 f"plain triple {t} inside a conjectural graph", g.name, t))
    for cp, n in uses.items():
        if n > 1:
            out.append(Violation("uniqueness",
                                 f"conjectural predicate {cp} used in {n} triples", g.name,
                                 next(t for t in g if t.p == cp)))
        forms = links.get(cp, set())
        if not forms:
            out.append(Violation("missing-form", f"{cp} has no isAConjecturalFormOf link",
                                 g.name, next(t for t in g if t.p == cp)))
        elif len(forms) > 1:
            out.append(Violation("ambiguous-form",
                                 f"{cp} is linked to {len(forms)} original predicates", g.name,
                                 next(t for t in g if is_link(t) and t.s == cp)))
    return ValidationReport(tuple(out))
