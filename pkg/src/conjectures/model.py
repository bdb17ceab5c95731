"""Terms, triples, named graphs and datasets.

All values here are immutable.  Graph contents keep their insertion order
so serialization is deterministic, but graphs and datasets compare as sets.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

from .vocab import IS_CONJECTURAL_FORM_OF


class ModelError(ValueError):
    """Base class for data-model errors."""


class ConflictingGraphKind(ModelError):
    pass


class UniquenessViolation(ModelError):
    """A conjectural predicate is bound to more than one (subject, object) pair."""


class PrefixConflict(ModelError):
    pass


class DuplicateGraph(ModelError):
    pass


_WS = re.compile(r"\s")


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self):
        if not self.value or _WS.search(self.value):
            raise ModelError(f"invalid IRI {self.value!r}")

    def __str__(self):
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BNode:
    label: str

    def __post_init__(self):
        if not self.label or _WS.search(self.label):
            raise ModelError(f"invalid blank node label {self.label!r}")

    def __str__(self):
        return f"_:{self.label}"


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal, compared by exact lexical form."""

    lexical: str

    def __str__(self):
        return '"' + escape_string(self.lexical) + '"'


Term = Union[IRI, BNode, Literal]

_SORT_RANK = {IRI: 0, BNode: 1, Literal: 2}


def term_key(t: Term) -> tuple[int, str]:
    """Total order over terms, used wherever output must be deterministic."""
    return (_SORT_RANK[type(t)], t.value if isinstance(t, IRI) else
            t.label if isinstance(t, BNode) else t.lexical)


def escape_string(s: str) -> str:
    return (s.replace("\\", "\\\\").replace('"', '\\"')
             .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


@dataclass(frozen=True, slots=True)
class Triple:
    s: Term
    p: IRI
    o: Term

    def __post_init__(self):
        if not isinstance(self.s, (IRI, BNode)):
            raise ModelError(f"subject must be an IRI or blank node, got {self.s!r}")
        if not isinstance(self.p, IRI):
            raise ModelError(f"predicate must be an IRI, got {self.p!r}")
        if not isinstance(self.o, (IRI, BNode, Literal)):
            raise ModelError(f"object must be a term, got {self.o!r}")

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    def __str__(self):
        return f"{self.s} {self.p} {self.o} ."

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.s, self.p, self.o)


def is_link(t: Triple) -> bool:
    """True for ``cp conj:isAConjecturalFormOf p`` triples."""
    return t.p.value == IS_CONJECTURAL_FORM_OF


class GraphKind(enum.Enum):
    PLAIN = "plain"
    CONJECTURAL = "conjectural"
    COLLAPSE = "collapse"


def _dedup(triples: Iterable[Triple]) -> tuple[Triple, ...]:
    return tuple(dict.fromkeys(triples))


@dataclass(frozen=True, eq=False)
class NamedGraph:
    """A named graph.  The name is an IRI that may also be used as a term."""

    name: IRI
    kind: GraphKind
    triples: tuple[Triple, ...] = ()

    def __post_init__(self):
        if not isinstance(self.name, IRI):
            raise ModelError(f"graph name must be an IRI, got {self.name!r}")
        object.__setattr__(self, "triples", _dedup(self.triples))
        object.__setattr__(self, "_set", frozenset(self.triples))

    def __eq__(self, other):
        if not isinstance(other, NamedGraph):
            return NotImplemented
        return (self.name == other.name and self.kind == other.kind
                and self._set == other._set)

    def __hash__(self):
        return hash((self.name, self.kind, self._set))

    def __len__(self):
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, t):
        return t in self._set

    def with_triples(self, extra: Iterable[Triple]) -> "NamedGraph":
        return NamedGraph(self.name, self.kind, self.triples + tuple(extra))


Quad = tuple[Term, IRI, Term, Optional[IRI]]


@dataclass(frozen=True, eq=False)
class Dataset:
    """A default graph plus uniquely named graphs and a prefix table."""

    default_graph: tuple[Triple, ...] = ()
    named_graphs: tuple[NamedGraph, ...] = ()
    prefixes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "default_graph", _dedup(self.default_graph))
        object.__setattr__(self, "named_graphs", tuple(self.named_graphs))
        object.__setattr__(self, "prefixes", MappingProxyType(dict(self.prefixes)))
        index = {}
        for g in self.named_graphs:
            if g.name in index:
                raise DuplicateGraph(f"graph {g.name} declared twice")
            index[g.name] = g
        object.__setattr__(self, "_index", index)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (set(self.default_graph) == set(other.default_graph)
                and self._index == other._index
                and dict(self.prefixes) == dict(other.prefixes))

    def __hash__(self):
        return hash((frozenset(self.default_graph), frozenset(self._index.values())))

    def __repr__(self):
        return (f"Dataset(default={len(self.default_graph)} triples, "
                f"graphs={[str(g.name) for g in self.named_graphs]})")

    # -- lookup ---------------------------------------------------------

    def graph(self, name: IRI) -> Optional[NamedGraph]:
        return self._index.get(name)

    def has_graph(self, name) -> bool:
        return name in self._index

    def graphs_of_kind(self, kind: GraphKind) -> list[NamedGraph]:
        return [g for g in self.named_graphs if g.kind is kind]

    def all_triples(self) -> Iterator[Triple]:
        """Every triple occurrence, default graph first (may repeat)."""
        yield from self.default_graph
        for g in self.named_graphs:
            yield from g.triples

    def quads(self) -> Iterator[Quad]:
        for t in self.default_graph:
            yield (t.s, t.p, t.o, None)
        for g in self.named_graphs:
            for t in g.triples:
                yield (t.s, t.p, t.o, g.name)

    def terms(self) -> dict[Term, None]:
        """All terms in order of first appearance, graph names included."""
        seen: dict[Term, None] = {}
        for t in self.default_graph:
            seen.update(dict.fromkeys(t.terms()))
        for g in self.named_graphs:
            seen[g.name] = None
            for t in g.triples:
                seen.update(dict.fromkeys(t.terms()))
        return seen

    def blank_nodes(self) -> list[BNode]:
        return sorted((t for t in self.terms() if isinstance(t, BNode)), key=term_key)

    def is_empty(self) -> bool:
        return not self.default_graph and not self.named_graphs

    # -- functional updates --------------------------------------------

    def with_graph(self, g: NamedGraph) -> "Dataset":
        """Return a copy where ``g`` replaces the graph of the same name (or is appended)."""
        if g.name in self._index:
            graphs = tuple(g if x.name == g.name else x for x in self.named_graphs)
        else:
            graphs = self.named_graphs + (g,)
        return Dataset(self.default_graph, graphs, self.prefixes)

    def with_default(self, extra: Iterable[Triple]) -> "Dataset":
        return Dataset(self.default_graph + tuple(extra), self.named_graphs, self.prefixes)

    def with_prefixes(self, extra: Mapping[str, str]) -> "Dataset":
        merged = dict(self.prefixes)
        merged.update(extra)
        return Dataset(self.default_graph, self.named_graphs, merged)


def conjectural_predicates(d: Dataset) -> set[IRI]:
    """IRIs that are the subject of some isAConjecturalFormOf triple in ``d``."""
    return {t.s for t in d.all_triples() if is_link(t) and isinstance(t.s, IRI)}


def term_is_conjectural_predicate(t: Term, d: Dataset, records: Iterable = ()) -> bool:
    if not isinstance(t, IRI):
        return False
    if any(r.conjectural_predicate == t for r in records):
        return True
    return any(is_link(x) and x.s == t for x in d.all_triples())


def uniqueness_violations(d: Dataset) -> dict[IRI, set[tuple[Term, Term]]]:
    """Conjectural predicates used with more than one (subject, object) pair."""
    cps = conjectural_predicates(d)
    pairs: dict[IRI, set] = defaultdict(set)
    for t in d.all_triples():
        if t.p in cps:
            pairs[t.p].add((t.s, t.o))
    return {cp: ps for cp, ps in pairs.items() if len(ps) > 1}


def check_uniqueness(d: Dataset) -> None:
    bad = uniqueness_violations(d)
    if bad:
        cp = min(bad, key=term_key)
        raise UniquenessViolation(
            f"conjectural predicate {cp} is used with {len(bad[cp])} distinct "
            f"(subject, object) pairs")


def dataset_merge(a: Dataset, b: Dataset) -> Dataset:
    """Union of two datasets.

    Blank node labels are shared between the inputs, so this is a union
    rather than an RDF merge with standardised-apart blank nodes.
    """
    prefixes = dict(a.prefixes)
    for label, ns in b.prefixes.items():
        if prefixes.setdefault(label, ns) != ns:
            raise PrefixConflict(f"prefix {label!r} bound to {prefixes[label]} and {ns}")
    graphs = {g.name: g for g in a.named_graphs}
    for g in b.named_graphs:
        mine = graphs.get(g.name)
        if mine is None:
            graphs[g.name] = g
        elif mine.kind is not g.kind:
            raise ConflictingGraphKind(
                f"graph {g.name} is {mine.kind.value} in one input and {g.kind.value} in the other")
        else:
            graphs[g.name] = mine.with_triples(g.triples)
    merged = Dataset(a.default_graph + b.default_graph, tuple(graphs.values()), prefixes)
    check_uniqueness(merged)
    return merged
