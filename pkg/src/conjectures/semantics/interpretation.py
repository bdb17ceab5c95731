"""Extended simple interpretations.

An interpretation has the usual RDF parts (IR resources, IP properties,
IEXT extensions, IS and IL) plus a set of conjectural properties IPC
disjoint from IP, an injective map IEXTC giving each conjectural property
its single (subject, object) pair, and CONJFORM relating a property to its
conjectural forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..model import BNode, IRI, Literal, ModelError, Term

Pair = tuple[str, str]


class InvalidInterpretation(ModelError):
    pass


class UnmappedTerm(ModelError):
    pass


def _frozen_map(m, convert):
    return {k: convert(v) for k, v in dict(m).items()}


@dataclass(frozen=True, eq=False)
class Interpretation:
    """IR, IP, IPC, IEXT, IEXTC, CONJFORM, IS and IL, in that order.

    Resources are plain strings.  ``conjectural_extensions`` may be partial:
    a conjectural property with no pair simply has no true instances.
    """

    resources: tuple[str, ...]
    properties: frozenset = frozenset()
    conjectural_properties: frozenset = frozenset()
    extensions: Mapping[str, frozenset] = field(default_factory=dict)
    conjectural_extensions: Mapping[str, Pair] = field(default_factory=dict)
    conjectural_forms: Mapping[str, frozenset] = field(default_factory=dict)
    iri_map: Mapping[str, str] = field(default_factory=dict)
    literal_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        setattr_ = object.__setattr__
        setattr_(self, "resources", tuple(dict.fromkeys(self.resources)))
        setattr_(self, "properties", frozenset(self.properties))
        setattr_(self, "conjectural_properties", frozenset(self.conjectural_properties))
        setattr_(self, "extensions", _frozen_map(self.extensions, lambda v: frozenset(map(tuple, v))))
        setattr_(self, "conjectural_extensions", _frozen_map(self.conjectural_extensions, tuple))
        setattr_(self, "conjectural_forms", _frozen_map(self.conjectural_forms, frozenset))
        setattr_(self, "iri_map", dict(self.iri_map))
        setattr_(self, "literal_map", dict(self.literal_map))
        self._check()

    def _check(self):
        ir = set(self.resources)
        if not ir:
            raise InvalidInterpretation("IR must be non-empty")
        bad = (self.properties | self.conjectural_properties) - ir
        if bad:
            raise InvalidInterpretation(f"properties outside IR: {sorted(bad)}")
        both = self.properties & self.conjectural_properties
        if both:
            raise InvalidInterpretation(f"IP and IPC overlap on {sorted(both)}")
        for p, pairs in self.extensions.items():
            if p not in self.properties:
                raise InvalidInterpretation(f"IEXT defined for {p}, which is not in IP")
            for pair in pairs:
                if len(pair) != 2 or not set(pair) <= ir:
                    raise InvalidInterpretation(f"IEXT({p}) has pair {pair} outside IR x IR")
        seen: dict[Pair, str] = {}
        for cp, pair in self.conjectural_extensions.items():
            if cp not in self.conjectural_properties:
                raise InvalidInterpretation(f"IEXTC defined for {cp}, which is not in IPC")
            if len(pair) != 2 or not set(pair) <= ir:
                raise InvalidInterpretation(f"IEXTC({cp}) = {pair} is outside IR x IR")
            if pair in seen:
                raise InvalidInterpretation(
                    f"IEXTC is not injective: {seen[pair]} and {cp} both map to {pair}")
            seen[pair] = cp
        for p, forms in self.conjectural_forms.items():
            if p not in self.properties:
                raise InvalidInterpretation(f"CONJFORM defined for {p}, which is not in IP")
            if not forms <= self.conjectural_properties:
                raise InvalidInterpretation(f"CONJFORM({p}) contains non-conjectural properties")
        for name, m in (("IS", self.iri_map), ("IL", self.literal_map)):
            stray = set(m.values()) - ir
            if stray:
                raise InvalidInterpretation(f"{name} maps into resources outside IR: {sorted(stray)}")

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        """Hashable canonical form (IR order is ignored)."""
        return (frozenset(self.resources), self.properties, self.conjectural_properties,
                frozenset((k, v) for k, v in self.extensions.items() if v),
                frozenset(self.conjectural_extensions.items()),
                frozenset((k, v) for k, v in self.conjectural_forms.items() if v),
                frozenset(self.iri_map.items()), frozenset(self.literal_map.items()))

    def ext(self, p: str) -> frozenset:
        return self.extensions.get(p, frozenset())

    def forms(self, p: str) -> frozenset:
        return self.conjectural_forms.get(p, frozenset())

    def replace(self, **changes) -> "Interpretation":
        """Copy with some parts replaced; handy for targeted mutations."""
        parts = {f: getattr(self, f) for f in self.__dataclass_fields__}
        parts.update(changes)
        return Interpretation(**parts)


BlankNodeAssignment = Mapping[BNode, str]


def denote(t: Term, i: Interpretation, a: Optional[BlankNodeAssignment] = None) -> str:
    """The resource a term denotes: IS for IRIs, IL for literals, A for blank nodes."""
    if isinstance(t, IRI):
        r = i.iri_map.get(t.value)
    elif isinstance(t, Literal):
        r = i.literal_map.get(t.lexical)
    else:
        r = a.get(t) if a is not None else None
    if r is None:
        raise UnmappedTerm(f"{t} has no denotation in this interpretation")
    return r
