"""Collapse to reality: collapse graphs, their validation, and cascading collapses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .conjecture import conjectural_form_of, conjectures_in
from .model import Dataset, DuplicateGraph, GraphKind, IRI, ModelError, NamedGraph, Triple
from .report import ValidationReport, Violation
from .vocab import COLLAPSES


class NotConjectural(ModelError):
    pass


class MissingForm(ModelError):
    pass


class CycleDetected(ModelError):
    pass


@dataclass(frozen=True)
class CollapseRecord:
    collapse_graph: IRI
    collapsed_graph: IRI
    pairs: tuple[tuple[Triple, Triple], ...]


def is_collapse_triple(t: Triple) -> bool:
    """True when ``t`` uses ``conj:collapses`` in its effective form."""
    return t.p.value == COLLAPSES


def _conjectural_graph(name, d: Dataset) -> NamedGraph:
    g = d.graph(name)
    if g is None or g.kind is not GraphKind.CONJECTURAL:
        raise NotConjectural(f"{name} is not a conjectural graph of the dataset")
    return g


def effective_pairs(target: IRI, d: Dataset) -> list[tuple[Triple, Triple]]:
    """(conjectural triple, effective triple) for every conjecture in ``target``."""
    g = _conjectural_graph(target, d)
    pairs = []
    for t in conjectures_in(g, d):
        p = conjectural_form_of(t.p, d)
        if p is None:
            raise MissingForm(f"{t.p} in {target} has no isAConjecturalFormOf link")
        pairs.append((t, Triple(t.s, p, t.o)))
    return pairs


def default_collapse_name(target: IRI) -> IRI:
    """``ns#x`` becomes ``ns#collapseOfx``."""
    v = target.value
    cut = max(v.rfind("#"), v.rfind("/"), v.rfind(":"))
    return IRI(v[:cut + 1] + "collapseOf" + v[cut + 1:])


def collapse_record(target: IRI, d: Dataset, new_name: IRI) -> CollapseRecord:
    return CollapseRecord(new_name, target, tuple(effective_pairs(target, d)))


def collapse_conjecture(target: IRI, d: Dataset, new_name: Optional[IRI] = None) -> Dataset:
    """Add a collapse graph asserting every conjecture of ``target`` in full force.

    The new graph holds the effective triples followed by
    ``new_name conj:collapses target``.  Nothing in ``d`` is removed.
    """
    new_name = new_name or default_collapse_name(target)
    if d.has_graph(new_name):
        raise DuplicateGraph(f"graph {new_name} already exists")
    record = collapse_record(target, d, new_name)
    body = [eff for _, eff in record.pairs]
    body.append(Triple(new_name, IRI(COLLAPSES), target))
    return d.with_graph(NamedGraph(new_name, GraphKind.COLLAPSE, tuple(body)))


def validate_collapse_graph(g: NamedGraph, d: Dataset) -> ValidationReport:
    """Check that ``g`` states the effective form of what it collapses.

    Every effective ``conj:collapses`` triple must point at a conjectural
    graph; those whose subject is ``g`` itself must have all their
    conjectures present in effective form inside ``g``.
    """
    out: list[Violation] = []
    own = []
    for t in g:
        if not is_collapse_triple(t):
            continue
        target = d.graph(t.o) if isinstance(t.o, IRI) else None
        if target is None or target.kind is not GraphKind.CONJECTURAL:
            out.append(Violation("collapses-non-conjecture",
                                 f"{t.o} is not a conjectural graph", g.name, t))
        elif t.s == g.name:
            own.append(t)
    if not own and not out:
        out.append(Violation("no-collapse-triple",
                             f"no conj:collapses triple with subject {g.name}", g.name))
    for t in own:
        try:
            pairs = effective_pairs(t.o, d)
        except MissingForm as e:
            out.append(Violation("missing-form", str(e), g.name, t))
            continue
        for conj, eff in pairs:
            if eff not in g:
                out.append(Violation("effective-form-absent",
                                     f"effective form {eff} of {conj} is absent", g.name, conj))
    return ValidationReport(tuple(out))


def cascade(d: Dataset) -> Dataset:
    """Enforce every collapse reachable from effective ``conj:collapses`` triples.

    Whenever a collapse graph states ``x conj:collapses X`` in effective
    form and ``X`` is a conjectural graph, the effective forms of all of
    ``X``'s conjectures are added to that same collapse graph (whatever
    ``x`` is).  Conjectured ``collapses`` triples made effective this way
    trigger further collapses.  Each (collapse graph, target) pair is
    processed once, so the procedure terminates; a target that needs
    itself to be collapsed raises CycleDetected.
    """
    current = d
    for g in d.graphs_of_kind(GraphKind.COLLAPSE):
        done: set[IRI] = set()
        added: list[Triple] = []
        present = set(g.triples)

        def collapse_into(target: IRI, stack: tuple[IRI, ...]):
            if target in stack:
                raise CycleDetected(
                    "collapsing " + " -> ".join(str(x) for x in stack + (target,)))
            if target in done:
                return
            done.add(target)
            for _, eff in effective_pairs(target, current):
                if eff not in present:
                    present.add(eff)
                    added.append(eff)
                if is_collapse_triple(eff) and _is_conjectural(eff.o, current):
                    collapse_into(eff.o, stack + (target,))

        for t in g.triples:
            if is_collapse_triple(t) and _is_conjectural(t.o, current):
                collapse_into(t.o, ())
        if added:
            current = current.with_graph(g.with_triples(added))
    return current


def _is_conjectural(term, d: Dataset) -> bool:
    if not isinstance(term, IRI):
        return False
    g = d.graph(term)
    return g is not None and g.kind is GraphKind.CONJECTURAL
