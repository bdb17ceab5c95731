"""Collapse, cascade and nested-conjecture conditions.

These evaluators follow the dataset structure (which graph collapses which,
which conjecture mentions which) and report one trace entry per condition.
Blank nodes are resolved with the first witness of the whole dataset; if
the dataset has blank nodes but no witness, the verdict is false.
"""

from __future__ import annotations

from typing import Optional

from ..collapse import NotConjectural, MissingForm, is_collapse_triple
from ..conjecture import conjectural_form_of, conjectures_in
from ..model import Dataset, GraphKind, IRI, ModelError, Triple
from ..vocab import COLLAPSES
from .interpretation import Interpretation, denote
from .satisfaction import (DEFAULT_CAP, TraceEntry, Verdict, _triple_entries, checks,
                           clause_kind, find_assignment)


class CyclicNesting(ModelError):
    pass


class MissingGraph(ModelError):
    pass


def _witness(d: Dataset, i: Interpretation, cap: int) -> Optional[dict]:
    if not d.blank_nodes():
        return {}
    return find_assignment(list(dict.fromkeys(d.all_triples())), i, None, True, cap)


def _no_witness(d: Dataset, i: Interpretation) -> Verdict:
    return Verdict(False, (TraceEntry(
        "assignment", f"no assignment of {len(d.blank_nodes())} blank node(s) "
                      f"over {len(i.resources)} resources", False),))


def collapse_conditions(t: Triple, p: IRI, i: Interpretation, a) -> list[tuple[str, str, bool]]:
    """The six collapse conditions for conjecture triple ``t`` whose form is ``p``."""
    s, cp, o = (denote(x, i, a) for x in t.terms())
    ip = denote(p, i, a)
    # collapses(s, p, o) is the unique conjectural form of p bound to (s, o).
    bound = sorted(w for w in i.forms(ip) if i.conjectural_extensions.get(w) == (s, o))
    return [
        ("collapse.cp-in-IPC", f"{cp} in IPC", cp in i.conjectural_properties),
        ("collapse.p-in-IP", f"{ip} in IP", ip in i.properties),
        ("collapse.conjform", f"{cp} in CONJFORM({ip})", cp in i.forms(ip)),
        ("collapse.iextc", f"<{s},{o}> = IEXTC({cp})",
         i.conjectural_extensions.get(cp) == (s, o)),
        ("collapse.iext", f"<{s},{o}> in IEXT({ip})", (s, o) in i.ext(ip)),
        ("collapse.collapses", f"collapses({s},{ip},{o}) = ({s},{cp},{o})", bound == [cp]),
    ]


def satisfies_collapse(conjecture: IRI, collapse: IRI, d: Dataset, i: Interpretation,
                       cap: int = DEFAULT_CAP) -> Verdict:
    """All six collapse conditions, for every conjecture triple of ``conjecture``."""
    target = d.graph(conjecture)
    if target is None or target.kind is not GraphKind.CONJECTURAL:
        raise NotConjectural(f"{conjecture} is not a conjectural graph of the dataset")
    if not d.has_graph(collapse):
        raise MissingGraph(f"no graph named {collapse}")
    if Triple(collapse, IRI(COLLAPSES), conjecture) not in set(d.all_triples()):
        raise MissingGraph(f"{collapse} does not collapse {conjecture}")
    a = _witness(d, i, cap)
    if a is None:
        return _no_witness(d, i)
    trace = []
    for t in conjectures_in(target, d):
        p = conjectural_form_of(t.p, d)
        if p is None:
            raise MissingForm(f"{t.p} has no isAConjecturalFormOf link")
        for clause, item, value in collapse_conditions(t, p, i, a):
            trace.append(TraceEntry(clause, f"{t}: {item}", value))
    return Verdict(all(e.value for e in trace), tuple(trace), a)


def satisfies_cascade(d: Dataset, i: Interpretation, cap: int = DEFAULT_CAP) -> Verdict:
    """Conditions of every effective collapse triple found in a collapse graph.

    For ``x conj:collapses X`` with ``X`` conjectural, every conjecture
    ``s cp o`` of ``X`` must hold as a conjecture, its effective form must
    hold, and ``<I(x), I(X)>`` must be in IEXT(I(conj:collapses)).
    Conjectural objects with a single conjecture use the triple clause
    block, larger ones the graph clause block.
    """
    a = _witness(d, i, cap)
    if a is None:
        return _no_witness(d, i)
    trace: list[TraceEntry] = []
    for g in d.graphs_of_kind(GraphKind.COLLAPSE):
        for t in g:
            if not (is_collapse_triple(t) and isinstance(t.o, IRI)):
                continue
            target = d.graph(t.o)
            if target is None or target.kind is not GraphKind.CONJECTURAL:
                continue
            conj = conjectures_in(target, d)
            block = "cascade.triple" if len(conj) == 1 else "cascade.graph"
            entries: list[TraceEntry] = []
            for c in conj:
                p = conjectural_form_of(c.p, d)
                if p is None:
                    raise MissingForm(f"{c.p} has no isAConjecturalFormOf link")
                s, cp, o = (denote(x, i, a) for x in c.terms())
                ip = denote(p, i, a)
                for item, value in (
                    (f"{cp} in IPC", cp in i.conjectural_properties),
                    (f"{ip} in IP", ip in i.properties),
                    (f"{cp} in CONJFORM({ip})", cp in i.forms(ip)),
                    (f"<{s},{o}> = IEXTC({cp})", i.conjectural_extensions.get(cp) == (s, o)),
                    (f"<{s},{o}> in IEXT({ip})", (s, o) in i.ext(ip)),
                ):
                    entries.append(TraceEntry(block, f"{c}: {item}", value, 1))
            xs, cl, xo = (denote(x, i, a) for x in t.terms())
            entries.append(TraceEntry(block, f"{cl} in IP", cl in i.properties, 1))
            entries.append(TraceEntry(block, f"<{xs},{xo}> in IEXT({cl})", (xs, xo) in i.ext(cl), 1))
            ok = all(e.value for e in entries)
            trace.append(TraceEntry(block, f"{t} in {g.name}", ok))
            trace += entries
    return Verdict(all(e.value for e in trace if e.level == 0), tuple(trace), a)


def _graph_names(d: Dataset, kind: GraphKind) -> list[IRI]:
    return [g.name for g in d.graphs_of_kind(kind)]


def nesting_order(d: Dataset) -> list[IRI]:
    """Conjectural graphs with every graph after the conjectures it mentions.

    Ties keep dataset order.  Raises CyclicNesting on a cycle.
    """
    names = _graph_names(d, GraphKind.CONJECTURAL)
    known = set(names)
    deps: dict[IRI, set[IRI]] = {}
    for n in names:
        g = d.graph(n)
        # A graph naming itself (as a collapse of itself would) is not nesting.
        deps[n] = {x for t in conjectures_in(g, d) for x in (t.s, t.o) if x in known} - {n}
    order: list[IRI] = []
    placed: set[IRI] = set()
    while len(order) < len(names):
        ready = [n for n in names if n not in placed and deps[n] <= placed]
        if not ready:
            stuck = [str(n) for n in names if n not in placed]
            raise CyclicNesting("conjectures depend on each other: " + ", ".join(stuck))
        order.append(ready[0])
        placed.add(ready[0])
    return order


def evaluate_nested(d: Dataset, i: Interpretation, require_conjform: bool = True,
                    cap: int = DEFAULT_CAP) -> dict[IRI, Verdict]:
    """Verdict of each conjectural graph, computed lowest level first.

    A conjecture whose subject and/or object names another conjecture
    (cases S, O and SO) is true only if those inner conjectures are.
    The returned mapping is in evaluation order.
    """
    order = nesting_order(d)
    a = _witness(d, i, cap)
    results: dict[IRI, Verdict] = {}
    for name in order:
        g = d.graph(name)
        if a is None:
            results[name] = _no_witness(d, i)
            continue
        trace: list[TraceEntry] = []
        conj = set(conjectures_in(g, d))
        for t in g:
            if t not in conj:
                value, entries = _triple_entries(t, i, a, require_conjform, 0)
                trace += entries
                continue
            inner_s, inner_o = t.s in results and t.s != name, t.o in results and t.o != name
            case = {(False, False): "nested.base", (True, False): "nested.S",
                    (False, True): "nested.O", (True, True): "nested.SO"}[(inner_s, inner_o)]
            entries = []
            for x in (t.s, t.o) if case != "nested.base" else ():
                if x in results:
                    entries.append(TraceEntry(case, f"inner conjecture {x} is true",
                                              results[x].value, 1))
            s, cp, o = (denote(x, i, a) for x in t.terms())
            _, cs = checks(i, s, cp, o, clause_kind(t.p), require_conjform)
            if cp not in i.conjectural_properties:
                cs = [(f"{cp} in IPC", False)]
            entries += [TraceEntry(case, item, v, 1) for item, v in cs]
            value = all(e.value for e in entries)
            trace.append(TraceEntry(case, str(t), value))
            trace += entries
        results[name] = Verdict(all(e.value for e in trace if e.level == 0), tuple(trace), a)
    return results
