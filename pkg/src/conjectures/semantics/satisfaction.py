"""Truth of triples, graphs and datasets under an extended interpretation.

Which clause applies to a triple is decided by its predicate:

* ``conj:isAConjecturalFormOf`` triples use the link clause;
* ``conj:collapses`` triples use the collapse-triple clause (plain, but
  the property must be in IP);
* any other triple is a conjecture triple when its predicate denotes a
  member of IPC, and a ground triple otherwise.

Blank nodes are existentially quantified over IR.  Assignments are
searched depth first, blank nodes in label order and resources in IR
order, so the witness reported is always the first one in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from ..model import BNode, Dataset, GraphKind, IRI, ModelError, NamedGraph, Term, Triple
from ..vocab import COLLAPSES, IS_CONJECTURAL_FORM_OF
from .interpretation import BlankNodeAssignment, Interpretation, denote

DEFAULT_CAP = 10**6


class ExhaustionError(ModelError):
    """The blank node search exceeded its candidate budget."""


@dataclass(frozen=True)
class TraceEntry:
    clause: str
    item: str
    value: bool
    level: int = 0

    def __str__(self):
        mark = "ok  " if self.value else "FAIL"
        return f"{'  ' * self.level}[{mark}] {self.clause}: {self.item}"


@dataclass(frozen=True)
class Verdict:
    value: bool
    trace: tuple[TraceEntry, ...] = ()
    witness: Mapping[BNode, str] = field(default_factory=dict)

    def __bool__(self):
        return self.value

    def text(self) -> str:
        return "\n".join(map(str, self.trace))

    def entries(self, clause: str) -> list[TraceEntry]:
        return [e for e in self.trace if e.clause == clause]

    def consistent(self) -> bool:
        """The value is the conjunction of the top-level trace entries."""
        return self.value == all(e.value for e in self.trace if e.level == 0)


# -- resource-level clauses ---------------------------------------------------

LINK, COLLAPSE, AUTO = "link", "collapses", "auto"


def clause_kind(p: IRI) -> str:
    if p.value == IS_CONJECTURAL_FORM_OF:
        return LINK
    if p.value == COLLAPSES:
        return COLLAPSE
    return AUTO


def _some_form(i: Interpretation, cp: str) -> bool:
    return any(cp in forms for p, forms in i.conjectural_forms.items() if p in i.properties)


def checks(i: Interpretation, s: str, p: str, o: str, kind: str,
           require_conjform: bool = True) -> tuple[str, list[tuple[str, bool]]]:
    """Named conditions a triple of denotations must meet, and the clause used."""
    if kind == LINK:
        return "link", [
            (f"{s} in IPC", s in i.conjectural_properties),
            (f"{o} in IP", o in i.properties),
            (f"{s} in CONJFORM({o})", s in i.forms(o)),
            (f"{p} in IP", p in i.properties),
            (f"<{s},{o}> in IEXT({p})", (s, o) in i.ext(p)),
        ]
    if kind == AUTO and p in i.conjectural_properties:
        out = [(f"{p} in IPC", True),
               (f"<{s},{o}> = IEXTC({p})", i.conjectural_extensions.get(p) == (s, o))]
        if require_conjform:
            out.append((f"{p} in CONJFORM(q) for some q in IP", _some_form(i, p)))
        return "conjecture", out
    return ("collapses" if kind == COLLAPSE else "ground"), [
        (f"{p} in IP", p in i.properties),
        (f"<{s},{o}> in IEXT({p})", (s, o) in i.ext(p)),
    ]


def holds(i: Interpretation, s: str, p: str, o: str, kind: str,
          require_conjform: bool = True) -> bool:
    if kind == LINK:
        return (s in i.conjectural_properties and o in i.properties and p in i.properties
                and s in i.forms(o) and (s, o) in i.ext(p))
    if kind == AUTO and p in i.conjectural_properties:
        return (i.conjectural_extensions.get(p) == (s, o)
                and (not require_conjform or _some_form(i, p)))
    return p in i.properties and (s, o) in i.ext(p)


# -- pattern search -----------------------------------------------------------

Slot = tuple[str, object]  # ("const", resource) or ("var", key)


@dataclass(frozen=True)
class Pattern:
    s: Slot
    p: Slot
    o: Slot
    kind: str


def search(patterns: Sequence[Pattern], i: Interpretation, variables: Sequence,
           domains: Optional[Mapping] = None, distinct: Iterable = (),
           require_conjform: bool = True, cap: int = DEFAULT_CAP) -> Optional[dict]:
    """First assignment of ``variables`` (in the given order) satisfying all patterns.

    ``domains`` restricts individual variables (default: all of IR);
    variables in ``distinct`` must take pairwise different values.
    """
    domains = domains or {}
    distinct = set(distinct)
    position = {v: n for n, v in enumerate(variables)}

    def last_var(pat: Pattern) -> int:
        return max((position[x[1]] for x in (pat.s, pat.p, pat.o) if x[0] == "var"), default=-1)

    # Patterns are checked as soon as their last variable is bound.
    due: list[list[Pattern]] = [[] for _ in range(len(variables) + 1)]
    for pat in patterns:
        due[last_var(pat) + 1].append(pat)

    binding: dict = {}

    def value(slot):
        return slot[1] if slot[0] == "const" else binding[slot[1]]

    def ok(level: int) -> bool:
        return all(holds(i, value(q.s), value(q.p), value(q.o), q.kind, require_conjform)
                   for q in due[level])

    if not ok(0):
        return None
    budget = [cap]

    def go(n: int) -> bool:
        if n == len(variables):
            return True
        v = variables[n]
        for r in domains.get(v, i.resources):
            if v in distinct and any(binding.get(w) == r for w in distinct if w != v):
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise ExhaustionError(f"more than {cap} candidate assignments")
            binding[v] = r
            if ok(n + 1) and go(n + 1):
                return True
            del binding[v]
        return False

    return dict(binding) if go(0) else None


def _slot(t: Term, i: Interpretation, a: Optional[BlankNodeAssignment]) -> Slot:
    if isinstance(t, BNode) and (a is None or t not in a):
        return ("var", t)
    return ("const", denote(t, i, a))


def patterns_for(triples: Iterable[Triple], i: Interpretation,
                 a: Optional[BlankNodeAssignment] = None) -> list[Pattern]:
    return [Pattern(_slot(t.s, i, a), _slot(t.p, i, a), _slot(t.o, i, a), clause_kind(t.p))
            for t in triples]


def find_assignment(triples: Iterable[Triple], i: Interpretation,
                    a: Optional[BlankNodeAssignment] = None, require_conjform: bool = True,
                    cap: int = DEFAULT_CAP) -> Optional[dict[BNode, str]]:
    """First blank node assignment extending ``a`` that makes every triple true."""
    triples = list(triples)
    pats = patterns_for(triples, i, a)
    blanks = sorted({x for t in triples for x in (t.s, t.o)
                     if isinstance(x, BNode) and (a is None or x not in a)},
                    key=lambda b: b.label)
    found = search(pats, i, blanks, require_conjform=require_conjform, cap=cap)
    if found is None:
        return None
    return {**(a or {}), **found}


# -- verdicts -----------------------------------------------------------------

def _triple_entries(t: Triple, i: Interpretation, a, require_conjform: bool,
                    level: int) -> tuple[bool, list[TraceEntry]]:
    s, p, o = (denote(x, i, a) for x in t.terms())
    clause, cs = checks(i, s, p, o, clause_kind(t.p), require_conjform)
    value = all(v for _, v in cs)
    out = [TraceEntry(clause, str(t), value, level)]
    out += [TraceEntry(clause, name, v, level + 1) for name, v in cs]
    return value, out


def satisfies_triple(t: Triple, i: Interpretation, a: Optional[BlankNodeAssignment] = None,
                     require_conjform: bool = True) -> Verdict:
    value, entries = _triple_entries(t, i, a, require_conjform, 0)
    # Individual conditions become the top-level entries of a single-triple verdict.
    top = [TraceEntry(e.clause, e.item, e.value, 0) for e in entries[1:]]
    return Verdict(value, tuple(top))


def _graph_triples(g) -> tuple[Optional[IRI], list[Triple]]:
    if isinstance(g, NamedGraph):
        return g.name, list(g.triples)
    return None, list(g)


def satisfies_graph(g: Union[NamedGraph, Iterable[Triple]], i: Interpretation,
                    a: Optional[BlankNodeAssignment] = None, require_conjform: bool = True,
                    cap: int = DEFAULT_CAP) -> Verdict:
    """True iff some assignment of the graph's blank nodes makes every triple true."""
    name, triples = _graph_triples(g)
    label = str(name) if name is not None else "default graph"
    blanks = {x for t in triples for x in (t.s, t.o) if isinstance(x, BNode)}
    trace: list[TraceEntry] = []
    witness = find_assignment(triples, i, a, require_conjform, cap)
    if witness is None and not blanks - set(a or {}):
        # Nothing to search for: the graph is false because some triple is.
        witness = dict(a or {})
    elif blanks - set(a or {}):
        desc = (", ".join(f"{b} -> {witness[b]}" for b in sorted(blanks, key=lambda b: b.label))
                if witness else f"no assignment of {len(blanks)} blank node(s) over {len(i.resources)} resources")
        trace.append(TraceEntry("assignment", desc, witness is not None))
    if witness is None:
        ground = [t for t in triples if not any(isinstance(x, BNode) and x not in (a or {})
                                                for x in (t.s, t.o))]
        for t in ground:
            trace += _triple_entries(t, i, a, require_conjform, 1)[1]
        return Verdict(False, tuple(trace))
    results = [_triple_entries(t, i, witness, require_conjform, 1) for t in triples]
    value = all(v for v, _ in results)
    trace.append(TraceEntry("graph", label, value))
    for _, entries in results:
        trace += entries
    return Verdict(value, tuple(trace), witness if value else {})


def _collapse_extras(d: Dataset, g: NamedGraph, i: Interpretation, a) -> list[tuple[str, bool]]:
    # Effective triples of a collapse graph also require the conjectural
    # predicate they replace to be a CONJFORM of their predicate.
    from ..collapse import is_collapse_triple
    from ..conjecture import conjectural_form_of, conjectures_in
    out = []
    for t in g:
        if not (is_collapse_triple(t) and isinstance(t.o, IRI)):
            continue
        target = d.graph(t.o)
        if target is None or target.kind is not GraphKind.CONJECTURAL:
            continue
        for c in conjectures_in(target, d):
            p = conjectural_form_of(c.p, d)
            if p is not None and Triple(c.s, p, c.o) in g:
                ip, icp = denote(p, i, a), denote(c.p, i, a)
                out.append((f"{icp} in CONJFORM({ip}) for {Triple(c.s, p, c.o)}", icp in i.forms(ip)))
    return out


def satisfies_dataset(d: Dataset, i: Interpretation, require_conjform: bool = True,
                      cap: int = DEFAULT_CAP) -> Verdict:
    """Conjunction over the default graph and every named graph.

    Blank nodes are scoped to the whole dataset and share one assignment.
    """
    all_triples = list(dict.fromkeys(d.all_triples()))
    witness = find_assignment(all_triples, i, None, require_conjform, cap)
    trace: list[TraceEntry] = []
    blanks = d.blank_nodes()
    if blanks:
        desc = (", ".join(f"{b} -> {witness[b]}" for b in blanks) if witness
                else f"no assignment of {len(blanks)} blank node(s) over {len(i.resources)} resources")
        trace.append(TraceEntry("assignment", desc, witness is not None))
    a = witness or {}
    sections = [("default", "default graph", list(d.default_graph), None)]
    sections += [(g.kind.value, str(g.name), list(g.triples), g) for g in d.named_graphs]
    value = witness is not None
    for kind, label, triples, g in sections:
        if not triples and g is None:
            continue
        entries: list[TraceEntry] = []
        ok = True
        for t in triples:
            if witness is None and any(isinstance(x, BNode) for x in (t.s, t.o)):
                continue
            v, es = _triple_entries(t, i, a, require_conjform, 1)
            ok &= v
            entries += es
        if g is not None and g.kind is GraphKind.COLLAPSE:
            for name, v in _collapse_extras(d, g, i, a):
                ok &= v
                entries.append(TraceEntry("collapse-graph", name, v, 1))
        trace.append(TraceEntry(f"{kind} graph", label, ok))
        trace += entries
        value &= ok
    return Verdict(value, tuple(trace), a)


def is_model(d: Dataset, i: Interpretation, require_conjform: bool = True,
             cap: int = DEFAULT_CAP) -> bool:
    """Fast boolean form of :func:`satisfies_dataset` (no trace)."""
    return find_assignment(list(dict.fromkeys(d.all_triples())), i, None,
                           require_conjform, cap) is not None
