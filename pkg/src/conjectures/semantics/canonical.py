"""Canonical (least) models and simple entailment.

The least model of a dataset identifies terms only when the truth
conditions force it: all triples sharing a conjectural property must share
their subject and object, and two conjectural properties bound to the same
pair must be the same property.  Everything else stays apart and every
extension holds exactly what the triples state.  Any model of the dataset
is a homomorphic image of the least model, and truth of a graph is
preserved by such images, so a graph is entailed exactly when it holds in
the least model (with its own unseen names as fresh resources).
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from ..model import BNode, Dataset, IRI, Literal, ModelError, Term, Triple, is_link
from ..validate import require_valid
from ..vocab import COLLAPSES, IS_CONJECTURAL_FORM_OF
from .interpretation import Interpretation
from .satisfaction import DEFAULT_CAP, Pattern, clause_kind, search


class Unsatisfiable(ModelError):
    """No interpretation satisfies the dataset."""


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: n for n, x in enumerate(self.parent)}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[rb] < self.rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra  # the earliest term names the class
        return True


@dataclass(frozen=True)
class LeastModel:
    interpretation: Interpretation
    assignment: dict  # blank node -> resource


_WORD = re.compile(r"[^A-Za-z0-9_.-]+")


def _name(t: Term, prefixes) -> str:
    if isinstance(t, IRI):
        best = None
        for label, ns in prefixes.items():
            if t.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                best = (label, ns)
        if best is not None:
            raw = (best[0] + "_" if best[0] else "") + t.value[len(best[1]):]
        else:
            raw = re.split(r"[#/:]", t.value.rstrip("/#"))[-1] or "iri"
    elif isinstance(t, Literal):
        raw = "lit_" + t.lexical
    else:
        raw = "b_" + t.label
    return _WORD.sub("_", raw).strip("_") or "r"


def least_model(d: Dataset, extra_terms: Iterable[Term] = ()) -> Optional[LeastModel]:
    """The least model of ``d``, or None when ``d`` has no model at all.

    ``extra_terms`` are given fresh resources of their own (unless they
    already occur in ``d``), so graphs over a wider vocabulary can be
    evaluated against the result.
    """
    terms = list(dict.fromkeys([*d.terms(), *extra_terms]))
    triples = list(dict.fromkeys(d.all_triples()))
    uf = _UnionFind(terms)
    links = [t for t in triples if is_link(t)]
    ipc_seeds = [t.s for t in links]
    ip_seeds = [t.o for t in links]
    for t in triples:
        if t.p.value in (IS_CONJECTURAL_FORM_OF, COLLAPSES):
            ip_seeds.append(t.p)

    changed = True
    while changed:
        changed = False
        ipc = {uf.find(x) for x in ipc_seeds}
        by_class = defaultdict(list)
        for t in triples:
            if not is_link(t) and uf.find(t.p) in ipc:
                by_class[uf.find(t.p)].append(t)
        pair_owner = {}
        for cls, ts in by_class.items():
            for t in ts[1:]:
                changed |= uf.union(ts[0].s, t.s)
                changed |= uf.union(ts[0].o, t.o)
            pair = (uf.find(ts[0].s), uf.find(ts[0].o))
            if pair in pair_owner:
                changed |= uf.union(pair_owner[pair], cls)
            else:
                pair_owner[pair] = cls

    ipc = {uf.find(x) for x in ipc_seeds}
    ip = {uf.find(x) for x in ip_seeds}
    if ip & ipc:
        return None
    for t in triples:
        if uf.find(t.p) not in ipc:
            ip.add(uf.find(t.p))

    names, used = {}, set()
    for x in terms:
        r = uf.find(x)
        if r in names:
            continue
        base = _name(r, d.prefixes)
        n, candidate = 1, base
        while candidate in used:
            n += 1
            candidate = f"{base}_{n}"
        used.add(candidate)
        names[r] = candidate

    def res(x):
        return names[uf.find(x)]

    ext, extc, forms = defaultdict(set), {}, defaultdict(set)
    for t in triples:
        if uf.find(t.p) in ipc and not is_link(t):
            extc[res(t.p)] = (res(t.s), res(t.o))
        else:
            ext[res(t.p)].add((res(t.s), res(t.o)))
        if is_link(t):
            forms[res(t.o)].add(res(t.s))
    resources = tuple(dict.fromkeys(res(x) for x in terms)) or ("u0",)
    i = Interpretation(
        resources=resources,
        properties={names[c] for c in ip},
        conjectural_properties={names[c] for c in ipc},
        extensions=ext, conjectural_extensions=extc, conjectural_forms=forms,
        iri_map={x.value: res(x) for x in terms if isinstance(x, IRI)},
        literal_map={x.lexical: res(x) for x in terms if isinstance(x, Literal)},
    )
    return LeastModel(i, {x: res(x) for x in terms if isinstance(x, BNode)})


def canonical_interpretation(d: Dataset, lenient: bool = False) -> Interpretation:
    """A model of a valid dataset built from its own vocabulary.

    Raises InvalidDataset when validation fails and Unsatisfiable when the
    dataset forces a resource into both IP and IPC.
    """
    require_valid(d, lenient)
    m = least_model(d)
    if m is None:
        raise Unsatisfiable("some resource would have to be both a property and a "
                            "conjectural property")
    return m.interpretation


def _renamable(g_triples: list[Triple]) -> list[IRI]:
    return sorted({t.s for t in g_triples if is_link(t) and isinstance(t.s, IRI)},
                  key=lambda x: x.value)


def entails(e: Dataset, g: Dataset, rename_conjectural: bool = False,
            cap: int = DEFAULT_CAP) -> bool:
    """Whether every interpretation satisfying ``e`` also satisfies ``g``.

    Triples are compared regardless of the graph they sit in.  With
    ``rename_conjectural`` the conjectural predicates of ``g`` (subjects
    of its isAConjecturalFormOf triples) may be renamed injectively to
    IRIs of ``e``.
    """
    g_triples = list(dict.fromkeys(g.all_triples()))
    renamed = _renamable(g_triples) if rename_conjectural else []
    extra = [t for t in g.terms() if not isinstance(t, BNode) and t not in set(renamed)]
    m = least_model(e, extra)
    if m is None:
        return True
    i = m.interpretation
    blanks = sorted({x for t in g_triples for x in (t.s, t.o) if isinstance(x, BNode)},
                    key=lambda b: b.label)
    e_iris = [t for t in e.terms() if isinstance(t, IRI)]
    candidates = [x for x in e_iris if i.iri_map[x.value] in i.conjectural_properties]
    for choice in itertools.permutations(candidates, len(renamed)):
        rho = dict(zip(renamed, choice))

        def slot(x):
            if isinstance(x, BNode):
                return ("var", x)
            x = rho.get(x, x)
            return ("const", i.iri_map[x.value] if isinstance(x, IRI) else i.literal_map[x.lexical])

        pats = [Pattern(slot(t.s), slot(t.p), slot(t.o), clause_kind(t.p)) for t in g_triples]
        if search(pats, i, blanks, cap=cap) is not None:
            return True
    return False
