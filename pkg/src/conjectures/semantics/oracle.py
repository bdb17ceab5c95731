"""Brute-force entailment over small finite interpretations.

Used as an independent check on :func:`entails`.  Instead of walking every
interpretation literally, the default mode walks every *least*
interpretation of ``e`` over a partition of the vocabulary: which names
denote the same resource, which predicate resources are properties and
which are conjectural properties, and which property carries the
conjectural form a conjecture triple needs.  Extensions hold exactly the
pairs ``e`` requires.  Truth of a graph only grows when resources or
pairs are added, so if some interpretation of size <= N satisfies ``e``
but not ``g``, one of these least interpretations does as well.

``exhaustive=True`` walks literally every interpretation instead; it is
only practical for domains of size 1 or 2 and exists to cross-check the
reduction above.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterator

from ..model import BNode, Dataset, IRI, Literal, ModelError, Term, is_link
from ..vocab import COLLAPSES, IS_CONJECTURAL_FORM_OF
from .interpretation import Interpretation, InvalidInterpretation
from .satisfaction import find_assignment

MAX_TERMS = 8
MAX_DOMAIN = 4
MAX_CANDIDATES = 10**6


class TooLarge(ModelError):
    pass


def partitions(items: list, max_blocks: int) -> Iterator[list[int]]:
    """Restricted growth strings: block index per item, at most ``max_blocks`` blocks."""
    if not items:
        yield []
        return

    def go(prefix: list[int], top: int):
        if len(prefix) == len(items):
            yield list(prefix)
            return
        for b in range(min(top + 2, max_blocks)):
            prefix.append(b)
            yield from go(prefix, max(top, b))
            prefix.pop()

    yield from go([0], 0)


def _vocabulary(e: Dataset, g: Dataset, extra: tuple = ()) -> list[Term]:
    names = [t for t in [*e.terms(), *g.terms(), *extra] if not isinstance(t, BNode)]
    return list(dict.fromkeys(names))


def _check_size(items: list, max_domain: int):
    if max_domain > MAX_DOMAIN:
        raise TooLarge(f"domain bound {max_domain} exceeds {MAX_DOMAIN}")
    if len(items) > MAX_TERMS:
        raise TooLarge(f"{len(items)} terms exceed the limit of {MAX_TERMS}")


def least_interpretations(e: Dataset, vocabulary: list[Term], max_domain: int
                          ) -> Iterator[Interpretation]:
    """Every least interpretation of ``e`` over at most ``max_domain`` resources.

    Each one interprets all of ``vocabulary`` (and satisfies ``e`` under
    some assignment of its blank nodes).
    """
    triples = list(dict.fromkeys(e.all_triples()))
    items = list(dict.fromkeys([*vocabulary, *e.blank_nodes()]))
    _check_size(items, max_domain)
    index = {x: n for n, x in enumerate(items)}
    produced = 0
    for blocks in partitions(items, max_domain):
        k = max(blocks) + 1 if blocks else 1
        blk = lambda t: blocks[index[t]]
        links = [t for t in triples if is_link(t)]
        ipc_req = {blk(t.s) for t in links}
        ip_req = {blk(t.o) for t in links}
        ip_req |= {blk(t.p) for t in triples if t.p.value in (IS_CONJECTURAL_FORM_OF, COLLAPSES)}
        if ipc_req & ip_req:
            continue
        free = sorted({blk(t.p) for t in triples} - ipc_req - ip_req)
        for labels in itertools.product((True, False), repeat=len(free)):
            ip = set(ip_req) | {b for b, is_ip in zip(free, labels) if is_ip}
            ipc = set(ipc_req) | {b for b, is_ip in zip(free, labels) if not is_ip}
            ext, extc, forms = defaultdict(set), {}, defaultdict(set)
            ok = True
            for t in triples:
                pair = (blk(t.s), blk(t.o))
                if is_link(t):
                    ext[blk(t.p)].add(pair)
                    forms[blk(t.o)].add(blk(t.s))
                elif blk(t.p) in ipc and t.p.value != COLLAPSES:
                    if extc.setdefault(blk(t.p), pair) != pair:
                        ok = False
                else:
                    ext[blk(t.p)].add(pair)
            if not ok or len(set(extc.values())) < len(extc):
                continue
            formed = set().union(*forms.values()) if forms else set()
            needy = sorted(set(extc) - formed)
            # Each conjectural property without a form needs some property
            # carrying it: an existing resource outside IPC, or one extra resource.
            hosts = [b for b in range(k) if b not in ipc]
            if k < max_domain:
                hosts.append(k)
            for choice in itertools.product(hosts, repeat=len(needy)):
                produced += 1
                if produced > MAX_CANDIDATES:
                    raise TooLarge(f"more than {MAX_CANDIDATES} candidate interpretations")
                size = max([k - 1, *choice]) + 1
                f = defaultdict(set, {p: set(v) for p, v in forms.items()})
                for cp, host in zip(needy, choice):
                    f[host].add(cp)
                props = ip | set(choice)
                name = lambda b: f"d{b}"
                try:
                    yield Interpretation(
                        resources=tuple(name(b) for b in range(size)),
                        properties={name(b) for b in props},
                        conjectural_properties={name(b) for b in ipc},
                        extensions={name(p): {(name(x), name(y)) for x, y in v}
                                    for p, v in ext.items()},
                        conjectural_extensions={name(p): (name(x), name(y))
                                                for p, (x, y) in extc.items()},
                        conjectural_forms={name(p): {name(c) for c in v} for p, v in f.items()},
                        iri_map={t.value: name(blk(t)) for t in vocabulary if isinstance(t, IRI)},
                        literal_map={t.lexical: name(blk(t)) for t in vocabulary
                                     if isinstance(t, Literal)},
                    )
                except InvalidInterpretation:
                    continue


def all_interpretations(vocabulary: list[Term], size: int) -> Iterator[Interpretation]:
    """Literally every interpretation of ``vocabulary`` over ``size`` resources."""
    dom = [f"d{n}" for n in range(size)]
    pairs = [(x, y) for x in dom for y in dom]

    def subsets(xs):
        return itertools.chain.from_iterable(itertools.combinations(xs, r) for r in range(len(xs) + 1))

    iris = [t for t in vocabulary if isinstance(t, IRI)]
    lits = [t for t in vocabulary if isinstance(t, Literal)]
    for denot in itertools.product(dom, repeat=len(iris) + len(lits)):
        iri_map = {t.value: r for t, r in zip(iris, denot)}
        lit_map = {t.lexical: r for t, r in zip(lits, denot[len(iris):])}
        for labels in itertools.product((0, 1, 2), repeat=size):  # none, IP, IPC
            ip = [r for r, lab in zip(dom, labels) if lab == 1]
            ipc = [r for r, lab in zip(dom, labels) if lab == 2]
            for exts in itertools.product(*(list(subsets(pairs)) for _ in ip)):
                for extc_vals in itertools.product([None, *pairs], repeat=len(ipc)):
                    chosen = [v for v in extc_vals if v is not None]
                    if len(set(chosen)) < len(chosen):
                        continue
                    rel = [(p, c) for p in ip for c in ipc]
                    for forms in subsets(rel):
                        fm = defaultdict(set)
                        for p, c in forms:
                            fm[p].add(c)
                        yield Interpretation(
                            resources=tuple(dom), properties=ip, conjectural_properties=ipc,
                            extensions=dict(zip(ip, exts)),
                            conjectural_extensions={c: v for c, v in zip(ipc, extc_vals) if v},
                            conjectural_forms=fm, iri_map=iri_map, literal_map=lit_map)


def brute_force_entails(e: Dataset, g: Dataset, max_domain: int = 3,
                        exhaustive: bool = False) -> bool:
    """False iff some interpretation with at most ``max_domain`` resources
    satisfies ``e`` but not ``g``."""
    vocabulary = _vocabulary(e, g)
    g_triples = list(dict.fromkeys(g.all_triples()))
    e_triples = list(dict.fromkeys(e.all_triples()))
    if exhaustive:
        _check_size(vocabulary + e.blank_nodes(), max_domain)
        models = (i for n in range(1, max_domain + 1) for i in all_interpretations(vocabulary, n)
                  if find_assignment(e_triples, i) is not None)
    else:
        models = least_interpretations(e, vocabulary, max_domain)
    return all(find_assignment(g_triples, i) is not None for i in models)


class EntailmentOracle:
    """Caches least interpretations per premise and verdicts per (model, graph).

    All calls share one vocabulary so the caches stay valid across pairs.
    """

    def __init__(self, vocabulary: list[Term], max_domain: int = 3):
        self.vocabulary = list(vocabulary)
        self.max_domain = max_domain
        self._models: dict = {}
        self._truth: dict = {}

    def models(self, e: Dataset) -> list[Interpretation]:
        key = frozenset(e.quads())
        if key not in self._models:
            extra = [t for t in e.terms() if not isinstance(t, BNode) and t not in self.vocabulary]
            if extra:
                raise TooLarge(f"terms outside the oracle vocabulary: {extra}")
            self._models[key] = list(dict.fromkeys(
                least_interpretations(e, self.vocabulary, self.max_domain)))
        return self._models[key]

    def holds(self, i: Interpretation, g: Dataset) -> bool:
        key = (i, frozenset(g.all_triples()))
        if key not in self._truth:
            self._truth[key] = find_assignment(list(dict.fromkeys(g.all_triples())), i) is not None
        return self._truth[key]

    def entails(self, e: Dataset, g: Dataset) -> bool:
        return all(self.holds(i, g) for i in self.models(e))
