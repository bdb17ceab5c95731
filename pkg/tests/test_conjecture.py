import pytest
from hypothesis import given, settings, strategies as st

from conjectures.conjecture import (AlreadyConjectural, AmbiguousForm, PredicateMinter,
                                    conjectural_form_of, conjecture_triple, conjectures_in,
                                    local_name, validate_conjectural_graph, weaken_graph)
from conjectures.model import (Dataset, GraphKind, IRI, NamedGraph, Triple, is_link,
                               uniqueness_violations)
from conjectures.vocab import IS_CONJECTURAL_FORM_OF

from conftest import load
from strategies import triples

EX = "http://example.org/ex/"
a, b, c, p, q, g = (IRI(EX + x) for x in ("a", "b", "c", "p", "q", "g"))
LINK = IRI(IS_CONJECTURAL_FORM_OF)


@pytest.mark.parametrize("iri, expected", [
    ("http://purl.org/dc/terms/creator", "creator"),
    ("http://www.w3.org/ns/prov#wasAttributedTo", "wasAttributedTo"),
    ("http://x/9lives", "p9lives"),
    ("http://x/a.b", "a_b"),
    ("urn:isbn:123", "p123"),
])
def test_local_name(iri, expected):
    assert local_name(iri) == expected


def test_conjecture_triple_mints_fresh_predicate_and_link():
    m = PredicateMinter()
    t = Triple(a, p, b)
    conj, link, rec = conjecture_triple(t, m)
    assert (conj.s, conj.o) == (a, b) and conj.p != p
    assert link == Triple(conj.p, LINK, p)
    assert rec.original_predicate == p and rec.conjectural_predicate == conj.p
    again, _, _ = conjecture_triple(t, m)
    assert again.p != conj.p


def test_conjecturing_a_conjectural_predicate_is_refused():
    m = PredicateMinter()
    conj, _, _ = conjecture_triple(Triple(a, p, b), m)
    with pytest.raises(AlreadyConjectural):
        conjecture_triple(conj, m)


def test_minter_skips_taken_labels_and_iris():
    d = Dataset((Triple(a, p, b),), prefixes={"conj0001": "http://x/"})
    m = PredicateMinter.for_dataset(d)
    assert m.new_namespace().endswith("conj0002/")
    ns = m.new_namespace()
    first = m.mint(p, ns)
    second = m.mint(p, ns)
    assert first.value == ns + "p" and second.value == ns + "p_2"


def test_weaken_graph_shares_one_namespace():
    m = PredicateMinter()
    ng = weaken_graph(g, [Triple(a, p, b), Triple(b, q, c), Triple(a, p, b)], m)
    assert ng.kind is GraphKind.CONJECTURAL
    assert len(ng) == 4
    cps = [t.p for t in ng if not is_link(t)]
    assert len({x.value.rsplit("/", 1)[0] for x in cps}) == 1
    assert weaken_graph(g, [], m).triples == ()


def test_conjectural_form_lookup():
    d = load("devere")
    cp = IRI("http://example.org/exampleDoc/conj001/creator")
    assert conjectural_form_of(cp, d) == IRI("http://purl.org/dc/terms/creator")
    assert conjectural_form_of(IRI("http://purl.org/dc/terms/creator"), d) is None
    twice = d.with_default([Triple(cp, LINK, p)])
    with pytest.raises(AmbiguousForm):
        conjectural_form_of(cp, twice)


def test_conjectures_in_skips_links():
    d = load("nested")
    got = {str(t.p).rsplit("/", 1)[-1] for g in d.named_graphs for t in conjectures_in(g, d)}
    assert got == {"creator>", "wasAttributedTo>", "wasInformedBy>"}


def _codes(body, lenient=False):
    ng = NamedGraph(g, GraphKind.CONJECTURAL, tuple(body))
    return validate_conjectural_graph(ng, Dataset((), (ng,)), lenient).codes()


cp1 = IRI(EX + "cp1")


def test_validator_codes():
    assert _codes([Triple(a, cp1, b), Triple(cp1, LINK, p)]) == []
    assert _codes([Triple(a, cp1, b), Triple(cp1, LINK, p), Triple(a, p, c)]) == ["non-conjectural-triple"]
    assert _codes([Triple(a, cp1, b), Triple(cp1, LINK, p), Triple(a, p, c)], lenient=True) == []
    assert _codes([Triple(a, cp1, b), Triple(a, cp1, c), Triple(cp1, LINK, p)]) == ["uniqueness"]
    assert _codes([Triple(a, cp1, b), Triple(cp1, LINK, p), Triple(cp1, LINK, q)]) == ["ambiguous-form"]


def test_missing_form_when_link_lives_elsewhere_only():
    ng = NamedGraph(g, GraphKind.CONJECTURAL, (Triple(a, cp1, b), Triple(IRI(EX + "cp2"), LINK, p)))
    d = Dataset((Triple(cp1, LINK, p),), (ng,))
    assert validate_conjectural_graph(ng, d).codes() == ["missing-form"]


@settings(max_examples=100)
@given(st.lists(triples, min_size=1, max_size=20))
def test_weakened_graphs_never_reuse_a_predicate(body):
    m = PredicateMinter()
    graphs = tuple(weaken_graph(IRI(f"{EX}g{k}"), body, m) for k in range(3))
    d = Dataset((), graphs)
    assert uniqueness_violations(d) == {}
    for ng in graphs:
        assert validate_conjectural_graph(ng, d).ok
        assert len(conjectures_in(ng, d)) == len(set(body))
