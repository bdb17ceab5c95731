"""Reader and writer for ``.trigc`` documents.

The syntax is a small TriG-like language::

    doc             := (prefix | tripleStmt | graphBlock | conjectureBlock)*
    prefix          := "@prefix" PNAME_NS IRIREF ["."] | "PREFIX" PNAME_NS IRIREF
    graphBlock      := ["GRAPH"] name "{" tripleStmt* "}"
    conjectureBlock := "CONJECTURE" name "{" tripleStmt* "}"
    tripleStmt      := subject predicateObjectList "."
    predicateObjectList := verb objectList (";" [verb objectList])*
    objectList      := object ("," object)*

Terms are ``<iri>``, ``prefix:local``, ``_:label``, ``"literal"`` and the
keyword ``a`` for rdf:type.  ``#`` starts a comment.  Strong-form
``CONJECTURE`` blocks are lowered to weak-form conjectural graphs while
parsing; the writer only ever produces the weak form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .conjecture import PredicateMinter, weaken_graph
from .model import (BNode, Dataset, GraphKind, IRI, Literal, ModelError, NamedGraph, Term,
                    Triple, escape_string, is_link)
from .vocab import COLLAPSES, CONJ_NS, MINTED_NS, RDF_TYPE

DEFAULT_PREFIXES = {"conj": CONJ_NS}


@dataclass(frozen=True)
class SourceSpan:
    start: int  # byte offsets into the UTF-8 encoding
    end: int
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ModelError):
    KINDS = ("lex", "syntax", "prefix-unbound", "graph-redeclared")

    def __init__(self, kind: str, message: str, span: SourceSpan):
        assert kind in self.KINDS and message
        super().__init__(f"{span}: {kind}: {message}")
        self.kind = kind
        self.message = message
        self.span = span


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<bnode>_:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)
  | (?P<directive>@prefix\b)
  | (?P<pname>(?:[A-Za-z](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?:
               (?:[A-Za-z0-9_](?:[A-Za-z0-9_.:-]*[A-Za-z0-9_:-])?)?)
  | (?P<word>[A-Za-z]+)
  | (?P<punct>[{}.;,])
""", re.VERBOSE)

_UNESCAPE = {"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


class _Positions:
    """Maps character offsets to byte offsets and line/column numbers."""

    def __init__(self, text: str):
        self.text = text
        self.lines = [0] + [m.end() for m in re.finditer("\n", text)]

    def span(self, start: int, end: int) -> SourceSpan:
        start = max(0, min(start, len(self.text)))
        end = max(start, min(end, len(self.text)))
        lo, hi = 0, len(self.lines) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.lines[mid] <= start:
                lo = mid
            else:
                hi = mid - 1
        b0 = len(self.text[:start].encode("utf-8"))
        b1 = b0 + len(self.text[start:end].encode("utf-8"))
        return SourceSpan(b0, b1, lo + 1, start - self.lines[lo] + 1)


def _tokenize(text: str, pos: _Positions) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError("lex", f"unexpected character {text[i]!r}", pos.span(i, i + 1))
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        i = m.end()
    return toks


@dataclass
class ParsedDocument:
    """A parsed dataset plus the source span of every triple occurrence."""

    dataset: Dataset
    spans: dict[tuple[Optional[IRI], Triple], SourceSpan] = field(default_factory=dict)

    def span_of(self, graph: Optional[IRI], triple: Triple) -> Optional[SourceSpan]:
        return self.spans.get((graph, triple))


class _Parser:
    def __init__(self, text: str, minted_base: str):
        self.pos = _Positions(text)
        self.toks = _tokenize(text, self.pos)
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.minted_base = minted_base
        self.default: list[Triple] = []
        # name -> ("graph" | "conjecture", triples)
        self.blocks: dict[IRI, tuple[str, list[Triple]]] = {}
        self.spans: dict[tuple[Optional[IRI], Triple], SourceSpan] = {}

    # -- token helpers --------------------------------------------------

    def peek(self, k: int = 0) -> Optional[_Tok]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def span(self, tok: Optional[_Tok]) -> SourceSpan:
        if tok is None:
            n = len(self.pos.text)
            return self.pos.span(n, n)
        return self.pos.span(tok.start, tok.end)

    def fail(self, message: str, tok: Optional[_Tok] = None, kind: str = "syntax"):
        tok = tok if tok is not None else self.peek()
        raise ParseError(kind, message, self.span(tok))

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != text:
            self.fail(f"expected {text!r}" + (f", found {tok.text!r}" if tok else ""))
        return self.next()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind in ("punct", "word", "directive") and tok.text == text

    # -- terms ----------------------------------------------------------

    def iri(self, tok: _Tok) -> IRI:
        if tok.kind == "iri":
            value = tok.text[1:-1]
        elif tok.kind == "pname":
            label, _, local = tok.text.partition(":")
            ns = self.prefixes.get(label, DEFAULT_PREFIXES.get(label))
            if ns is None:
                self.fail(f"prefix {label!r} is not bound", tok, "prefix-unbound")
            value = ns + local
        elif tok.kind == "word" and tok.text == "a":
            value = RDF_TYPE
        else:
            self.fail(f"expected an IRI, found {tok.text!r}", tok)
        try:
            return IRI(value)
        except ModelError as e:
            self.fail(str(e), tok, "lex")

    def term(self, tok: _Tok) -> Term:
        if tok.kind == "bnode":
            return BNode(tok.text[2:])
        if tok.kind == "string":
            body = tok.text[1:-1]
            try:
                return Literal(re.sub(r"\\(.)", lambda m: _UNESCAPE[m.group(1)], body))
            except KeyError:
                self.fail("unknown escape sequence in string", tok, "lex")
        return self.iri(tok)

    # -- grammar --------------------------------------------------------

    def document(self):
        while self.peek() is not None:
            tok = self.peek()
            if tok.kind == "directive" or (tok.kind == "word" and tok.text == "PREFIX"):
                self.prefix_decl()
            elif tok.kind == "word" and tok.text in ("GRAPH", "CONJECTURE"):
                self.next()
                self.block("conjecture" if tok.text == "CONJECTURE" else "graph")
            elif (nxt := self.peek(1)) is not None and nxt.kind == "punct" and nxt.text == "{":
                self.block("graph")
            else:
                self.statement(None, self.default)

    def prefix_decl(self):
        sparql = self.next().kind == "word"
        label_tok = self.next()
        if label_tok.kind != "pname" or not label_tok.text.endswith(":") \
                or label_tok.text.count(":") != 1:
            self.fail("expected a prefix label such as 'ex:'", label_tok)
        ns_tok = self.next()
        if ns_tok.kind != "iri":
            self.fail("expected a namespace IRI", ns_tok)
        self.prefixes[label_tok.text[:-1]] = ns_tok.text[1:-1]
        if not sparql and self.at("."):
            self.next()

    def block(self, kind: str):
        name_tok = self.next()
        name = self.iri(name_tok)
        if name in self.blocks:
            self.fail(f"graph {name} is declared twice", name_tok, "graph-redeclared")
        self.expect("{")
        body: list[Triple] = []
        self.blocks[name] = (kind, body)
        while not self.at("}"):
            if self.peek() is None:
                self.fail("unterminated graph block", name_tok)
            self.statement(name, body)
        self.next()

    def statement(self, graph: Optional[IRI], out: list[Triple]):
        first = self.next()
        subj = self.term(first)
        if not isinstance(subj, (IRI, BNode)):
            self.fail("a literal cannot be a subject", first)
        while True:
            pred = self.iri(self.next())
            while True:
                otok = self.next()
                t = Triple(subj, pred, self.term(otok))
                out.append(t)
                self.spans.setdefault((graph, t), self.pos.span(first.start, otok.end))
                if not self.at(","):
                    break
                self.next()
            if not self.at(";"):
                break
            while self.at(";"):
                self.next()
            if self.at(".") or self.at("}"):
                break
        if graph is not None and self.at("}"):
            # A final triple may omit its dot before the closing brace.
            return
        self.expect(".")


def infer_kind(triples: Iterable[Triple]) -> GraphKind:
    """Conjectural if any link triple is present, else collapse if an
    effective ``conj:collapses`` triple is present, else plain."""
    triples = list(triples)
    if any(is_link(t) for t in triples):
        return GraphKind.CONJECTURAL
    if any(t.p.value == COLLAPSES for t in triples):
        return GraphKind.COLLAPSE
    return GraphKind.PLAIN


def parse_document(text: str, minted_base: str = MINTED_NS) -> ParsedDocument:
    p = _Parser(text, minted_base)
    p.document()

    provisional = Dataset(
        tuple(p.default),
        tuple(NamedGraph(n, GraphKind.PLAIN, tuple(b)) for n, (_, b) in p.blocks.items()),
        p.prefixes)
    minter = PredicateMinter.for_dataset(provisional, minted_base)

    graphs = []
    spans = dict(p.spans)
    for name, (kind, body) in p.blocks.items():
        if kind == "conjecture":
            g = weaken_graph(name, body, minter)
            for rec in minter.records:
                if rec.graph == name:
                    src = spans.get((name, Triple(rec.subject, rec.original_predicate, rec.object)))
                    if src is not None:
                        for t in g.triples:
                            if rec.conjectural_predicate in (t.p, t.s):
                                spans[(name, t)] = src
        else:
            g = NamedGraph(name, infer_kind(body), tuple(body))
        graphs.append(g)
    prefixes = dict(p.prefixes)
    if minter.prefixes:
        # Lowering introduced links, so make the conj vocabulary readable.
        prefixes.setdefault("conj", CONJ_NS)
    prefixes.update(minter.prefixes)
    return ParsedDocument(Dataset(tuple(p.default), tuple(graphs), prefixes), spans)


def parse(text: str, minted_base: str = MINTED_NS) -> Dataset:
    return parse_document(text, minted_base).dataset


# -- writing ------------------------------------------------------------------

_LOCAL_OK = re.compile(r"(?:[A-Za-z0-9_](?:[A-Za-z0-9_.:-]*[A-Za-z0-9_:-])?)?$")


class TermWriter:
    """Abbreviates IRIs with a prefix table (longest namespace wins)."""

    def __init__(self, prefixes):
        self.prefixes = sorted(prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    def iri(self, value: str) -> str:
        for label, ns in self.prefixes:
            if value.startswith(ns) and _LOCAL_OK.match(value[len(ns):]):
                return f"{label}:{value[len(ns):]}"
        return f"<{value}>"

    def term(self, t: Term) -> str:
        if isinstance(t, IRI):
            return self.iri(t.value)
        if isinstance(t, BNode):
            return f"_:{t.label}"
        return '"' + escape_string(t.lexical) + '"'

    def triple(self, t: Triple) -> str:
        return f"{self.term(t.s)} {self.term(t.p)} {self.term(t.o)} ."


def serialize(d: Dataset) -> str:
    """Deterministic weak-form rendering of ``d``."""
    w = TermWriter(d.prefixes)
    parts = []
    if d.prefixes:
        parts.append("".join(f"@prefix {k}: <{v}> .\n" for k, v in sorted(d.prefixes.items())))
    for g in d.named_graphs:
        body = "".join(f"    {w.triple(t)}\n" for t in g.triples)
        parts.append(f"GRAPH {w.term(g.name)} {{\n{body}}}\n")
    if d.default_graph:
        parts.append("".join(w.triple(t) + "\n" for t in d.default_graph))
    return "\n".join(parts)
