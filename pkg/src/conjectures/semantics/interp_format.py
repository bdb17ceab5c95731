"""Reader and writer for ``.interp`` interpretation files.

One directive per line, ``#`` starts a comment::

    IR: dVWH h c cc1 e iacf
    IP: c iacf
    IPC: cc1
    IS: :Hamlet -> h
    IL: "text" -> res
    IEXT: iacf { (cc1, c) }
    IEXTC: cc1 (h, e)
    CONJFORM: c { cc1 }

Resources are bare words.  Names left of ``->`` use the prefixes of the
dataset the file describes (``conj:`` is always available).  Repeated
``IEXT`` or ``CONJFORM`` lines for one property accumulate.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Mapping

from ..model import IRI, Literal, ModelError
from ..syntax import DEFAULT_PREFIXES, TermWriter
from .interpretation import Interpretation

DIRECTIVES = ("IR", "IP", "IPC", "IS", "IL", "IEXT", "IEXTC", "CONJFORM")

_RES = r"[A-Za-z0-9_.-]+"
_PAIR = re.compile(rf"\(\s*({_RES})\s*,\s*({_RES})\s*\)")
_SET_LINE = re.compile(rf"^({_RES})\s*\{{(.*)\}}\s*$")
_EXTC_LINE = re.compile(rf"^({_RES})\s*\{{?\s*\(\s*({_RES})\s*,\s*({_RES})\s*\)\s*\}}?\s*$")
_RES_ONLY = re.compile(rf"^{_RES}$")
_UNESCAPE = {"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\"}


class InterpFormatError(ModelError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _strip_comment(line: str) -> str:
    # '#' inside "literals" or <iris> is data, not a comment.
    out, quoted, esc, in_iri = [], False, False, False
    for ch in line:
        if quoted:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                quoted = False
        elif in_iri:
            in_iri = ch != ">"
        elif ch == '"':
            quoted = True
        elif ch == "<":
            in_iri = True
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out).strip()


def _unquote(s: str, n: int) -> str:
    if len(s) < 2 or not (s.startswith('"') and s.endswith('"')):
        raise InterpFormatError(n, f"expected a quoted literal, got {s!r}")
    return re.sub(r"\\(.)", lambda m: _UNESCAPE.get(m.group(1), m.group(1)), s[1:-1])


def _resolve(name: str, prefixes: Mapping[str, str], n: int) -> str:
    if name.startswith("<") and name.endswith(">"):
        return name[1:-1]
    if ":" not in name:
        raise InterpFormatError(n, f"{name!r} is neither <iri> nor a prefixed name")
    label, local = name.split(":", 1)
    table = {**DEFAULT_PREFIXES, **prefixes}
    if label not in table:
        raise InterpFormatError(n, f"unbound prefix {label!r}")
    return table[label] + local


def _resource(word: str, n: int) -> str:
    if not _RES_ONLY.match(word):
        raise InterpFormatError(n, f"bad resource identifier {word!r}")
    return word


def read_interp(text: str, prefixes: Mapping[str, str] = {}) -> Interpretation:
    resources: list[str] = []
    props, cprops = [], []
    ext: dict = defaultdict(set)
    extc: dict = {}
    forms: dict = defaultdict(set)
    iri_map, lit_map = {}, {}
    # Only \n ends a line; splitlines() would also break on \x1e, \u2028 and friends.
    for n, raw in enumerate(text.split("\n"), 1):
        raw = raw.removesuffix("\r")
        line = _strip_comment(raw)
        if not line:
            continue
        directive, sep, rest = line.partition(":")
        directive, rest = directive.strip(), rest.strip()
        if not sep or directive not in DIRECTIVES:
            raise InterpFormatError(n, f"unknown directive {directive!r}")
        if directive in ("IR", "IP", "IPC"):
            words = [_resource(w, n) for w in rest.split()]
            {"IR": resources, "IP": props, "IPC": cprops}[directive].extend(words)
        elif directive in ("IS", "IL"):
            left, arrow, right = rest.rpartition("->")
            if not arrow:
                raise InterpFormatError(n, "expected 'name -> resource'")
            left, right = left.strip(), _resource(right.strip(), n)
            if directive == "IS":
                iri_map[_resolve(left, prefixes, n)] = right
            else:
                lit_map[_unquote(left, n)] = right
        elif directive == "IEXTC":
            m = _EXTC_LINE.match(rest)
            if not m:
                raise InterpFormatError(n, "expected 'cp (x, y)'")
            if m.group(1) in extc:
                raise InterpFormatError(n, f"IEXTC({m.group(1)}) given twice")
            extc[m.group(1)] = (m.group(2), m.group(3))
        else:
            m = _SET_LINE.match(rest)
            if not m:
                raise InterpFormatError(n, f"expected 'p {{ ... }}' after {directive}")
            key, body = m.group(1), m.group(2).strip()
            if directive == "IEXT":
                pairs = _PAIR.findall(body)
                if _PAIR.sub("", body).replace(",", "").strip():
                    raise InterpFormatError(n, f"cannot read pairs in {body!r}")
                ext[key].update(pairs)
            else:
                forms[key].update(_resource(w, n) for w in body.replace(",", " ").split())
    try:
        return Interpretation(tuple(resources), frozenset(props), frozenset(cprops), dict(ext),
                              extc, dict(forms), iri_map, lit_map)
    except ModelError as e:
        raise InterpFormatError(0, str(e)) from e


def write_interp(i: Interpretation, prefixes: Mapping[str, str] = {}) -> str:
    """Deterministic text for ``i``; sets follow IR order, names are sorted."""
    w = TermWriter({**DEFAULT_PREFIXES, **prefixes})
    order = {r: k for k, r in enumerate(i.resources)}
    ordered = lambda xs: sorted(xs, key=order.__getitem__)
    pair_key = lambda p: (order[p[0]], order[p[1]])
    out = [
        "IR: " + " ".join(i.resources),
        ("IP: " + " ".join(ordered(i.properties))).rstrip(),
        ("IPC: " + " ".join(ordered(i.conjectural_properties))).rstrip(),
    ]
    out += sorted(f"IS: {w.term(IRI(k))} -> {v}" for k, v in i.iri_map.items())
    out += sorted(f"IL: {w.term(Literal(k))} -> {v}" for k, v in i.literal_map.items())
    for p in ordered(i.properties):
        pairs = ", ".join(f"({x}, {y})" for x, y in sorted(i.ext(p), key=pair_key))
        out.append(f"IEXT: {p} {{ {pairs} }}" if pairs else f"IEXT: {p} {{ }}")
    for cp in ordered(i.conjectural_extensions):
        x, y = i.conjectural_extensions[cp]
        out.append(f"IEXTC: {cp} ({x}, {y})")
    for p in ordered(k for k, v in i.conjectural_forms.items() if v):
        out.append(f"CONJFORM: {p} {{ {', '.join(ordered(i.forms(p)))} }}")
    return "\n".join(out) + "\n"
