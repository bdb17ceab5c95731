"""Dataset isomorphism up to blank node relabeling."""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Optional

from .model import BNode, Dataset


def _has_blank(q) -> bool:
    return any(isinstance(x, BNode) for x in q)


def _signatures(quads: set) -> dict[BNode, tuple]:
    # Each blank node is summarised by the quads it occurs in, with every
    # blank node masked out; isomorphic nodes get identical signatures.
    sig = defaultdict(list)
    for q in quads:
        shape = tuple("*" if isinstance(x, BNode) else repr(x) for x in q)
        for i, x in enumerate(q):
            if isinstance(x, BNode):
                sig[x].append((i, shape))
    return {b: tuple(sorted(v)) for b, v in sig.items()}


def find_bijection(a: Dataset, b: Dataset) -> Optional[dict[BNode, BNode]]:
    """Return a blank node bijection mapping ``a`` onto ``b``, or None."""
    if {g.name: g.kind for g in a.named_graphs} != {g.name: g.kind for g in b.named_graphs}:
        return None
    qa, qb = set(a.quads()), set(b.quads())
    if len(qa) != len(qb):
        return None
    if {q for q in qa if not _has_blank(q)} != {q for q in qb if not _has_blank(q)}:
        return None
    sa, sb = _signatures(qa), _signatures(qb)
    if Counter(sa.values()) != Counter(sb.values()):
        return None
    if not sa:
        return {}

    candidates = {x: [y for y in sorted(sb, key=lambda n: n.label) if sb[y] == sa[x]]
                  for x in sa}
    order = sorted(sa, key=lambda x: (len(candidates[x]), x.label))
    blank_quads = [q for q in qa if _has_blank(q)]
    mapping: dict[BNode, BNode] = {}
    used: set[BNode] = set()

    def image(q):
        return tuple(mapping.get(x, x) if isinstance(x, BNode) else x for x in q)

    def consistent(x) -> bool:
        for q in blank_quads:
            if x in q and all(not isinstance(y, BNode) or y in mapping for y in q):
                if image(q) not in qb:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(x) and search(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if search(0) else None


def isomorphic(a: Dataset, b: Dataset) -> bool:
    """Graph-structure isomorphism; prefix tables are ignored."""
    return find_bijection(a, b) is not None
