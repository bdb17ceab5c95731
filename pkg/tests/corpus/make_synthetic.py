"""Regenerate the synthetic .trigc corpus.

    python3 tests/corpus/make_synthetic.py

Output is deterministic (fixed seeds), so rerunning leaves the files
unchanged.  Each file mixes the syntax the parser accepts: both prefix
directive styles, optional GRAPH keywords, strong-form CONJECTURE blocks,
weak conjectural graphs, collapse graphs, predicate and object lists,
``a``, literals with escapes, blank nodes and comments.
"""

import random
from pathlib import Path

OUT = Path(__file__).parent / "synthetic"
COUNT = 24

NAMESPACES = {
    "": "http://example.org/synthetic#",
    "ex": "http://example.org/ex/",
    "dc": "http://purl.org/dc/terms/",
    "prov": "http://www.w3.org/ns/prov#",
    "foaf": "http://xmlns.com/foaf/0.1/",
}
LOCALS = ["Hamlet", "Othello", "Lear", "Marlowe", "Bacon", "Oxford", "Globe", "Folio1623",
          "alice", "bob", "item-7", "x_y", "n42"]
PREDICATES = ["dc:creator", "dc:title", "prov:wasAttributedTo", "prov:wasInformedBy",
              "foaf:knows", "ex:rel", "ex:near"]
STRINGS = ["plain", "with \\\"quotes\\\"", "tab\\there", "line\\nbreak", "ünïcødé", "", "#not a comment"]


def term(rng, allow_literal=False, blanks=("b1", "b2")):
    roll = rng.random()
    if allow_literal and roll < 0.2:
        return f'"{rng.choice(STRINGS)}"'
    if roll < 0.32:
        return f"_:{rng.choice(blanks)}"
    if roll < 0.4:
        return f"<http://example.org/abs/{rng.choice(LOCALS)}>"
    prefix = rng.choice(["", "ex"])
    return f"{prefix}:{rng.choice(LOCALS)}"


def statements(rng, n):
    out = []
    for _ in range(n):
        s = term(rng)
        style = rng.random()
        if style < 0.2:
            objs = ", ".join(term(rng, True) for _ in range(rng.randint(2, 3)))
            out.append(f"{s} {rng.choice(PREDICATES)} {objs} .")
        elif style < 0.35:
            out.append(f"{s} {rng.choice(PREDICATES)} {term(rng, True)} ;\n"
                       f"        {rng.choice(PREDICATES)} {term(rng, True)} .")
        elif style < 0.45:
            out.append(f"{s} a {rng.choice(['ex:Play', 'foaf:Person'])} .")
        else:
            out.append(f"{s} {rng.choice(PREDICATES)} {term(rng, True)} .")
    return out


def document(seed: int) -> str:
    rng = random.Random(seed)
    lines = [f"# synthetic corpus file {seed:02d}"]
    for label, ns in NAMESPACES.items():
        if rng.random() < 0.5:
            lines.append(f"@prefix {label}: <{ns}> .")
        else:
            lines.append(f"PREFIX {label}: <{ns}>")
    lines.append("@prefix conj: <http://w3id.org/conjectures/> .")
    weak_ns = f"http://example.org/synthetic/w{seed:02d}/"
    lines.append(f"@prefix w{seed:02d}: <{weak_ns}> .")
    lines.append("")
    conjectures, effective = [], {}
    for k in range(rng.randint(1, 3)):
        name = f":conjecture{seed:02d}_{k}"
        conjectures.append(name)
        if rng.random() < 0.5:
            body = "\n".join("    " + st for st in statements(rng, rng.randint(1, 3)))
            lines += [f"CONJECTURE {name} {{", body, "}", ""]
        else:
            pairs, effective[name] = [], []
            for j in range(rng.randint(1, 3)):
                local = f"p{k}_{j}"
                subj, obj, pred = term(rng), term(rng, True), rng.choice(PREDICATES)
                pairs.append(f"    {subj} w{seed:02d}:{local} {obj} .")
                pairs.append(f"    w{seed:02d}:{local} conj:isAConjecturalFormOf {pred} .")
                effective[name].append(f"    {subj} {pred} {obj} .")
            kw = "GRAPH " if rng.random() < 0.5 else ""
            lines += [f"{kw}{name} {{", *pairs, "}", ""]
    if rng.random() < 0.6:
        body = "\n".join("    " + st for st in statements(rng, rng.randint(1, 3)))
        lines += [f"GRAPH :plain{seed:02d} {{  # an ordinary named graph", body, "}", ""]
    if effective and rng.random() < 0.7:
        target = rng.choice(sorted(effective))
        lines += [f":collapse{seed:02d} {{", *effective[target],
                  f"    :collapse{seed:02d} conj:collapses {target} .",
                  "}", ""]
    lines += statements(rng, rng.randint(0, 3))
    for name in conjectures:
        if rng.random() < 0.5:
            lines.append(f"{name} prov:wasAttributedTo :{rng.choice(LOCALS)} .")
    return "\n".join(lines) + "\n"


def main():
    OUT.mkdir(exist_ok=True)
    for seed in range(COUNT):
        (OUT / f"synthetic_{seed:02d}.trigc").write_text(document(seed), encoding="utf-8")


if __name__ == "__main__":
    main()
