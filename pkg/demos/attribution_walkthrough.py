"""Walk one attribution from strong claim to conjecture, collapse and cascade.

Run from the repository root: ``python3 demos/attribution_walkthrough.py``.
"""

from pathlib import Path

from conjectures.collapse import cascade, collapse_conjecture
from conjectures.model import IRI
from conjectures.semantics import canonical_interpretation, entails, evaluate_nested, satisfies_dataset
from conjectures.syntax import parse, serialize
from conjectures.validate import validate_dataset

LISTINGS = Path(__file__).resolve().parent.parent / "tests" / "corpus" / "listings"
DOC = "http://example.org/exampleDoc#"


def load(name):
    return parse((LISTINGS / f"{name}.trigc").read_text(encoding="utf-8"))


def show(title, d):
    print(f"== {title}")
    print(serialize(d))


d = load("collapse_conjecture")
show("input", d)
print("valid:", validate_dataset(d).ok)

i = canonical_interpretation(d)
print("least model satisfies it:", satisfies_dataset(d, i).value)
for name, verdict in evaluate_nested(d, i).items():
    print(f"  nested conjecture {name.value} holds: {verdict.value}")

step = collapse_conjecture(IRI(DOC + "collapseOfAttribution01"), d,
                           IRI(DOC + "collapseOfcollapseOfAttribution01"))
final = cascade(step)
show("after collapsing the outer conjecture and cascading", final)
print("result entails the input:", entails(final, d))
print("input entails the result:", entails(d, final))
