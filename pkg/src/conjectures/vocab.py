"""Fixed IRIs of the conjectures vocabulary."""

CONJ_NS = "http://w3id.org/conjectures/"

IS_CONJECTURAL_FORM_OF = CONJ_NS + "isAConjecturalFormOf"
COLLAPSES = CONJ_NS + "collapses"

# Namespace under which fresh conjectural predicates are minted by default.
MINTED_NS = CONJ_NS + "minted/"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
