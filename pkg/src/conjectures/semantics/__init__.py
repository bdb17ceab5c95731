"""Extended simple interpretations, satisfaction and entailment."""

from .canonical import LeastModel, Unsatisfiable, canonical_interpretation, entails, least_model
from .conditions import (CyclicNesting, MissingGraph, evaluate_nested, nesting_order,
                         satisfies_cascade, satisfies_collapse)
from .interpretation import (BlankNodeAssignment, Interpretation, InvalidInterpretation,
                             UnmappedTerm, denote)
from .satisfaction import (ExhaustionError, TraceEntry, Verdict, find_assignment, is_model,
                           satisfies_dataset, satisfies_graph, satisfies_triple)
from .interp_format import InterpFormatError, read_interp, write_interp
from .oracle import EntailmentOracle, TooLarge, brute_force_entails
