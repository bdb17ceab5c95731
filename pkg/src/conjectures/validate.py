"""Whole-dataset validation: graph validators plus dataset-wide uniqueness."""

from __future__ import annotations

from .collapse import validate_collapse_graph
from .conjecture import validate_conjectural_graph
from .model import Dataset, GraphKind, ModelError, term_key, uniqueness_violations
from .report import ValidationReport, Violation


class InvalidDataset(ModelError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(map(str, report.violations)) or "invalid dataset")


def validate_dataset(d: Dataset, lenient: bool = False) -> ValidationReport:
    report = ValidationReport()
    for g in d.named_graphs:
        if g.kind is GraphKind.CONJECTURAL:
            report += validate_conjectural_graph(g, d, lenient)
        elif g.kind is GraphKind.COLLAPSE:
            report += validate_collapse_graph(g, d)
    # Per-graph checks already catch reuse inside one graph; this catches
    # the same conjectural predicate bound to different pairs across graphs.
    local = {v.triple.p for v in report.violations if v.code == "uniqueness" and v.triple}
    for cp, pairs in sorted(uniqueness_violations(d).items(), key=lambda kv: term_key(kv[0])):
        if cp not in local:
            report += ValidationReport((Violation(
                "uniqueness", f"conjectural predicate {cp} is used with {len(pairs)} "
                              f"distinct (subject, object) pairs in the dataset"),))
    return report


def require_valid(d: Dataset, lenient: bool = False) -> None:
    report = validate_dataset(d, lenient)
    if not report.ok:
        raise InvalidDataset(report)
