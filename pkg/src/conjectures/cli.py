"""Command-line front end.

Datasets and interpretations go to standard output; validation reports,
verdict traces and errors go to standard error.  Exit codes: 0 success or
true, 1 violation or false, 2 usage or input error, 3 internal limit.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from .collapse import CycleDetected, MissingForm, NotConjectural, cascade, collapse_conjecture
from .conjecture import AmbiguousForm
from .model import Dataset, DuplicateGraph, GraphKind, IRI, ModelError
from .semantics import (ExhaustionError, TooLarge, UnmappedTerm, Unsatisfiable,
                        brute_force_entails, canonical_interpretation, entails, evaluate_nested,
                        read_interp, satisfies_cascade, satisfies_dataset, write_interp)
from .semantics.interp_format import InterpFormatError
from .syntax import DEFAULT_PREFIXES, ParseError, TermWriter, parse_document, serialize
from .validate import InvalidDataset, validate_dataset

OK, FALSE, USAGE, LIMIT = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _err(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise _InputError(f"{path}: {e}") from e


def _load(path: str):
    try:
        return parse_document(_read(path))
    except ParseError as e:
        raise _InputError(f"{path}:{e}") from e


def resolve_name(text: str, prefixes) -> IRI:
    """``<iri>``, ``prefix:local`` or an absolute IRI, as typed on the command line."""
    if text.startswith("<") and text.endswith(">"):
        return IRI(text[1:-1])
    label, sep, local = text.partition(":")
    table = {**DEFAULT_PREFIXES, **prefixes}
    if sep and label in table:
        return IRI(table[label] + local)
    if sep and local.startswith("//"):
        return IRI(text)
    raise _InputError(f"cannot resolve graph name {text!r}")


def cmd_validate(args) -> int:
    doc = _load(args.path)
    report = validate_dataset(doc.dataset, args.lenient)
    for v in report.violations:
        span = doc.spans.get((v.graph, v.triple)) if v.triple is not None else None
        where = f"{args.path}:{span}" if span else args.path
        _err(_abbreviate(f"{where}: {v}", doc.dataset.prefixes))
    return OK if report.ok else FALSE


def cmd_weaken(args) -> int:
    sys.stdout.write(serialize(_load(args.path).dataset))
    return OK


def cmd_collapse(args) -> int:
    d = _load(args.path).dataset
    target = resolve_name(args.graph, d.prefixes)
    new = resolve_name(args.new_name, d.prefixes) if args.new_name else None
    try:
        out = collapse_conjecture(target, d, new)
    except (NotConjectural, MissingForm, DuplicateGraph, AmbiguousForm) as e:
        _err(str(e))
        return FALSE
    sys.stdout.write(serialize(out))
    return OK


def cmd_cascade(args) -> int:
    d = _load(args.path).dataset
    try:
        out = cascade(d)
    except (CycleDetected, MissingForm, AmbiguousForm) as e:
        _err(str(e))
        return FALSE
    sys.stdout.write(serialize(out))
    return OK


def _abbreviate(text: str, prefixes) -> str:
    w = TermWriter({**DEFAULT_PREFIXES, **prefixes})
    return re.sub(r"<([^<>\s,]+)>", lambda m: w.iri(m.group(1)), text)


def _model_verdicts(d: Dataset, i, lenient: bool) -> bool:
    def report(text):
        if text:
            _err(_abbreviate(text, d.prefixes))

    verdict = satisfies_dataset(d, i, require_conjform=not lenient)
    report(verdict.text())
    ok = verdict.value
    nested = evaluate_nested(d, i, require_conjform=not lenient)
    for name, v in nested.items():
        report(f"[{'ok  ' if v.value else 'FAIL'}] nested conjecture {name}")
        ok &= v.value
    if d.graphs_of_kind(GraphKind.COLLAPSE):
        v = satisfies_cascade(d, i)
        report(v.text())
        ok &= v.value
    return ok


def cmd_check_model(args) -> int:
    d = _load(args.data).dataset
    try:
        i = read_interp(_read(args.interp), d.prefixes)
        ok = _model_verdicts(d, i, args.lenient)
    except (InterpFormatError, UnmappedTerm) as e:
        raise _InputError(f"{args.interp}: {e}") from e
    _err("model" if ok else "not a model")
    return OK if ok else FALSE


def cmd_find_model(args) -> int:
    d = _load(args.data).dataset
    try:
        i = canonical_interpretation(d, args.lenient)
    except InvalidDataset as e:
        _err(*map(str, e.report.violations))
        return FALSE
    except Unsatisfiable as e:
        _err(str(e))
        return FALSE
    sys.stdout.write(write_interp(i, d.prefixes))
    return OK


def cmd_entails(args) -> int:
    if args.oracle is not None and args.rename_conjectural:
        raise _InputError("--oracle cannot be combined with --rename-conjectural")
    e = _load(args.premise).dataset
    g = _load(args.conclusion).dataset
    result = entails(e, g, rename_conjectural=args.rename_conjectural)
    if args.oracle is not None:
        try:
            expected = brute_force_entails(e, g, args.oracle)
        except TooLarge as exc:
            _err(f"oracle: {exc}")
            return LIMIT
        if expected != result:
            _err(f"oracle disagrees: entails={result}, oracle={expected}")
            return LIMIT
    print("entailed" if result else "not entailed")
    return OK if result else FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conjectures", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check conjectural and collapse graphs")
    p.add_argument("path")
    p.add_argument("--lenient", action="store_true",
                   help="allow plain triples inside conjectural graphs")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("weaken", help="rewrite strong-form conjectures in weak form")
    p.add_argument("path")
    p.set_defaults(func=cmd_weaken)

    p = sub.add_parser("collapse", help="add a collapse graph for a conjecture")
    p.add_argument("path")
    p.add_argument("--graph", required=True, help="conjectural graph to collapse")
    p.add_argument("--as", dest="new_name", help="name of the new collapse graph")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("cascade", help="enforce cascading collapses")
    p.add_argument("path")
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("check-model", help="check an interpretation against a dataset")
    p.add_argument("data")
    p.add_argument("interp")
    p.add_argument("--lenient", action="store_true",
                   help="do not require a conjectural form for conjecture triples")
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("find-model", help="print the canonical model of a dataset")
    p.add_argument("data")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_find_model)

    p = sub.add_parser("entails", help="decide simple entailment between two datasets")
    p.add_argument("premise")
    p.add_argument("conclusion")
    p.add_argument("--rename-conjectural", action="store_true",
                   help="match conjectural predicates up to renaming")
    p.add_argument("--oracle", type=int, metavar="N",
                   help="cross-check with brute force over domains of size <= N")
    p.set_defaults(func=cmd_entails)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as e:
        _err(str(e))
        return USAGE
    except ExhaustionError as e:
        _err(str(e))
        return LIMIT
    except ModelError as e:
        _err(str(e))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
