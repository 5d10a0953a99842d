"""
Command-line front end.

Exit codes: 0 pass, 1 a verification failed or a precondition was
rejected, 2 malformed input, 3 an internal invariant breach.
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import catalogue
from .config import configure_logging, settings
from .errors import DimensionMismatchError, InvariantBreach, ParseError, PreconditionError, UnknownEntryError
from .exact.scalars import as_fraction
from .forms.ce_complex import check_betti_conditions, cohomology_report
from .forms.foliated import check_kahler_identities
from .geometry.correspondence import check_normal_j_algebra, extend, modify, reduce
from .geometry.curvature import curvature_report
from .geometry.deformation import evaluate_family, largest_stable_parameter
from .geometry.structures import verify_almost_contact, verify_cosymplectic, verify_kahler, verify_normal
from .ingestion.loaders import (
    load_algebra,
    load_derivation,
    load_family,
    load_kahler,
    load_lie_algebra,
    load_metric,
    load_modification,
    load_normal_j,
    load_pair,
    load_structure,
    read_json,
)
from .ingestion.serialize import (
    algebra_to_dict,
    canonical_json,
    derivation_to_dict,
    kahler_to_dict,
    structure_to_dict,
    write_json,
)
from .lie.algebra import validate
from .lie.classify import classify, derived_series, lower_central_series
from .pipeline.graph import build_dossier
from .report import Report

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3


class Output:
    """Writes JSON or markdown to stdout or a file."""

    def __init__(self, fmt: str, out: Optional[Path] = None):
        self.fmt = fmt
        self.out = out

    def write(self, text: str) -> None:
        if self.out is not None:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            self.out.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    def report(self, report: Report) -> int:
        self.write(report.to_markdown() if self.fmt == "md" else canonical_json(report.to_dict()))
        return EXIT_PASS if report.passed else EXIT_FAIL

    def payload(self, payload: Any, markdown: Optional[str] = None) -> int:
        self.write(markdown if self.fmt == "md" and markdown is not None else canonical_json(payload))
        return EXIT_PASS


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


# ---------------------------------------------------------------------- commands

def cmd_validate(args, out: Output) -> int:
    return out.report(validate(load_algebra(args.algebra)))


def cmd_classify(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    flags = {**classify(L).to_dict(), "derived_series": derived_series(L), "lower_central_series": lower_central_series(L)}
    markdown = "\n".join([f"## classification of {L.name or L.dim}", ""] + [f"- **{k}**: {v}" for k, v in flags.items()]) + "\n"
    return out.payload(flags, markdown)


def cmd_cohomology(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    g = load_metric(args.metric, L.dim) if args.metric else None
    report = cohomology_report(L, g)
    if args.n is not None:
        conditions = check_betti_conditions(report.data["betti"], args.n)
        report.extend(conditions, prefix="betti conditions: ")
        report.notes.extend(conditions.notes)
    return out.report(report)


VERIFIERS: Dict[str, Callable] = {
    "almost-contact": verify_almost_contact,
    "normal": verify_normal,
    "cosymplectic": verify_cosymplectic,
}


def cmd_verify(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    if args.kind == "kahler":
        J, g = load_pair(args.structure, L.dim)
        return out.report(verify_kahler(L, J, g))
    return out.report(VERIFIERS[args.kind](L, load_structure(args.structure, L.dim)))


def cmd_curvature(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    return out.report(curvature_report(L, load_metric(args.metric, L.dim)))


def cmd_extend(args, out: Output) -> int:
    h = load_kahler(args.kahler)
    data = load_derivation(args.derivation, h.dim)
    L, S = extend(h, data, xi_name=args.xi_name)
    if args.out_dir:
        base = Path(args.out_dir)
        base.mkdir(parents=True, exist_ok=True)
        write_json(algebra_to_dict(L), base / "algebra.json")
        write_json(structure_to_dict(S), base / "structure.json")
        logger.info("wrote extension to %s", base)
    return out.payload({"algebra": algebra_to_dict(L), "structure": structure_to_dict(S)})


def cmd_reduce(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    h, data = reduce(L, load_structure(args.structure, L.dim))
    if args.out_dir:
        base = Path(args.out_dir)
        base.mkdir(parents=True, exist_ok=True)
        write_json(kahler_to_dict(h), base / "kahler.json")
        write_json(derivation_to_dict(data), base / "derivation.json")
        logger.info("wrote reduction to %s", base)
    return out.payload({"kahler": kahler_to_dict(h), "derivation": derivation_to_dict(data)})


def cmd_modify(args, out: Output) -> int:
    h = load_kahler(args.kahler)
    result = modify(h, load_modification(args.maps, h.dim))
    result.report.data["algebra"] = algebra_to_dict(result.algebra)
    return out.report(result.report)


def cmd_normal_j(args, out: Output) -> int:
    a, J, mu = load_normal_j(args.file)
    return out.report(check_normal_j_algebra(a, J, mu))


def cmd_kahler_identities(args, out: Output) -> int:
    L = load_lie_algebra(args.algebra)
    return out.report(check_kahler_identities(L, load_structure(args.structure, L.dim)))


def _deformation_input(args):
    if args.entry:
        entry = catalogue.get(args.entry)
        if entry.structure is None or entry.family is None:
            raise PreconditionError(f"catalogue entry '{entry.name}' has no deformation family")
        family = load_family(args.jt, entry.algebra.dim) if args.jt else entry.family
        return entry.algebra, entry.structure, family
    if not (args.algebra and args.structure and args.jt):
        raise ParseError("deform needs ALGEBRA STRUCTURE --jt FILE, or --entry NAME")
    L = load_lie_algebra(args.algebra)
    return L, load_structure(args.structure, L.dim), load_family(args.jt, L.dim)


def _parse_ts(text: str) -> List:
    try:
        return [as_fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"'{text}' is not a list of rationals", field="t") from exc


def cmd_deform(args, out: Output) -> int:
    L, S, family = _deformation_input(args)
    if args.bisect is not None:
        t, trail = largest_stable_parameter(L, S, family, _parse_ts(args.bisect)[0], steps=args.steps)
        return out.payload({"largest_stable_t": t, "trail": trail})
    ts = _parse_ts(args.t_list if args.t_list else (args.t or "0"))
    reports = evaluate_family(L, S, family, ts, workers=args.workers)
    if len(reports) == 1:
        return out.report(reports[0])
    if out.fmt == "md":
        out.write("\n".join(r.to_markdown() for r in reports))
    else:
        out.write(canonical_json([r.to_dict() for r in reports]))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def cmd_catalogue(args, out: Output) -> int:
    if args.action == "list":
        names = catalogue.list_names()
        return out.payload(names, "\n".join(f"- {n}" for n in names) + "\n")
    if args.action == "check":
        names = [args.name] if args.name else catalogue.list_names()
        reports = [catalogue.check_entry(catalogue.get(n)) for n in names]
        if out.fmt == "md":
            out.write("\n".join(r.to_markdown() for r in reports))
        else:
            out.write(canonical_json([r.to_dict() for r in reports]))
        return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    if not args.name:
        raise ParseError(f"catalogue {args.action} needs a NAME")
    entry = catalogue.get(args.name)
    if args.action == "show":
        return out.payload(entry.to_dict())

    base = Path(args.out_dir or ".")
    base.mkdir(parents=True, exist_ok=True)
    slug = _slug(entry.name)
    written = [base / f"{slug}.json"]
    write_json(algebra_to_dict(entry.algebra), written[0])
    if entry.structure is not None:
        written.append(base / f"{slug}_struct.json")
        write_json(structure_to_dict(entry.structure), written[-1])
    elif entry.kahler is not None:
        written.append(base / f"{slug}_kahler.json")
        write_json(kahler_to_dict(entry.kahler), written[-1])
    if entry.family is not None:
        written.append(base / f"{slug}_jt.json")
        write_json(entry.family.to_dict(), written[-1])
    return out.payload({"written": [str(p) for p in written]})


def cmd_report(args, out: Output) -> int:
    algebra, _ = read_json(args.algebra)
    structure = read_json(args.structure)[0] if args.structure else None
    metric = read_json(args.metric)[0] if args.metric else None
    result = build_dossier(algebra, structure, metric)
    dossier = result["dossier"]
    out.payload(dossier, result["markdown"])
    if any(e.startswith("fatal: ") for e in dossier["errors"]):
        raise ParseError(dossier["errors"][0][len("fatal: "):])
    verdicts = dossier["verdicts"]
    failing = [k for k in ("validate", "cosymplectic", "kahler", "kahler_identities") if verdicts.get(k, "pass") != "pass"]
    return EXIT_FAIL if failing else EXIT_PASS


# ---------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosymplectic-lab",
        description="Exact verification of cosymplectic and Kähler structures on Lie algebras.",
    )
    parser.add_argument("--format", choices=("json", "md"), default=None, help="output format")
    parser.add_argument("--out", type=Path, default=None, help="write the output to a file")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="antisymmetry and Jacobi")
    p.add_argument("algebra", type=Path)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("classify", help="structural flags")
    p.add_argument("algebra", type=Path)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("cohomology", help="Betti numbers, Hodge dimensions, Betti conditions")
    p.add_argument("algebra", type=Path)
    p.add_argument("--metric", type=Path)
    p.add_argument("-n", type=int, default=None, help="check the Betti conditions for this n")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("verify", help="staged structure verification")
    p.add_argument("algebra", type=Path)
    p.add_argument("structure", type=Path)
    p.add_argument("--kind", choices=("almost-contact", "normal", "cosymplectic", "kahler"), default="cosymplectic")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("curvature", help="Levi-Civita connection and curvature")
    p.add_argument("algebra", type=Path)
    p.add_argument("--metric", type=Path, required=True)
    p.set_defaults(handler=cmd_curvature)

    p = sub.add_parser("extend", help="Kähler algebra and derivation to a cosymplectic algebra")
    p.add_argument("kahler", type=Path)
    p.add_argument("derivation", type=Path)
    p.add_argument("--xi-name", default="xi")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(handler=cmd_extend)

    p = sub.add_parser("reduce", help="cosymplectic algebra to its Kähler leaf and derivation")
    p.add_argument("algebra", type=Path)
    p.add_argument("structure", type=Path)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("modify", help="modification of a Kähler algebra by a map")
    p.add_argument("kahler", type=Path)
    p.add_argument("maps", type=Path)
    p.set_defaults(handler=cmd_modify)

    p = sub.add_parser("normal-j", help="admissible form of a normal J-algebra")
    p.add_argument("file", type=Path)
    p.set_defaults(handler=cmd_normal_j)

    p = sub.add_parser("kahler-identities", help="leafwise Kähler identities")
    p.add_argument("algebra", type=Path)
    p.add_argument("structure", type=Path)
    p.set_defaults(handler=cmd_kahler_identities)

    p = sub.add_parser("deform", help="deformation stabilization")
    p.add_argument("algebra", type=Path, nargs="?")
    p.add_argument("structure", type=Path, nargs="?")
    p.add_argument("--entry", help="use a catalogue entry and its family")
    p.add_argument("--jt", type=Path, help="J_t family file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", help="one rational parameter")
    group.add_argument("--t-list", help="comma-separated rational parameters")
    group.add_argument("--bisect", metavar="T_MAX", help="search [0, T_MAX] for the largest stable t")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.set_defaults(handler=cmd_deform)

    p = sub.add_parser("catalogue", help="built-in examples")
    p.add_argument("action", choices=("list", "show", "emit", "check"))
    p.add_argument("name", nargs="?")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(handler=cmd_catalogue)

    p = sub.add_parser("report", help="full verification dossier")
    p.add_argument("algebra", type=Path)
    p.add_argument("structure", type=Path, nargs="?")
    p.add_argument("--metric", type=Path)
    p.set_defaults(handler=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    out = Output(args.format or settings.default_format, args.out)
    try:
        return args.handler(args, out)
    except (ParseError, UnknownEntryError, DimensionMismatchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        if exc.report is not None:
            out.report(exc.report)
        return EXIT_FAIL
    except InvariantBreach as exc:
        logger.error("invariant breach: %s", exc)
        sys.stderr.write(f"internal invariant breach: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
