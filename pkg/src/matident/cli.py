"""Command-line interface.

One subcommand per engine operation:

    info                 grading summary: support, dimensions, neutral shape
    lset --seq ...       chain starts and row paths for a degree sequence
    eval                 generic evaluation of a polynomial file
    is-identity          exact graded-identity decision
    enumerate-monomials  identity degree sequences up to a length cap
    shortest-identity    exact shortest monomial identity via the automaton
    bounds               closed-form length caps
    equiv                derive a rewrite certificate between two words
    certify              membership certificates per multihomogeneous part
    check-cert           replay and verify a certificate document

Exit codes: 0 success, 1 negative mathematical answer under --strict,
2 usage or input errors.  All output is deterministic; --json mirrors the
human-readable output with a stable schema.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import rewrite
from .commpoly import Field, parse_field, render_poly
from .freealg import (
    format_polynomial,
    multihomogeneous_components,
    parse_polynomial,
    parse_word,
)
from .generic import evaluate, is_graded_identity
from .grading import Grading, grading_from_config
from .groups import split_top_level
from .monomials import (
    enumerate_monomial_identities,
    length_bounds,
    shortest_monomial_identity,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _load_grading(path: str) -> Grading:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read grading file {path!r}: {exc}") from None
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"grading file {path!r} is not valid JSON: {exc}") from None
    return grading_from_config(obj)


def _load_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read file {path!r}: {exc}") from None


def _field_of(args: argparse.Namespace) -> Field:
    return parse_field(args.field)


def _emit(args: argparse.Namespace, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


def _fmt(grading: Grading):
    return grading.group.format


def cmd_info(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    fmt = _fmt(grading)
    support = grading.support()
    dims = [(fmt(g), grading.component_dimension(g)) for g in support]
    report = grading.neutral_report()
    blocks = grading.neutral_blocks()
    payload = {
        "group": str(grading.group),
        "n": grading.n,
        "tuple": [fmt(g) for g in grading.entries],
        "support": [fmt(g) for g in support],
        "component_dimensions": {name: d for name, d in dims},
        "neutral_report": {
            "distinct_entries": report.distinct_entries,
            "neutral_is_diagonal": report.neutral_is_diagonal,
            "neutral_commutes": report.neutral_commutes,
        },
        "neutral_blocks": {"sizes": list(blocks.sizes), "dimension": blocks.dimension},
    }
    lines = [
        f"group: {grading.group}",
        f"n: {grading.n}",
        f"tuple: ({', '.join(fmt(g) for g in grading.entries)})",
        f"support ({len(support)}): {', '.join(fmt(g) for g in support)}",
        "component dimensions: " + ", ".join(f"{name}:{d}" for name, d in dims),
        (
            "neutral report: "
            f"distinct-entries={str(report.distinct_entries).lower()} "
            f"neutral-is-diagonal={str(report.neutral_is_diagonal).lower()} "
            f"neutral-commutes={str(report.neutral_commutes).lower()}"
        ),
        f"neutral blocks: sizes={list(blocks.sizes)} dimension={blocks.dimension}",
    ]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_lset(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    fmt = _fmt(grading)
    parts = [p for p in split_top_level(args.seq) if p.strip()]
    if not parts:
        raise ValueError("--seq needs a comma-separated nonempty degree sequence")
    hseq = [grading.group.parse(p) for p in parts]
    ls = grading.lset(hseq)
    payload = {
        "sequence": [fmt(h) for h in hseq],
        "starts": list(ls.starts),
        "paths": {str(k): list(ls.paths[k]) for k in ls.starts},
    }
    if ls.is_empty:
        human = "L = {} (monomial identity)"
    else:
        lines = [f"L = {{{', '.join(str(k) for k in ls.starts)}}}"]
        for k in ls.starts:
            lines.append(f"  s[{k}] = ({', '.join(str(i) for i in ls.paths[k])})")
        human = "\n".join(lines)
    _emit(args, payload, human)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    field = _field_of(args)
    poly = parse_polynomial(_load_text(args.polynomial), grading.group, field)
    matrix = evaluate(grading, poly)
    fmt = _fmt(grading)
    payload = {
        "field": str(field),
        "zero": matrix.is_zero(),
        "entries": {
            f"({i},{j})": render_poly(matrix.entries[(i, j)], fmt)
            for (i, j) in sorted(matrix.entries)
        },
    }
    _emit(args, payload, matrix.render(fmt))
    return EXIT_OK


def cmd_is_identity(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    field = _field_of(args)
    poly = parse_polynomial(_load_text(args.polynomial), grading.group, field)
    answer = is_graded_identity(grading, poly)
    payload = {"field": str(field), "identity": answer}
    _emit(args, payload, "identity" if answer else "not an identity")
    if not answer and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    fmt = _fmt(grading)
    unfiltered = enumerate_monomial_identities(grading, args.max_len)
    if args.minimal:
        from .monomials import is_minimal_identity

        found = [seq for seq in unfiltered if is_minimal_identity(grading, seq)]
    else:
        found = unfiltered
    bounds = length_bounds(grading)
    payload = {
        "max_len": args.max_len,
        "minimal": args.minimal,
        "sequences": [[fmt(h) for h in seq] for seq in found],
        "count": len(found),
        "unfiltered_sequences": [[fmt(h) for h in seq] for seq in unfiltered],
        "unfiltered_count": len(unfiltered),
        "support_bound": bounds.support_bound,
        "size_bound": bounds.size_bound,
    }
    lines = [",".join(fmt(h) for h in seq) for seq in found]
    lines.append(
        f"count={len(found)} unfiltered={len(unfiltered)} max_len={args.max_len} "
        f"minimal={str(args.minimal).lower()} "
        f"support_bound={bounds.support_bound} size_bound={bounds.size_bound}"
    )
    _emit(args, payload, "\n".join(lines))
    if not found and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_shortest(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    fmt = _fmt(grading)
    answer = shortest_monomial_identity(grading)
    if answer is None:
        payload = {"exists": False}
        human = "none (no monomial over the support is an identity, of any length)"
    else:
        length, witness = answer
        payload = {
            "exists": True,
            "length": length,
            "witness": [fmt(h) for h in witness],
        }
        human = f"length {length}: {','.join(fmt(h) for h in witness)}"
    _emit(args, payload, human)
    if answer is None and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    bounds = length_bounds(grading)
    s = len(grading.support())
    payload = {
        "support_size": s,
        "support_bound": bounds.support_bound,
        "size_bound": bounds.size_bound,
    }
    human = (
        f"support size s = {s}\n"
        f"support bound 4*s^(2s+2) = {bounds.support_bound}\n"
        f"size bound 4*n^(4(n^2+1)) = {bounds.size_bound}"
    )
    _emit(args, payload, human)
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    group = grading.group
    target = parse_word(_load_text(args.target), group)
    source = parse_word(_load_text(args.source), group)
    try:
        cert = rewrite.derive_equivalence(grading, target, source)
    except ValueError as exc:
        payload = {"derived": False, "reason": str(exc)}
        _emit(args, payload, f"no certificate: {exc}")
        return EXIT_NEGATIVE if args.strict else EXIT_OK
    doc = rewrite.equivalence_to_dict(cert, group)
    lines = [
        f"start: {doc['start']}",
        f"end:   {doc['end']}",
        f"steps: {len(cert.steps)}",
    ]
    for idx, step in enumerate(cert.steps):
        lines.append(f"  {idx}: {step.rule} at {list(step.split)}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    field = _field_of(args)
    group = grading.group
    poly = parse_polynomial(_load_text(args.polynomial), group, field)
    components = multihomogeneous_components(poly)
    results = []
    all_identities = True
    for comp in components:
        outcome = rewrite.certify_membership(grading, comp)
        if isinstance(outcome, rewrite.NonIdentityWitness):
            all_identities = False
            results.append(
                {
                    "component": format_polynomial(group, comp),
                    "identity": False,
                    "witness": {
                        "position": list(outcome.position),
                        "entry": render_poly(outcome.entry, group.format),
                    },
                }
            )
        else:
            results.append(
                {
                    "component": format_polynomial(group, comp),
                    "identity": True,
                    "certificate": rewrite.membership_to_dict(outcome, group),
                }
            )
    payload = {
        "format": rewrite.CERTIFICATE_FORMAT,
        "type": "membership-bundle",
        "field": str(field),
        "input": format_polynomial(group, poly),
        "components": results,
        "identity": all_identities,
    }
    lines = [f"components: {len(results)}"]
    for item in results:
        if item["identity"]:
            cert = item["certificate"]
            lines.append(
                f"  identity: {item['component']} "
                f"(pairings={len(cert['pairings'])}, residual={len(cert['residual'])})"
            )
        else:
            w = item["witness"]
            lines.append(
                f"  NOT an identity: {item['component']} "
                f"(entry at ({w['position'][0]},{w['position'][1]}): {w['entry']})"
            )
    lines.append("identity" if all_identities else "not an identity")
    _emit(args, payload, "\n".join(lines))
    if not all_identities and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_check_cert(args: argparse.Namespace) -> int:
    grading = _load_grading(args.grading)
    field = _field_of(args)
    group = grading.group
    try:
        doc = json.loads(_load_text(args.certificate))
    except json.JSONDecodeError as exc:
        raise ValueError(f"certificate file is not valid JSON: {exc}") from None
    kind = doc.get("type")
    if kind == "equivalence":
        cert = rewrite.equivalence_from_dict(doc, group)
        result = rewrite.check_equivalence_certificate(grading, cert)
    elif kind == "membership":
        cert = rewrite.membership_from_dict(doc, group, field)
        result = rewrite.check_membership_certificate(grading, cert.input, cert)
    elif kind == "membership-bundle":
        result = _check_bundle(grading, field, doc)
    else:
        raise ValueError(f"unknown certificate type {kind!r}")
    payload = {"valid": result.ok}
    if result.reason:
        payload["reason"] = result.reason
    _emit(args, payload, "valid" if result.ok else f"invalid: {result.reason}")
    if not result.ok and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def _check_bundle(grading: Grading, field: Field, doc: dict) -> rewrite.CheckResult:
    group = grading.group
    try:
        poly = parse_polynomial(doc["input"], group, field)
    except (KeyError, ValueError) as exc:
        return rewrite.CheckResult(False, f"bundle input: {exc}")
    components = multihomogeneous_components(poly)
    items = doc.get("components", [])
    if len(items) != len(components):
        return rewrite.CheckResult(
            False,
            f"bundle has {len(items)} components, input decomposes into {len(components)}",
        )
    by_text = {format_polynomial(group, comp): comp for comp in components}
    for idx, item in enumerate(items):
        if not item.get("identity", False):
            return rewrite.CheckResult(False, f"component {idx} is marked as a non-identity")
        comp = by_text.get(item.get("component"))
        if comp is None:
            return rewrite.CheckResult(
                False, f"component {idx} does not match any multihomogeneous part"
            )
        cert = rewrite.membership_from_dict(item["certificate"], group, field)
        result = rewrite.check_membership_certificate(grading, comp, cert)
        if not result.ok:
            return rewrite.CheckResult(False, f"component {idx}: {result.reason}")
    return rewrite.CheckResult(True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matident",
        description="Exact engine for graded identities of matrix algebras "
        "with elementary gradings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("grading", help="grading document (JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--strict",
            action="store_true",
            help="exit 1 on a negative mathematical answer",
        )
        p.set_defaults(handler=handler)
        return p

    add("info", cmd_info, "grading summary")

    p = add("lset", cmd_lset, "chain starts and row paths for a degree sequence")
    p.add_argument("--seq", required=True, help="comma-separated degree literals")

    p = add("eval", cmd_eval, "evaluate a polynomial on generic matrices")
    p.add_argument("polynomial", help="polynomial file")
    p.add_argument("--field", default="rationals", help="rationals (default) or fp:<prime>")

    p = add("is-identity", cmd_is_identity, "decide whether a polynomial is a graded identity")
    p.add_argument("polynomial", help="polynomial file")
    p.add_argument("--field", default="rationals", help="rationals (default) or fp:<prime>")

    p = add("enumerate-monomials", cmd_enumerate, "enumerate identity degree sequences")
    p.add_argument("--max-len", type=int, required=True, help="length cap (explicit)")
    p.add_argument("--minimal", action="store_true", help="apply the minimality filter")

    add("shortest-identity", cmd_shortest, "shortest monomial identity via automaton search")
    add("bounds", cmd_bounds, "closed-form length caps")

    p = add("equiv", cmd_equiv, "derive a rewrite certificate from SOURCE to TARGET")
    p.add_argument("target", help="word file (derivation end)")
    p.add_argument("source", help="word file (derivation start)")

    p = add("certify", cmd_certify, "certify membership per multihomogeneous component")
    p.add_argument("polynomial", help="polynomial file")
    p.add_argument("--field", default="rationals", help="rationals (default) or fp:<prime>")

    p = add("check-cert", cmd_check_cert, "verify a certificate document")
    p.add_argument("certificate", help="certificate file (JSON)")
    p.add_argument("--field", default="rationals", help="rationals (default) or fp:<prime>")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
