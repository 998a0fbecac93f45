"""Command-line front end: fixtures, verifications, classification reports."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .algebra.hopf import AxiomReport, central_group_likes, check_hopf, group_likes, psi_matrix
from .algebra.presentation import characters, is_character, straighten
from .biproduct import (
    Biproduct,
    biproduct_presentation,
    eigen_sign,
    eigenvalue_table,
    element_name,
    character_product,
    counit_character,
    make_group,
)
from .exactmath import Cyclo
from .proofreplay import ZETA_ORDER, Verdict, Workspace, classification_matrix, classify_pair, matrix_pattern
from .serialize import biproduct_to_json, dumps, fixture_name, load, yd_to_json
from .yetterdrinfeld import GROUPLIKE_NAMES, ZETAS, YDHopfAlgebra, is_primitive, verify_yd_axioms, yd_iso_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("build", "verify", "grouplikes", "characters", "iso", "classify", "report")


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: dict
    checks: AxiomReport = field(default_factory=AxiomReport)
    data: dict = field(default_factory=dict)

    @property
    def exit_status(self) -> int:
        return EXIT_OK if self.checks.passed else EXIT_FAIL

    def check(self, name: str, fn: Callable[[], str | None]) -> None:
        self.checks.run(name, fn)

    def to_json(self, timing: bool = True) -> dict:
        failed = len(self.checks.failures())
        return {
            "schema": 1,
            "tool": "ydhopf",
            "version": __version__,
            "command": self.command,
            "checks": self.checks.to_json(timing),
            "summary": {"passed": len(self.checks.results) - failed, "failed": failed},
            "data": self.data,
            "exit_status": self.exit_status,
        }


def _expect(ok: bool, message: str) -> str | None:
    return None if ok else message


# --- per-command work ------------------------------------------------------------------------


def _yd_grouplike_label(a: YDHopfAlgebra, v) -> str:
    for name, g in zip(GROUPLIKE_NAMES, a.grouplike_vectors()):
        if g == v:
            return name
    return "?"


def _verify_yd(report: Report, a: YDHopfAlgebra, prefix: str = "") -> None:
    report.checks.extend(verify_yd_axioms(a), prefix=prefix)


def _verify_biproduct(report: Report, b: Biproduct, ws: Workspace, prefix: str = "") -> None:
    report.checks.extend(check_hopf(b.hopf), prefix=prefix + "hopf.")
    _verify_yd(report, b.yd, prefix=prefix + "yd.")

    def oracle() -> str | None:
        ref = straighten(biproduct_presentation(b.zeta))
        return _expect(ref == b.hopf.algebra, "smash product disagrees with the straightened presentation")

    report.check(prefix + "presentation_oracle", oracle)
    table: list = []

    def eigen() -> str | None:
        table.extend(eigenvalue_table(b, ws.chis(b)))
        for idx, *vals in table:
            want = [eigen_sign(idx, w) for w in range(3)]
            if vals != want:
                return f"basis {idx}: eigenvalues {vals}, expected {want}"
        return None

    report.check(prefix + "eigenvalue_table", eigen)
    report.data.setdefault("eigenvalue_table", {})[b.label] = [list(r) for r in table]


def cmd_verify(args, report: Report, ws: Workspace) -> None:
    if args.level == "biproduct":
        _verify_biproduct(report, ws.biproduct(args.zeta), ws)
    else:
        _verify_yd(report, ws.yd(args.family, args.zeta))


def cmd_grouplikes(args, report: Report, ws: Workspace) -> None:
    if args.level == "biproduct":
        b = ws.biproduct(args.zeta)
        found = ws.grouplikes(b)
        names = sorted(element_name(b, g) for g in found)
        central = sorted(element_name(b, g) for g in central_group_likes(b.hopf, found))
        report.check("count_is_8", lambda: _expect(len(found) == 8, f"found {len(found)}"))
        report.check("central_is_1_u2", lambda: _expect(sorted(central) == ["1", "u^2"], f"central {central}"))
        report.data.update(grouplikes=names, central=central)
    else:
        a = ws.yd(args.family, args.zeta)
        chars = characters(a.presentation, a.algebra)
        found = group_likes(a.hopf, [psi_matrix(a.coalgebra, ch.values) for ch in chars])
        names = [_yd_grouplike_label(a, g) for g in found]
        report.check("matches_labelled_set",
                     lambda: _expect(sorted(names) == sorted(GROUPLIKE_NAMES), f"found {names}"))
        report.data.update(grouplikes=names)


def cmd_characters(args, report: Report, ws: Workspace) -> None:
    if args.level == "biproduct":
        b = ws.biproduct(args.zeta)
        chars, alg = b.characters(), b.hopf.algebra
    else:
        a = ws.yd(args.family, args.zeta)
        chars, alg = characters(a.presentation, a.algebra), a.algebra
    report.check("multiplicative", lambda: _expect(all(is_character(alg, c.values) for c in chars), "non-character"))
    if args.level == "biproduct":
        def group() -> str | None:
            g = make_group(chars, counit_character(b), lambda x, y: character_product(b, x, y))
            ok = g.order == 8 and g.is_elementary_abelian_2()
            return _expect(ok, f"order {g.order}")
        report.check("elementary_abelian_order_8", group)
    report.data["characters"] = [[str(v) for v in c.generator_values] for c in chars]


def _expected_iso(level: str, zeta: Cyclo, xi: Cyclo) -> bool:
    if level == "yd":
        return zeta == xi
    return is_primitive(zeta) == is_primitive(xi)


def cmd_iso(args, report: Report, ws: Workspace) -> None:
    want = _expected_iso(args.level, args.zeta, args.xi)
    found: list[Verdict] = []

    def search() -> str | None:
        if args.level == "biproduct":
            v = classify_pair(1, args.zeta, args.xi, ws)
        else:
            a, b = ws.yd(args.family, args.zeta), ws.yd(args.family, args.xi)
            isos = yd_iso_search(a, b, prune=not args.full_search)
            v = Verdict(bool(isos), witness=isos[0] if isos else None)
            report.data["isomorphisms"] = len(isos)
        found.append(v)
        expected = "Isomorphic" if want else "NotIsomorphic"
        return _expect(v.isomorphic == want, f"got {v.kind}, expected {expected}")

    report.check("verdict_as_expected", search)
    v = found[0]
    if v.trace is not None:
        report.check("trace_verified", lambda: _expect(v.trace.verified, "unverified trace step"))
    report.data["verdict"] = v.to_json()


def _classify(report: Report, ws: Workspace, family: int, level: str, prune: bool, prefix: str = "") -> None:
    expected = [["I" if _expected_iso(level, ZETAS[z], ZETAS[x]) else "N" for x in ZETA_ORDER] for z in ZETA_ORDER]
    table: dict = {}

    def pattern_check() -> str | None:
        table.update(classification_matrix(family, level, ws, prune))
        pattern = matrix_pattern(table)
        return _expect(pattern == expected, f"pattern {pattern}")

    report.check(prefix + "pattern", pattern_check)
    traces = [v.trace for v in table.values() if v.trace is not None]
    report.check(prefix + "traces_verified", lambda: _expect(all(t.verified for t in traces), "unverified trace"))
    report.data.setdefault("classification", {})[f"{level}/family{family}"] = {
        "order": list(ZETA_ORDER),
        "pattern": matrix_pattern(table),
        "cells": {f"{z},{x}": v.to_json() for (z, x), v in table.items()},
    }


def cmd_classify(args, report: Report, ws: Workspace) -> None:
    _classify(report, ws, args.family, args.level, not args.full_search)


def emit_fixtures(directory: Path, ws: Workspace) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for family in (1, 2):
        for zl in ZETA_ORDER:
            a = ws.yd(family, ZETAS[zl])
            path = directory / fixture_name("A", family, a.zeta)
            path.write_text(dumps(yd_to_json(a)))
            written.append(path)
    for zl in ZETA_ORDER:
        b = ws.biproduct(ZETAS[zl])
        path = directory / fixture_name("B", 1, b.zeta)
        path.write_text(dumps(biproduct_to_json(b)))
        written.append(path)
    return written


def cmd_build(args, report: Report, ws: Workspace) -> None:
    directory = Path(args.fixtures)
    try:
        written = emit_fixtures(directory, ws)
    except OSError as exc:
        raise UsageError(f"cannot write fixtures to {directory}: {exc}") from exc
    report.check("file_count", lambda: _expect(len(written) == 12, f"{len(written)} files"))

    def round_trip() -> str | None:
        for path in written:
            obj = load(path)
            ref = ws.biproduct(obj.zeta) if isinstance(obj, Biproduct) else ws.yd(obj.family, obj.zeta)
            if obj.hopf != ref.hopf:
                return f"{path.name} does not reload to the same tables"
        return None

    report.check("round_trip", round_trip)
    report.data["files"] = [p.name for p in written]


def cmd_report(args, report: Report, ws: Workspace) -> None:
    for family in (1, 2):
        for zl in ZETA_ORDER:
            a = ws.yd(family, ZETAS[zl])
            _verify_yd(report, a, prefix=f"{a.label}.")
    for zl in ZETA_ORDER:
        b = ws.biproduct(ZETAS[zl])
        _verify_biproduct(report, b, ws, prefix=f"{b.label}.")
    for family in (1, 2):
        _classify(report, ws, family, "yd", not args.full_search, prefix=f"classify.yd.family{family}.")
    _classify(report, ws, 1, "biproduct", True, prefix="classify.biproduct.family1.")


HANDLERS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "grouplikes": cmd_grouplikes,
    "characters": cmd_characters,
    "iso": cmd_iso,
    "classify": cmd_classify,
    "report": cmd_report,
}


# --- argument handling -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ydhopf", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ydhopf {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", type=int, choices=(1, 2), default=1)
    parser.add_argument("--zeta", choices=tuple(ZETAS))
    parser.add_argument("--xi", choices=tuple(ZETAS))
    parser.add_argument("--level", choices=("yd", "biproduct"), default="yd")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--full-search", action="store_true", help="disable pruning in isomorphism search")
    parser.add_argument("--fixtures", help="directory for structure-constant fixtures (build)")
    return parser


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """Attach negative root values ('-1', '-i') to their flag so argparse keeps them."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--zeta", "--xi"):
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def validate(args) -> None:
    cmd = args.command
    if cmd in ("verify", "grouplikes", "characters", "iso") and args.zeta is None:
        raise UsageError(f"{cmd} needs --zeta")
    if cmd == "iso" and args.xi is None:
        raise UsageError("iso needs --xi")
    if cmd == "build" and not args.fixtures:
        raise UsageError("build needs --fixtures DIR")
    if args.level == "biproduct" and args.family != 1 and cmd != "report":
        raise UsageError("the biproduct level is available for family 1 only")


def command_echo(args) -> dict:
    echo = {"name": args.command, "family": args.family, "level": args.level}
    for key in ("zeta", "xi", "fixtures"):
        if getattr(args, key) is not None:
            echo[key] = getattr(args, key)
    if args.full_search:
        echo["full_search"] = True
    return echo


def run(argv: Sequence[str] | None = None, timing: bool = True) -> tuple[dict, int]:
    """Parse ``argv``, execute, and return the report document and exit code."""
    args = build_parser().parse_args(normalize_argv(argv or []))
    validate(args)
    report = Report(command_echo(args))
    for key in ("zeta", "xi"):
        if getattr(args, key) is not None:
            setattr(args, key, ZETAS[getattr(args, key)])
    HANDLERS[args.command](args, report, Workspace())
    return report.to_json(timing), report.exit_status


def main(argv: Sequence[str] | None = None) -> int:
    argv = normalize_argv(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        doc, code = run(argv)
    except UsageError as exc:
        print(f"ydhopf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if ns.out:
        try:
            Path(ns.out).write_text(text)
        except OSError as exc:
            print(f"ydhopf: error: cannot write {ns.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
