"""``skeinctl``: run the verification campaign and inspect the model data.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata
from pathlib import Path

from .algebra import generator_text
from .models import (
    K_ORDER,
    SkeinIndex,
    bsd_document,
    canonical_json,
    homotopy_document,
    load_fixtures,
    map_document,
    read_golden,
)

__all__ = ["main"]


def _version() -> str:
    try:
        return metadata.version("bsskein")
    except metadata.PackageNotFoundError:
        return "0+unknown"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors always exit 2
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--golden-dir", type=Path, default=None,
                        help="directory holding the fixture JSON (default: the packaged copy)")

    p = _Parser(prog="skeinctl", description="Verify and inspect the bordered skein triangle data.")
    p.add_argument("--version", action="version", version=f"skeinctl {_version()}")
    p.add_argument("--list-checks", action="store_true", help="print every check id and exit")
    p.add_argument("--golden-dir", type=Path, default=None, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run the verification campaign")
    v.add_argument("--only", action="append", default=[], metavar="PREFIX",
                   help="restrict to check ids equal to or starting with PREFIX (repeatable)")
    v.add_argument("--report", type=Path, help="also write the JSON report here")
    v.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("show", parents=[common], help="print a module, map or homotopy")
    s.add_argument("--object", required=True,
                   help="bsd:K, map:fK[.i] or homotopy:phiK[.ij] with K in 1, infty, 0")
    s.add_argument("--format", choices=("text", "json"), default="text")

    g = sub.add_parser("gradings", parents=[common], help="generator and coefficient gradings")
    g.add_argument("--skein-reduced", action="store_true", help="print only the skein-reduced value")

    c = sub.add_parser("cone", parents=[common], help="certify B_k as the cone of f_(k+1)")
    c.add_argument("--k", required=True)
    c.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("examples", parents=[common], help="double-coset lattice examples")
    e.add_argument("--which", required=True, choices=("6.1", "6.2"))
    return p


def _usage(parser, msg: str) -> int:
    parser.print_usage(sys.stderr)
    print(f"skeinctl: error: {msg}", file=sys.stderr)
    return 2


# -- subcommands ------------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    from .campaign import CheckResult, Report, verify_all

    try:
        fx = load_fixtures(args.golden_dir)
    except Exception as exc:
        report = Report([CheckResult("fixtures.load", "fixture files load and decode", False,
                                     [f"{type(exc).__name__}: {exc}"])])
    else:
        report = verify_all(fx, args.golden_dir, args.only or None)
        if not report.checks:
            print(f"no check matches {args.only}", file=sys.stderr)
            return 2
    text = canonical_json(report.to_json())
    print(text, end="") if args.format == "json" else print(report.text())
    if args.report:
        args.report.write_text(text, encoding="utf-8")
    return 0 if report.passed else 1


def _parse_object(text: str):
    kind, _, rest = text.partition(":")
    if kind == "bsd":
        return kind, SkeinIndex.parse(rest), None
    prefix = {"map": "f", "homotopy": "phi"}.get(kind)
    if prefix is None or not rest.startswith(prefix):
        raise ValueError(f"cannot parse object {text!r}")
    name, _, part = rest[len(prefix):].partition(".")
    return kind, SkeinIndex.parse(name), part or None


def _entry_text(e: dict) -> str:
    from .algebra import StrandsGenerator

    coef = e.get("word") or generator_text(StrandsGenerator.from_json(e["coef"][0]))
    coef = f"({coef})" if not coef.startswith(("(", "I")) else coef
    return f"{e['from']} -> {coef} ⊗ {e['to']}"


def _cmd_show(args) -> int:
    kind, k, part = _parse_object(args.object)
    fx = load_fixtures(args.golden_dir)
    if kind == "bsd":
        doc = bsd_document(fx, k)
    elif kind == "map":
        doc = map_document(fx, k, [part] if part else None)
    else:
        doc = homotopy_document(fx, k, [part] if part else None)
    if args.format == "json":
        print(canonical_json(doc), end="")
        return 0
    if kind == "bsd":
        m = fx.bsd(k)
        print(f"{m.name}: generators {', '.join(f'{g} {sorted(m.idem[g])}' for g in m.generators)}")
        rows = doc["delta"]
    else:
        print(f"{doc['name']}{'.' + part if part else ''}: {doc['source']} -> {doc['target']}")
        rows = doc["table"]
    for e in rows:
        tag = f"  [{e['part']}]" if "part" in e else ""
        print(f"  {_entry_text(e)}{tag}")
    if not rows:
        print("  (zero)")
    return 0


def _cmd_gradings(args) -> int:
    from .algebra import chord_word
    from .diagram import build_skein_arc_diagram
    from .grading import refine, skein_basis

    fx = load_fixtures(args.golden_dir)
    basis = skein_basis()
    print("generators (coordinates λ, A1, A2, A3)")
    for k in K_ORDER:
        ga = fx.gradings[k]
        stab = ", ".join(basis.format(v) for v in ga.stabilizer.generators)
        print(f"  B{k}: stabilizer ⟨{stab}⟩")
        for g in fx.bsd(k).generators:
            c = ga.cosets[g]
            print(f"    {g}: {c[0] if args.skein_reduced else basis.format(c)}")
    d = build_skein_arc_diagram()
    print("coefficients")
    for row in fx.grading_table:
        w = row["word"]
        g = refine(chord_word([] if w == "I" else w.split(","), d), fx.refinement)
        shown = basis.coordinates(g)[0] if args.skein_reduced else str(g)
        print(f"  ({w}): {shown}")
    return 0


def _cmd_cone(args) -> int:
    from .homlab import build_equivalence

    k = SkeinIndex.parse(args.k)
    fx = load_fixtures(args.golden_dir)
    fs = {kk: fx.skein_map(kk) for kk in K_ORDER}
    phis = {kk: fx.skein_homotopy(kk) for kk in K_ORDER}
    eq = build_equivalence(k, fs, phis)
    if args.format == "json":
        print(canonical_json({
            "k": str(k),
            "cone": eq.cone.to_json(),
            "certificates": [c.to_json() for c in eq.certificates],
        }), end="")
    else:
        print(f"B{k} ≃ {eq.cone.name} with generators {', '.join(eq.cone.generators)}")
        for c in eq.certificates:
            print(f"  {'PASS' if c.status else 'FAIL'}  {c.identity}")
            for w in c.witness[:4]:
                print(f"        {w}")
        if eq.H is not None:
            print(f"  H has {len(list(eq.H.terms()))} terms")
    return 0 if eq.passed else 1


def _cmd_examples(args) -> int:
    from .grading import AbelianLattice, format_invariants, quotient_invariants

    ex = read_golden("lattice_examples.json", args.golden_dir)[args.which]
    ok = True
    print(f"left subgroup generated by {ex['left']}")
    for case in ex["cases"]:
        rel = AbelianLattice([tuple(v) for v in ex["left"]] + [tuple(v) for v in case["right"]])
        got = quotient_invariants(AbelianLattice.full(4), rel)
        match = sorted(got) == sorted(case["expected"])
        ok &= match
        print(f"  {case['side']:>6}: {format_invariants(got)}{'' if match else '  (expected ' + format_invariants(case['expected']) + ')'}")
    return 0 if ok else 1


_COMMANDS = {
    "verify": _cmd_verify,
    "show": _cmd_show,
    "gradings": _cmd_gradings,
    "cone": _cmd_cone,
    "examples": _cmd_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.list_checks:
        from .campaign import list_checks

        print("\n".join(list_checks(args.golden_dir)))
        return 0
    if args.command is None:
        return _usage(parser, "a subcommand is required")
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        return _usage(parser, str(exc.args[0]) if exc.args else type(exc).__name__)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"skeinctl: cannot read fixtures: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
