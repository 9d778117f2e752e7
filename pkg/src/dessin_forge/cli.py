"""Command-line front end.

Exit status: 0 all verdicts match (or are documented discrepancies),
1 unexpected mismatch, 2 usage or parse error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .catalog import CatalogError, build_catalog, query, read_catalog, write_catalog
from .classification import (
    DECOMPOSITION_PAIRS,
    abelian_baseline,
    admissible_params,
    corollary_row,
    decomposition_report,
    noniso_table,
    theorem_sweep,
)
from .config import TABLE_CAP, default_order_cap
from .dessin import enumerate_dessins, invariants
from .errors import (
    DessinForgeError,
    InvalidParameters,
    NotGenerating,
    OrderCapExceeded,
    SpecParseError,
    UnsupportedInput,
    ValidationError,
)
from .groups import build_group, expected_order, validate_group
from .numbertheory import dedekind_psi, lift_unit
from .report import VerificationReport
from .specs import Family, GroupSpec, parse_spec
from .structure import group_summary
from .universal import universal_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class CliConfig:
    order_cap: int
    table_cap: int
    output_mode: str
    worker_count: int
    catalog_path: Optional[Path]

    def __post_init__(self):
        if self.order_cap < 1 or self.table_cap < 1:
            raise InvalidParameters("caps must be positive")
        if self.worker_count < 1:
            raise InvalidParameters("--workers must be at least 1")


class Output:
    def __init__(self, config: CliConfig, stream=None):
        self.json = config.output_mode == "json-lines"
        self.stream = stream or sys.stdout

    def record(self, rec: dict) -> None:
        if self.json:
            self.stream.write(json.dumps(rec, sort_keys=True) + "\n")

    def text(self, line: str = "") -> None:
        if not self.json:
            self.stream.write(line + "\n")

    def report(self, report: VerificationReport) -> None:
        if self.json:
            self.stream.write(report.to_json_lines())
        else:
            self.stream.write(report.render_text())


def _group(spec_text: str, config: CliConfig):
    spec = parse_spec(spec_text)
    size = expected_order(spec)
    if size > config.order_cap:
        raise OrderCapExceeded(f"{spec} has order {size}, above the cap {config.order_cap}")
    return spec, build_group(spec)


def dessin_record(spec: str, cls_index: int, dessin, orbit_size: int) -> dict:
    return {
        "group_spec": spec,
        "class_index": cls_index,
        "x_index": dessin.x,
        "y_index": dessin.y,
        "invariants": invariants(dessin).to_dict(),
        "orbit_size": orbit_size,
    }


def cmd_group(args, config: CliConfig, out: Output) -> int:
    spec, G = _group(args.spec, config)
    summary = group_summary(G)
    valid = validate_group(G).ok
    rec = {"spec": str(spec), **summary, "validation": "pass" if valid else "fail"}
    out.record(rec)
    out.text(f"group            {spec}")
    out.text(f"order            {summary['order']}")
    out.text(f"exponent         {summary['exponent']}")
    out.text(f"class            {summary['nilpotency_class']}")
    out.text(f"G' invariants    {summary['derived_invariants']}")
    out.text(f"G^ab invariants  {summary['abelianisation_invariants']}")
    out.text(f"validation       {rec['validation']}")
    return EXIT_OK if valid else EXIT_MISMATCH


def cmd_dessins(args, config: CliConfig, out: Output) -> int:
    spec, G = _group(args.spec, config)
    classes = enumerate_dessins(G)
    if not classes:
        raise UnsupportedInput(f"{spec} is not 2-generated")
    header = ("class", "x", "y", "type", "genus", "mult", "sym", "refl", "total", "orbit")
    rows = [header]
    for k, c in enumerate(classes):
        rec = dessin_record(str(spec), k, c.dessin, c.orbit_size)
        out.record(rec)
        inv = rec["invariants"]
        rows.append((
            str(k), G.name(c.dessin.x), G.name(c.dessin.y),
            "(" + ",".join(map(str, inv["type_triple"])) + ")", str(inv["genus"]),
            str(inv["multiplicity"]), _yn(inv["symmetric"]), _yn(inv["reflexible"]),
            _yn(inv["totally_symmetric"]), str(c.orbit_size),
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    out.text(f"{len(classes)} dessin class(es) on {spec} (order {G.order})")
    for r in rows:
        out.text("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return EXIT_OK


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_universal(args, config: CliConfig, out: Output) -> int:
    spec, G = _group(args.spec, config)
    rep = universal_report(G, order_cap=config.order_cap)
    rep["input"] = str(spec)
    out.record(rep)
    out.text(f"U({spec})")
    out.text(f"classes folded    {rep['classes_folded']}")
    out.text(f"order             {rep['order']}")
    out.text(f"type              ({','.join(map(str, rep['type']))})")
    out.text(f"genus             {rep['genus']}")
    out.text(f"totally symmetric {_yn(rep['totally_symmetric'])}")
    out.text(f"unique dessin     {_yn(rep['unique_dessin'])}")
    return EXIT_OK if rep["unique_dessin"] and rep["totally_symmetric"] else EXIT_MISMATCH


def cmd_verify(args, config: CliConfig, out: Output) -> int:
    reports: list[VerificationReport] = []
    if args.scope == "theorem":
        params = admissible_params(args.max_order)
        reports.append(theorem_sweep(args.max_order, workers=config.worker_count))
        reports.append(noniso_table(params))
    elif args.scope == "corollary":
        if args.family:
            params = [Family(args.family, args.p or 2, args.a, args.b or 0)]
        else:
            params = admissible_params(args.max_order)
        report = VerificationReport("corollary table")
        for p in params:
            report.extend(corollary_row(p).to_report())
        reports.append(report.finish())
    elif args.scope == "abelian":
        reports.append(abelian_baseline(args.p or 2, args.a if args.a is not None else 1))
    elif args.scope == "decom":
        if args.left or args.right:
            if not (args.left and args.right):
                raise InvalidParameters("--left and --right go together")
            pairs = [(parse_spec(args.left), parse_spec(args.right))]
        else:
            pairs = DECOMPOSITION_PAIRS
        for left, right in pairs:
            reports.append(decomposition_report(left, right))
    for r in reports:
        out.report(r)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def cmd_catalog(args, config: CliConfig, out: Output) -> int:
    if config.catalog_path is None:
        raise InvalidParameters("catalog commands need --catalog PATH")
    if args.action == "build":
        specs: list[GroupSpec] = [parse_spec(s) for s in args.spec or []]
        if not specs and args.max_order is None:
            raise InvalidParameters("catalog build needs --spec or --max-order")
        records = build_catalog(specs, args.max_order)
        count = write_catalog(config.catalog_path, records)
        out.record({"catalog": str(config.catalog_path), "records": count})
        out.text(f"wrote {count} record(s) to {config.catalog_path}")
        return EXIT_OK
    type_triple = tuple(int(v) for v in args.type.split(",")) if args.type else None
    rows = query(
        read_catalog(config.catalog_path),
        genus_min=args.genus_min,
        genus_max=args.genus_max,
        type_triple=type_triple,
        symmetric=True if args.symmetric else None,
        reflexible=True if args.reflexible else None,
        totally_symmetric=True if args.totally_symmetric else None,
        unique=True if args.unique else None,
    )
    for r in rows:
        out.record(r.to_dict())
        inv = r.invariants
        out.text(f"{r.group_spec}  class {r.class_index}/{r.class_count}  "
                 f"type {inv.type_triple}  genus {inv.genus}  orbit {r.orbit_size}")
    out.text(f"{len(rows)} record(s)")
    return EXIT_OK


def cmd_psi(args, config: CliConfig, out: Output) -> int:
    value = dedekind_psi(args.n)
    out.record({"n": args.n, "psi": value})
    out.text(str(value))
    return EXIT_OK


def cmd_lift_unit(args, config: CliConfig, out: Output) -> int:
    value = lift_unit(args.s, args.m, args.n)
    out.record({"s": args.s, "m": args.m, "n": args.n, "lift": value})
    out.text(str(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json-lines"), default=argparse.SUPPRESS)
    common.add_argument("--order-cap", type=int, default=argparse.SUPPRESS,
                        help="closure cap (default from DESSIN_FORGE_ORDER_CAP or 2^20)")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument("--catalog", type=Path, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="dessin-forge", parents=[common],
                                     description="Regular dessins on finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_text in (
        ("group", cmd_group, "order, class and invariants of a group"),
        ("dessins", cmd_dessins, "one row per regular dessin class"),
        ("universal", cmd_universal, "the universal cover U(G)"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="check published claims by computation")
    p.add_argument("scope", choices=("theorem", "corollary", "abelian", "decom"))
    p.add_argument("--max-order", type=int, default=512)
    p.add_argument("--family", choices=("i", "ii", "iii"))
    p.add_argument("--p", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--left")
    p.add_argument("--right")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="build or query a catalog file")
    p.add_argument("action", choices=("build", "query"))
    p.add_argument("--spec", action="append")
    p.add_argument("--max-order", type=int)
    p.add_argument("--genus-min", type=int)
    p.add_argument("--genus-max", type=int)
    p.add_argument("--type", help="comma-separated type triple, e.g. 8,8,8")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--reflexible", action="store_true")
    p.add_argument("--totally-symmetric", action="store_true")
    p.add_argument("--unique", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("psi", parents=[common], help="Dedekind psi function")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("lift-unit", parents=[common], help="lift a unit mod m to a unit mod n")
    p.add_argument("s", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_lift_unit)
    return parser


def main(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    err = sys.stderr
    try:
        config = CliConfig(
            order_cap=getattr(args, "order_cap", None) or default_order_cap(),
            table_cap=TABLE_CAP,
            output_mode=getattr(args, "output", "text"),
            worker_count=getattr(args, "workers", 1),
            catalog_path=getattr(args, "catalog", None),
        )
        return args.func(args, config, Output(config, stream))
    except OrderCapExceeded as exc:
        print(f"dessin-forge: resource cap: {exc}", file=err)
        return EXIT_CAP
    except (SpecParseError, InvalidParameters, NotGenerating, UnsupportedInput, CatalogError, ValueError) as exc:
        print(f"dessin-forge: error: {exc}", file=err)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"dessin-forge: validation failed: {exc}", file=err)
        return EXIT_MISMATCH
    except DessinForgeError as exc:
        print(f"dessin-forge: {exc}", file=err)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
