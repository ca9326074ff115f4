"""Command line surface: directions, verify, classify, interpolate, product.

Exit codes are a stable contract: 0 all pass, 1 a counterexample was found,
2 input error, 3 guard or capability error. Seeded commands default to seed
0x5EED so a bare invocation is reproducible; identical invocations produce
byte-identical output files. Every number shown in the human rendering is
taken from the same report dictionary the machine formats serialize.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import (
    DEFAULT_SEED,
    census_csv,
    classify_extremal_sets,
    classify_half_degree_polynomials,
    verify_statement,
)
from .checkers import STATEMENT_TITLES, check_dsw_product
from .errors import GuardError
from .fp import PrimeModulus
from .plane import (
    PointSet,
    all_directions,
    direction_set,
    is_line,
    projection_polynomial,
)
from .poly import Polynomial

STATEMENT_ALIASES = {"gacs": "gacs_gap", "dsw": "dsw_product"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpdirections",
        description="Direction sets in AG(2,p) and degree bounds over F_p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, seeded=False):
        sp.add_argument("-p", dest="p", type=int, required=True, help="odd prime modulus")
        sp.add_argument(
            "--format", choices=("human", "json", "csv"), default="human",
            help="output format (default human)",
        )
        sp.add_argument("--out", default=None, help="write the formatted report to a file")
        if seeded:
            sp.add_argument(
                "--seed", type=int, default=DEFAULT_SEED,
                help=f"sampling seed (default {DEFAULT_SEED:#x})",
            )
            sp.add_argument(
                "--workers", type=int, default=1,
                help="worker chunks for parallel enumeration (default 1)",
            )

    sp = sub.add_parser("directions", help="direction set of a point set")
    common(sp)
    sp.add_argument("--points", default=None, help='inline point list, e.g. "0,0 1,1 2,3"')
    sp.add_argument("--points-file", default=None, help="file holding the same literal")

    sp = sub.add_parser("interpolate", help="reduced polynomial through p values")
    common(sp)
    sp.add_argument("--values", default=None, help='comma list of p values, e.g. "1,2,0,0,2"')
    sp.add_argument("--values-file", default=None, help="file holding the same literal")

    sp = sub.add_parser("verify", help="run one statement over an instance stream")
    sp.add_argument(
        "statement",
        help="one of: redei, main, kiss_somlai, proposition, projection_support, "
        "gacs (gacs_gap), szonyi, dsw (dsw_product), parity_identity, sum_criterion",
    )
    common(sp, seeded=True)
    sp.add_argument("--exhaustive", action="store_true", help="exhaustive enumeration")
    sp.add_argument("--sample", type=int, default=None, metavar="N", help="sampled run of N instances")
    sp.add_argument("--k", type=int, default=None, help="subset cardinality (default p)")
    sp.add_argument(
        "--counterexamples", default=None, metavar="PATH",
        help="write failure reports as JSON lines to PATH",
    )

    sp = sub.add_parser("classify", help="orbit classification of extremal objects")
    sp.add_argument("target", choices=("polys", "sets"))
    common(sp, seeded=True)

    sp = sub.add_parser("product", help="product bound check for one A x B")
    common(sp)
    sp.add_argument("--a", required=True, help='comma list, e.g. "0,1"')
    sp.add_argument("--b", required=True, help='comma list, e.g. "0,1,2"')
    return parser


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for token in text.split():
        x, sep, y = token.partition(",")
        if not sep:
            raise ValueError(f"point {token!r} is not of the form x,y")
        pairs.append((int(x), int(y)))
    return pairs


def _parse_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _literal(inline: str | None, path: str | None, what: str) -> str:
    if (inline is None) == (path is None):
        raise ValueError(f"provide exactly one of --{what} or --{what}-file")
    if inline is not None:
        return inline
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_directions(args) -> tuple[dict, int]:
    m = PrimeModulus(args.p)
    pairs = _parse_pairs(_literal(args.points, args.points_file, "points"))
    h = PointSet.from_pairs(m, pairs)
    if len(h) < 2:
        raise ValueError("need at least two distinct points")
    dirs = direction_set(h)
    degrees = {}
    for c in all_directions(m):
        deg = projection_polynomial(h, c).degree
        degrees[str(c)] = deg
    report = {
        "command": "directions",
        "p": args.p,
        "points": h.text_form(),
        "point_count": len(h),
        "direction_count": len(dirs),
        "directions": sorted((str(c) for c in dirs), key=lambda s: (s == "inf", s.zfill(10))),
        "is_line": is_line(h),
        "projection_degrees": degrees,
    }
    return report, 0


def _cmd_interpolate(args) -> tuple[dict, int]:
    m = PrimeModulus(args.p)
    values = _parse_ints(_literal(args.values, args.values_file, "values"))
    if len(values) != args.p:
        raise ValueError(f"need exactly p = {args.p} values, got {len(values)}")
    g = Polynomial.interpolate(m, values)
    report = {
        "command": "interpolate",
        "p": args.p,
        "values": [v % args.p for v in values],
        "coefficients": g.coefficient_list(),
        "degree": g.degree,
        "lifted_value_sum": g.lifted_value_sum(),
        "sum_criterion": g.sum_criterion(),
    }
    return report, 0


def _cmd_verify(args) -> tuple[dict, int]:
    statement = STATEMENT_ALIASES.get(args.statement, args.statement)
    if statement not in STATEMENT_TITLES:
        raise ValueError(f"unknown statement {args.statement!r}")
    if args.exhaustive == (args.sample is not None):
        raise ValueError("choose exactly one of --exhaustive or --sample N")
    m = PrimeModulus(args.p)
    mode = "exhaustive" if args.exhaustive else "sampled"
    outcome = verify_statement(
        m, statement, mode,
        sample_count=args.sample or 0,
        seed=args.seed,
        worker_chunks=args.workers,
        k=args.k,
    )
    report = {
        "command": "verify",
        "statement_id": statement,
        "title": STATEMENT_TITLES[statement],
        "p": args.p,
        "mode": mode,
        "seed": args.seed,
        "sample_count": args.sample or 0,
        "workers": args.workers,
        "scanned": outcome.scanned,
        "tally": outcome.tally,
        "evidence_grade": outcome.evidence_grade,
        "notes": outcome.notes,
        "failures": [r.to_dict() for r in outcome.failures],
        "reports": [r.to_dict() for r in outcome.reports],
    }
    if outcome.subset_census is not None:
        c = outcome.subset_census
        report["census"] = {
            "k": c.k,
            "line_count": c.line_count,
            "direction_histogram": {str(d): n for d, n in sorted(c.direction_histogram.items())},
            "exemplars": {
                str(d): PointSet.from_cells(m, cells).text_form()
                for d, cells in sorted(c.exemplars.items())
            },
        }
    if args.counterexamples:
        with open(args.counterexamples, "w", encoding="utf-8") as fh:
            for r in outcome.failures:
                fh.write(r.to_json_line() + "\n")
    return report, 0 if outcome.ok else 1


def _cmd_classify(args) -> tuple[dict, int]:
    if args.target == "polys":
        result = classify_half_degree_polynomials(args.p)
        report = {
            "command": "classify",
            "target": "polys",
            "p": args.p,
            "survivor_count": result.survivor_count,
            "orbit_count": len(result.classes),
            "witness_canonical": list(result.witness_canonical),
            "witness_orbit_is_unique": result.witness_orbit_is_unique,
            "transform_convention": result.transform_convention,
            "classes": [
                {
                    "canonical": list(c.canonical),
                    "orbit_size": c.orbit_size,
                    "members_seen": c.members_seen,
                }
                for c in result.classes
            ],
        }
    else:
        result = classify_extremal_sets(args.p, worker_chunks=args.workers)
        report = {
            "command": "classify",
            "target": "sets",
            "p": args.p,
            "direction_count": result.direction_count,
            "total_members": result.total_members,
            "orbit_count": len(result.classes),
            "reverified_members": result.reverified_members,
            "classes": [
                {
                    "canonical": c.canonical,
                    "orbit_size": c.orbit_size,
                    "members_seen": c.members_seen,
                }
                for c in result.classes
            ],
        }
    return report, 0


def _cmd_product(args) -> tuple[dict, int]:
    m = PrimeModulus(args.p)
    report_obj = check_dsw_product(m, _parse_ints(args.a), _parse_ints(args.b))
    report = {
        "command": "product",
        "p": args.p,
        "title": STATEMENT_TITLES["dsw_product"],
        "report": report_obj.to_dict(),
        "status": report_obj.status,
    }
    return report, 1 if report_obj.status == "fail" else 0


def _human_lines(report: dict) -> list[str]:
    cmd = report["command"]
    lines = []
    if cmd == "directions":
        lines.append(f"p = {report['p']}, points ({report['point_count']}): {report['points']}")
        lines.append(f"direction count d = {report['direction_count']}")
        lines.append("directions: " + " ".join(report["directions"]))
        lines.append(f"is_line: {str(report['is_line']).lower()}")
        degs = " ".join(
            f"{c}:{'-' if d is None else d}" for c, d in report["projection_degrees"].items()
        )
        lines.append(f"projection polynomial degrees (direction:degree): {degs}")
    elif cmd == "interpolate":
        lines.append(f"p = {report['p']}, values: {','.join(str(v) for v in report['values'])}")
        lines.append(f"coefficients (low to high): {report['coefficients']}")
        deg = report["degree"]
        lines.append(f"degree: {'none (zero polynomial)' if deg is None else deg}")
        lines.append(f"lifted value sum: {report['lifted_value_sum']}")
        lines.append(f"field value sum vanishes (degree < p-1): {str(report['sum_criterion']).lower()}")
    elif cmd == "verify":
        lines.append(f"{report['statement_id']}: {report['title']}")
        lines.append(
            f"p = {report['p']}, mode = {report['mode']}, seed = {report['seed']}, "
            f"scanned = {report['scanned']}"
        )
        t = report["tally"]
        lines.append(f"pass = {t['pass']}, fail = {t['fail']}, skip = {t['skip']}")
        if report["evidence_grade"]:
            lines.append("grade: evidence (sampled), not a proof")
        for note in report["notes"]:
            lines.append(f"note: {note}")
        for r in report["reports"]:
            lines.append(f"report: {json.dumps(r, sort_keys=True)}")
        for r in report["failures"]:
            lines.append(f"FAIL: {json.dumps(r, sort_keys=True)}")
        if "census" in report:
            hist = report["census"]["direction_histogram"]
            lines.append(
                "direction histogram: "
                + " ".join(f"d={d}:{n}" for d, n in hist.items())
            )
            lines.append(f"line count: {report['census']['line_count']}")
        lines.append("verdict: " + ("PASS" if not report["failures"] else "FAIL"))
    elif cmd == "classify":
        lines.append(f"classify {report['target']} at p = {report['p']}")
        if report["target"] == "polys":
            lines.append(f"qualifying polynomials: {report['survivor_count']}")
            lines.append(f"orbit count: {report['orbit_count']}")
            lines.append(f"witness orbit canonical: {report['witness_canonical']}")
            lines.append(
                "witness orbit is the only orbit: "
                f"{str(report['witness_orbit_is_unique']).lower()} "
                "(reported, not asserted)"
            )
            lines.append(f"convention: {report['transform_convention']}")
        else:
            lines.append(f"extremal direction count: {report['direction_count']}")
            lines.append(f"members: {report['total_members']}, orbits: {report['orbit_count']}")
            lines.append(f"re-verified members: {report['reverified_members']}")
        for c in report["classes"]:
            lines.append(
                f"class canonical={c['canonical']} orbit_size={c['orbit_size']} "
                f"members_seen={c['members_seen']}"
            )
    elif cmd == "product":
        r = report["report"]
        lines.append(report["title"])
        lines.append(f"instance: {r['instance']}")
        lines.append(f"status: {report['status']}")
        lines.append(f"witness: {json.dumps(r['witness'], sort_keys=True)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if report.get("command") == "verify" and "census" in report:
            m = PrimeModulus(report["p"])
            hist = report["census"]["direction_histogram"]
            import csv as _csv
            import io

            buf = io.StringIO()
            w = _csv.writer(buf, lineterminator="\n")
            w.writerow(["p", "k", "d", "count", "exemplar"])
            for d, n in hist.items():
                w.writerow(
                    [report["p"], report["census"]["k"], d, n,
                     report["census"]["exemplars"].get(d, "")]
                )
            return buf.getvalue()
        raise ValueError("csv output is only available for verify runs over point sets")
    return "\n".join(_human_lines(report)) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "directions": _cmd_directions,
        "interpolate": _cmd_interpolate,
        "verify": _cmd_verify,
        "classify": _cmd_classify,
        "product": _cmd_product,
    }
    try:
        report, code = handlers[args.command](args)
        rendered = render(report, args.format)
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        summary = _human_lines(report)
        print(summary[0] if summary else report["command"])
        print(f"wrote {args.format} report to {args.out}")
    else:
        sys.stdout.write(rendered)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
