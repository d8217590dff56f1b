"""Command-line front end.

Exit codes: 0 success, 1 a suite with hypotheses met failed its conclusion
(or a Lie-ring check failed), 2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CatalogEntry, RunConfig, catalog_by_name, load_catalog
from .certify import SUITES, jsonable, run_suites
from .eigen import eigenspace_decomposition, grading_check
from .errors import CapacityError, InputError
from .liering import associated_lie_ring, check_lie_axioms, extend_scalars, induced_automorphism
from .pcgroup import DEFAULT_CAP, consistency_check
from .report import FILTRATIONS, analyze_group, dumps, make_report
from .textformat import parse_file

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _select(entries: list[CatalogEntry], names) -> list[CatalogEntry]:
    if not names:
        return entries
    by = catalog_by_name(entries)
    missing = [n for n in names if n not in by]
    if missing:
        raise InputError(f"unknown group(s): {', '.join(missing)}")
    return [by[n] for n in names]


def _entry(args) -> CatalogEntry:
    return _select(load_catalog(args.catalog, args.cap), [args.group])[0]


def _guard(entry_name: str, fn, *a, **kw):
    try:
        return fn(*a, **kw)
    except CapacityError as exc:
        if str(exc).startswith(f"{entry_name}:"):
            raise
        raise CapacityError(f"{entry_name}: {exc}") from exc


def cmd_validate(args) -> int:
    parsed = parse_file(args.file)
    status = EXIT_OK
    for name, g in parsed.groups.items():
        v = _guard(name, consistency_check, g)
        auts = ", ".join(f"{a.name} (order {a.order})" for a in parsed.automorphisms.get(name, {}).values())
        line = f"{name}: order {g.order}, " + ("consistent" if v.ok else f"inconsistent: {v.witness}")
        print(line + (f"; automorphisms: {auts}" if auts else ""))
        if not v.ok:
            status = EXIT_INPUT
    return status


def cmd_analyze(args) -> int:
    e = _entry(args)
    print(dumps(_guard(e.name, analyze_group, e.presentation, args.filtration, e.automorphisms)), end="")
    return EXIT_OK


def cmd_lie(args) -> int:
    e = _entry(args)
    g = e.presentation
    phi = e.automorphism(args.aut) if args.aut else e.automorphisms[0]
    ring = _guard(e.name, associated_lie_ring, g)
    ring = induced_automorphism(ring, phi)
    out = {"ring": ring.describe(), "automorphism": phi.name, "automorphism_order": ring.automorphism_order()}
    checks = {"lie_axioms": check_lie_axioms(ring)}
    if args.extend_q:
        ext = extend_scalars(ring, args.extend_q)
        dec = eigenspace_decomposition(ext)
        out["extended"] = ext.describe()
        out["eigencomponents"] = dec.describe()
        checks["projections"] = dec.verification
        checks["grading"] = grading_check(dec)
    out["checks"] = jsonable(checks)
    print(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False))
    return EXIT_OK if all(v.ok for v in checks.values()) else EXIT_FAIL


def _parse_suites(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _run(config: RunConfig) -> tuple[dict, int]:
    entries = _select(load_catalog(config.catalog, config.cap), config.groups)
    reports = []
    analyses = []
    for e in entries:
        reports += _guard(
            e.name, run_suites, [e], config.suites, seed=config.seed, n_max=config.n_max, exhaustive=config.exhaustive
        )
        for kind in config.analyses:
            if kind == "zassenhaus" and not e.presentation.is_p_group():
                continue
            analyses.append(_guard(e.name, analyze_group, e.presentation, kind, e.automorphisms))
    status = EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK
    return make_report(reports, analyses, config), status


def _write(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_certify(args) -> int:
    config = RunConfig(
        cap=args.cap, suites=tuple(_parse_suites(args.suite)), catalog=args.catalog,
        groups=tuple(args.group or ()), seed=args.seed, out=args.out,
    )
    report, status = _run(config)
    for r in report["reports"]:
        print(f"{r['status']:<20} {r['suite']:<9} {r['group']:<12} {r['automorphism'] or '-'}")
    counts = {}
    for r in report["reports"]:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    print("summary: " + (", ".join(f"{k} {v}" for k, v in sorted(counts.items())) or "no reports"))
    if args.out:
        _write(report, args.out)
    return status


def cmd_batch(args) -> int:
    try:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.config}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{args.config}: expected a JSON object")
    config = RunConfig.from_dict(data)
    if args.out:
        config.out = args.out
    bad = [a for a in config.analyses if a not in FILTRATIONS]
    if bad:
        raise InputError(f"unknown analyses: {', '.join(bad)}")
    report, status = _run(config)
    _write(report, config.out)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcengel", description="Engel conditions and coprime automorphisms in finite soluble groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def catalog_opts(sp):
        sp.add_argument("--catalog", default="builtin", help="'builtin' or a directory of .pc files")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    sp = sub.add_parser("validate", help="parse a text-format file and check consistency")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("analyze", help="series, Lie ring and Engel summary of one group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--filtration", choices=FILTRATIONS, default="lcs")
    catalog_opts(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("lie", help="associated Lie ring, scalar extension and eigenspaces")
    sp.add_argument("--group", required=True)
    sp.add_argument("--extend-q", type=int, default=None)
    sp.add_argument("--aut", default=None)
    catalog_opts(sp)
    sp.set_defaults(func=cmd_lie)

    sp = sub.add_parser("certify", help="run theorem suites over a catalog")
    sp.add_argument("--suite", default=",".join(SUITES), help="comma-separated: " + ",".join(SUITES))
    sp.add_argument("--group", action="append", help="restrict to a group (repeatable)")
    sp.add_argument("--out", default=None, help="write the JSON report here")
    sp.add_argument("--seed", type=int, default=0)
    catalog_opts(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("batch", help="run a JSON config and write a report")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
