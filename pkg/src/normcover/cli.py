"""Command line entry point.

    normcover --config task.json [--out report.json] [--seed S] [--jobs N] [--format json|csv]
    normcover verify-report report.json
    normcover list-catalog

Exit status: 0 verified true, 1 verified false, 2 inconclusive, 3 config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from . import coverage as cov
from .tasks import ConfigError, Report, build_group, catalog, jsonable, run

EXIT_TRUE, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_CONFIG = 0, 1, 2, 3


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def exit_code(verdict: Any) -> int:
    if verdict is True:
        return EXIT_TRUE
    if verdict is False:
        return EXIT_FALSE
    return EXIT_INCONCLUSIVE


def to_csv(report: Report) -> str:
    rows = report.rows
    if rows is None:
        rows = [{"task": report.task, "verdict": jsonable(report.verdict)}]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["task"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_error(exc: ConfigError | str, field: str = "") -> int:
    msg = str(exc)
    field = getattr(exc, "field", field)
    sys.stderr.write(dumps({"error": msg, "field": field}))
    return EXIT_CONFIG


def cmd_run(args: argparse.Namespace) -> int:
    if args.jobs is not None and args.jobs < 1:
        return _config_error("--jobs must be at least 1", "--jobs")
    try:
        if args.config in (None, "-"):
            cfg = json.load(sys.stdin)
        else:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
    except OSError as exc:
        return _config_error(f"cannot read config: {exc}", "--config")
    except json.JSONDecodeError as exc:
        return _config_error(f"config is not valid JSON: {exc}", "--config")
    if args.seed is not None and isinstance(cfg, dict):
        cfg["seed"] = args.seed
    try:
        report = run(cfg)
    except ConfigError as exc:
        return _config_error(exc)
    text = to_csv(report) if args.format == "csv" else dumps(report.to_json())
    _emit(text, args.out)
    return exit_code(report.verdict)


# --------------------------------------------------------------------------
# verify-report: recompute only the memberships a report claims
# --------------------------------------------------------------------------


def _law_only(desc: dict):
    """Group with the same law; the norm is rebuilt only if it is a catalog id."""
    d = dict(desc)
    if d.get("type") == "iet":
        d.pop("generators", None)
    try:
        return build_group(d, "/group")
    except ConfigError:
        d.pop("norm", None)
        return build_group(d, "/group")


def _check_certificate(cert: dict, group) -> bool:
    from .perm import ConjProductCert

    base = group.decode(cert["base"])
    factors = tuple((int(s), group.decode(h)) for s, h in cert["factors"])
    claimed = group.decode(cert["claimed"])
    c = ConjProductCert(base, factors, claimed)
    return group.key(c.replay(group.multiply, group.invert, group.identity())) == group.key(claimed)


def verify_report(doc: dict) -> list[tuple[str, bool]]:
    checks: list[tuple[str, bool]] = []
    task = doc.get("task")
    cert = doc.get("certificate")
    if task == "dirlim" and cert:
        group = _law_only(doc["group"][cert["stage"]])
        checks.append(("certificate", _check_certificate(cert, group)))
    elif task == "brenner" and cert:
        n = doc["parameters"]["n"]
        group = _law_only({"type": "sym", "n": n})
        checks.append(("certificate", _check_certificate(cert, group)))
        if doc["parameters"].get("mode") == "sigma_infinity" and doc.get("verdict") is True:
            prod = group.decode(cert["claimed"])
            checks.append(("full_support", len(prod.support()) == n))
    elif cert:
        group = _law_only(doc["group"])
        checks.append(("certificate", _check_certificate(cert, group)))

    wit = doc.get("witness")
    if task == "axioms" and wit and "axiom" in wit and wit["pair"] is not None:
        group = _law_only(doc["group"])
        g, h = (group.decode(x) for x in wit["pair"])
        ax = wit["axiom"]
        nm = group.norm
        if ax == "0":
            bad = nm(group.identity()) != 0
        elif ax == "1":
            bad = nm(group.multiply(g, h)) > nm(g) + nm(h)
        elif ax == "2":
            bad = nm(group.invert(g)) != nm(g) or nm(group.conjugate(g, group.invert(h))) != nm(g)
        else:
            bad = group.key(g) != group.key(group.identity()) and nm(g) == 0
        checks.append((f"axiom_{ax}_violation", bool(bad)))
    if task == "cover" and wit is not None:
        group = _law_only(doc["group"])
        fg = cov.finite(group)
        x = fg.index_of(group.decode(wit))
        closed = doc["parameters"].get("closed", False)
        inside = False
        for s, e in zip(doc["parameters"]["sets"], doc["parameters"]["eps"]):
            idx = np.array([fg.index_of(group.decode(y)) for y in s], dtype=np.int64)
            if x in set(fg.products(idx, fg.ball(Fraction(e), closed)).tolist()):
                inside = True
        checks.append(("witness_uncovered", not inside))
    if task == "bigseq" and wit is not None:
        group = _law_only(doc["group"])
        p = doc["parameters"]
        fg = cov.finite(group)
        g = fg.index_of(group.decode(wit["g"]))
        h = fg.index_of(group.decode(wit["h"]))
        ns = fg.norms()
        checks.append(("witness_norms", ns[g] > Fraction(p["r"]) and ns[h] < Fraction(p["t"])))
        eps = [Fraction(e) for e in p["eps"]]
        b = fg.conj_ball(g, max(len(eps) - 1, 1), stop_when_full=False)
        hit = any(h in set(fg.products(b.members(k), fg.ball(eps[k])).tolist())
                  for k in range(p.get("start", 0), len(eps)))
        checks.append(("witness_uncovered", not hit))
    if not checks:
        checks.append(("nothing_to_verify", True))
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _config_error(f"cannot read report: {exc}", "report")
    try:
        checks = verify_report(doc)
    except (KeyError, TypeError, ValueError) as exc:
        return _config_error(f"malformed report: {exc}", "report")
    ok = all(c for _, c in checks)
    _emit(dumps({"verified": ok, "checks": dict(checks)}), args.out)
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_catalog(args: argparse.Namespace) -> int:
    _emit(dumps(catalog()), args.out)
    return EXIT_TRUE


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normcover", description="Finite checks for bi-invariant norms and conjugacy covering.")
    sub = ap.add_subparsers(dest="command")
    r = sub.add_parser("run", help="run one task descriptor (default command)")
    r.add_argument("--config", help="task JSON file ('-' or omitted: stdin)")
    r.add_argument("--out", help="write the report here instead of stdout")
    r.add_argument("--jobs", type=int, default=None, help="worker cap; results do not depend on it")
    r.add_argument("--seed", type=int, default=None, help="overrides the seed in the config")
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.set_defaults(func=cmd_run)
    v = sub.add_parser("verify-report", help="re-check certificates and witnesses in a report")
    v.add_argument("report")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    c = sub.add_parser("list-catalog", aliases=["list_catalog"], help="group types, norm ids, rules, schema version")
    c.add_argument("--out")
    c.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("run", "verify-report", "list-catalog", "list_catalog", "-h", "--help"):
        argv = ["run"] + argv
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_TRUE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
