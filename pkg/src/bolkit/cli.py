"""Command-line front end: ``bolkit catalog|verify|classify|suite|report``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on
usage or input errors. ``--out FILE`` appends one JSON object per report,
``{"header": {...}, "report": {...}}``; the header carries the timestamp so
report bodies stay byte-identical for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__, catalog
from . import classification as K
from . import loops as L
from . import suites as S
from .lie_core import derived_space, is_bol_algebra
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_RATIONAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_FLOAT = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    """Bad input that should end the run with exit status 2."""


def rational(text: str) -> Fraction:
    """Exact parameter: an integer or ``p/q``. Decimals are rejected."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational; write it as p/q (e.g. 1/2)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator") from None


def real(text: str) -> float:
    """Float parameter: decimal or scientific notation, no ``p/q``."""
    text = text.strip()
    if not _FLOAT.match(text):
        raise argparse.ArgumentTypeError(f"{text!r} is not a decimal number")
    return float(text)


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def positive_real(text: str) -> float:
    x = real(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def param(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"{text!r} should look like name=p/q")
    return name.strip(), rational(value)


def _default_seed() -> int:
    raw = os.environ.get("BOLKIT_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BOLKIT_SEED={raw!r} is not an integer") from None


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $BOLKIT_SEED or 0)")
    common.add_argument("--samples", type=positive_int, default=None, help="sample count for random checks")
    common.add_argument("--tol", type=positive_real, default=None, help="override numerical tolerances")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--catalog", metavar="FILE", default=None, help="JSON file of extra algebras/subspaces")
    common.add_argument("--out", metavar="FILE", default=None, help="append JSON-lines reports to FILE")

    p = argparse.ArgumentParser(prog="bolkit", description="Verify Bol algebras and Bol loops in small Lie groups.")
    p.add_argument("--version", action="version", version=f"bolkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", parents=[common], help="inspect the catalog")
    cat.add_argument("action", choices=("list",))
    cat.add_argument("--json", action="store_true", help="export entries as JSON")

    ver = sub.add_parser("verify", parents=[common], help="check one catalog entry or loop context")
    ver.add_argument("target", help="catalog id or loop id (" + ", ".join(S.LOOP_IDS) + ")")
    ver.add_argument("--param", type=param, action="append", default=[], help="family parameter, name=p/q")

    cls = sub.add_parser("classify", parents=[common], help="solve a classification problem")
    cls.add_argument("problem", choices=("iso-psl2c", "iso-semidirect", "compactness", "angles", "scan",
                                         "lemma3", "grading"))
    cls.add_argument("--a", type=rational, default=None)
    cls.add_argument("--b3", type=rational, default=Fraction(0))
    cls.add_argument("--c3", type=rational, default=Fraction(0))
    cls.add_argument("--c2", type=rational, default=Fraction(0))
    cls.add_argument("--family", default=None, help="Bol family id (m_a, m_d, m_b3c3c2)")
    cls.add_argument("--param", type=param, action="append", default=[], help="family parameter, name=p/q")
    cls.add_argument("--ansatz", choices=("psl2c", "semidirect"), default="psl2c")
    cls.add_argument("--m", dest="m_id", default=None, help="triple system id")
    cls.add_argument("--h", dest="h_id", default=None, help="stabilizer id")

    sui = sub.add_parser("suite", parents=[common], help="run a named suite")
    sui.add_argument("suite_id", help="one of " + ", ".join([*S.SUITES, "theorem-main"]))

    rep = sub.add_parser("report", help="summarize JSON-lines report files")
    rep.add_argument("paths", nargs="+")
    rep.add_argument("--format", choices=("text", "json"), default="text")
    return p


def config_from(args) -> S.SuiteConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return S.SuiteConfig(seed=seed, samples=args.samples, tol=args.tol, catalog_file=args.catalog)


def _load_catalog(cfg: S.SuiteConfig):
    if cfg.catalog_file is None:
        return None
    return catalog.default_catalog().with_file(cfg.catalog_file)


# ------------------------------------------------------------------ commands

def cmd_catalog_list(args, cfg) -> tuple:
    cat = _load_catalog(cfg)
    if args.json:
        return [json.dumps(catalog.export_catalog(cat), indent=2, sort_keys=True)], []
    rows = [f"{e.id:<18} {e.kind:<14} {e.algebra_id:<10} {e.description}" for e in catalog.list_entries(cat)]
    return rows, []


def _params(pairs) -> dict:
    out = {}
    for name, value in pairs:
        if name in out:
            raise UsageError(f"parameter {name!r} given twice")
        out[name] = value
    return out


def _loop_reports(name: str, cfg) -> list:
    ctx = S.loop_context(name)
    if name.startswith("nonbol"):
        n, t = cfg.n(200), S._loop_tols(cfg)
        return [L.check_identity(ctx, n, cfg.seed, **t), L.check_divisions(ctx, n, cfg.seed, **t),
                L.check_sharp_transitivity(ctx, n, cfg.seed, **t),
                S.expected_failure(L.check_bol(ctx, n, cfg.seed), "not a Bol loop", margin=0.1)]
    if ctx.is_local:
        small = replace(cfg, samples=cfg.n(40))
        return [L.check_identity(ctx, small.samples, cfg.seed), L.check_divisions(ctx, small.samples, cfg.seed),
                L.check_bol(ctx, small.samples, cfg.seed)]
    return S.global_loop_reports(ctx, cfg)


def cmd_verify(args, cfg) -> tuple:
    target = args.target
    if target in S.LOOP_IDS:
        return [], _loop_reports(target, cfg)
    cat = _load_catalog(cfg)
    entry = catalog.get_entry(target, cat)
    if entry.kind == "algebra":
        if cat is None or target in S.ALGEBRA_IDS:
            return [], S.algebra_reports(target)
        from .lie_core import check_jacobi
        return [], [check_jacobi(entry.payload)]
    if entry.kind in ("triple_system", "stabilizer"):
        return [], S.subspace_reports(target, cat)
    if entry.kind == "bol_family":
        params = _params(args.param)
        m = catalog.bol_family(target, params)
        alg = catalog.get_algebra(entry.algebra_id)
        rep = is_bol_algebra(alg, m, catalog.family_stabilizer(target))
        label = ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
        return [], [replace(rep, context=f"{target}({label})")]
    raise UsageError(f"{target!r} is a {entry.kind}; nothing to verify")


def _family_subspace(args):
    if args.family is None:
        raise UsageError("--family is required")
    fam = catalog.FAMILIES().get(args.family)
    if fam is None:
        raise UsageError(f"unknown family {args.family!r}")
    return catalog.get_algebra(fam.algebra_id), catalog.bol_family(args.family, _params(args.param)), fam


def cmd_classify(args, cfg) -> tuple:
    prob = args.problem
    if prob == "iso-psl2c":
        if args.a is None:
            raise UsageError("iso-psl2c needs --a p/q")
        sol = K.solve_iso_psl2c(args.a)
        rep = S.iso_psl2c_report(args.a)
        lines = [f"a={args.a}: system solutions b in {{{', '.join(str(b) for b in sol.values)}}}"]
        lines += [f"b={b}" for b in sol.admissible]
        return lines, [rep]
    if prob == "iso-semidirect":
        res = K.solve_iso_semidirect(args.b3, args.c3, args.c2)
        d = res.d if res.exact else f"{res.d:.12g}"
        return [f"m_({args.b3},{args.c3},{args.c2}) is isomorphic to m_(d,0,0) with d={d}"], [res.report]
    if prob == "compactness":
        alg, m, _ = _family_subspace(args)
        rep = K.compactness_check(alg, derived_space(alg, m))
        lines = ["compact" if rep.passed else f"not compact, witness {rep.details['witness']}"
                 f" with Killing value {rep.details['witness_killing']}"]
        # compactness is a classification outcome, not a pass/fail check
        return lines, [replace(rep, check=f"compactness = {rep.passed}", passed=True)]
    if prob == "angles":
        alg, m, fam = _family_subspace(args)
        ref = catalog.bol_family(args.family, {p: 0 for p in fam.params})
        inv = K.angle_invariant(alg, m, ref)
        vals = ", ".join(f"{r:.12g}" if i == 0 else f"{r:.12g}+-{i:.12g}i" for r, i in inv.values)
        rep = VerificationReport(context=f"{args.family} vs zero parameters", check="angle invariant", passed=True,
                                 samples=1, topic="angle invariants", invariant=inv.values,
                                 details={"degenerate": inv.degenerate, "kernel_dim": inv.kernel_dim})
        text = "degenerate pairing" if inv.degenerate else f"angle invariant: ({vals})"
        return [text], [rep]
    if prob == "scan":
        n = cfg.n(1000)
        return [], [K.bol_complement_scan(args.ansatz, n, cfg.seed)]
    if prob in ("lemma3", "grading"):
        if args.m_id is None or args.h_id is None:
            raise UsageError(f"{prob} needs --m and --h catalog ids")
        cat = _load_catalog(cfg)
        m, h = catalog.get_subspace(args.m_id, cat), catalog.get_subspace(args.h_id, cat)
        if m.algebra_name != h.algebra_name:
            raise UsageError("m and h live in different algebras")
        if prob == "grading":
            return [], [K.grading_report(m.algebra, m, h)]
        rep = K.lemma3_obstruction(m.algebra, m, h)
        verdict = "no type conflict" if rep.passed else f"type conflict: {rep.details.get('conflicts')}"
        return [verdict], [rep]
    raise UsageError(f"unknown problem {prob!r}")


def cmd_suite(args, cfg) -> tuple:
    return [], S.run_suite(args.suite_id, cfg)


def cmd_report(paths) -> tuple:
    reports = []
    for path in paths:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                if not raw.strip():
                    continue
                try:
                    obj = json.loads(raw)
                except json.JSONDecodeError as err:
                    raise UsageError(f"{path}:{lineno}: not JSON ({err.msg})") from None
                body = obj.get("report", obj) if isinstance(obj, dict) else None
                if not isinstance(body, dict) or "pass" not in body:
                    raise UsageError(f"{path}:{lineno}: not a report object")
                reports.append(body)
    return reports


# ------------------------------------------------------------------ output

def _emit_reports(reports, fmt, out=None):
    out = out or sys.stdout
    for r in reports:
        print(r.to_json() if fmt == "json" else r.line(), file=out)
    if fmt == "text" and reports:
        failed = sum(not r.passed for r in reports)
        print(f"{len(reports)} checks, {failed} failed", file=out)


def _append(path, reports, argv, seed):
    stamp = datetime.now(timezone.utc).isoformat()
    header = {"timestamp": stamp, "command": list(argv), "seed": seed, "version": __version__}
    with open(path, "a") as fh:
        for r in reports:
            fh.write(json.dumps({"header": header, "report": r.to_json_dict()}, sort_keys=True) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "report":
            bodies = cmd_report(args.paths)
            for b in bodies:
                if args.format == "json":
                    print(json.dumps(b, sort_keys=True))
                else:
                    print(f"[{'PASS' if b['pass'] else 'FAIL'}] {b.get('context', '?')} :: {b.get('check', '?')}")
            failed = sum(not b["pass"] for b in bodies)
            if args.format == "text":
                print(f"{len(bodies)} reports, {failed} failed")
            return EXIT_FAIL if failed else EXIT_OK
        cfg = config_from(args)
        handler = {"catalog": cmd_catalog_list, "verify": cmd_verify,
                   "classify": cmd_classify, "suite": cmd_suite}[args.command]
        lines, reports = handler(args, cfg)
    except (UsageError, KeyError, ValueError, OSError, K.UnsupportedError, catalog.ValidationError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"bolkit: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    for line in lines:
        print(line)
    _emit_reports(reports, args.format)
    if args.out and reports:
        _append(args.out, reports, argv, cfg.seed)
    return EXIT_FAIL if any(not r.passed for r in reports) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
