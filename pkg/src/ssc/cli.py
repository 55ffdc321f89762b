"""Command-line interface: ``ssc <command> ...``.

Every command prints canonical text by default and a JSON document with a
top-level ``"schema": 1`` field under ``--json``.  The exit status is 0
whenever a decision was computed, negative verdicts included; 2 signals a
usage or parse error and 1 an input that is well formed but not a valid
data set.

Examples::

    ssc cyclic enum --degree 6 --genus 2
    ssc commute --dg "(2,0;((1,2),6))" --df "(6,0;((1,6),2),(2,3))"
    ssc table s3 --diff
"""

from __future__ import annotations

import argparse
import json
import sys

from . import abelian as ab
from . import cyclic as cy
from .dehn import BadIndices, ComponentGenusMismatch, nonsep_root_commute, sep_root_commute
from .notation import ParseError, parse_abelian, parse_dataset
from .realize import CONVENTIONS, NotEligible, polygon_spec
from .roots import is_primitive, roots_of
from .table import MISMATCH, compare_s3, load_golden

SCHEMA = 1


class InputError(Exception):
    """A well-formed argument that does not describe a valid object."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class UsageError(InputError):
    """A required option is missing for the chosen action."""


# --- argument helpers ----------------------------------------------------------

def _dataset(text, min_genus=1):
    d = parse_dataset(text, lenient=True)
    report = cy.validate(d, min_genus=min_genus)
    if not report.ok:
        raise InputError(f"{d} is not a valid data set",
                         {"data": str(d), "validation": report.to_json()})
    return d


def _abelian(text):
    a = parse_abelian(text, lenient=True)
    report = ab.validate_abelian(a)
    if not report.ok:
        raise InputError(f"{a} is not a valid abelian data set",
                         {"data": str(a), "validation": report.to_json()})
    return a


def _pair(args):
    return _dataset(args.dg), _dataset(args.df)


# --- command handlers ----------------------------------------------------------
# Each returns (result for JSON, lines of text).

def cmd_cyclic(args):
    if args.action == "enum":
        found = cy.enumerate_cyclic(args.degree, args.genus) if args.degree >= 2 else []
        return [str(d) for d in found], [str(d) for d in found]
    if args.data is None:
        raise UsageError("--data is required")
    if args.action == "validate":
        d = parse_dataset(args.data, lenient=True)
        report = cy.validate(d)
        text = ["ok" if report.ok else "invalid"]
        text += [f"  {name}: {msg}" for name, msg in report.failures]
        if report.genus is not None:
            text.append(f"genus {report.genus}")
        return {"data": str(d), **report.to_json()}, text
    d = _dataset(args.data)
    if args.action == "classify":
        c = cy.classify(d)
        return {"data": str(d), "signature": str(cy.signature_of(d)), **c.to_json()}, [
            f"signature {cy.signature_of(d)}",
            *(f"{k}: {v}" for k, v in c.to_json().items())]
    if args.action == "power":
        if args.exp is None:
            raise UsageError("--exp is required")
        p = cy.power(d, args.exp)
        out = "trivial" if p is cy.TrivialAction else str(p)
        return {"data": str(d), "exp": args.exp, "power": out}, [out]
    if args.t is None:
        raise UsageError("--t is required")
    try:
        count = cy.fixed_point_count(d, args.t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"data": str(d), "t": args.t, "fixed_points": count}, [str(count)]


def cmd_abelian(args):
    if args.action == "enum":
        try:
            found = ab.enumerate_abelian(args.m, args.n, args.genus)
        except ab.InvalidDegrees as exc:
            raise InputError(str(exc)) from None
        rows = [{"abelian": str(a), "factors": str(ab.factor_generators(a))} for a in found]
        return rows, [f"{r['abelian']}  {r['factors']}" for r in rows]
    if args.data is None:
        raise UsageError("--data is required")
    if args.action == "validate":
        a = parse_abelian(args.data, lenient=True)
        report = ab.validate_abelian(a)
        text = ["ok" if report.ok else "invalid"]
        text += [f"  {name}: {msg}" for name, msg in report.failures]
        if report.genus is not None:
            text.append(f"genus {report.genus}")
        return {"data": str(a), **report.to_json()}, text
    a = _abelian(args.data)
    if args.action == "factors":
        fp = ab.factor_generators(a)
        return {"data": str(a), **fp.to_json()}, [str(fp)]
    d_gbar, d_fbar = ab.induced_quotient_classes(a)
    sigs = [str(s) for s in ab.orbifold_signatures(a)]
    result = {"data": str(a), "common": str(ab.common_signature(a)),
              "induced_g": str(d_gbar), "induced_f": str(d_fbar), "signatures": sigs}
    return result, [f"common {result['common']}",
                    f"induced on S/<F>: {d_gbar}", f"induced on S/<G>: {d_fbar}"]


def _degrees_ok(d_g, d_f):
    if d_f.degree % d_g.degree:
        raise InputError(f"degree {d_g.degree} of --dg must divide degree {d_f.degree} of --df")
    if cy.genus_of(d_g) != cy.genus_of(d_f):
        raise InputError("the two classes live on surfaces of different genus")


def cmd_commute(args):
    d_g, d_f = _pair(args)
    _degrees_ok(d_g, d_f)
    report = ab.necessary_report(d_g, d_f)
    result = {"dg": str(d_g), "df": str(d_f), "necessary": report.to_json()}
    text = [f"necessary conditions: {report.verdict} (stage {report.stage})"]
    if report.reason:
        text.append(f"  {report.reason}")
    if not args.necessary_only:
        witnesses = ab.weakly_commute(d_g, d_f)
        result["witnesses"] = [str(a) for a in witnesses]
        result["weakly_commute"] = bool(witnesses)
        text.append(f"weakly commute: {'yes' if witnesses else 'no'}")
        for a in witnesses:
            g_bar, f_bar = ab.induced_quotient_classes(a)
            text.append(f"  {a}  signature {ab.common_signature(a)}  "
                        f"induced {g_bar} {f_bar}")
    return result, text


def cmd_invol(args):
    d_f, d_g = _dataset(args.df), _dataset(args.dg)
    try:
        verdict = ab.involution_weak_commute(d_f, d_g)
    except (ab.NotInvolutions, ValueError) as exc:
        raise InputError(str(exc)) from None
    result = {"df": str(d_f), "dg": str(d_g), **verdict.to_json()}
    text = [f"weakly commute: {'yes' if verdict.commute else 'no'}"]
    if verdict.feasible:
        text.append("feasible (s', s''): " + " ".join(f"({a},{b})" for a, b in verdict.feasible))
    if args.complete:
        try:
            completions = ab.klein_completions(d_f, d_g)
        except ab.NotWeaklyCommuting as exc:
            completions = []
            text.append(str(exc))
        result["completions"] = [str(d) for d in completions]
        text += [f"  {d}" for d in completions]
    return result, text


def cmd_lift(args):
    d = _dataset(args.data)
    try:
        verdict = ab.liftable_conjugate(d, args.sheets)
    except (ab.NotFree, ValueError) as exc:
        raise InputError(str(exc)) from None
    text = [f"liftable: {'yes' if verdict.liftable else 'no'}"]
    if verdict.witness is not None:
        text.append(f"  witness {verdict.witness}")
    return {"data": str(d), "sheets": args.sheets, **verdict.to_json()}, text


def cmd_roots(args):
    d = _dataset(args.data)
    if args.degree is None:
        p = is_primitive(d)
        text = [f"primitive: {'yes' if p.primitive else 'no'}"]
        if not p.primitive:
            text.append(f"  root of degree {p.degree}: {p.witness}"
                        + (" (up to rotation)" if p.up_to_rotation else ""))
        return {"data": str(d), **p.to_json()}, text
    if args.degree < 1:
        raise InputError("--degree must be positive")
    found = roots_of(d, args.degree)
    text = [f"{r.root}  order {r.degree}" + ("" if r.exact else "  (up to rotation)")
            + ("  (trivial)" if r.trivial else "") for r in found]
    return {"data": str(d), "degree": args.degree,
            "roots": [r.to_json() for r in found]}, text


def cmd_dehn(args):
    try:
        if args.action == "nonsep":
            d_f, d_g = _dataset(args.fhat), _dataset(args.ghat)
            verdict = nonsep_root_commute(d_f, args.i, args.j, d_g)
        else:
            fhat = (_dataset(args.f1), _dataset(args.f2))
            ghat = None
            if args.g1 or args.g2:
                if not (args.g1 and args.g2):
                    raise UsageError("--g1 and --g2 must be given together")
                ghat = (_dataset(args.g1), _dataset(args.g2))
            verdict = sep_root_commute(fhat, ghat, swap=args.swap)
    except (BadIndices, ComponentGenusMismatch, ab.InvalidDegrees) as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return verdict.to_json(), [f"{verdict.verdict}: {verdict.reason}"]


def cmd_polygon(args):
    d = _dataset(args.data)
    try:
        spec = polygon_spec(d, args.convention)
    except NotEligible as exc:
        raise InputError(str(exc)) from None
    text = [f"sides {spec.sides}", f"word {spec.word()}",
            f"involution: {'yes' if spec.is_involution else 'no'}"]
    return {"data": str(d), **spec.to_json()}, text


def cmd_table(args):
    if args.diff is None:
        golden = None
    else:
        try:
            golden = load_golden(args.diff or None)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read golden file: {exc}") from None
    cmp = compare_s3(golden)
    result = cmp.to_json()
    text = []
    if args.diff is None:
        for r in cmp.rows:
            if r.status != MISMATCH:
                text.append(f"{r.row:>2}  {r.abelian}  {r.factors}")
        for a, f in cmp.unlisted:
            text.append(f" +  {a}  {f}")
    else:
        for r in cmp.rows:
            note = f" [{', '.join(r.errata)}]" if r.errata else ""
            text.append(f"{r.row:>2} {r.status:<8} {r.abelian}  {r.factors}{note}")
        for a, f in cmp.unlisted:
            text.append(f" + unlisted {a}  {f}")
    c = cmp.counts
    text.append(f"rows {len(cmp.rows)}: {c['match']} match, {c['errata']} errata, "
                f"{c['mismatch']} mismatch; enumerated {cmp.enumerated}, "
                f"unlisted {len(cmp.unlisted)}")
    return result, text


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    parser = argparse.ArgumentParser(prog="ssc", parents=[common],
                                     description="Finite cyclic and abelian actions on surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cyclic", parents=[common], help="cyclic data sets")
    p.add_argument("action", choices=["enum", "validate", "classify", "power", "fix"])
    p.add_argument("--degree", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--data")
    p.add_argument("--exp", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_cyclic)

    p = sub.add_parser("abelian", parents=[common], help="abelian data sets")
    p.add_argument("action", choices=["enum", "validate", "factors", "signatures"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--data")
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("commute", parents=[common], help="weak commutativity of two classes")
    p.add_argument("--dg", required=True)
    p.add_argument("--df", required=True)
    p.add_argument("--necessary-only", action="store_true")
    p.set_defaults(func=cmd_commute)

    p = sub.add_parser("invol", parents=[common], help="involution pairs")
    p.add_argument("--df", required=True)
    p.add_argument("--dg", required=True)
    p.add_argument("--complete", action="store_true", help="list Klein four completions")
    p.set_defaults(func=cmd_invol)

    p = sub.add_parser("lift", parents=[common], help="lifts of free actions under covers")
    p.add_argument("--data", required=True)
    p.add_argument("--sheets", type=int, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("roots", parents=[common], help="roots and primitivity")
    p.add_argument("--data", required=True)
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("dehn", parents=[common], help="roots of Dehn twists")
    dsub = p.add_subparsers(dest="action", required=True)
    q = dsub.add_parser("nonsep", parents=[common])
    q.add_argument("--fhat", required=True)
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--j", type=int, required=True)
    q.add_argument("--ghat", required=True)
    q = dsub.add_parser("sep", parents=[common])
    q.add_argument("--f1", required=True)
    q.add_argument("--f2", required=True)
    q.add_argument("--g1")
    q.add_argument("--g2")
    q.add_argument("--swap", action="store_true")
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("polygon", parents=[common], help="polygon model")
    p.add_argument("--data", required=True)
    p.add_argument("--convention", choices=CONVENTIONS, default="c3")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("table", parents=[common], help="genus-3 classification table")
    p.add_argument("which", choices=["s3"])
    p.add_argument("--diff", nargs="?", const="", default=None, metavar="GOLDEN",
                   help="compare with a golden file (default: the packaged one)")
    p.set_defaults(func=cmd_table)
    return parser


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n}" for n in missing))


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = args.json
    try:
        if args.command == "cyclic" and args.action == "enum":
            _require(args, "degree", "genus")
        if args.command == "abelian" and args.action == "enum":
            _require(args, "m", "n", "genus")
        result, text = args.func(args)
    except ParseError as exc:
        return _fail(err, as_json, "parse", str(exc), {"production": exc.production}, 2)
    except UsageError as exc:
        return _fail(err, as_json, "usage", str(exc), exc.payload, 2)
    except InputError as exc:
        return _fail(err, as_json, "input", str(exc), exc.payload, 1)
    if as_json:
        json.dump({"schema": SCHEMA, "command": args.command, "result": result},
                  out, sort_keys=True)
        out.write("\n")
    else:
        for line in text:
            out.write(line + "\n")
    return 0


def _fail(err, as_json, kind, message, payload, code):
    if as_json:
        json.dump({"schema": SCHEMA, "error": kind, "message": message, **payload},
                  err, sort_keys=True)
        err.write("\n")
    else:
        err.write(f"ssc: {message}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
