"""Command line front end: ``isotopy <subcommand> [flags]``.

Every subcommand builds a JSON report (command echo, ring, algebra, a list
of checks) and exits 0 unless some check failed.  Reports carry no timing,
so the same seed always gives byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import acceptance, clifford, linalg, orbits, trivialization
from .acceptance import check, status_of
from .errors import IsotopyError, ParseError
from .isotope import (
    Isotope,
    is_algebra_isomorphism,
    isotope_norm_certified,
    isotope_formula_maps,
    standard_form,
    standard_form_links,
    trialitarian_isotope_maps,
)
from .octonion import DIM, identity_suite, parse_algebra
from .triality import basic_triple, delta_mask, iso_from_triple, pair_action_holds, random_related_triple


def _element(C, text, flag):
    if text is None:
        raise ParseError(f"{flag} is required")
    return C.parse_element(text).coords


def _report(args, checks, **extra):
    rep = {"command": args.argv, "ring": None, "algebra": getattr(args, "algebra", None)}
    if rep["algebra"]:
        rep["ring"] = parse_algebra(rep["algebra"]).ring.spec
    elif getattr(args, "ring", None):
        rep["ring"] = args.ring
    rep.update(extra)
    rep["checks"] = checks
    rep["status"] = status_of(checks)
    return rep


# subcommands ----------------------------------------------------------------


def cmd_verify_identities(args):
    C = parse_algebra(args.algebra)
    report = identity_suite(C, args.samples, args.seed)
    checks = [
        {"name": c["name"], "status": c["status"], "detail": f"{c['failures']} failures",
         "counterexample": None if c["counterexample"] is None else {"algebra": C.name, **c["counterexample"]}}
        for c in report
    ]
    return _report(args, checks, samples=args.samples, seed=args.seed)


def cmd_isotope(args):
    C = parse_algebra(args.algebra)
    a, b = _element(C, args.a, "--a"), _element(C, args.b, "--b")
    iso = Isotope(C, a, b)
    r = C.ring
    checks = [check("isotope norm is q(ab) q_C", isotope_norm_certified(iso))]
    for m in isotope_formula_maps(C, a, b) + trialitarian_isotope_maps(C, a, b) + standard_form_links(C, a, b):
        checks.append(check(m.name, m.check()))
    c, witness = standard_form(C, a, b)
    checks.append(check("standard form witness C^{a,b} -> C^{1,c}",
                        is_algebra_isomorphism(witness, iso, Isotope(C, C.unit, c))))
    extra = {
        "unit": C.format_element(iso.unit),
        "norm_scale": r.format(iso.scale),
        "standard_form": C.format_element(c),
    }
    if args.emit_witness:
        extra["witness"] = linalg.format_matrix(r, witness)
    return _report(args, checks, **extra)


def cmd_triple(args):
    C = parse_algebra(args.algebra)
    r = C.ring
    rng = np.random.default_rng(args.seed)
    c = _element(C, args.c, "--c") if args.c else C.random_unit_norm(rng)
    t = basic_triple(C, c)
    checks = [
        check("related", t.is_related()),
        check("delta-invariant", bool(np.all(delta_mask(C, t.t1, t.t2, t.t3)))),
        check("rotation related", t.rotate().is_related()),
        check("inverse related", t.inverse().is_related()),
        check("pair action", pair_action_holds(C, t)),
    ]
    a, b, f = iso_from_triple(t)
    checks.append(check("t1 is an isomorphism C -> C^pi", is_algebra_isomorphism(f, C, Isotope(C, a, b))))
    extra = {"c": C.format_element(c), "pi": [C.format_element(a), C.format_element(b)]}
    if args.emit_witness:
        extra["triple"] = t.to_json()
    return _report(args, checks, **extra)


def cmd_spin(args):
    C = parse_algebra(args.algebra)
    r = C.ring
    checks = []
    extra = {}
    if args.from_vectors:
        x = _element(C, args.from_vectors[0], "x")
        y = _element(C, args.from_vectors[1], "y")
        checks.append(check("q(x) q(y) = 1", r.eq(r.mul(C.norm(x), C.norm(y)), r.one)))
        u = clifford.spin_generator(C, x, y)
        ok = clifford.is_spin(C, u)
        checks.append(check("alpha(x) alpha(y) is spin", ok))
        if ok:
            t = clifford.triple_from_spin(C, u)
            checks.append(check("triple related", t.is_related()))
            checks.append(check("round trip", r.array_equal(clifford.spin_from_triple(t), u)))
            if args.emit_witness:
                extra["triple"] = t.to_json()
        if args.emit_witness:
            extra["u"] = linalg.format_matrix(r, u)
    elif args.check:
        with open(args.check) as fh:
            data = json.load(fh)
        rows = data["u"] if isinstance(data, dict) else data
        u = linalg.parse_matrix(r, rows)
        ok = clifford.is_spin(C, u)
        checks.append(check("is spin", ok))
        if ok:
            t = clifford.triple_from_spin(C, u)
            checks.append(check("triple related", t.is_related()))
            extra["triple"] = t.to_json()
    else:
        rng = np.random.default_rng(args.seed)
        fail = None
        for i in range(args.samples):
            t = random_related_triple(C, rng, 2)
            if not clifford.triple_from_spin(C, clifford.spin_from_triple(t)).equals(t):
                fail = {"algebra": C.name, "sample": i}
                break
        checks.append(check("triple -> spin -> triple", fail is None, f"{args.samples} samples", fail))
        extra["samples"] = args.samples
        extra["seed"] = args.seed
    return _report(args, checks, **extra)


def cmd_trivialize(args):
    C = parse_algebra(args.algebra)
    a = _element(C, args.a, "--a")
    w = trivialization.try_trivialize(C, a)
    if w is None:
        checks = [{"name": "isomorphism C -> C^{a,conj a}", "status": "unknown",
                   "detail": "no sufficient condition applies", "counterexample": None}]
        return _report(args, checks, a=C.format_element(a))
    checks = [check("isomorphism C -> C^{a,conj a}", w.check())]
    return _report(args, checks, a=C.format_element(a), witness=w.to_json())


def _count_row(q, orbit=None):
    n = len(orbits.enumerate_sphere(q))
    row = {"q": q, "sphere_count": n, "orbit_count": None, "expected": orbits.sphere_size(q)}
    if orbit is not None:
        row["orbit_count"] = orbit.size
        row["expected"] = orbits.sphere_size(q) ** 2
        row["match"] = orbit.size == row["expected"]
    else:
        row["match"] = n == row["expected"]
    return row


def cmd_count_sphere(args):
    row = _count_row(args.q)
    checks = [check(f"sphere count q={args.q}", row["match"], f"{row['sphere_count']}")]
    return _report(args, checks, rows=[row], **{k: row[k] for k in ("q", "sphere_count", "expected")})


def cmd_orbit(args):
    table = orbits.enumerate_sphere(args.q)
    orbit = orbits.default_orbit(args.q, args.max_pairs)
    row = _count_row(args.q, orbit)
    checks = [check(f"orbit of (1,1) at q={args.q}", row["match"], f"{row['orbit_count']}")]
    extra = {"rows": [row], "q": args.q, "orbit_count": row["orbit_count"], "expected": row["expected"]}
    if args.target:
        C = table.algebra
        parts = args.target.split(",")
        if len(parts) != 2 * DIM:
            raise ParseError(f"--target needs {2 * DIM} comma-separated coordinates")
        a = C.parse_element(",".join(parts[:DIM])).coords
        b = C.parse_element(",".join(parts[DIM:])).coords
        w = orbits.isotope_witness_via_orbit(args.q, a, b, orbit)
        checks.append(check("orbit witness is an isomorphism C -> C^{a,b}", w.check()))
        if args.emit_witness:
            extra["witness"] = w.to_json()
    return _report(args, checks, **extra)


def cmd_full_suite(args):
    results = acceptance.full_suite(args.ring, args.seed)
    checks = [c for res in results for c in res["checks"]]
    summary = [{"criterion": res["criterion"], "title": res["title"], "status": res["status"]} for res in results]
    return _report(args, checks, seed=args.seed, criteria=summary)


# output ---------------------------------------------------------------------


def _csv(report):
    buf = io.StringIO()
    if "rows" in report:
        cols = ["q", "sphere_count", "orbit_count", "expected", "match"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for row in report["rows"]:
            w.writerow(row)
    else:
        cols = ["name", "status", "detail"]
        if any("criterion" in c for c in report["checks"]):
            cols.insert(0, "criterion")
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for c in report["checks"]:
            w.writerow(c)
    return buf.getvalue()


def render(report, fmt="json"):
    if fmt == "csv":
        return _csv(report)
    return json.dumps(report, indent=2) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="isotopy", description="Octonion isotopes, related triples and triality.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring")
    common.add_argument("--algebra")
    common.add_argument("--a")
    common.add_argument("--b")
    common.add_argument("--q", type=int, default=2)
    common.add_argument("--samples", type=int, default=500)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--emit-witness", action="store_true")
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-identities", parents=[common])
    s.set_defaults(func=cmd_verify_identities, need_algebra=True)
    s = sub.add_parser("isotope", parents=[common])
    s.set_defaults(func=cmd_isotope, need_algebra=True)
    s = sub.add_parser("triple", parents=[common])
    s.add_argument("--c")
    s.set_defaults(func=cmd_triple, need_algebra=True)
    s = sub.add_parser("spin", parents=[common])
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--from-vectors", nargs=2, metavar=("X", "Y"))
    mode.add_argument("--check", metavar="U_JSON")
    mode.add_argument("--roundtrip", action="store_true")
    s.set_defaults(func=cmd_spin, need_algebra=True)
    s = sub.add_parser("trivialize", parents=[common])
    s.set_defaults(func=cmd_trivialize, need_algebra=True)
    s = sub.add_parser("count-sphere", parents=[common])
    s.set_defaults(func=cmd_count_sphere, need_algebra=False)
    s = sub.add_parser("orbit", parents=[common])
    s.add_argument("--target")
    s.add_argument("--max-pairs", type=int, default=orbits.MAX_ORBIT_PAIRS)
    s.set_defaults(func=cmd_orbit, need_algebra=False)
    s = sub.add_parser("paper-suite", parents=[common])
    s.set_defaults(func=cmd_full_suite, need_algebra=False)
    return p


def run(argv=None):
    """Parse and dispatch; returns (exit code, report or None)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = " ".join(["isotopy", *argv])
    if args.need_algebra and not args.algebra:
        if args.ring:
            args.algebra = f"zorn({args.ring})"
        else:
            parser.error(f"{args.command} needs --algebra or --ring")
    try:
        report = args.func(args)
    except (IsotopyError, ValueError, OSError, KeyError) as exc:
        print(f"isotopy {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (0 if report["status"] != "fail" else 1), report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
