"""The acceptance suite: ten numbered criteria, each a list of checks.

A check is a dict {name, status, detail, counterexample}; status is
"pass", "fail" or "unknown".  Every criterion draws its randomness from
``default_rng([seed, number])`` so criteria can run alone or in any order
and still produce the same report.
"""

from __future__ import annotations

import time

import numpy as np

from . import clifford, orbits, triality, trivialization
from .errors import IsotopyError
from .isotope import (
    Isotope,
    check_isomorphism,
    isotope_norm_certified,
    isotope_formula_maps,
    standard_form_links,
    trialitarian_isotope_maps,
)
from .octonion import DIM, identity_suite, parse_algebra
from .rings import parse_ring
from .triality import (
    RelatedTriple,
    basic_triple,
    delta_mask,
    kernel_triple,
    random_related_triple,
    related_mask,
)

IDENTITY_ALGEBRAS = ("zorn(Z)", "zorn(Q)", "zorn(F2)", "zorn(F3)", "zorn(Z/8)", "cd(Q,-1,-1,-1)")
FIELD_ALGEBRAS = ("zorn(F3)", "zorn(F5)", "zorn(Q)")
TRIPLE_ALGEBRAS = ("zorn(F2)", "zorn(F3)", "zorn(F5)", "zorn(Q)", "zorn(Z)", "zorn(Z/8)", "cd(Q,-1,-1,-1)")
IDENTITY_TIME_LIMIT = 5.0
ORBIT_TIME_LIMIT = 60.0


def check(name, ok, detail="", counterexample=None):
    return {
        "name": name,
        "status": "pass" if ok else "fail",
        "detail": detail,
        "counterexample": None if ok else counterexample,
    }


def _rng(seed, number):
    return np.random.default_rng([seed, number])


def _select(specs, ring):
    """Algebras from ``specs`` over ``ring``; zorn(ring) if none of them is."""
    if ring is None:
        return [parse_algebra(s) for s in specs]
    target = parse_ring(ring).spec
    chosen = [parse_algebra(s) for s in specs if parse_algebra(s).ring.spec == target]
    return chosen or [parse_algebra(f"zorn({ring})")]


def _wants(ring, spec):
    return ring is None or parse_ring(ring).spec == parse_ring(spec).spec


def _pair_example(C, **elements):
    out = {"algebra": C.name}
    out.update({k: C.format_element(v) for k, v in elements.items()})
    return out


# 1 ------------------------------------------------------------------------


def criterion_1(ring=None, seed=0, samples=500):
    rng = _rng(seed, 1)
    out = []
    start = time.perf_counter()
    for C in _select(IDENTITY_ALGEBRAS, ring):
        report = identity_suite(C, samples, rng=rng)
        bad = [c for c in report if c["status"] != "pass"]
        out.append(check(
            f"identities {C.name}",
            not bad,
            f"{len(report)} identities on {samples} samples",
            {"algebra": C.name, "identity": bad[0]["name"], **(bad[0]["counterexample"] or {})} if bad else None,
        ))
    elapsed = time.perf_counter() - start
    out.append(check("identity suites run time", elapsed < IDENTITY_TIME_LIMIT, f"limit {IDENTITY_TIME_LIMIT:g} s"))
    return out


# 2 ------------------------------------------------------------------------


def criterion_2(ring=None, seed=0, samples=100):
    rng = _rng(seed, 2)
    out = []
    for C in _select(IDENTITY_ALGEBRAS, ring):
        r = C.ring
        for kind, draw in (("unit-norm", C.random_unit_norm), ("invertible", C.random_invertible)):
            fail = None
            for _ in range(samples):
                a, b = draw(rng), draw(rng)
                iso = Isotope(C, a, b)
                lam = r.one if kind == "unit-norm" else C.norm(C.mul(a, b))
                expected = r.scale(lam, C.norm_form.upper)
                if not (r.array_equal(iso.norm_form.upper, expected) and isotope_norm_certified(iso)):
                    fail = _pair_example(C, a=a, b=b)
                    break
            label = "q_C" if kind == "unit-norm" else "q(ab) q_C"
            out.append(check(f"isotope norm = {label} over {C.name} ({kind} pairs)", fail is None,
                             f"{samples} pairs", fail))
    return out


# 3 ------------------------------------------------------------------------


def _maps_check(C, a, b, label):
    fails = []
    for m in isotope_formula_maps(C, a, b):
        ok = np.asarray(m.check(), dtype=bool)
        if not np.all(ok):
            i = int(np.flatnonzero(~ok.ravel())[0]) if ok.ndim else 0
            ai = a[i] if np.ndim(a) > 1 else a
            bi = b[i] if np.ndim(b) > 1 else b
            fails.append({"map": m.name, **_pair_example(C, a=ai, b=bi)})
    return check(f"ten isotope maps, {label}", not fails, "", fails[0] if fails else None)


def criterion_3(ring=None, seed=0, samples=100):
    rng = _rng(seed, 3)
    out = []
    if _wants(ring, "F2"):
        table = orbits.enumerate_sphere(2)
        pts = table.elements()
        n = len(pts)
        a = np.repeat(pts, n, axis=0)
        b = np.tile(pts, (n, 1))
        out.append(_maps_check(table.algebra, a, b, f"all {n * n} unit-norm pairs over F2"))
    for C in _select(FIELD_ALGEBRAS, ring) if ring is None or not _wants(ring, "F2") else []:
        fails = None
        for _ in range(samples):
            a, b = C.random_invertible(rng), C.random_invertible(rng)
            res = _maps_check(C, a, b, "")
            if res["status"] != "pass":
                fails = res["counterexample"]
                break
        out.append(check(f"ten isotope maps, {samples} random pairs over {C.name}", fails is None, "", fails))
    return out


# 4 ------------------------------------------------------------------------


def _triple_family(C, rng, samples):
    """Basic triples, their rotations, products and inverses."""
    fam = []
    for _ in range(samples):
        t = basic_triple(C, C.random_unit_norm(rng))
        s = random_related_triple(C, rng, 3)
        fam += [t, t.rotate(), t.rotate().rotate(), t * s, s, s.inverse()]
    return fam


def _stack(C, triples):
    return RelatedTriple(*(np.stack([getattr(t, k) for t in triples]) for k in ("t1", "t2", "t3")), C)


def criterion_4(ring=None, seed=0, samples=20, trials=10_000):
    rng = _rng(seed, 4)
    out = []
    for C in _select(TRIPLE_ALGEBRAS, ring):
        r = C.ring
        fam = _stack(C, _triple_family(C, rng, samples))
        rel = related_mask(C, fam.t1, fam.t2, fam.t3)
        dlt = delta_mask(C, fam.t1, fam.t2, fam.t3)
        bad = np.flatnonzero(~(rel & dlt))
        out.append(check(
            f"generated triples related and delta-invariant over {C.name}",
            not len(bad),
            f"{len(rel)} triples",
            {"algebra": C.name, "index": int(bad[0])} if len(bad) else None,
        ))
        out.append(check(f"related and delta tests agree over {C.name}", bool(np.all(rel == dlt))))
        kern = [kernel_triple(C, e) for e in (1, -1)]
        out.append(check(f"kernel triples accepted over {C.name}", all(t.is_related() for t in kern)))
    # no triple (I, t2, t3) other than (I, eta I, eta I) is related
    for C in _select(("zorn(F3)", "zorn(F2)", "zorn(Z/8)"), ring):
        r = C.ring
        n_prod = trials // 2
        cands = [random_related_triple(C, rng, int(rng.integers(1, 5))) for _ in range(n_prod)]
        t2 = [t.t2 for t in cands] + [t.t3 for t in cands[: trials - n_prod]]
        t3 = [t.t3 for t in cands] + [t.t2 for t in cands[: trials - n_prod]]
        t2, t3 = np.stack(t2), np.stack(t3)
        eye = np.broadcast_to(r.eye(DIM), t2.shape)
        acc = related_mask(C, eye, t2, t3)
        etas = [e for e in r.elements() if r.eq(r.mul(e, e), r.one)] if r.order else [r.one, r.neg(r.one)]
        scalar = np.zeros(len(acc), dtype=bool)
        for e in etas:
            ei = r.scale(e, r.eye(DIM))
            scalar |= np.all(t2 == ei, axis=(-2, -1)) & np.all(t3 == ei, axis=(-2, -1))
        wrong = np.flatnonzero(acc & ~scalar)
        out.append(check(
            f"only kernel triples have t1 = I over {C.name}",
            not len(wrong),
            f"{len(acc)} candidates, {int(acc.sum())} accepted",
            {"algebra": C.name, "index": int(wrong[0])} if len(wrong) else None,
        ))
    return out


# 5 ------------------------------------------------------------------------


def _round_trip_mask(C, t):
    """Batched: iso_from_triple then triple_from_iso; equal pi and equal up to (I, eta I, eta I)."""
    r = C.ring
    a, b = t.pi()
    iso_ok = np.asarray(check_isomorphism(t.t1, C, Isotope(C, a, b)), dtype=bool)
    k = C.conj_matrix
    t2 = r.reduce(k @ C.right_mul(a) @ t.t1 @ k)
    t3 = r.reduce(k @ C.left_mul(b) @ t.t1 @ k)
    back = RelatedTriple(t.t1, t2, t3, C)
    a2, b2 = back.pi()
    pi_ok = np.all(a2 == a, axis=-1) & np.all(b2 == b, axis=-1)
    same = np.zeros(iso_ok.shape, dtype=bool)
    for eta in {r.one, r.neg(r.one)}:
        same |= np.all(r.reduce(t2 * eta) == t.t2, axis=(-2, -1)) & np.all(r.reduce(t3 * eta) == t.t3, axis=(-2, -1))
    return iso_ok & pi_ok & same


def criterion_5(ring=None, seed=0, samples=100):
    rng = _rng(seed, 5)
    out = []
    if _wants(ring, "F2"):
        orbit = orbits.default_orbit(2)
        _, trip = orbit.all_triples()
        ok = _round_trip_mask(orbit.table.algebra, trip)
        out.append(check("round trip on all orbit triples over F2", bool(np.all(ok)), f"{len(ok)} triples",
                         {"index": int(np.flatnonzero(~ok)[0])} if not np.all(ok) else None))
    for C in _select(TRIPLE_ALGEBRAS, ring):
        if C.name == "zorn(F2)":
            continue
        fam = _stack(C, [random_related_triple(C, rng, 3) for _ in range(samples)])
        ok = _round_trip_mask(C, fam)
        out.append(check(f"round trip on {samples} triples over {C.name}", bool(np.all(ok))))
    return out


# 6 ------------------------------------------------------------------------


def criterion_6(ring=None, seed=0, samples=100):
    rng = _rng(seed, 6)
    out = []
    for C in _select(IDENTITY_ALGEBRAS, ring):
        r = C.ring
        sq = all(
            r.array_equal(r.matmul(clifford.alpha(C, C.basis(i)), clifford.alpha(C, C.basis(i))),
                          r.scale(C.norm(C.basis(i)), r.eye(clifford.N)))
            for i in range(DIM)
        )
        out.append(check(f"alpha(e_i)^2 = q(e_i) I over {C.name}", sq))

        def spin():
            return clifford.spin_generator(C, C.random_unit_norm(rng), C.random_unit_norm(rng))

        n = max(1, samples // 2) if r.dtype is object else samples
        fail = None
        for _ in range(n):
            u = r.matmul(spin(), spin())
            t = clifford.triple_from_spin(C, u)
            if not (t.is_related() and r.array_equal(clifford.spin_from_triple(t), u)):
                fail = {"algebra": C.name, "case": "spin -> triple -> spin"}
                break
            s = random_related_triple(C, rng, 2)
            if not clifford.triple_from_spin(C, clifford.spin_from_triple(s)).equals(s):
                fail = {"algebra": C.name, "case": "triple -> spin -> triple"}
                break
        out.append(check(f"spin/triple bijection over {C.name}", fail is None, f"{n} cases each way", fail))
        fail = None
        for _ in range(n):
            u, v = spin(), spin()
            lhs = clifford.triple_from_spin(C, r.matmul(u, v))
            rhs = clifford.triple_from_spin(C, u) * clifford.triple_from_spin(C, v)
            if not lhs.equals(rhs):
                fail = {"algebra": C.name}
                break
        out.append(check(f"triple_from_spin multiplicative over {C.name}", fail is None, f"{n} pairs", fail))
        kern = all(
            clifford.triple_from_spin(C, clifford.scalar_spin(C, e)).equals(kernel_triple(C, e)) for e in (1, -1)
        )
        out.append(check(f"eta I maps to (I, eta I, eta I) over {C.name}", kern))
    return out


# 7 ------------------------------------------------------------------------


def criterion_7(ring=None, seed=0):
    out = []
    for q in (2, 3, 5):
        n = len(orbits.enumerate_sphere(q))
        expected = orbits.sphere_size(q)
        out.append(check(f"sphere count q={q}", n == expected, f"{n} (expected {expected})"))
    start = time.perf_counter()
    orbit = orbits.orbit_of_pair(orbits.enumerate_sphere(2))
    elapsed = time.perf_counter() - start
    expected = orbits.sphere_size(2) ** 2
    out.append(check("orbit of (1,1) at q=2", orbit.size == expected, f"{orbit.size} (expected {expected})"))
    out.append(check("orbit run time", elapsed < ORBIT_TIME_LIMIT, f"limit {ORBIT_TIME_LIMIT:g} s"))
    return out


# 8 ------------------------------------------------------------------------


def _trivialize_all(C, points):
    for a in points:
        try:
            w = trivialization.field_trivialize(C, a)
        except IsotopyError as exc:
            return {"algebra": C.name, "a": C.format_element(a), "error": str(exc)}
        if not w.check():
            return {"algebra": C.name, "a": C.format_element(a)}
    return None


def criterion_8(ring=None, seed=0, samples=100):
    rng = _rng(seed, 8)
    out = []
    for q in (2, 3):
        if _wants(ring, f"F{q}"):
            table = orbits.enumerate_sphere(q)
            fail = _trivialize_all(table.algebra, table.elements())
            out.append(check(f"field_trivialize on all {len(table)} sphere points over F{q}", fail is None, "", fail))
    specs = ["zorn(Q)"] if ring is None else [f"zorn({ring})"]
    for spec in specs:
        C = parse_algebra(spec)
        if C.ring.order in (2, 3):
            continue
        if not C.ring.is_field:
            out.append({"name": f"field_trivialize over {C.name}", "status": "unknown",
                        "detail": "not a field: isotopes are only certified trivial, never decided",
                        "counterexample": None})
            continue
        pts = [C.random_unit_norm(rng) for _ in range(samples)]
        fail = _trivialize_all(C, pts)
        out.append(check(f"field_trivialize on {samples} random sphere points over {C.name}", fail is None, "", fail))
    return out


# 9 ------------------------------------------------------------------------


def criterion_9(ring=None, seed=0, samples=100):
    rng = _rng(seed, 9)
    out = []
    for C in _select(FIELD_ALGEBRAS + ("cd(Q,-1,-1,-1)", "zorn(Z/8)"), ring):
        fail_s = fail_t = fail_m = None
        n = samples if C.ring.dtype is not object else max(1, samples // 2)
        for _ in range(n):
            a, b = C.random_unit_norm(rng), C.random_unit_norm(rng)
            if fail_s is None and not triality.s_triple(C, a, b).is_related():
                fail_s = _pair_example(C, a=a, b=b)
            iso = Isotope(C, a, b)
            # a, b have norm 1, so the isotope norm is q_C and C's sampler applies
            t = random_related_triple(iso, rng, 2, C.random_unit_norm)
            s = random_related_triple(iso, rng, 2, C.random_unit_norm)
            tt = triality.twist_conjugate(C, t, a, b)
            ts = triality.twist_conjugate(C, s, a, b)
            if fail_t is None and not (t.is_related() and tt.is_related()):
                fail_t = _pair_example(C, a=a, b=b)
            if fail_m is None and not triality.twist_conjugate(C, t * s, a, b).equals(tt * ts):
                fail_m = _pair_example(C, a=a, b=b)
        out.append(check(f"s_(a,b) related over {C.name}", fail_s is None, f"{n} pairs", fail_s))
        out.append(check(f"twist maps isotope triples to related triples over {C.name}", fail_t is None, "", fail_t))
        out.append(check(f"twist is multiplicative over {C.name}", fail_m is None, "", fail_m))
    return out


# 10 -----------------------------------------------------------------------


def criterion_10(ring=None, seed=0, samples=50):
    rng = _rng(seed, 10)
    out = []
    if _wants(ring, "F2"):
        orbit = orbits.default_orbit(2)
        _, t = orbit.all_triples()
        ok = _pair_action_mask(orbit.table.algebra, t)
        out.append(check("pair action on all orbit triples over F2", bool(np.all(ok)), f"{len(ok)} triples"))
    for C in _select(TRIPLE_ALGEBRAS, ring):
        fam = _stack(C, _triple_family(C, rng, max(1, samples // 6)))
        ok = _pair_action_mask(C, fam)
        out.append(check(f"pair action on generated triples over {C.name}", bool(np.all(ok)), f"{len(ok)} triples"))
        fail = None
        for _ in range(samples if C.ring.dtype is not object else max(1, samples // 5)):
            a, b = C.random_invertible(rng), C.random_invertible(rng)
            for m in trialitarian_isotope_maps(C, a, b) + standard_form_links(C, a, b):
                if not m.check():
                    fail = {"map": m.name, **_pair_example(C, a=a, b=b)}
                    break
            if fail:
                break
        out.append(check(f"trialitarian isotopes share standard forms over {C.name}", fail is None, "", fail))
    return out


def _pair_action_mask(C, t):
    r = C.ring
    x, y = t.pi()
    x2, y2 = t.rotate().pi()
    expected = C.mul(C.conj(y), C.conj(x))
    return np.all(x2 == expected, axis=-1) & np.all(y2 == x, axis=-1)


CRITERIA = {
    1: ("identity suites", criterion_1),
    2: ("isotope norm", criterion_2),
    3: ("isotope isomorphism formulae", criterion_3),
    4: ("triality relation suite", criterion_4),
    5: ("triple/isomorphism round trip", criterion_5),
    6: ("Clifford and spin", criterion_6),
    7: ("sphere and orbit counts", criterion_7),
    8: ("trivialization over fields", criterion_8),
    9: ("twisted conjugation", criterion_9),
    10: ("trialitarian pair action", criterion_10),
}


def run_criterion(number, ring=None, seed=0):
    title, fn = CRITERIA[number]
    try:
        checks = fn(ring=ring, seed=seed)
    except IsotopyError as exc:
        checks = [{"name": title, "status": "fail", "detail": f"{type(exc).__name__}: {exc}", "counterexample": None}]
    for c in checks:
        c["criterion"] = number
    return checks


def status_of(checks):
    if any(c["status"] == "fail" for c in checks):
        return "fail"
    if any(c["status"] == "unknown" for c in checks):
        return "unknown"
    return "pass"


def full_suite(ring=None, seed=0):
    """All criteria in order: a list of {criterion, title, status, checks}."""
    out = []
    for n, (title, _) in CRITERIA.items():
        checks = run_criterion(n, ring, seed)
        out.append({"criterion": n, "title": title, "status": status_of(checks), "checks": checks})
    return out
