"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
import math
import time

import numpy as np
import pytest

from fordpu.classify import classify
from fordpu.config import DEFAULT
from fordpu.ford import (CONTAINMENTS, EXTERIORS, containment_audit, cycle_audit, neighborhood_audit,
                         perturbed_points, sample_point_audit, side_pairing_audit, slice_line_check,
                         tangency_scan)
from fordpu.giraud import (chart_from_words, coplanar_defect, inner_sq_form, lift_of, restricted_slice_chart,
                           solve_triple, vv_form)
from fordpu.group import ModuliPoint, generators, gram_matrix, t_upper
from fordpu.heisenberg import cygan_distance, isometric_sphere
from fordpu.hermitian import preserves_form, scalar_equiv
from fordpu.scan import ScanConfig, scan
from fordpu.trigform import wrap
from fordpu.words import a_conjugate, invert_word

PI = math.pi
ATAN = math.atan(2 * math.sqrt(6))
S15 = math.sqrt(15)
S53 = math.sqrt(5 / 3)

CRITERIA = {}
RESULTS = {}


def criterion(n, title):
    def register(fn):
        CRITERIA[n] = (title, fn)
        return fn
    return register


@criterion(1, "generator correctness")
def generators_on_grid():
    words = ("I1I1", "I2I2", "I3I3", "I4I4", "I1I3I1I3", "I2I4I2I4", "I1I4I1I4I1I4", "BB", "CCC", "ACAC")
    start = time.perf_counter()
    bad = []
    for h in np.linspace(0.5, 3.0, 10):
        for frac in np.linspace(0.0, 1.0, 10):
            p = ModuliPoint(float(h), float(frac * t_upper(h)))
            g = generators(p, 3)
            for name in ("I1", "I2", "I3", "I4", "A", "B", "C"):
                if not preserves_form(getattr(g, name).matrix, None, 1e-9):
                    bad.append((p.h, p.t, name))
            for w in words:
                if not scalar_equiv(g.word(w).matrix, np.eye(4), 1e-9):
                    bad.append((p.h, p.t, w))
            if classify(g.A.matrix).kind != "parabolic-unipotent":
                bad.append((p.h, p.t, "A type"))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 1.0, f"100 points, {len(bad)} failures, {elapsed:.2f} s (limit 1 s)"


@criterion(2, "Gram regression")
def gram_regression():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for h, t in zip(rng.uniform(0.5, 3.0, 10_000), rng.uniform(0, PI, 10_000)):
        det = np.linalg.det(gram_matrix(ModuliPoint(h, t))).real
        worst = max(worst, abs(det - (-3 * h * h / 4 - 0.25 - h * h * math.cos(t))))
    worst_eig = 0.0
    for h in np.linspace(1.0, 3.0, 21):
        eig = np.linalg.eigvalsh(gram_matrix(ModuliPoint.degenerate(float(h))))
        s = math.sqrt(8 * h * h + 1)
        worst_eig = max(worst_eig, np.abs(eig - sorted([0, 2, 1 + s / 2, 1 - s / 2])).max())
    return worst < 1e-12 and worst_eig < 1e-9, f"det error {worst:.1e} (limit 1e-12), eigenvalue error {worst_eig:.1e} (limit 1e-9)"


SPHERE_TABLE = {
    "C": (lambda k: (-2 * k - 1, 0, -S15 / 2), 2.0),
    "cBC": (lambda k: (-2 * k, S53, (-7 + 8 * k) / 2 * S53), 2 / math.sqrt(3)),
    "CBc": (lambda k: (-2 * k, -S53, (-7 - 8 * k) / 2 * S53), 2 / math.sqrt(3)),
    "CBC": (lambda k: (-(1 + 4 * k) / 2, S15 / 2, (4 * k - 3) / 2 * S15), math.sqrt(2)),
    "cBc": (lambda k: ((1 - 4 * k) / 2, -S15 / 2, (-4 * k - 3) / 2 * S15), math.sqrt(2)),
}


@criterion(3, "sphere tables")
def sphere_tables():
    g = generators(ModuliPoint.base(), 2)
    worst = 0.0
    for fam, (centre, radius) in SPHERE_TABLE.items():
        for k in range(-5, 6):
            s = isometric_sphere(g.word(a_conjugate(fam, k)))
            worst = max(worst, abs(s.radius - radius), *(abs(a - b) for a, b in zip(s.center.xyt, centre(k))))
    return worst < 1e-9, f"55 spheres, max error {worst:.1e} (limit 1e-9)"


PRINTED_DISTANCES = (
    ("C", "C", lambda k: abs(2 * k)),
    ("C", "CBC", lambda k: (16 * k**4 - 16 * k**3 + 96 * k**2 - 136 * k + 76) ** 0.25),
    ("cBc", "CBC", lambda k: (4 * k**2 + 4 * k + 16) ** 0.5),
    ("cBc", "cBC", lambda k: (16 * k**4 + 16 * k**3 + 448 * k**2 / 3 - 172 * k / 3 + 1399 / 9) ** 0.25),
    ("CBc", "cBC", lambda k: 2 * math.sqrt(5 / 3 + k * k)),
)


@criterion(4, "distance regressions")
def distance_regressions():
    g = generators(ModuliPoint.base(), 2)
    errors = {}
    for f1, f2, dist in PRINTED_DISTANCES:
        c1 = isometric_sphere(g.word(f1)).center
        errors[f"{f1}|{f2}"] = max(abs(cygan_distance(c1, isometric_sphere(g.word(a_conjugate(f2, k))).center) - dist(k))
                                   for k in range(-5, 6))
    bad = {k: v for k, v in errors.items() if not v < 1e-9}
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errors.items())
    return not bad, f"max errors {detail} (limit 1e-9)" + (f"; mismatched: {sorted(bad)}" if bad else "")


@criterion(5, "certified maxima")
def certified_maxima():
    g = generators(ModuliPoint.base(), 2)
    cases = (CONTAINMENTS[0], CONTAINMENTS[2], EXTERIORS[0])
    start = time.perf_counter()
    certs = containment_audit(g, DEFAULT, grid=None, cases=cases)
    elapsed = time.perf_counter() - start
    parts, ok = [], elapsed < 60
    for case, cert in zip(cases, certs):
        close = abs(cert.lower - case.printed) < 1e-3
        ok = ok and close and cert.certified
        parts.append(f"max {cert.lower:.7f} in [{cert.lower:.7f}, {cert.upper:.7f}] vs {case.printed} "
                     f"({'match' if close else 'mismatch'}), < {cert.threshold:g} "
                     f"{'certified' if cert.certified else 'uncertified'}")
    return ok, "; ".join(parts) + f"; {elapsed:.1f} s (limit 60 s)"


# (description, chart words, signs, cutting word or None for the slice, printed lines, printed segments)
TRIPLES = (
    ("I(C) n I(cBc) cut by I(CBc)", ("", "CBC", "c"), (-1, 1, 1), "CBc",
     {("r", PI), ("s", PI), ("r+s", PI)},
     {("r", PI): (2 * PI / 3, 4 * PI / 3), ("s", PI): (PI - ATAN, PI + ATAN)}),
    ("I(cBc) n I(CBc) cut by I(C)", ("", "CBC", "CBc"), (1, 1, 1), "C",
     {("r", 0.0), ("s", PI), ("r-s", 0.0)},
     {("r", 0.0): (-PI / 3, PI / 3), ("r-s", 0.0): (-ATAN, ATAN)}),
    ("I(CBc) n I(C) cut by I(cBc)", ("", "CBc", "c"), (1, 1, 1), "cBc",
     {("s", 0.0), ("r", PI), ("r-s", 0.0)},
     {("s", 0.0): (-ATAN, ATAN), ("r-s", 0.0): (-PI / 3, PI / 3)}),
    ("restricted slice in dimension 3", None, None, None,
     {("r", PI), ("s", PI), ("r-s", PI)}, {}),
)


def _same_angle(a, b, tol=1e-6):
    return abs(wrap(a - b)) < tol


def _check_triple(desc, words, signs, cutter, lines, segments):
    if words is None:
        _, sol = slice_line_check(ModuliPoint.base())
    else:
        g = generators(ModuliPoint.base(), 2)
        ch = chart_from_words(g, words, signs)
        sol = solve_triple(ch, lift_of(g, ""), lift_of(g, invert_word(cutter)))
    found = {(ln.kind, ln.c) for ln in sol.lines}
    same = len(found) == len(lines) and all(any(k == kk and _same_angle(c, cc) for kk, cc in found)
                                           for k, c in lines)
    res = max((ln.residual for ln in sol.lines), default=math.inf)
    seg_ok = True
    for (kind, c), (a, b) in segments.items():
        ln = sol.find(kind, c)
        if ln is None or len(ln.segments) != 1:
            seg_ok = False
            continue
        x, y = ln.segments[0]
        seg_ok &= _same_angle(x, a) and _same_angle(y, b)
    ok = same and res < 1e-9 and seg_ok and not sol.branches
    got = ", ".join(f"{k}={c:.6f}" for k, c in sorted(found))
    return ok, f"{desc}: lines {got}; residual {res:.1e}; segments {'match' if seg_ok else 'differ'}" + \
        ("" if same else f" (printed {', '.join(f'{k}={c:.6f}' for k, c in sorted(lines))})")


@criterion(6, "triple-intersection structure")
def triple_structure():
    outs = [_check_triple(*t) for t in TRIPLES]
    return all(ok for ok, _ in outs), " | ".join(f"{'ok' if ok else 'MISMATCH'} {d}" for ok, d in outs)


@criterion(7, "sample-point audit")
def sample_points():
    table = sample_point_audit()
    worst = max(c.residual for c in table.checks)
    failed = [c.name for c in table.checks if not c.passed]
    return table.passed and worst < 1e-9, \
        f"{len(table.checks)} identities, reading {table.reading}, max residual {worst:.1e}" + \
        (f"; failed {failed}" if failed else "")


@criterion(8, "cycle and side-pairing audit")
def cycles_and_pairings():
    g = generators(ModuliPoint.base(), 2)
    cyc = cycle_audit(g, tol=DEFAULT.with_overrides(identity=1e-9))
    sp = side_pairing_audit(g, tol=DEFAULT.with_overrides(identity=1e-9))
    bad = [c.name for c in cyc if not c.passed] + [f"{s.statement} k={s.k}" for s in sp if not s.passed]
    return not bad, f"{len(cyc)} cycle checks, {len(sp)} side-pairing checks, {len(bad)} failures"


@criterion(9, "coplanarity and restricted-slice factorisations")
def coplanarity():
    rng = np.random.default_rng(9)
    worst, n = 0.0, 0
    while n < 1000:
        h, t = rng.uniform(0.5, 3.0), rng.uniform(0, PI)
        if t > t_upper(h):
            continue
        worst = max(worst, coplanar_defect(ModuliPoint(h, t)))
        n += 1
    rel = 0.0
    for h in np.linspace(1.05, 3.0, 12):
        for frac in np.linspace(0.0, 0.99, 12):
            t = float(frac * t_upper(h))
            sc = restricted_slice_chart(ModuliPoint(float(h), t))
            ch = sc.chart
            c = math.cos(t)
            K = 4 * h**4 * (c + 1) ** 2 * (8 * c * h * h + 8 * h * h + 1) ** 2
            q = inner_sq_form(ch, ch.p)
            vv = vv_form(ch)
            for r, s in ((0.3, 1.1), (-2.0, 0.4), (PI, 0.0)):
                rel = max(rel, abs(q(r, s) - K) / K)
            want = -128 * h**4 * (c + 1) ** 2 * (h * h * c + h * h + 1 / 8)
            rel = max(rel, abs(vv(PI, 0.0) - want) / abs(want))
    return worst < 1e-12 and rel < 1e-9, \
        f"coplanar defect max {worst:.1e} over 1000 points (limit 1e-12); factorisation relative error {rel:.1e} (limit 1e-9)"


@criterion(10, "tangency scan")
def tangency():
    h1 = tangency_scan()
    return abs(h1 - 1.29326) <= 1e-3, f"h1 = {h1:.10f}, target 1.29326 +- 1e-3"


@criterion(11, "moduli scan at desk scale")
def desk_scan():
    start = time.perf_counter()
    result = scan(ScanConfig(grid=400))
    elapsed = time.perf_counter() - start
    traced = {c.word for c in result.curves}
    worst = max(c.max_residual for c in result.curves)
    g = generators(ModuliPoint(0.5, 2 * PI / 3), 3)
    cls = classify(g.word("I1I4I1I2I1I4I3").matrix)
    args = np.angle(np.array(cls.eigenvalues))
    sixth = all(abs(wrap(6 * (a - args[0]))) < 1e-6 for a in args)
    ok = elapsed < 120 and len(traced) == 4 and cls.is_elliptic and cls.order == 6 and sixth
    return ok, (f"400x400 scan {elapsed:.1f} s (limit 120 s), curves for {len(traced)} words, "
                f"vertex residual {worst:.1e}; order-6 check: {cls.kind}, order {cls.order}, "
                f"eigenvalue arguments {'consistent' if sixth else 'inconsistent'}")


@criterion(12, "neighbourhood property check")
def neighbourhood():
    parts, ok = [], True
    for p in [ModuliPoint.base()] + perturbed_points():
        rep = neighborhood_audit(p)
        ok &= rep.passed
        parts.append(f"({p.h:.4f}, {p.t:.4f}) {'pass' if rep.passed else 'fail ' + ','.join(rep.failures)}")
    return ok, "; ".join(parts)


def run_criterion(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d} ({title}): {detail}"
    RESULTS[n] = line
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=lambda n: f"criterion{n:02d}")
def test_acceptance(n):
    ok, line = run_criterion(n)
    print(line)
    assert ok, line


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        print(run_criterion(n)[1], flush=True)
