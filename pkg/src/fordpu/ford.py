"""Ford domain audits for the (3,3,4) triangle group representation.

Every audit returns plain records with a ``passed`` flag; ``verification_report``
assembles them into a deterministic JSON-ready dictionary.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize

from .config import DEFAULT, Tolerances
from .errors import NoSignChangeError, OutOfScopeError
from .giraud import (TripleSolution, certified_max, chart_from_words,
                     coplanar_defect, disk_nonempty, inner_sq_form, lift_of,
                     restricted_slice_chart, solve_form_triple, solve_triple, vv_form)
from .group import GeneratorSet, ModuliPoint, generators, t_upper
from .heisenberg import (CyganSphere, HeisenbergPoint, cygan_distance, heisenberg_product, isometric_sphere,
                         lift, membership_value, project, sphere_membership, sphere_relation)
from .hermitian import preserves_form, projectively_equal, scalar_equiv
from .words import a_conjugate, invert_word

FAMILIES = ("C", "CBC", "cBc", "cBC", "CBc")

# Pair classes (family, family, k offset) up to conjugation by A.
TABLE1 = frozenset({("C", "C", -1), ("C", "CBc", 0), ("C", "cBc", 0), ("C", "cBC", 1),
                    ("C", "CBC", 1), ("CBC", "cBC", 0), ("cBc", "CBc", 0)})
HIDDEN = frozenset({("C", "CBC", 0), ("C", "cBc", 1), ("C", "CBc", 1), ("C", "cBC", 0)})
TANGENT = frozenset({("C", "C", -2)})

RELATIONS = {"I1^2": "I1I1", "I2^2": "I2I2", "I3^2": "I3I3", "I4^2": "I4I4",
             "(I1I3)^2": "I1I3I1I3", "(I2I4)^2": "I2I4I2I4", "(I1I4)^3": "I1I4I1I4I1I4",
             "B^2": "BB", "C^3": "CCC", "(AC)^2": "ACAC"}


# ---------------------------------------------------------------- word set

@dataclass(frozen=True)
class WordEntry:
    family: str
    k: int
    word: str


@dataclass(frozen=True)
class WordSet:
    K: int
    entries: tuple[WordEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(e.word for e in self.entries)

    def spheres(self, gens: GeneratorSet) -> dict[str, CyganSphere]:
        return {e.word: isometric_sphere(gens.word(e.word)) for e in self.entries}


def build_word_set(K: int = 5, gens: GeneratorSet | None = None, tol: float = DEFAULT.identity) -> WordSet:
    """A^k w A^-k for the five families and |k| <= K.

    With ``gens`` given, words whose isometric sphere repeats an earlier one are dropped.
    """
    entries = [WordEntry(f, k, a_conjugate(f, k)) for f in FAMILIES for k in range(-K, K + 1)]
    if gens is not None:
        kept: list[WordEntry] = []
        seen: list[CyganSphere] = []
        for e in entries:
            s = isometric_sphere(gens.word(e.word))
            if any(abs(s.radius - o.radius) < tol and cygan_distance(s.center, o.center) < tol for o in seen):
                continue
            kept.append(e)
            seen.append(s)
        entries = kept
    return WordSet(K, tuple(entries))


def pair_class(a: WordEntry, b: WordEntry) -> tuple[str, str, int]:
    ia, ib = FAMILIES.index(a.family), FAMILIES.index(b.family)
    key = min((ia, ib, b.k - a.k), (ib, ia, a.k - b.k))
    return FAMILIES[key[0]], FAMILIES[key[1]], key[2]


def ridge_words(cls: tuple[str, str, int]) -> tuple[str, str]:
    """Representative pair (k = 0 for the first family)."""
    return cls[0], a_conjugate(cls[1], cls[2])


# ---------------------------------------------------------------- pairwise

@dataclass(frozen=True)
class PairRecord:
    words: tuple[str, str]
    cls: tuple[str, str, int]
    relation: str
    gap: float


@dataclass(frozen=True)
class PairwiseAudit:
    records: tuple[PairRecord, ...]
    classes: dict
    a_equivariant: bool
    unexpected: tuple
    missing: tuple

    @property
    def passed(self) -> bool:
        return self.a_equivariant and not self.unexpected and not self.missing


def expected_relation(cls) -> str:
    if cls in TABLE1 or cls in HIDDEN:
        return "overlapping"
    if cls in TANGENT:
        return "tangent"
    return "disjoint"


def pairwise_audit(ws: WordSet, gens: GeneratorSet, tol: Tolerances = DEFAULT) -> PairwiseAudit:
    spheres = ws.spheres(gens)
    records = []
    seen: dict = {}
    uniform = True
    for a, b in itertools.combinations(ws.entries, 2):
        rel, gap = sphere_relation(spheres[a.word], spheres[b.word], tol.tangency)
        cls = pair_class(a, b)
        records.append(PairRecord((a.word, b.word), cls, rel, gap))
        if seen.setdefault(cls, rel) != rel:
            uniform = False
    unexpected = tuple(sorted((c, r) for c, r in seen.items() if r != expected_relation(c)))
    missing = tuple(sorted(c for c in TABLE1 | HIDDEN | TANGENT if c not in seen))
    return PairwiseAudit(tuple(records), dict(sorted(seen.items())), uniform, unexpected, missing)


def closed_form_distances() -> dict:
    """Centre distances as polynomials in k for the pairs whose disjointness needs them."""
    return {
        ("C", "C"): lambda k: abs(2 * k),
        ("C", "CBC"): lambda k: (16 * k**4 - 16 * k**3 + 96 * k**2 - 136 * k + 76) ** 0.25,
        ("C", "CBc"): lambda k: (64 / 9 - 64 * k / 3 + 64 * k**2 - 32 * k**3 + 16 * k**4) ** 0.25,
        ("cBc", "CBC"): lambda k: (4 * k**2 + 4 * k + 16) ** 0.5,
        ("cBc", "cBC"): lambda k: (16 * k**4 + 16 * k**3 + 96 * k**2 + 88 * k / 3 + 1084 / 9) ** 0.25,
        ("cBc", "CBc"): lambda k: (176 * k**2 + 4 / 9 + 8 * k / 3 + 16 * k**4 + 16 * k**3) ** 0.25,
        ("CBc", "cBC"): lambda k: 2 * math.sqrt(5 / 3 + k * k),
    }


def cutoff_justification(K: int, gens: GeneratorSet, tol: float = 1e-9) -> dict:
    """Check the closed-form distances for |k| <= K and that they stay above the radius sums beyond."""
    out = {}
    for (f1, f2), dist in closed_form_distances().items():
        s1 = isometric_sphere(gens.word(f1))
        worst = 0.0
        for k in range(-K, K + 1):
            s2 = isometric_sphere(gens.word(a_conjugate(f2, k)))
            worst = max(worst, abs(cygan_distance(s1.center, s2.center) - dist(k)))
        r_sum = s1.radius + isometric_sphere(gens.word(f2)).radius
        beyond = all(dist(k) > r_sum for k in list(range(K + 1, 4 * K + 40)) + list(range(-4 * K - 40, -K)))
        out[f"{f1}|{f2}"] = {"max_error": worst, "disjoint_beyond_K": beyond,
                             "passed": worst < tol and beyond}
    return out


# ---------------------------------------------------------------- containment

@dataclass(frozen=True)
class ContainmentCase:
    label: str
    chart: tuple[str, str, str]
    signs: tuple[int, int, int]
    container: str
    inside: bool
    sample: tuple[float, float] | None = None
    printed: float | None = None


CONTAINMENTS = (
    ContainmentCase("I(C) n I(CBC) inside I(aCA)", ("", "c", "cbc"), (1, 1, 1), "aCA", True,
                    (math.pi / 3, 15 * math.pi / 8), 0.7370031),
    ContainmentCase("I(C) n I(AcBca) inside I(ACa)", ("", "c", "ACBCa"), (1, 1, 1), "ACa", True),
    ContainmentCase("I(C) n I(ACBca) inside I(ACa)", ("", "c", "ACBca"), (1, 1, 1), "ACa", True,
                    (math.pi / 3, 0.0), 1.30600826),
    ContainmentCase("I(C) n I(cBC) inside I(aCA)", ("", "c", "cBC"), (1, 1, 1), "aCA", True),
)

EXTERIORS = (
    ContainmentCase("I(C) n I(aCA) outside I(CBC)", ("", "c", "C"), (-1, 1, 1), "CBC", False,
                    None, -0.689216),
    ContainmentCase("I(C) n I(aCA) outside I(cBC)", ("", "c", "C"), (-1, 1, 1), "cBC", False),
)


@dataclass(frozen=True)
class Certificate:
    label: str
    upper: float
    lower: float
    threshold: float
    argmax: tuple | None
    certified: bool
    sample: tuple | None
    sample_ok: bool
    printed: float | None

    @property
    def passed(self) -> bool:
        return self.certified and self.sample_ok


def _certify(case: ContainmentCase, gens: GeneratorSet, tol: Tolerances, grid: int | None) -> Certificate:
    chart = chart_from_words(gens, case.chart, case.signs, case.label)
    vv = vv_form(chart)
    q_sq = inner_sq_form(chart, gens.q_inf)
    other = inner_sq_form(chart, lift_of(gens, invert_word(case.container)))
    grid = grid or tol.cert_grid
    if case.inside:
        # inside I(g): |<V, g^-1 q_inf>|^2 stays below the constant |<V, q_inf>|^2
        objective, threshold = other, q_sq.a[0]
    else:
        objective, threshold = q_sq - other, 0.0
    res = certified_max(objective, vv, grid=grid, gap=tol.cert_gap)
    check = disk_nonempty(vv)
    sample = case.sample if case.sample is not None else check.witness
    sample_ok = False
    if sample is not None and vv(*sample) < 0:
        x = chart.at(*sample)
        val = membership_value(x, gens.word(case.container))
        sample_ok = val > 0 if case.inside else val < 0
    return Certificate(case.label, res.upper, res.lower, float(threshold), res.argmax,
                       res.certifies_below(threshold), sample, bool(sample_ok), case.printed)


def containment_audit(gens: GeneratorSet, tol: Tolerances = DEFAULT, grid: int | None = None,
                      cases=CONTAINMENTS + EXTERIORS) -> list[Certificate]:
    return [_certify(c, gens, tol, grid) for c in cases]


# ---------------------------------------------------------------- ridges

@dataclass(frozen=True)
class RidgeRecord:
    words: tuple[str, str]
    cls: tuple[str, str, int]
    kind: str
    detail: str = ""
    solution: TripleSolution | None = field(default=None, repr=False)
    passed: bool = True


# (pair words, chart words, chart signs, cutting sphere) for the directly solved ridges
_SECTOR_RIDGES = {
    ("C", "cBc", 0): (("", "CBC", "c"), (-1, 1, 1), "CBc"),
    ("cBc", "CBc", 0): (("", "CBC", "CBc"), (1, 1, 1), "C"),
    ("C", "CBc", 0): (("", "CBc", "c"), (1, 1, 1), "cBc"),
    ("CBC", "cBC", 0): (("", "cbc", "cBC"), (1, 1, 1), "c"),
}
# hidden classes in the order of CONTAINMENTS
_HIDDEN_ORDER = (("C", "CBC", 0), ("C", "cBc", 1), ("C", "CBc", 1), ("C", "cBC", 0))
# remaining Table-1 ridges are images of solved ones under side pairings
_TRANSPORTED = {
    ("C", "CBC", 1): ("AC", ("C", "CBc", 0)),
    ("C", "cBC", 1): ("AC", ("C", "cBc", 0)),
}


def _two_sector(gens: GeneratorSet, chart_words, signs, cutter, tol: Tolerances) -> tuple[bool, str, TripleSolution]:
    chart = chart_from_words(gens, chart_words, signs)
    sol = solve_triple(chart, gens.q_inf, lift_of(gens, invert_word(cutter)), tol)
    feas = sol.feasible_lines
    ok = len(feas) == 2 and not sol.branches
    detail = "; ".join(f"{ln.kind}={ln.c:.6f} on {len(ln.segments)} segment(s)" for ln in feas)
    return ok, detail, sol


def ridge_catalog(gens: GeneratorSet, tol: Tolerances = DEFAULT,
                  certificates: list[Certificate] | None = None, grid: int = 512) -> list[RidgeRecord]:
    """Classify one representative ridge per overlapping pair class."""
    certs = certificates if certificates is not None else containment_audit(gens, tol, grid=grid)
    by_label = {c.label: c for c in certs}
    out = []
    chk = disk_nonempty(chart_from_words(gens, ("", "c", "C"), (-1, 1, 1)))
    ext_ok = all(by_label[c.label].passed for c in EXTERIORS)
    out.append(RidgeRecord(ridge_words(("C", "C", -1)), ("C", "C", -1), "giraud-disk",
                           f"witness {chk.witness}; outside I(CBC) and I(cBC): {ext_ok}",
                           None, chk.nonempty and ext_ok))
    solved = {}
    for cls, (words, signs, cutter) in _SECTOR_RIDGES.items():
        ok, detail, sol = _two_sector(gens, words, signs, cutter, tol)
        solved[cls] = ok
        out.append(RidgeRecord(ridge_words(cls), cls, "two-sectors" if ok else "unclassified",
                               f"cut by I({cutter}): {detail}", sol, ok))
    for cls, (pairing, src) in _TRANSPORTED.items():
        words = ridge_words(cls)
        ok = solved[src] and maps_ridge(gens, pairing, words, ridge_words(src))
        out.append(RidgeRecord(words, cls, "two-sectors" if ok else "unclassified",
                               f"{pairing} maps it onto {ridge_words(src)}", None, ok))
    for cls, case in zip(_HIDDEN_ORDER, CONTAINMENTS):
        cert = by_label[case.label]
        out.append(RidgeRecord(ridge_words(cls), cls, "empty", f"hidden inside I({case.container})",
                               None, cert.passed))
    s1, s2 = isometric_sphere(gens.word("C")), isometric_sphere(gens.word(a_conjugate("C", 2)))
    tp = tangent_point(s1, s2)
    on_both = abs(s1.equation(tp)) < tol.geometric and abs(s2.equation(tp)) < tol.geometric
    inside = sphere_membership(tp, isometric_sphere(gens.word("ACa"))) == "interior"
    out.append(RidgeRecord(("C", a_conjugate("C", 2)), ("C", "C", -2), "tangent-point",
                           f"point {tp.as_list()} interior to I(ACa): {inside}", None, on_both and inside))
    return out


def side_facets(catalog: list[RidgeRecord]) -> dict:
    """Ridges bounding each side s(w), w of family representative words, with sector counts."""
    facets: dict = {f: [] for f in FAMILIES}
    for rec in catalog:
        if rec.kind not in ("giraud-disk", "two-sectors"):
            continue
        f1, f2, k = rec.cls
        facets[f1].append((a_conjugate(f2, k), rec.kind))
        facets[f2].append((a_conjugate(f1, -k), rec.kind))
    out = {}
    for f, items in facets.items():
        sectors = sum(2 for _, kind in items if kind == "two-sectors")
        out[f] = {"ridges": sorted(items), "sectors": sectors}
    return out


def tangent_point(s1: CyganSphere, s2: CyganSphere) -> HeisenbergPoint:
    """Point c1 . delta(c1^-1 c2) at Cygan distance r1 from the first centre, on the dilation path to c2."""
    c1, c2 = s1.center, s2.center
    rel = heisenberg_product(HeisenbergPoint(tuple(-np.array(c1.z)), -c1.t), c2)
    lam = s1.radius / cygan_distance(c1, c2)
    step = HeisenbergPoint(tuple(lam * np.array(rel.z)), lam * lam * rel.t)
    return heisenberg_product(c1, step)


# ---------------------------------------------------------------- triples, cycles, side pairings

def ridge_triple(gens: GeneratorSet, g: str, h: str) -> list[np.ndarray]:
    q = gens.q_inf
    return [q, gens.word(g).inverse().apply(q), gens.word(h).inverse().apply(q)]


def same_point_set(xs, ys, tol: float = DEFAULT.identity) -> bool:
    return all(any(projectively_equal(x, y, tol) for y in ys) for x in xs) and \
        all(any(projectively_equal(x, y, tol) for x in xs) for y in ys)


def maps_ridge(gens: GeneratorSet, f: str, src: tuple[str, str], dst: tuple[str, str],
               tol: float = DEFAULT.identity) -> bool:
    F = gens.word(f)
    image = [F.apply(x) for x in ridge_triple(gens, *src)]
    return same_point_set(image, ridge_triple(gens, *dst), tol)


@dataclass(frozen=True)
class CycleRecord:
    name: str
    steps: tuple  # (source ridge, map, target ridge)
    composed: str
    order: int
    relation: str
    steps_ok: tuple
    relation_ok: bool

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def passed(self) -> bool:
        return self.relation_ok and all(self.steps_ok)


# (name, steps, order of the composed map, relation it reduces to)
CYCLES = (
    ("(1) s(C) n s(aCA)", ((("C", "aCA"), "C", ("C", "aCA")),), 3, "C^3"),
    ("(2) s(cBC) n s(c)", ((("cBC", "c"), "c", ("C", "cBc")),
                          (("C", "cBc"), "cBc", ("CBC", "cBC")),
                          (("CBC", "cBC"), "cBC", ("cBC", "c"))), 1, "B^2, C^3"),
    ("(3) s(cBC) n s(CBC)", ((("cBC", "CBC"), "CBC", ("cBc", "C")),
                            (("cBc", "C"), "C", ("c", "cBC")),
                            (("c", "cBC"), "cBC", ("cBC", "CBC"))), 1, "B^2, C^3"),
    ("(4) s(CBc) n s(C)", ((("CBc", "C"), "C", ("c", "CBC")),
                          (("c", "CBC"), "CBC", ("cBc", "CBc")),
                          (("cBc", "CBc"), "CBc", ("CBc", "C"))), 1, "B^2, C^3"),
    ("(5) s(cBc) n s(CBc)", ((("cBc", "CBc"), "CBc", ("CBc", "C")),
                            (("CBc", "C"), "C", ("c", "CBC")),
                            (("c", "CBC"), "CBC", ("cBc", "CBc"))), 1, "B^2, C^3"),
    ("(6) hidden s(ACa) n s(C)", ((("ACa", "C"), "C", ("c", "aaCAA")),
                                 (("c", "aaCAA"), "A", ("C", "aCA"))), 2, "(AC)^2"),
)


def compose_steps(steps) -> str:
    """Word of the composite map; the first step acts first."""
    return "".join(f for _, f, _ in reversed(steps))


def cycle_audit(gens: GeneratorSet, ks=range(-2, 3), tol: Tolerances = DEFAULT) -> list[CycleRecord]:
    out = []
    ident = np.eye(gens.n + 1)
    for k in ks:
        conj = lambda w: a_conjugate(w, k)
        for name, steps, order, relation in CYCLES:
            csteps = tuple(((conj(a), conj(b)), conj(f), (conj(c), conj(d))) for (a, b), f, (c, d) in steps)
            oks = tuple(maps_ridge(gens, f, src, dst, tol.identity) for src, f, dst in csteps)
            composed = compose_steps(csteps)
            M = gens.word(composed).matrix
            rel_ok = scalar_equiv(np.linalg.matrix_power(M, order), ident, tol.identity)
            out.append(CycleRecord(f"{name} k={k}", csteps, composed, order, relation, oks, rel_ok))
    return out


SIDE_PAIRINGS = (
    ("AC exchanges s(C) n s(ACa) and s(C) n s(aCA)", "AC", ("C", "ACa"), ("C", "aCA")),
    ("AC sends s(C) n s(ACBCa) to s(C) n s(CBc)", "AC", ("C", "ACBCa"), ("C", "CBc")),
    ("AC sends s(C) n s(AcBCa) to s(C) n s(cBc)", "AC", ("C", "AcBCa"), ("C", "cBc")),
    ("CBC sends s(CBC) n s(cBC) to s(cBc) n s(C)", "CBC", ("CBC", "cBC"), ("cBc", "C")),
    ("CBC sends s(CBC) n s(aCA) to s(cBc) n s(CBc)", "CBC", ("CBC", "aCA"), ("cBc", "CBc")),
    ("cBC exchanges s(cBC) n s(aCA) and s(cBC) n s(CBC)", "cBC", ("cBC", "aCA"), ("cBC", "CBC")),
    ("cBC exchanges (reverse)", "cBC", ("cBC", "CBC"), ("cBC", "aCA")),
    ("CBc exchanges s(CBc) n s(C) and s(CBc) n s(cBc)", "CBc", ("CBc", "C"), ("CBc", "cBc")),
    ("CBc exchanges (reverse)", "CBc", ("CBc", "cBc"), ("CBc", "C")),
)


@dataclass(frozen=True)
class PairingRecord:
    statement: str
    k: int
    passed: bool


def side_pairing_audit(gens: GeneratorSet, ks=range(-2, 3), tol: Tolerances = DEFAULT) -> list[PairingRecord]:
    out = []
    for k in ks:
        c = lambda w: a_conjugate(w, k)
        for text, f, src, dst in SIDE_PAIRINGS:
            ok = maps_ridge(gens, c(f), (c(src[0]), c(src[1])), (c(dst[0]), c(dst[1])), tol.identity)
            out.append(PairingRecord(text, k, ok))
    return out


def relation_audit(gens: GeneratorSet, tol: Tolerances = DEFAULT) -> dict:
    ident = np.eye(gens.n + 1)
    out = {name: scalar_equiv(gens.word(w).matrix, ident, tol.identity) for name, w in RELATIONS.items()}
    for name in ("I1", "I2", "I3", "I4", "A", "B", "C"):
        out[f"{name} preserves H"] = preserves_form(getattr(gens, name).matrix, None, tol.identity)
    return out


# ---------------------------------------------------------------- sample points

_S3, _S5, _S6, _S10, _S14, _S15 = (math.sqrt(x) for x in (3, 5, 6, 10, 14, 15))

PRINTED_POINTS = {
    "u1": (1 / 4 - _S5 / 4, _S15 / 4 - _S3 / 4, -_S15 - 3 * _S3 / 2),
    "u2": (1 / 4 + _S5 / 4, _S15 / 4 + _S3 / 4, -_S15 + 3 * _S3 / 2),
    "u3": (-1 / 5 + _S10 / 10, 2 * _S15 / 5 + _S6 / 10, -13 * _S15 / 10 - _S6 / 5),
    "u4": (-1 / 5 - _S10 / 10, 2 * _S15 / 5 - _S6 / 10, -13 * _S15 / 10 + _S6 / 5),
    "CBC(u1)": (-1 / 4 + _S5 / 4, -_S15 / 4 + _S3 / 4, -_S15 - 3 * _S3 / 2),
    "CBC(u2)": (-1 / 4 - _S5 / 4, -(_S15 / 4 + _S3 / 4), -_S15 + 3 * _S3 / 2),
    "CBC(u3)": (1 / 5 + _S10 / 10, -2 * _S15 / 5 + _S6 / 10, -13 * _S15 / 10 + _S6 / 5),
    "CBC(u4)": (1 / 5 - _S10 / 10, -(2 * _S15 / 5 + _S6 / 10), -13 * _S15 / 10 - _S6 / 5),
    "w": (_S15 * _S14 / 18 + 1 / 3, 2 * _S15 / 9 + _S14 / 6, -17 * _S15 / 18 + 5 * _S14 / 9),
    "c(w)": (_S15 * _S14 / 54 - 1 / 9, -8 * _S15 / 27 + _S14 / 18, -59 * _S15 / 54 - 7 * _S14 / 9),
    "cBC(w)": (-_S15 * _S14 / 18 - 1 / 3, 4 * _S15 / 9 - _S14 / 6, -25 * _S15 / 18 - 5 * _S14 / 9),
    "v": (_S15 * _S14 / 18 - 1 / 3, 4 * _S15 / 9 + _S14 / 6, -25 * _S15 / 18 + 5 * _S14 / 9),
    "CBC(v)": (-_S15 * _S14 / 54 - 1 / 9, -8 * _S15 / 27 - _S14 / 18, -59 * _S15 / 54 + 7 * _S14 / 9),
    "cBC(v)": (-_S15 * _S14 / 18 + 1 / 3, 2 * _S15 / 9 - _S14 / 6, -17 * _S15 / 18 - 5 * _S14 / 9),
}

TRIPLE_POINT = np.array([17 / 16 - 13j * _S15 / 16, 5 / 4 - 1j * _S15 / 4, 3 / 4 + 1j * _S15 / 4])

_ATAN = math.atan(2 * _S6)
# (chart words, signs, torus point) for points read off a chart
_CHART_POINTS = {
    "u1": (("", "cbc", "cBC"), (1, 1, 1), (0.0, math.pi / 3)),
    "u2": (("", "cbc", "cBC"), (1, 1, 1), (0.0, -math.pi / 3)),
    "u3": (("", "cbc", "cBC"), (1, 1, 1), (_ATAN, _ATAN)),
    "u4": (("", "cbc", "cBC"), (1, 1, 1), (-_ATAN, -_ATAN)),
    "w": (("", "cBC", "C"), (1, 1, 1), (0.0, -math.acos(5 / 9))),
}
# group images: (target, word, source)
_IMAGES = (
    ("u2", "cBC", "u1"), ("u1", "cBC", "u2"), ("u4", "cBC", "u3"), ("u3", "cBC", "u4"),
    ("CBC(u1)", "CBC", "u1"), ("CBC(u2)", "CBC", "u2"), ("CBC(u3)", "CBC", "u3"), ("CBC(u4)", "CBC", "u4"),
    ("c(w)", "c", "w"), ("cBC(w)", "cBC", "w"), ("CBC(v)", "CBC", "v"), ("cBC(v)", "cBC", "v"),
)
# spheres each point lies on (I(c) is the same sphere as I(aCA))
ON_SPHERES = {
    "u1": ("c", "CBC", "cBC"), "u2": ("c", "CBC", "cBC"), "u3": ("c", "CBC", "cBC"), "u4": ("c", "CBC", "cBC"),
    "CBC(u1)": ("C", "cBc", "CBc"), "CBC(u2)": ("C", "cBc", "CBc"),
    "CBC(u3)": ("C", "cBc", "CBc"), "CBC(u4)": ("C", "cBc", "CBc"),
    "w": ("c", "cBC"), "c(w)": ("C", "cBc"), "cBC(w)": ("CBC", "cBC"),
    "v": ("CBC", "cBC"), "CBC(v)": ("C", "cBc"), "cBC(v)": ("c", "cBC"),
}

READINGS = {
    "(x, y, t)": lambda x, y, t: HeisenbergPoint.boundary(complex(x, y), t),
    "(x, y, -t)": lambda x, y, t: HeisenbergPoint.boundary(complex(x, y), -t),
}


@dataclass(frozen=True)
class SampleCheck:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class SamplePointTable:
    reading: str
    points: dict
    checks: tuple[SampleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _xyt_residual(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    return float(max(abs(a - b) for a, b in zip(p.xyt, q.xyt)))


def _sample_checks(gens: GeneratorSet, points: dict, tol: float) -> list[SampleCheck]:
    checks = []
    for name, (words, signs, rs) in _CHART_POINTS.items():
        chart = chart_from_words(gens, words, signs)
        res = _xyt_residual(project(chart.at(*rs)), points[name])
        checks.append(SampleCheck(f"{name} = chart point {tuple(round(x, 6) for x in rs)}", res, res < tol))
    for target, word, source in _IMAGES:
        img = project(gens.word(word).apply(lift(points[source], gens.n)))
        res = _xyt_residual(img, points[target])
        checks.append(SampleCheck(f"{word}({source}) = {target}", res, res < tol))
    for name, words in ON_SPHERES.items():
        x = lift(points[name], gens.n)
        scale = abs(x).max()
        for w in words:
            res = abs(membership_value(x, gens.word(w))) / scale
            checks.append(SampleCheck(f"{name} on I({w})", res, res < tol))
    return checks


def sample_point_audit(gens: GeneratorSet | None = None, tol: Tolerances = DEFAULT) -> SamplePointTable:
    if gens is None:
        gens = generators(ModuliPoint.base(), 2)
    best = None
    for reading, make in READINGS.items():
        points = {k: make(*v) for k, v in PRINTED_POINTS.items()}
        checks = _sample_checks(gens, points, tol.identity)
        table = SamplePointTable(reading, points, tuple(checks))
        if table.passed:
            best = table
            break
        if best is None:
            best = table
    checks = list(best.checks)
    # u5 on the boundary of the I(C) n I(aCA) disk
    disk = chart_from_words(gens, ("", "c", "C"), (-1, 1, 1))
    rs = (math.pi, math.pi - math.acos(1 / 4))
    x = disk.at(*rs)
    vv = abs(float(np.real(np.conj(x) @ disk.form.matrix @ x)))
    checks.append(SampleCheck("u5 on the ideal boundary", vv, vv < tol.identity))
    # the triple point seen from three charts
    views = [chart_from_words(gens, ("", "CBC", "c"), (-1, 1, 1)).at(math.pi, math.pi),
             chart_from_words(gens, ("", "CBC", "CBc")).at(0.0, 0.0),
             chart_from_words(gens, ("", "CBc", "c")).at(0.0, 0.0)]
    for i, v in enumerate(views):
        ok = projectively_equal(v, TRIPLE_POINT, tol.identity)
        res = float(np.abs(v / v[-1] - TRIPLE_POINT / TRIPLE_POINT[-1]).max())
        checks.append(SampleCheck(f"triple point view {i + 1}", res, ok))
    points = dict(best.points)
    points["u5"] = project(x)
    return SamplePointTable(best.reading, points, tuple(checks))


# ---------------------------------------------------------------- tangency scan

def _disk_min(h: float, grid: int = 512) -> float:
    """Normalised minimum of <V,V> for the chart of I(B) n I(C) on the degenerate curve."""
    gens = generators(ModuliPoint.degenerate(h), 2)
    f = vv_form(chart_from_words(gens, ("", "b", "c")))
    xs = np.linspace(-math.pi, math.pi, grid, endpoint=False)
    R, S = np.meshgrid(xs, xs, indexing="ij")
    vals = f(R, S)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    res = minimize(lambda x: f(x[0], x[1]), np.array([R[i, j], S[i, j]]),
                   jac=lambda x: np.array(f.grad(x[0], x[1])), method="BFGS", options={"gtol": 1e-14})
    return float(min(res.fun, vals[i, j])) / f.scale


def cygan_gap_bc(h: float) -> float:
    gens = generators(ModuliPoint.degenerate(h), 2)
    sb, sc = isometric_sphere(gens.word("B")), isometric_sphere(gens.word("C"))
    return cygan_distance(sb.center, sc.center) - (sb.radius + sc.radius)


def tangency_scan(lo: float = 1.2, hi: float = 1.4, xtol: float = 1e-12) -> float:
    """h where I(B) and I(C) become tangent along the degenerate curve."""
    f_lo, f_hi = _disk_min(lo), _disk_min(hi)
    if f_lo * f_hi > 0:
        raise NoSignChangeError(f"I(B) n I(C) does not change type on [{lo}, {hi}]")
    return float(brentq(_disk_min, lo, hi, xtol=xtol))


# ---------------------------------------------------------------- neighbourhood

@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    value: object = None


@dataclass(frozen=True)
class NeighborhoodReport:
    point: ModuliPoint
    items: tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    @property
    def failures(self) -> list[str]:
        return [i.name for i in self.items if not i.passed]


def slice_line_check(p: ModuliPoint, tol: Tolerances = DEFAULT) -> tuple[bool, TripleSolution]:
    sc = restricted_slice_chart(p)
    ch = sc.chart
    f = inner_sq_form(ch, ch.p) - inner_sq_form(ch, sc.e4)
    sol = solve_form_triple(f, vv_form(ch), tol)
    want = {("r", math.pi), ("s", math.pi), ("r-s", math.pi)}
    ok = len(sol.lines) == 3 and all(sol.find(k, c) is not None for k, c in want) and not sol.branches
    return ok, sol


def neighborhood_audit(p: ModuliPoint, tol: Tolerances = DEFAULT, K: int = 5,
                       grid: int = 512) -> NeighborhoodReport:
    """Rerun the checks behind local rigidity of the Ford domain in complex hyperbolic 3-space."""
    p.require()
    if not p.h > 1:
        raise OutOfScopeError("the neighbourhood audit needs h > 1")
    gens = generators(p, 3)
    items = []
    rel = relation_audit(gens, tol)
    items.append(CheckItem("relations", all(rel.values()), rel))
    ws = build_word_set(K)
    pw = pairwise_audit(ws, gens, tol)
    items.append(CheckItem("pairwise pattern", pw.passed,
                           {"unexpected": [list(map(str, u)) for u in pw.unexpected]}))
    for cls in sorted(TABLE1):
        g, h = ridge_words(cls)
        chart = chart_from_words(gens, ("", invert_word(g), invert_word(h)))
        items.append(CheckItem(f"ridge {g} n {h} nonempty", disk_nonempty(chart).nonempty))
    for cert in containment_audit(gens, tol, grid=grid):
        items.append(CheckItem(cert.label, cert.passed, {"upper": cert.upper, "threshold": cert.threshold}))
    defect = coplanar_defect(p)
    items.append(CheckItem("coplanar lifts", defect < 1e-10, defect))
    ok, sol = slice_line_check(p, tol)
    items.append(CheckItem("slice lines r=pi, s=pi, r-s=pi", ok,
                           [(ln.kind, ln.c, ln.residual) for ln in sol.lines]))
    cyc = cycle_audit(gens, ks=(0,), tol=tol)
    items.append(CheckItem("ridge cycles", all(c.passed for c in cyc)))
    sp = side_pairing_audit(gens, ks=(0,), tol=tol)
    items.append(CheckItem("side pairings", all(s.passed for s in sp)))
    return NeighborhoodReport(p, tuple(items))


def perturbed_points(base: ModuliPoint | None = None) -> list[ModuliPoint]:
    """Four points within 0.05 of the base point that stay inside the moduli region."""
    base = base or ModuliPoint.base()
    h0, t0 = base.h, base.t
    pts = [(h0, t0 - 0.05), (h0 - 0.035, t0 - 0.035), (h0 + 0.02, t0 - 0.045), (h0 - 0.049, t0 - 0.005)]
    out = []
    for h, t in pts:
        out.append(ModuliPoint(h, min(t, t_upper(h))))
    return out


# ---------------------------------------------------------------- report

def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return repr(x)
        return float(f"{x:.15g}")
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, HeisenbergPoint):
        return _num(x.as_list())
    return x


def jsonable(obj) -> object:
    """Recursively convert to JSON types with floats rounded to 15 significant digits."""
    return _num(obj)


def full_report(tol: Tolerances = DEFAULT, K: int = 5, grid: int | None = None) -> dict:
    """Every check at the base point in complex dimension 2, plus the tangency scan."""
    p = ModuliPoint.base()
    gens = generators(p, 2)
    ws = build_word_set(K)
    pw = pairwise_audit(ws, gens, tol)
    certs = containment_audit(gens, tol, grid=grid)
    ridges = ridge_catalog(gens, tol, certs)
    cycles = cycle_audit(gens, tol=tol)
    pairings = side_pairing_audit(gens, tol=tol)
    samples = sample_point_audit(gens, tol)
    rel = relation_audit(gens, tol)
    cutoff = cutoff_justification(K, gens)
    try:
        h1 = tangency_scan()
    except NoSignChangeError as exc:
        h1 = str(exc)
    sections = {
        "relations": all(rel.values()),
        "pairwise": pw.passed,
        "cutoff": all(v["passed"] for v in cutoff.values()),
        "containments": all(c.passed for c in certs),
        "ridges": all(r.passed for r in ridges),
        "cycles": all(c.passed for c in cycles),
        "side_pairings": all(s.passed for s in pairings),
        "sample_points": samples.passed,
    }
    report = {
        "parameters": {"h": p.h, "t": p.t, "dim": 2, "K": K, "tolerances": tol.__dict__},
        "word_set": list(ws.words),
        "relations": rel,
        "pairwise": {
            "classes": [{"class": list(c), "relation": r, "expected": expected_relation(c)}
                        for c, r in pw.classes.items()],
            "a_equivariant": pw.a_equivariant,
            "pairs": [{"words": list(r.words), "class": list(r.cls), "relation": r.relation, "gap": r.gap}
                      for r in pw.records if r.relation != "disjoint"],
        },
        "cutoff": cutoff,
        "containments": [{"label": c.label, "upper": c.upper, "lower": c.lower, "threshold": c.threshold,
                          "certified": c.certified, "sample": c.sample, "sample_ok": c.sample_ok,
                          "printed": c.printed} for c in certs],
        "ridges": [{"words": list(r.words), "class": list(r.cls), "kind": r.kind, "detail": r.detail,
                    "passed": r.passed} for r in ridges],
        "side_facets": side_facets(ridges),
        "cycles": [{"name": c.name, "composed": c.composed, "order": c.order, "relation": c.relation,
                    "length": c.length, "passed": c.passed} for c in cycles],
        "side_pairings": [{"statement": s.statement, "k": s.k, "passed": s.passed} for s in pairings],
        "sample_points": {"reading": samples.reading,
                          "checks": [{"name": c.name, "residual": c.residual, "passed": c.passed}
                                     for c in samples.checks]},
        "tangency_h1": h1,
        "sections": sections,
        "verdict": "pass" if all(sections.values()) else "fail",
    }
    return jsonable(report)


def neighborhood_report(p: ModuliPoint, tol: Tolerances = DEFAULT, K: int = 5, grid: int = 512) -> dict:
    rep = neighborhood_audit(p, tol, K, grid)
    return jsonable({
        "parameters": {"h": p.h, "t": p.t, "dim": 3, "K": K, "tolerances": tol.__dict__},
        "word_set": list(build_word_set(K).words),
        "checks": [{"name": i.name, "passed": i.passed, "value": i.value} for i in rep.items],
        "failures": rep.failures,
        "verdict": "pass" if rep.passed else "fail",
    })
