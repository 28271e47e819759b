"""Giraud disks in spinal coordinates: charts, trace equations, certified maxima,
triple intersections and the restricted slice L inside complex hyperbolic 3-space."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize

from .config import DEFAULT, Tolerances
from .errors import DegenerateChartError, OutOfScopeError, UsageError
from .group import GeneratorSet, ModuliPoint, generators
from .heisenberg import HeisenbergPoint, project
from .hermitian import HermitianForm, box_cross, box_cross_general, standard_form
from .trigform import TorusTrigForm, solve_harmonic, wrap

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class GiraudChart:
    """V(z1, z2) = v0 + z1 v1 + z2 v2 with z = (e^{ir}, e^{is})."""

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    cross_terms: tuple
    form: HermitianForm
    label: str = ""

    def V(self, z1, z2) -> np.ndarray:
        v0, v1, v2 = self.cross_terms
        return v0 + z1 * v1 + z2 * v2

    def at(self, r: float, s: float) -> np.ndarray:
        return self.V(np.exp(1j * r), np.exp(1j * s))

    def gram(self) -> np.ndarray:
        """Q_jk = <v_k, v_j>, so that <V,V> = w* Q w with w = (1, z1, z2)."""
        F = self.form.matrix
        vs = self.cross_terms
        return np.array([[np.conj(vs[j]) @ F @ vs[k] for k in range(3)] for j in range(3)])

    def pairing(self, u) -> np.ndarray:
        """a_k = <v_k, u>, so <V, u> = a . w."""
        F = self.form.matrix
        u = np.asarray(u, dtype=complex)
        return np.array([np.conj(u) @ F @ v for v in self.cross_terms])

    def point(self, r: float, s: float) -> HeisenbergPoint:
        if self.form.size != 3 or not np.allclose(self.form.matrix, standard_form(2)):
            raise UsageError("horospherical coordinates need the standard 3x3 form")
        return project(self.at(r, s))


def make_chart(p, q, r, form: HermitianForm | None = None, label: str = "",
               tol: float = DEFAULT.identity) -> GiraudChart:
    """Chart of the Giraud disk through the bisectors equidistant from p, q and p, r."""
    p, q, r = (np.asarray(x, dtype=complex) for x in (p, q, r))
    if form is None:
        form = HermitianForm.standard(2)
    if p.shape != (3,) or q.shape != (3,) or r.shape != (3,):
        raise UsageError("charts are built from length-3 lifts")
    M = np.column_stack([p, q, r])
    scale = np.prod([np.linalg.norm(x) for x in (p, q, r)])
    if abs(np.linalg.det(M)) <= tol * scale:
        raise DegenerateChartError("the three points lie in a common complex line")
    if np.allclose(form.matrix, standard_form(2)):
        cross = box_cross
    else:
        def cross(x, y):
            return box_cross_general(x, y, form)
    terms = (cross(q, r), cross(r, p), cross(p, q))
    return GiraudChart(p, q, r, terms, form, label)


def vv_form(chart: GiraudChart) -> TorusTrigForm:
    return TorusTrigForm.from_hermitian(chart.gram())


def inner_sq_form(chart: GiraudChart, u) -> TorusTrigForm:
    """|<V, u>|^2 as a trig form."""
    a = chart.pairing(u)
    return TorusTrigForm.from_hermitian(np.outer(np.conj(a), a))


def trace_equation(chart: GiraudChart, u, v) -> TorusTrigForm:
    """|<V,u>|^2 - |<V,v>|^2; positive where V is closer to u's sphere side."""
    return inner_sq_form(chart, u) - inner_sq_form(chart, v)


@dataclass(frozen=True)
class DiskCheck:
    nonempty: bool
    witness: tuple[float, float] | None
    value: float
    certified: bool


def disk_nonempty(form: TorusTrigForm | GiraudChart, grid: int = 96) -> DiskCheck:
    """Look for (r, s) with <V,V> < 0; report emptiness only with a certified bound."""
    f = vv_form(form) if isinstance(form, GiraudChart) else form
    if f.lower_bound > 0:
        return DiskCheck(False, None, f.lower_bound, True)
    xs = np.linspace(-math.pi, math.pi, grid, endpoint=False)
    R, S = np.meshgrid(xs, xs, indexing="ij")
    vals = f(R, S)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    best = (float(R[i, j]), float(S[i, j]))
    if vals[i, j] >= 0:
        res = minimize(lambda x: f(x[0], x[1]), np.array(best),
                       jac=lambda x: np.array(f.grad(x[0], x[1])), method="BFGS")
        if res.fun < 0:
            best = (float(wrap(res.x[0])), float(wrap(res.x[1])))
    value = float(f(*best))
    if value < 0:
        return DiskCheck(True, (float(wrap(best[0])), float(wrap(best[1]))), value, True)
    low = certified_max(-f, None, grid=256)
    empty = -low.upper > 0
    return DiskCheck(False, None, value, empty)


# ---------------------------------------------------------------- certified max

@dataclass(frozen=True)
class MaxResult:
    upper: float
    lower: float
    argmax: tuple[float, float] | None
    empty: bool
    rounds: int
    cells: int

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def certifies_below(self, threshold: float) -> bool:
        return self.empty or self.upper < threshold


def _cell_bounds(f: TorusTrigForm, rc, sc, half):
    val = f(rc, sc)
    gr, gs = f.grad(rc, sc)
    slack = (np.abs(gr) + np.abs(gs)) * half + 0.5 * f.curvature_bound * half * half
    return val, slack


def certified_max(objective: TorusTrigForm, constraint: TorusTrigForm | None,
                  grid: int = DEFAULT.cert_grid, gap: float = DEFAULT.cert_gap,
                  max_rounds: int = 40, polish: bool = True) -> MaxResult:
    """Rigorous upper bound of objective over {constraint <= 0} on the torus.

    Cells of a grid x grid partition get Taylor bounds (gradient at the centre
    plus a curvature remainder).  Cells that might hold a better value than the
    best feasible point found so far are split until the bound gap is met.
    """
    half = math.pi / grid
    centers = (np.arange(grid) + 0.5) * 2 * half
    rows = []
    best_val = -math.inf
    best_pt = None
    chunk = max(1, 2 ** 22 // grid)
    up_all = []
    for start in range(0, grid, chunk):
        rc = centers[start:start + chunk, None]
        sc = centers[None, :]
        rr, ss = np.broadcast_arrays(rc, sc)
        fv, fs = _cell_bounds(objective, rr, ss, half)
        if constraint is not None:
            gv, gsl = _cell_bounds(constraint, rr, ss, half)
            maybe = gv - gsl <= 0
            feas = gv <= 0
        else:
            maybe = np.ones(fv.shape, bool)
            feas = maybe
        if np.any(feas):
            cand = np.where(feas, fv, -np.inf)
            k = np.unravel_index(np.argmax(cand), cand.shape)
            if cand[k] > best_val:
                best_val = float(cand[k])
                best_pt = (float(rr[k]), float(ss[k]))
        up = np.where(maybe, fv + fs, -np.inf)
        up_all.append(up)
        rows.append((rr[maybe], ss[maybe], up[maybe]))
    upper_grid = max(float(u.max()) for u in up_all)
    if upper_grid == -math.inf:
        return MaxResult(-math.inf, -math.inf, None, True, 0, 0)

    def polish_from(pt):
        nonlocal best_val, best_pt
        if pt is None or not polish:
            return
        fun = lambda x: -objective(x[0], x[1])
        jac = lambda x: -np.array(objective.grad(x[0], x[1]))
        cons = []
        if constraint is not None:
            cons = [{"type": "ineq", "fun": lambda x: -constraint(x[0], x[1]),
                     "jac": lambda x: -np.array(constraint.grad(x[0], x[1]))}]
        res = minimize(fun, np.array(pt), jac=jac, constraints=cons, method="SLSQP",
                       options={"ftol": 1e-15, "maxiter": 200})
        x = np.array(res.x)
        if constraint is not None:
            # SLSQP may stop a hair outside the disk; step back along the gradient
            for _ in range(5):
                gval = constraint(x[0], x[1])
                if gval <= 0:
                    break
                d = np.array(constraint.grad(x[0], x[1]))
                x = x - (gval * (1 + 1e-9) + 1e-15) * d / max(float(d @ d), 1e-300)
        ok = constraint is None or constraint(x[0], x[1]) <= 0
        if ok and objective(x[0], x[1]) > best_val:
            best_val = float(objective(x[0], x[1]))
            best_pt = (float(x[0]), float(x[1]))

    polish_from(best_pt)
    r = np.concatenate([x[0] for x in rows])
    s = np.concatenate([x[1] for x in rows])
    up = np.concatenate([x[2] for x in rows])
    rounds = 0
    upper = upper_grid
    while True:
        keep = up > best_val
        r, s, up = r[keep], s[keep], up[keep]
        upper = float(up.max()) if up.size else best_val
        upper = max(upper, best_val)
        if best_pt is None and up.size == 0:
            return MaxResult(-math.inf, -math.inf, None, True, rounds, 0)
        if upper - best_val <= gap or rounds >= max_rounds or up.size == 0:
            break
        rounds += 1
        half /= 2
        offs = np.array([[-1, -1], [-1, 1], [1, -1], [1, 1]]) * half
        r = (r[:, None] + offs[None, :, 0]).ravel()
        s = (s[:, None] + offs[None, :, 1]).ravel()
        fv, fs = _cell_bounds(objective, r, s, half)
        if constraint is not None:
            gv, gsl = _cell_bounds(constraint, r, s, half)
            maybe = gv - gsl <= 0
            feas = gv <= 0
        else:
            maybe = np.ones(fv.shape, bool)
            feas = maybe
        if np.any(feas):
            k = int(np.argmax(np.where(feas, fv, -np.inf)))
            if fv[k] > best_val:
                best_val = float(fv[k])
                best_pt = (float(r[k]), float(s[k]))
                polish_from(best_pt)
        r, s, up = r[maybe], s[maybe], (fv + fs)[maybe]
    arg = None if best_pt is None else (float(wrap(best_pt[0])), float(wrap(best_pt[1])))
    return MaxResult(upper, best_val, arg, best_pt is None, rounds, int(r.size))


# ---------------------------------------------------------------- triple solving

LINE_KINDS = ("r", "s", "r-s", "r+s")


def line_point(kind: str, c: float, x):
    """Torus point on the line; parameter x is s for 'r' lines and r otherwise."""
    x = np.asarray(x, dtype=float)
    if kind == "r":
        return np.full_like(x, c), x
    if kind == "s":
        return x, np.full_like(x, c)
    if kind == "r-s":
        return x, x - c
    if kind == "r+s":
        return x, c - x
    raise UsageError(f"unknown line kind {kind!r}")


def _mean_on_line(f: TorusTrigForm, kind: str) -> tuple[float, float, float]:
    """(alpha, beta, gamma) with mean_x f(line(c, x)) = alpha cos c + beta sin c + gamma."""
    idx = {"r": 1, "s": 2, "r-s": 3, "r+s": 4}[kind]
    return f.a[idx], f.b[idx], f.a[0]


def _line_coeffs(f: TorusTrigForm, kind: str, c: float, samples: int = 8) -> np.ndarray:
    x = np.arange(samples) * TWO_PI / samples
    return np.fft.rfft(f(*line_point(kind, c, x))) / samples


def _refine_line(f: TorusTrigForm, kind: str, c: float, steps: int = 8) -> float:
    for _ in range(steps):
        h = 1e-6
        k0 = _line_coeffs(f, kind, c)
        dk = (_line_coeffs(f, kind, c + h) - _line_coeffs(f, kind, c - h)) / (2 * h)
        parts = np.concatenate([k0.real, k0.imag])
        dparts = np.concatenate([dk.real, dk.imag])
        i = int(np.argmax(np.abs(dparts)))
        if abs(dparts[i]) < 1e-14 or abs(parts[i]) < 1e-17:
            break
        c -= parts[i] / dparts[i]
    return float(wrap(c))


@dataclass(frozen=True)
class LineSolution:
    kind: str
    c: float
    residual: float
    segments: tuple[tuple[float, float], ...]

    @property
    def feasible(self) -> bool:
        return bool(self.segments)

    def describe(self) -> str:
        return f"{self.kind} = {self.c:.12g}"


@dataclass(frozen=True)
class TripleSolution:
    lines: tuple[LineSolution, ...]
    branches: tuple[np.ndarray, ...] = field(default=())
    identically_zero: bool = False

    def find(self, kind: str, c: float, tol: float = 1e-6) -> LineSolution | None:
        for ln in self.lines:
            if ln.kind == kind and abs(wrap(ln.c - c)) < tol:
                return ln
        return None

    @property
    def feasible_lines(self) -> tuple[LineSolution, ...]:
        return tuple(ln for ln in self.lines if ln.feasible)


def feasible_intervals(g, samples: int = 2048) -> list[tuple[float, float]]:
    """Maximal arcs of the circle where g(x) <= 0, as (start, end) with start in (-pi, pi]."""
    x = -math.pi + (np.arange(samples) + 0.5) * TWO_PI / samples
    vals = g(x)
    neg = vals <= 0
    if neg.all():
        return [(-math.pi, math.pi)]
    if not neg.any():
        return []
    roots = []
    for i in range(samples):
        j = (i + 1) % samples
        if neg[i] != neg[j]:
            a = x[i]
            b = x[j] if j else x[j] + TWO_PI
            try:
                root = brentq(lambda y: float(g(np.array([y]))[0]), a, b, xtol=1e-15)
            except ValueError:
                root = 0.5 * (a + b)
            roots.append((root, neg[i]))  # neg[i] True means leaving the feasible set
    out = []
    for k, (root, leaving) in enumerate(roots):
        if not leaving:
            end = roots[(k + 1) % len(roots)][0]
            start = float(wrap(root))
            end = start + float(np.mod(end - root, TWO_PI))
            out.append((start, end))
    return sorted(out)


def solve_triple(chart: GiraudChart, u, v, tol: Tolerances = DEFAULT,
                 samples: int = 720) -> TripleSolution:
    """Solutions of |<V,u>| = |<V,v>| on the torus, clipped to <V,V> <= 0."""
    f = trace_equation(chart, u, v)
    vv = vv_form(chart)
    return solve_form_triple(f, vv, tol, samples)


def solve_form_triple(f: TorusTrigForm, vv: TorusTrigForm, tol: Tolerances = DEFAULT,
                      samples: int = 720) -> TripleSolution:
    if f.is_zero(1e-12):
        return TripleSolution((), (), True)
    fn = f * (1.0 / f.scale)
    n_line = tol.line_samples
    xs = np.arange(n_line) * TWO_PI / n_line
    lines: list[LineSolution] = []
    for kind in LINE_KINDS:
        alpha, beta, gamma = _mean_on_line(fn, kind)
        cands = solve_harmonic(alpha, beta, gamma, tol=1e-13)
        if math.hypot(alpha, beta) < 1e-13 and abs(gamma) < 1e-13:
            grid = np.linspace(-math.pi, math.pi, 361)[:-1]
            norms = [np.abs(_line_coeffs(fn, kind, c)).sum() for c in grid]
            cands = [grid[i] for i in range(len(grid))
                     if norms[i] <= norms[i - 1] and norms[i] <= norms[(i + 1) % len(grid)]]
        for c in cands:
            c = _refine_line(fn, kind, c)
            res = float(np.abs(fn(*line_point(kind, c, xs))).max())
            if res >= tol.line_residual:
                continue
            if any(ln.kind == kind and abs(wrap(ln.c - c)) < 1e-7 for ln in lines):
                continue
            segs = feasible_intervals(lambda x, k=kind, cc=c: vv(*line_point(k, cc, x)))
            lines.append(LineSolution(kind, c, res, tuple(segs)))
    branches = _trace_branches(fn, vv, lines, samples)
    return TripleSolution(tuple(lines), tuple(branches), False)


def _near_lines(r, s, lines, eps=1e-6) -> np.ndarray:
    near = np.zeros(np.shape(r), bool)
    for ln in lines:
        if ln.kind == "r":
            d = wrap(r - ln.c)
        elif ln.kind == "s":
            d = wrap(s - ln.c)
        elif ln.kind == "r-s":
            d = wrap(r - s - ln.c)
        else:
            d = wrap(r + s - ln.c)
        near |= np.abs(d) < eps
    return near


def _trace_branches(f: TorusTrigForm, vv: TorusTrigForm, lines, samples: int) -> list[np.ndarray]:
    """Feasible solution points off the detected lines, grouped by continuity in r."""
    pts = []
    rs = -math.pi + (np.arange(samples) + 0.5) * TWO_PI / samples
    alpha, beta, gamma = f.in_s(rs)
    for r, a, b, g in zip(rs, alpha, beta, gamma):
        if _near_lines(np.array(r), np.array(0.0), [ln for ln in lines if ln.kind == "r"], 1e-4):
            continue
        for s in solve_harmonic(a, b, g):
            if _near_lines(np.array(r), np.array(s), lines, 1e-5):
                continue
            if vv(r, s) <= 0:
                pts.append((r, s))
    if not pts:
        return []
    pts_arr = np.array(pts)
    groups: list[list] = []
    step = 3 * TWO_PI / samples
    for p in pts_arr:
        for g in groups:
            if np.abs(wrap(g[-1] - p)).max() < max(step, 0.2):
                g.append(p)
                break
        else:
            groups.append([p])
    return [np.array(g) for g in groups]


# ---------------------------------------------------------------- boundary arcs

@dataclass(frozen=True)
class BoundaryArc:
    loop: int
    start: tuple[float, float]
    end: tuple[float, float]
    side: str
    points: np.ndarray = field(repr=False, default_factory=lambda: np.zeros((0, 2)))


def _boundary_s(vv: TorusTrigForm, r: float, branch: int) -> float:
    a, b, g = (float(x) for x in vv.in_s(np.array(r)))
    R = math.hypot(a, b)
    c = min(1.0, max(-1.0, -g / R))
    phi = math.atan2(b, a)
    return float(wrap(phi + (1 if branch == 1 else -1) * math.acos(c)))


def boundary_turning_points(vv: TorusTrigForm, samples: int = 4096) -> list[float]:
    """r values where the two branches of <V,V> = 0 meet (R(r)^2 = gamma(r)^2)."""
    def q(r):
        a, b, g = vv.in_s(np.asarray(r, dtype=float))
        return a * a + b * b - g * g
    xs = -math.pi + np.arange(samples + 1) * TWO_PI / samples
    vals = q(xs)
    roots = []
    for i in range(samples):
        if vals[i] == 0:
            roots.append(float(xs[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(lambda y: float(q(np.array(y))), xs[i], xs[i + 1], xtol=1e-15))
    return sorted({round(float(wrap(x)), 14) for x in roots})


def boundary_arcs(chart: GiraudChart, u, v, samples: int = 2048) -> list[BoundaryArc]:
    """Split the circle <V,V> = 0 at its triple points and label each piece.

    side is 'interior' where |<V,u>| > |<V,v>| and 'exterior' otherwise.
    """
    vv = vv_form(chart)
    f = trace_equation(chart, u, v)
    return arcs_from_forms(vv, f, samples)


def arcs_from_forms(vv: TorusTrigForm, f: TorusTrigForm, samples: int = 2048) -> list[BoundaryArc]:
    turning = boundary_turning_points(vv)

    def q(r):
        a, b, g = vv.in_s(np.asarray(r, dtype=float))
        return a * a + b * b - g * g

    loops = []
    if not turning:
        if q(0.0) < 0:
            return []
        # two disjoint closed curves, one per branch
        for branch in (1, 2):
            loops.append(lambda tau, b=branch: (wrap(-math.pi + tau * math.pi),
                                                _boundary_s(vv, -math.pi + tau * math.pi, b)))
    else:
        for k, r0 in enumerate(turning):
            r1 = turning[(k + 1) % len(turning)]
            if r1 <= r0:
                r1 += TWO_PI
            if q(0.5 * (r0 + r1)) < 0:
                continue

            def loop(tau, r0=r0, r1=r1):
                # tau in [0, 1]: branch 1 forward; tau in [1, 2]: branch 2 back
                if tau <= 1:
                    r = r0 + tau * (r1 - r0)
                    return wrap(r), _boundary_s(vv, r, 1)
                r = r1 - (tau - 1) * (r1 - r0)
                return wrap(r), _boundary_s(vv, r, 2)
            loops.append(loop)
    arcs: list[BoundaryArc] = []
    for loop in loops:
        arcs.extend(_split_loop(loop, f, samples))
    return arcs


def _split_loop(loop, f: TorusTrigForm, samples: int) -> list[BoundaryArc]:
    taus = np.linspace(0.0, 2.0, 2 * samples + 1)
    pts = np.array([loop(t) for t in taus])
    vals = f(pts[:, 0], pts[:, 1])
    phi = lambda t: float(f(*loop(t)))
    cuts = []
    for i in range(len(taus) - 1):
        if vals[i] == 0:
            cuts.append(float(taus[i]))
        elif vals[i] * vals[i + 1] < 0:
            cuts.append(brentq(phi, taus[i], taus[i + 1], xtol=1e-15))
    cuts = sorted(set(c for c in cuts if c < 2.0))

    def piece(t0, t1):
        ts = np.linspace(t0, t1, max(8, int(samples * (t1 - t0))))
        arr = np.array([loop(np.mod(t, 2.0)) for t in ts])
        mid = loop(np.mod(0.5 * (t0 + t1), 2.0))
        side = "interior" if f(*mid) > 0 else "exterior"
        return BoundaryArc(0, tuple(arr[0]), tuple(arr[-1]), side, arr)

    if not cuts:
        return [piece(0.0, 2.0)]
    out = []
    for k, t0 in enumerate(cuts):
        t1 = cuts[k + 1] if k + 1 < len(cuts) else cuts[0] + 2.0
        out.append(piece(t0, t1))
    return out


# ---------------------------------------------------------------- 4x4 slice

def coplanar_defect(p: ModuliPoint, signs=(1, -1, 1, -1)) -> float:
    """Norm of q_inf - C^{-1} q_inf + CBC^{-1} q_inf - CBC q_inf (or other signs)."""
    g = generators(p, 3)
    q = g.q_inf
    vecs = [q, g.word("c").apply(q), g.word("CBc").apply(q), g.word("CBC").apply(q)]
    return float(np.linalg.norm(sum(sg * v for sg, v in zip(signs, vecs))))


@dataclass(frozen=True)
class SliceChart:
    chart: GiraudChart
    basis: tuple
    H_L: np.ndarray
    e4: np.ndarray
    point: ModuliPoint


def restricted_slice_chart(p: ModuliPoint) -> SliceChart:
    """Chart of I(C) n I(CBC^{-1}) n L in the basis q_inf, C^{-1} q_inf, CBC^{-1} q_inf."""
    if not p.h > 1:
        raise OutOfScopeError("the restricted slice needs h > 1")
    g = generators(p, 3)
    H = standard_form(3)
    q = g.q_inf
    E = [q, g.word("c").apply(q), g.word("CBc").apply(q)]
    H_L = np.array([[np.conj(E[i]) @ H @ E[j] for j in range(3)] for i in range(3)])
    form = HermitianForm(H_L)
    E1, E2, E3 = np.eye(3, dtype=complex)
    terms = (box_cross_general(E2, E3, H_L), box_cross_general(E1, E3, H_L),
             box_cross_general(E1, E2, H_L))
    chart = GiraudChart(E1, E2, E3, terms, form, "I(C) n I(CBc) n L")
    e4 = np.array([1, -1, 1], dtype=complex)
    return SliceChart(chart, tuple(E), H_L, e4, p)


def slice_to_ambient(sc: SliceChart, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return sum(x[i] * sc.basis[i] for i in range(3))


# ---------------------------------------------------------------- named charts

def lift_of(gens: GeneratorSet, word: str, sign: float = 1.0) -> np.ndarray:
    """sign * (word) q_inf; the empty word gives q_inf itself."""
    return sign * gens.word(word).apply(gens.q_inf) if word else sign * gens.q_inf


def span_chart(p, q, r, H=None, label: str = "", tol: float = DEFAULT.identity) -> GiraudChart:
    """Chart of the Giraud disk inside the complex span L of three lifts.

    The cross products are taken with the restricted form H_L = E* H E in the
    basis E = (p, q, r) and mapped back, so the chart works in any dimension.
    """
    E = np.column_stack([np.asarray(x, dtype=complex) for x in (p, q, r)])
    H = standard_form(E.shape[0] - 1) if H is None else np.asarray(H, dtype=complex)
    sv = np.linalg.svd(E / np.linalg.norm(E, axis=0), compute_uv=False)
    if sv[-1] <= tol:
        raise DegenerateChartError("the three lifts are linearly dependent")
    H_L = E.conj().T @ H @ E
    e1, e2, e3 = np.eye(3, dtype=complex)
    terms = tuple(E @ box_cross_general(x, y, H_L) for x, y in ((e2, e3), (e3, e1), (e1, e2)))
    return GiraudChart(E[:, 0], E[:, 1], E[:, 2], terms, HermitianForm(H), label)


def chart_from_words(gens: GeneratorSet, words, signs=(1, 1, 1), label: str = "") -> GiraudChart:
    """Chart through (sign * word) q_inf; 3x3 charts use the plain cross product."""
    p, q, r = (lift_of(gens, w, sg) for w, sg in zip(words, signs))
    if gens.dim == 2:
        return make_chart(p, q, r, label=label)
    return span_chart(p, q, r, label=label)
