"""Moduli scans of the holy-grail function and zero-curve tracing."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from skimage.measure import find_contours

from .classify import holy_grail_h
from .errors import UsageError
from .group import t_upper
from .words import parse_word

DEFAULT_WORDS = ("I1I2I3I4", "I1I4I1I2I1I4I3", "I1I3I4I1I2", "I1I3I2I4I1I3I4")


@dataclass(frozen=True)
class ScanConfig:
    h_range: tuple[float, float] = (0.5, 3.0)
    t_range: tuple[float, float] = (0.0, math.pi)
    grid: int = 400
    words: tuple[str, ...] = DEFAULT_WORDS
    csv_path: str | None = None
    curves_path: str | None = None
    tol: float = 1e-9

    def __post_init__(self):
        if self.grid < 2:
            raise UsageError("grid resolution must be at least 2")
        h0, h1 = self.h_range
        t0, t1 = self.t_range
        if not (0.5 <= h0 <= h1):
            raise UsageError("h range must lie in [1/2, inf) with h0 <= h1")
        if not (0.0 <= t0 <= t1 <= math.pi):
            raise UsageError("t range must lie in [0, pi] with t0 <= t1")
        for w in self.words:
            for letter, _ in parse_word(w):
                if not letter.startswith("I"):
                    raise UsageError(f"scan words use the reflections I1..I4 only, got {w!r}")


@dataclass(frozen=True)
class CurveTrace:
    word: str
    points: np.ndarray  # (m, 2) array of (h, t)
    residuals: np.ndarray = field(repr=False)  # |H| relative to the bracketing grid values

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    h: np.ndarray
    t: np.ndarray
    values: dict  # word -> (grid, grid) array, nan outside the moduli region
    curves: tuple[CurveTrace, ...]
    boundary: np.ndarray


def reflections_batch(h, t) -> np.ndarray:
    """The four reflections at every (h, t); shape (..., 4, 4, 4), nan outside the moduli region."""
    h = np.asarray(h, dtype=float)
    t = np.asarray(t, dtype=float)
    d2 = 4 * h * h * np.cos(t) + 3 * h * h + 1
    D = np.sqrt(np.where(d2 > 0, d2, 0.0))
    e = np.exp(-1j * t)
    z = np.zeros_like(e)
    one = np.ones_like(e)
    ns = [
        np.stack([z, one, z, z], -1),
        np.stack([one, -one, z, z], -1),
        np.stack([-1 / (2 * h) * one, z, z, -h * one], -1),
        np.stack([(4 * h * h + e) / (4 * h * h), -e / 2, D / (2 * h) + z, -e / 2], -1),
    ]
    H = np.zeros((4, 4), dtype=complex)
    H[0, 3] = H[3, 0] = 1
    H[1, 1] = H[2, 2] = 1
    out = []
    for n in ns:
        nH = np.conj(n) @ H
        nn = np.real(np.sum(nH * n, -1))[..., None, None]
        out.append(-np.eye(4) + 2 * n[..., :, None] * nH[..., None, :] / nn)
    R = np.stack(out, axis=-3)
    R[d2 < 0] = np.nan
    return R


def word_batch(word: str, R: np.ndarray) -> np.ndarray:
    M = np.broadcast_to(np.eye(4, dtype=complex), R.shape[:-3] + (4, 4)).copy()
    for letter, power in parse_word(word):
        if not letter.startswith("I"):
            raise UsageError(f"batch words use I1..I4 only, got {letter!r}")
        if power % 2:
            M = M @ R[..., int(letter[1]) - 1, :, :]
    return M


def holy_grail_batch(word: str, h, t) -> np.ndarray:
    """su-normalised holy-grail value of ``word`` on arrays of (h, t)."""
    M = word_batch(word, reflections_batch(h, t))
    with np.errstate(invalid="ignore"):
        det = np.linalg.det(M)
    arg = np.angle(det)
    arg = np.where(np.abs(arg + math.pi) < 1e-12, math.pi, arg)
    lam = np.abs(det) ** -0.25 * np.exp(-0.25j * arg)
    N = lam[..., None, None] * M
    tau = np.trace(N, axis1=-2, axis2=-1)
    sigma = (tau * tau - np.trace(N @ N, axis1=-2, axis2=-1)) / 2
    return holy_grail_h(tau, np.real(sigma))


def holy_grail_at(word: str, h: float, t: float) -> float:
    return float(holy_grail_batch(word, np.array([h]), np.array([t]))[0])


def moduli_mask(H, T, tol: float = 1e-12) -> np.ndarray:
    return 4 * H * H * np.cos(T) + 3 * H * H + 1 >= -tol


def boundary_curve(h_range, samples: int = 400) -> np.ndarray:
    """Upper edge t = arccos(-(3h^2+1)/(4h^2)) of the moduli region over h >= 1."""
    lo = max(1.0, h_range[0])
    if lo > h_range[1]:
        return np.zeros((0, 2))
    hs = np.linspace(lo, h_range[1], samples)
    return np.column_stack([hs, [t_upper(x) for x in hs]])


def _edge_root(g, a, b, x0):
    """brentq root of g on [a, b] when bracketed, else x0; also returns the endpoint scale."""
    ga, gb = g(a), g(b)
    x = x0
    if ga * gb < 0:
        try:
            x = brentq(g, a, b, xtol=1e-15, maxiter=200)
        except RuntimeError:
            pass
    return x, ga * gb < 0, max(abs(ga), abs(gb), 1e-300)


def _refine_vertex(word, h_axis, t_axis, row, col) -> tuple[tuple[float, float], float]:
    """Pin a marching-squares vertex to the zero along its grid edge.

    A vertex sitting on a grid node may have no sign change along the edge it was
    reported on; the edges meeting at that node are tried next.  Returns the point
    and |H| there relative to the larger endpoint value of the edge used.
    """
    n_h, n_t = len(h_axis), len(t_axis)
    i0, j0 = int(math.floor(row)), int(math.floor(col))
    fr, fc = row - i0, col - j0
    on_row = min(fr, 1 - fr) < 1e-9  # fixed h, the edge runs along t
    edges = []  # (fixed-h?, fixed value, a, b, start)
    if on_row:
        h = h_axis[int(round(row))]
        a, b = t_axis[j0], t_axis[min(j0 + 1, n_t - 1)]
        edges.append((True, h, a, b, a + fc * (b - a)))
    else:
        t = t_axis[int(round(col))]
        a, b = h_axis[i0], h_axis[min(i0 + 1, n_h - 1)]
        edges.append((False, t, a, b, a + fr * (b - a)))
    if on_row and min(fc, 1 - fc) < 1e-9 or not on_row and min(fr, 1 - fr) < 1e-9:
        i, j = int(round(row)), int(round(col))
        for di in (-1, 1):
            if 0 <= i + di < n_h:
                lo, hi = sorted((h_axis[i], h_axis[i + di]))
                edges.append((False, t_axis[j], lo, hi, h_axis[i]))
        for dj in (-1, 1):
            if 0 <= j + dj < n_t:
                lo, hi = sorted((t_axis[j], t_axis[j + dj]))
                edges.append((True, h_axis[i], lo, hi, t_axis[j]))
    best = None
    for fixed_h, val, a, b, x0 in edges:
        if fixed_h:
            g = lambda x, h=val: holy_grail_at(word, h, x)
        else:
            g = lambda x, t=val: holy_grail_at(word, x, t)
        x, bracketed, scale = _edge_root(g, a, b, x0)
        point = (val, x) if fixed_h else (x, val)
        cand = (point, abs(g(x)) / scale)
        if best is None or cand[1] < best[1]:
            best = cand
        if bracketed:
            return cand
    return best


def trace_zero_curves(word: str, h_axis, t_axis, values, tol: float = 1e-9) -> list[CurveTrace]:
    """Zero level set of a sampled function, refined and clipped to the moduli region."""
    mask = np.isfinite(values)
    filled = np.where(mask, values, 0.0)
    out = []
    for c in find_contours(filled, 0.0, mask=mask):
        refined = [_refine_vertex(word, h_axis, t_axis, r, s) for r, s in c]
        pts = np.array([p for p, _ in refined])
        res = np.array([e for _, e in refined])
        inside = np.array([t <= t_upper(h) + tol for h, t in pts])
        # split at vertices above the upper moduli boundary
        start = None
        for k, ok in enumerate(list(inside) + [False]):
            if ok and start is None:
                start = k
            elif not ok and start is not None:
                if k - start >= 2:
                    out.append(CurveTrace(word, pts[start:k], res[start:k]))
                start = None
    return out


def scan(config: ScanConfig = ScanConfig()) -> ScanResult:
    hs = np.linspace(*config.h_range, config.grid)
    ts = np.linspace(*config.t_range, config.grid)
    Hg, Tg = np.meshgrid(hs, ts, indexing="ij")
    mask = moduli_mask(Hg, Tg)
    values = {}
    curves: list[CurveTrace] = []
    for w in config.words:
        v = holy_grail_batch(w, Hg, Tg)
        v = np.where(mask, v, np.nan)
        values[w] = v
        curves.extend(trace_zero_curves(w, hs, ts, v, config.tol))
    return ScanResult(config, hs, ts, values, tuple(curves), boundary_curve(config.h_range))


def scan_csv(result: ScanResult) -> str:
    """Rows (h, t, H(word)...) in shortest round-trip float form; nan outside the moduli region."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    words = list(result.values)
    w.writerow(["h", "t"] + words)
    for i, h in enumerate(result.h):
        for j, t in enumerate(result.t):
            w.writerow([repr(float(h)), repr(float(t))] + [repr(float(result.values[k][i, j])) for k in words])
    return buf.getvalue()


def curves_json(result: ScanResult) -> dict:
    def fmt(x):
        return float(f"{x:.15g}")
    return {
        "words": list(result.values),
        "curves": [{"word": c.word, "max_residual": fmt(c.max_residual),
                    "points": [[fmt(h), fmt(t)] for h, t in c.points]} for c in result.curves],
        "boundary": [[fmt(h), fmt(t)] for h, t in result.boundary],
    }
