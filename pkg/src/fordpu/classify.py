"""Trace-based classification of isometries of complex hyperbolic 2- and 3-space."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import InvalidInputError
from .hermitian import GroupElement

OMEGA = cmath.exp(2j * math.pi / 3)

KINDS = ("regular-elliptic", "special-elliptic", "loxodromic",
         "parabolic-unipotent", "parabolic-other", "boundary-undetermined")


def goldman_g(z) -> float:
    """|z|^4 - 8 Re(z^3) + 18|z|^2 - 27; vectorised over arrays."""
    z = np.asarray(z, dtype=complex)
    a = np.abs(z) ** 2
    out = a * a - 8 * np.real(z ** 3) + 18 * a - 27
    return float(out) if out.ndim == 0 else out


def holy_grail_h(tau, sigma):
    """Discriminant of X^4 - tau X^3 + sigma X^2 - conj(tau) X + 1; vectorised."""
    tau = np.asarray(tau, dtype=complex)
    sigma = np.asarray(sigma, dtype=float)
    a = np.abs(tau) ** 2
    first = sigma ** 2 / 3 - a + 4
    second = 2 * sigma ** 3 / 27 - a * sigma / 3 - 8 * sigma / 3 + 2 * np.real(tau ** 2)
    out = 4 * first ** 3 - 27 * second ** 2
    return float(out) if out.ndim == 0 else out


def _canonical_root(det: complex, m: int) -> complex:
    """lambda with lambda^m det = 1 and arg lambda in [-pi/m, pi/m)."""
    arg = cmath.phase(det)
    if abs(arg + math.pi) < 1e-12:
        arg = math.pi
    return abs(det) ** (-1.0 / m) * cmath.exp(-1j * arg / m)


def su_normalize(M) -> GroupElement:
    g = M if isinstance(M, GroupElement) else GroupElement(M)
    det = complex(np.linalg.det(g.matrix))
    if abs(det) < 1e-300:
        raise InvalidInputError("singular matrix cannot be normalised")
    lam = _canonical_root(det, g.size)
    return GroupElement(lam * g.matrix, g.word)


@dataclass(frozen=True)
class TraceInvariants:
    tau: complex
    sigma: float | None = None
    sigma_imag: float = 0.0


def trace_invariants(M) -> TraceInvariants:
    g = su_normalize(M)
    A = g.matrix
    tau = complex(np.trace(A))
    if g.size == 3:
        return TraceInvariants(tau)
    s = (tau * tau - complex(np.trace(A @ A))) / 2
    return TraceInvariants(tau, s.real, s.imag)


@dataclass(frozen=True)
class IsometryClass:
    kind: str
    discriminant: float
    eigenvalues: tuple = field(default=())
    order: int | None = None
    detail: str = ""

    @property
    def is_elliptic(self) -> bool:
        return self.kind.endswith("elliptic")


def discriminant(M) -> float:
    inv = trace_invariants(M)
    if inv.sigma is None:
        return goldman_g(inv.tau)
    return holy_grail_h(inv.tau, inv.sigma)


def _band(tau: complex, tol: Tolerances) -> float:
    return tol.boundary_band * (1 + abs(tau) ** 6)


def _clusters(eigs: np.ndarray, rel: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, lam in enumerate(eigs):
        for g in groups:
            ref = eigs[g[0]]
            if abs(lam - ref) <= rel * max(1.0, abs(ref)):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def _repeated_groups(eigs: np.ndarray, tol: Tolerances) -> list[list[int]]:
    groups = _clusters(eigs, tol.eigen_cluster)
    if all(len(g) == 1 for g in groups):
        # a defective eigenvalue of multiplicity m only resolves to ~eps^(1/m)
        groups = _clusters(eigs, 1e-4)
    return groups


def _diagonalisable(A: np.ndarray, eigs: np.ndarray, tol: Tolerances) -> bool | None:
    """True / False, or None when the rank decision is not clear cut."""
    size = A.shape[0]
    scale = max(1.0, float(np.linalg.norm(A, 2)))
    for group in _repeated_groups(eigs, tol):
        if len(group) == 1:
            continue
        lam = eigs[group].mean()
        sv = np.linalg.svd(A - lam * np.eye(size), compute_uv=False) / scale
        zero = int(np.sum(sv < 1e-7))
        ambiguous = np.any((sv >= 1e-7) & (sv < 1e-4))
        if ambiguous:
            return None
        if zero < len(group):
            return False
    return True


def finite_order(M, max_order: int = 60, tol: float = DEFAULT.identity) -> int | None:
    """Smallest k <= max_order with M^k scalar, if any."""
    A = M.matrix if isinstance(M, GroupElement) else np.asarray(M, dtype=complex)
    P = np.eye(A.shape[0], dtype=complex)
    for k in range(1, max_order + 1):
        P = P @ A
        d = P[0, 0]
        if abs(d) > 0 and np.abs(P / d - np.eye(A.shape[0])).max() < tol * 10:
            return k
    return None


def classify(M, tol: Tolerances = DEFAULT) -> IsometryClass:
    """Classify an H-preserving matrix by the sign of Goldman's or the holy-grail discriminant.

    Inside the boundary band the eigenstructure decides; if that is not conclusive
    the result is ``boundary-undetermined``.
    """
    g = su_normalize(M)
    A = g.matrix
    inv = trace_invariants(g)
    disc = discriminant(g)
    eigs = np.linalg.eigvals(A)
    eig_t = tuple(complex(e) for e in sorted(eigs, key=lambda z: (round(cmath.phase(z), 9), abs(z))))
    band = _band(inv.tau, tol)
    n = g.size - 1

    def order() -> int | None:
        return finite_order(A) if np.all(np.abs(np.abs(eigs) - 1) < 1e-6) else None

    if abs(disc) > band:
        regular_elliptic = disc < 0 if n == 2 else disc > 0
        if regular_elliptic:
            return IsometryClass("regular-elliptic", disc, eig_t, order())
        return IsometryClass("loxodromic", disc, eig_t)

    if np.any(np.abs(np.abs(eigs) - 1) > 1e-5):
        return IsometryClass("loxodromic", disc, eig_t, detail="repeated eigenvalue")
    diag = _diagonalisable(A, eigs, tol)
    if diag is None:
        return IsometryClass("boundary-undetermined", disc, eig_t)
    if diag:
        return IsometryClass("special-elliptic", disc, eig_t, order())
    if len(_repeated_groups(eigs, tol)) == 1:
        return IsometryClass("parabolic-unipotent", disc, eig_t)
    return IsometryClass("parabolic-other", disc, eig_t)
