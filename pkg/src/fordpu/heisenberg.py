"""Horospherical coordinates, the Cygan metric and isometric spheres."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT
from .errors import FixesInfinityError, InvalidInputError, UsageError
from .hermitian import GroupElement, herm_inner


@dataclass(frozen=True)
class HeisenbergPoint:
    """Point (z, t, u) of the closed ball, or q_inf when ``at_infinity`` is set."""

    z: tuple = ()
    t: float = 0.0
    u: float = 0.0
    at_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(complex(x) for x in self.z))
        if self.u < 0:
            raise InvalidInputError("u must be >= 0")
        if self.at_infinity and (self.z or self.t or self.u):
            raise UsageError("the point at infinity carries no coordinates")

    @classmethod
    def infinity(cls) -> "HeisenbergPoint":
        return cls(at_infinity=True)

    @classmethod
    def boundary(cls, z, t: float) -> "HeisenbergPoint":
        z = (z,) if np.isscalar(z) else tuple(z)
        return cls(z, float(t), 0.0)

    @property
    def xyt(self) -> tuple[float, float, float]:
        """(Re z1, Im z1, t), the coordinates used for complex dimension 2."""
        return (self.z[0].real, self.z[0].imag, self.t)

    def as_list(self) -> list:
        if self.at_infinity:
            return ["inf"]
        out = []
        for c in self.z:
            out.extend([c.real, c.imag])
        return out + [self.t, self.u]


def lift(p: HeisenbergPoint, n: int | None = None) -> np.ndarray:
    """Standard lift; q_inf -> (1, 0, ..., 0)."""
    if p.at_infinity:
        if n is None:
            raise UsageError("dimension needed to lift q_inf")
        v = np.zeros(n + 1, dtype=complex)
        v[0] = 1
        return v
    z = np.array(p.z, dtype=complex)
    first = (-np.sum(np.abs(z) ** 2) - p.u + 1j * p.t) / 2
    return np.concatenate([[first], z, [1.0]]).astype(complex)


def project(x, tol: float = DEFAULT.geometric) -> HeisenbergPoint:
    """Horospherical coordinates of the point of CP^n represented by x."""
    x = np.asarray(x, dtype=complex)
    scale = float(np.abs(x).max())
    if scale == 0:
        raise InvalidInputError("zero vector")
    if abs(x[-1]) <= 1e-14 * scale:
        return HeisenbergPoint.infinity()
    y = x / x[-1]
    z = y[1:-1]
    u = float(-np.sum(np.abs(z) ** 2) - 2 * y[0].real)
    if u < -tol * max(1.0, abs(y[0])):
        raise InvalidInputError("vector is positive; it is not in the closed ball")
    return HeisenbergPoint(tuple(z), float(2 * y[0].imag), max(u, 0.0))


def _im_inner(z: np.ndarray, w: np.ndarray) -> float:
    # Im(sum z conj w) written so that z == w gives exactly zero
    return float(np.sum(z.imag * w.real - z.real * w.imag))


def cygan_distance(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    """Extended Cygan distance; equals |2<p,q>|^(1/2) on the boundary."""
    if p.at_infinity or q.at_infinity:
        raise InvalidInputError("Cygan distance is undefined at q_inf")
    if len(p.z) != len(q.z):
        raise UsageError("points live in different dimensions")
    z = np.array(p.z)
    w = np.array(q.z)
    real = float(np.sum(np.abs(z - w) ** 2)) + abs(p.u - q.u)
    imag = p.t - q.t + 2 * _im_inner(z, w)
    return math.sqrt(abs(complex(real, imag)))


def heisenberg_product(p: HeisenbergPoint, q: HeisenbergPoint) -> HeisenbergPoint:
    """[z,t].[w,s] = [z+w, t+s+2 Im <<z,w>>] on boundary points."""
    z = np.array(p.z)
    w = np.array(q.z)
    t = p.t + q.t + 2 * _im_inner(z, w)
    return HeisenbergPoint(tuple(z + w), t, 0.0)


def a_action(p: HeisenbergPoint, k: int) -> HeisenbergPoint:
    """k-th iterate of (z, t) -> (z - 2, t + 4 Im z) in complex dimension 2."""
    if len(p.z) != 1 or p.at_infinity:
        raise UsageError("a_action acts on boundary points of complex dimension 2")
    z = p.z[0]
    return HeisenbergPoint((z - 2 * k,), p.t + 4 * k * z.imag, p.u)


@dataclass(frozen=True)
class CyganSphere:
    center: HeisenbergPoint
    radius: float
    word: str = ""

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidInputError("radius must be positive")
        if self.center.u != 0 or self.center.at_infinity:
            raise InvalidInputError("centre must lie on the boundary")

    def equation(self, p: HeisenbergPoint) -> float:
        """d(p, centre)^2 - r^2; zero on the sphere."""
        return cygan_distance(p, self.center) ** 2 - self.radius ** 2


def isometric_sphere(g: GroupElement, tol: float = DEFAULT.identity) -> CyganSphere:
    M = g.matrix
    n = M.shape[0] - 1
    g_last = M[n, 0]
    if abs(g_last) <= tol * max(1.0, float(np.abs(M).max())):
        raise FixesInfinityError(f"word {g.word!r} fixes q_inf")
    den = np.conj(g_last)
    z = tuple(np.conj(M[n, j]) / den for j in range(1, n))
    t = 2 * float(np.imag(np.conj(M[n, n]) / den))
    return CyganSphere(HeisenbergPoint(z, t, 0.0), math.sqrt(2 / abs(g_last)), g.word)


def sphere_relation(s1: CyganSphere, s2: CyganSphere, tol: float = DEFAULT.tangency) -> tuple[str, float]:
    """('disjoint' | 'tangent' | 'overlapping', gap) with gap = d - (r1 + r2)."""
    gap = cygan_distance(s1.center, s2.center) - (s1.radius + s2.radius)
    if abs(gap) < tol:
        return "tangent", gap
    return ("overlapping" if gap < 0 else "disjoint"), gap


def sphere_membership(p: HeisenbergPoint, s: CyganSphere, tol: float = DEFAULT.geometric) -> str:
    """'interior' | 'on' | 'exterior'; q_inf is always exterior."""
    if p.at_infinity:
        return "exterior"
    value = cygan_distance(p, s.center) - s.radius
    if abs(value) < tol:
        return "on"
    return "interior" if value < 0 else "exterior"


def membership_value(x, g: GroupElement) -> float:
    """|<x, q_inf>| - |<x, g^{-1} q_inf>|; positive inside I(g), for any lift x."""
    x = np.asarray(x, dtype=complex)
    n = x.size - 1
    col = np.linalg.inv(g.matrix)[:, 0]
    a = abs(x[n])  # <x, q_inf> picks out the last entry
    return float(a - abs(herm_inner(x, col)))
