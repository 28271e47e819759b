"""Real trigonometric polynomials on the torus (r, s) with frequencies |m|, |n| <= 1."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FREQS: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (1, -1), (1, 1))
_LABEL = {(0, 0): "", (1, 0): "r", (0, 1): "s", (1, -1): "r-s", (1, 1): "r+s"}


@dataclass(frozen=True)
class TorusTrigForm:
    """f(r, s) = sum a_k cos(m_k r + n_k s) + b_k sin(m_k r + n_k s).

    ``a`` and ``b`` are indexed like FREQS; the sine coefficient of the
    constant frequency is always zero.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if len(a) != len(FREQS) or len(b) != len(FREQS):
            raise ValueError("coefficient vectors have the wrong length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", (0.0,) + b[1:])

    @classmethod
    def from_dict(cls, coeffs: dict[str, float]) -> "TorusTrigForm":
        """Keys like '1', 'cos r', 'sin(r-s)', 'cos(r+s)'."""
        a = [0.0] * len(FREQS)
        b = [0.0] * len(FREQS)
        for key, val in coeffs.items():
            k = key.replace(" ", "").replace("(", "").replace(")", "")
            if k in ("1", "const", ""):
                a[0] += val
                continue
            kind, arg = k[:3], k[3:]
            idx = [lbl for lbl in _LABEL.values()].index(arg)
            (a if kind == "cos" else b)[idx] += val
        return cls(tuple(a), tuple(b))

    @classmethod
    def from_hermitian(cls, Q) -> "TorusTrigForm":
        """w* Q w with w = (1, e^{ir}, e^{is}) and Q Hermitian 3x3."""
        Q = np.asarray(Q, dtype=complex)
        a = [0.0] * 5
        b = [0.0] * 5
        a[0] = float(np.trace(Q).real)
        a[1], b[1] = 2 * Q[0, 1].real, -2 * Q[0, 1].imag
        a[2], b[2] = 2 * Q[0, 2].real, -2 * Q[0, 2].imag
        # conj(w1) Q12 w2 = Q12 e^{i(s-r)}
        a[3], b[3] = 2 * Q[1, 2].real, 2 * Q[1, 2].imag
        return cls(tuple(a), tuple(b))

    @classmethod
    def zero(cls) -> "TorusTrigForm":
        return cls((0.0,) * 5, (0.0,) * 5)

    # arithmetic
    def __add__(self, other: "TorusTrigForm") -> "TorusTrigForm":
        return TorusTrigForm(tuple(x + y for x, y in zip(self.a, other.a)),
                             tuple(x + y for x, y in zip(self.b, other.b)))

    def __neg__(self) -> "TorusTrigForm":
        return self * -1.0

    def __sub__(self, other: "TorusTrigForm") -> "TorusTrigForm":
        return self + (-other)

    def __mul__(self, c: float) -> "TorusTrigForm":
        return TorusTrigForm(tuple(c * x for x in self.a), tuple(c * x for x in self.b))

    __rmul__ = __mul__

    # evaluation
    def __call__(self, r, s):
        r = np.asarray(r, dtype=float)
        s = np.asarray(s, dtype=float)
        out = np.zeros(np.broadcast(r, s).shape)
        for (m, n), a, b in zip(FREQS, self.a, self.b):
            if a == 0 and b == 0:
                continue
            phase = m * r + n * s
            if a:
                out = out + a * np.cos(phase)
            if b:
                out = out + b * np.sin(phase)
        return out if out.ndim else float(out)

    def grad(self, r, s):
        r = np.asarray(r, dtype=float)
        s = np.asarray(s, dtype=float)
        shape = np.broadcast(r, s).shape
        gr = np.zeros(shape)
        gs = np.zeros(shape)
        for (m, n), a, b in zip(FREQS, self.a, self.b):
            if (a == 0 and b == 0) or (m == 0 and n == 0):
                continue
            phase = m * r + n * s
            d = -a * np.sin(phase) + b * np.cos(phase)
            gr = gr + m * d
            gs = gs + n * d
        return gr, gs

    @property
    def amplitudes(self) -> np.ndarray:
        return np.hypot(self.a, self.b)

    @property
    def curvature_bound(self) -> float:
        """Bound on |u^T Hess f u| / |u|_inf^2."""
        return float(sum(amp * (abs(m) + abs(n)) ** 2 for (m, n), amp in zip(FREQS, self.amplitudes)))

    @property
    def lipschitz_bound(self) -> float:
        """Bound on |grad f|_1."""
        return float(sum(amp * (abs(m) + abs(n)) for (m, n), amp in zip(FREQS, self.amplitudes)))

    @property
    def lower_bound(self) -> float:
        """Crude global bound: constant minus all oscillating amplitudes."""
        return self.a[0] - float(self.amplitudes[1:].sum())

    @property
    def scale(self) -> float:
        return float(np.abs(self.a).max() + np.abs(self.b).max())

    def is_zero(self, tol: float = 1e-12) -> bool:
        return self.scale <= tol

    def coefficients(self) -> dict[str, float]:
        out = {"1": self.a[0]}
        for (m, n), a, b in list(zip(FREQS, self.a, self.b))[1:]:
            lbl = _LABEL[(m, n)]
            out[f"cos({lbl})"] = a
            out[f"sin({lbl})"] = b
        return out

    def allclose(self, other: "TorusTrigForm", tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.a, other.a, atol=tol, rtol=0) and np.allclose(self.b, other.b, atol=tol, rtol=0))

    def ratio_to(self, other: "TorusTrigForm", tol: float = 1e-9) -> float | None:
        """c with self = c * other, or None."""
        va = np.concatenate([self.a, self.b])
        vb = np.concatenate([other.a, other.b])
        i = int(np.argmax(np.abs(vb)))
        if abs(vb[i]) == 0:
            return None
        c = va[i] / vb[i]
        return float(c) if np.abs(va - c * vb).max() <= tol * max(1.0, abs(c)) else None

    def __str__(self) -> str:
        parts = []
        for key, val in self.coefficients().items():
            if abs(val) < 1e-14:
                continue
            parts.append(f"{val:+.10g}" + ("" if key == "1" else f"*{key}"))
        return " ".join(parts) if parts else "0"

    # restriction to one variable
    def in_s(self, r):
        """(alpha, beta, gamma) with f(r, s) = alpha cos s + beta sin s + gamma."""
        r = np.asarray(r, dtype=float)
        alpha = np.zeros(r.shape)
        beta = np.zeros(r.shape)
        gamma = np.zeros(r.shape)
        for (m, n), a, b in zip(FREQS, self.a, self.b):
            cm, sm = np.cos(m * r), np.sin(m * r)
            if n == 0:
                gamma = gamma + a * cm + b * sm
            else:
                alpha = alpha + a * cm + b * sm
                beta = beta + n * (-a * sm + b * cm)
        return alpha, beta, gamma

    def swapped(self) -> "TorusTrigForm":
        """g(r, s) = f(s, r)."""
        a = list(self.a)
        b = list(self.b)
        a[1], a[2] = a[2], a[1]
        b[1], b[2] = b[2], b[1]
        b[3] = -b[3]  # sin(s - r) = -sin(r - s)
        return TorusTrigForm(tuple(a), tuple(b))

    def in_r(self, s):
        return self.swapped().in_s(s)


def solve_harmonic(alpha: float, beta: float, gamma: float, tol: float = 1e-12) -> list[float]:
    """Roots x in (-pi, pi] of alpha cos x + beta sin x + gamma = 0."""
    R = math.hypot(alpha, beta)
    if R <= tol * max(1.0, abs(gamma)):
        return []
    c = -gamma / R
    if abs(c) > 1:
        if abs(c) - 1 > 1e-12:
            return []
        c = math.copysign(1.0, c)
    phi = math.atan2(beta, alpha)
    theta = math.acos(c)
    roots = {wrap(phi + theta), wrap(phi - theta)}
    out = sorted(roots)
    if len(out) == 2 and abs(out[0] - out[1]) < 1e-12:
        out = out[:1]
    return out


def wrap(x):
    """Map angles into (-pi, pi]."""
    y = np.mod(np.asarray(x, dtype=float) + math.pi, 2 * math.pi) - math.pi
    y = np.where(y <= -math.pi, y + 2 * math.pi, y)
    return float(y) if np.ndim(y) == 0 else y
