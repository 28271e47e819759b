"""Linear algebra over C^{n,1}: the Hermitian form, cross products, group elements."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .errors import UsageError
from .words import invert_word, join_words


def as_cvector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if arr.size not in (3, 4):
        raise UsageError(f"vectors must have length 3 or 4, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise UsageError("vector has non-finite entries")
    return arr


def standard_form(n: int) -> np.ndarray:
    """Anti-diagonal form of signature (n, 1) on C^{n+1}."""
    H = np.zeros((n + 1, n + 1), dtype=complex)
    H[0, n] = H[n, 0] = 1.0
    H[1:n, 1:n] = np.eye(n - 1)
    return H


@dataclass(frozen=True)
class HermitianForm:
    matrix: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise UsageError("form must be a square matrix")
        scale = max(1.0, float(np.abs(M).max()))
        if np.abs(M - M.conj().T).max() > DEFAULT.identity * scale:
            raise UsageError("form is not Hermitian")
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)

    @classmethod
    def standard(cls, n: int) -> "HermitianForm":
        return cls(standard_form(n))

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def inner(self, z, w) -> complex:
        return herm_inner(z, w, self)


def _form_matrix(H) -> np.ndarray:
    if H is None:
        return None
    return H.matrix if isinstance(H, HermitianForm) else np.asarray(H, dtype=complex)


def herm_inner(z, w, H=None) -> complex:
    """<z, w> = w* H z.  Defaults to the standard form of matching size."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape != w.shape:
        raise UsageError(f"dimension mismatch {z.shape} vs {w.shape}")
    M = _form_matrix(H)
    if M is None:
        M = standard_form(z.shape[-1] - 1)
    if M.shape[0] != z.shape[-1]:
        raise UsageError("form size does not match vectors")
    return complex(np.conj(w) @ M @ z)


def box_cross(p, q) -> np.ndarray:
    """Hermitian cross product for the standard 3x3 form.

    Returns H (conj p x conj q), which is H-orthogonal to both arguments.
    """
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    if p.shape != (3,) or q.shape != (3,):
        raise UsageError("box_cross needs two length-3 vectors")
    return standard_form(2) @ np.cross(np.conj(p), np.conj(q))


def box_cross_general(x, y, H_L) -> np.ndarray:
    """Cross product orthogonal to x and y for an arbitrary 3x3 form H_L."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    M = _form_matrix(H_L)
    if x.shape != (3,) or y.shape != (3,) or M.shape != (3, 3):
        raise UsageError("box_cross_general needs length-3 vectors and a 3x3 form")
    return np.cross(np.conj(x) @ M, np.conj(y) @ M)


@dataclass(frozen=True)
class GroupElement:
    """A matrix together with the word that produced it."""

    matrix: np.ndarray
    word: str = field(default="")

    def __post_init__(self):
        M = np.array(self.matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (3, 4):
            raise UsageError("group elements are 3x3 or 4x4 matrices")
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, join_words(self.word, other.word))

    def inverse(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.matrix), invert_word(self.word))

    def apply(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=complex)

    def power(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = GroupElement(np.eye(self.size), "")
        for _ in range(abs(k)):
            out = out @ base
        return out


def identity(n: int) -> GroupElement:
    return GroupElement(np.eye(n + 1), "")


def _matrix(M) -> np.ndarray:
    return M.matrix if isinstance(M, GroupElement) else np.asarray(M, dtype=complex)


def scalar_equiv(M, N, tol: float = DEFAULT.identity) -> bool:
    """True iff M = lambda N with |lambda| = 1, up to tol after normalisation."""
    A, B = _matrix(M), _matrix(N)
    if A.shape != B.shape:
        raise UsageError("scalar_equiv needs matrices of equal size")
    idx = np.unravel_index(np.argmax(np.abs(A)), A.shape)
    a, b = A[idx], B[idx]
    if abs(a) == 0 or abs(b) <= tol * abs(a):
        return False
    if abs(abs(a) - abs(b)) > tol * abs(a):
        return False
    return bool(np.abs(A / a - B / b).max() < tol)


def form_defect(M, H=None) -> float:
    """max |M* H M - H|."""
    A = _matrix(M)
    F = _form_matrix(H)
    if F is None:
        F = standard_form(A.shape[0] - 1)
    return float(np.abs(A.conj().T @ F @ A - F).max())


def preserves_form(M, H=None, tol: float = DEFAULT.identity) -> bool:
    return form_defect(M, H) < tol


def projectively_equal(x, y, tol: float = DEFAULT.identity) -> bool:
    """Same point of CP^n: x and y are proportional."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    i = int(np.argmax(np.abs(x)))
    if abs(x[i]) == 0 or abs(y[i]) == 0:
        return False
    return bool(np.abs(x / x[i] - y / y[i]).max() < tol)
