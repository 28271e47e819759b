"""Moduli points, the Gram matrix, polar vectors, generators and word evaluation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT
from .errors import InvalidInputError, InvalidModuliError, UsageError
from .hermitian import GroupElement, herm_inner, standard_form
from .words import parse_word


def d_squared(h: float, t: float) -> float:
    return 4 * h * h * math.cos(t) + 3 * h * h + 1


def t_upper(h: float) -> float:
    """Largest t in the moduli region at height h (pi when the bound is vacuous)."""
    c = -(3 * h * h + 1) / (4 * h * h)
    return math.pi if c <= -1 else math.acos(c)


@dataclass(frozen=True)
class ModuliPoint:
    h: float
    t: float
    tol: float = DEFAULT.moduli

    @classmethod
    def degenerate(cls, h: float) -> "ModuliPoint":
        """Point on the curve where the group preserves a complex 2-plane (needs h >= 1)."""
        if h < 1:
            raise InvalidModuliError(f"no degenerate slice for h = {h} < 1")
        return cls(h, t_upper(h))

    @classmethod
    def base(cls) -> "ModuliPoint":
        return cls(math.sqrt(2), math.acos(-7 / 8))

    @property
    def in_moduli(self) -> bool:
        if not (self.h >= 0.5 - self.tol and -self.tol <= self.t <= math.pi + self.tol):
            return False
        return d_squared(self.h, self.t) >= -self.tol * (1 + 7 * self.h * self.h)

    @property
    def is_real_slice(self) -> bool:
        return abs(self.t) <= self.tol

    @property
    def is_2d_slice(self) -> bool:
        return self.h >= 1 - self.tol and abs(d_squared(self.h, self.t)) <= self.tol * (1 + 7 * self.h * self.h)

    @property
    def below_one(self) -> bool:
        """h < 1: the regime where planes 2,3 and 3,4 meet at angle pi/m."""
        return self.h < 1

    @property
    def D(self) -> float:
        d2 = d_squared(self.h, self.t)
        if d2 < 0 and not self.in_moduli:
            raise InvalidModuliError(
                f"(h, t) = ({self.h}, {self.t}) is outside the moduli region (Gram signature (2,2))")
        if self.is_2d_slice:
            return 0.0
        return math.sqrt(max(d2, 0.0))

    def require(self) -> "ModuliPoint":
        if not self.in_moduli:
            raise InvalidModuliError(
                f"(h, t) = ({self.h}, {self.t}) is outside the moduli region (Gram signature (2,2))")
        return self

    def flags(self) -> dict:
        return {"in_moduli": self.in_moduli, "is_real_slice": self.is_real_slice,
                "is_2d_slice": self.is_2d_slice, "h_below_one": self.below_one}


def gram_matrix(p: ModuliPoint) -> np.ndarray:
    h, t = p.h, p.t
    e = np.exp(1j * t)
    return np.array([
        [1, -1, 0, -e / 2],
        [-1, 1, -h, 0],
        [0, -h, 1, -h],
        [-np.conj(e) / 2, 0, -h, 1],
    ], dtype=complex)


def polar_vectors(p: ModuliPoint) -> tuple[np.ndarray, ...]:
    p.require()
    h, t, D = p.h, p.t, p.D
    e = np.exp(-1j * t)
    n1 = np.array([0, 1, 0, 0], dtype=complex)
    n2 = np.array([1, -1, 0, 0], dtype=complex)
    n3 = np.array([-1 / (2 * h), 0, 0, -h], dtype=complex)
    n4 = np.array([(4 * h * h + e) / (4 * h * h), -e / 2, D / (2 * h), -e / 2], dtype=complex)
    return n1, n2, n3, n4


def complex_reflection(n, theta: float, H=None, word: str = "") -> GroupElement:
    """z -> -z + (1 - e^{i theta}) <z,n>/<n,n> n, as a matrix."""
    n = np.asarray(n, dtype=complex)
    M = standard_form(n.size - 1) if H is None else np.asarray(H, dtype=complex)
    nn = herm_inner(n, n, M).real
    if nn <= DEFAULT.identity:
        raise InvalidInputError("reflection needs a positive polar vector")
    R = -np.eye(n.size) + (1 - np.exp(1j * theta)) * np.outer(n, np.conj(n) @ M) / nn
    return GroupElement(R, word)


def _drop_third(M: np.ndarray) -> np.ndarray:
    return np.delete(np.delete(M, 2, axis=0), 2, axis=1)


@dataclass(frozen=True)
class GeneratorSet:
    point: ModuliPoint
    dim: int
    I1: GroupElement
    I2: GroupElement
    I3: GroupElement
    I4: GroupElement
    A: GroupElement
    B: GroupElement
    C: GroupElement
    polars: tuple
    D: float

    @property
    def n(self) -> int:
        return self.I1.size - 1

    @cached_property
    def _inverses(self) -> dict:
        return {k: np.linalg.inv(getattr(self, k).matrix) for k in "ABC"}

    def letter(self, name: str) -> np.ndarray:
        if name in ("I1", "I2", "I3", "I4", "A", "B", "C"):
            return getattr(self, name).matrix
        if name in ("a", "b", "c"):
            return self._inverses[name.upper()]
        raise UsageError(f"unknown letter {name!r}")

    def word(self, word: str) -> GroupElement:
        return eval_word(word, self)

    @property
    def q_inf(self) -> np.ndarray:
        v = np.zeros(self.n + 1, dtype=complex)
        v[0] = 1
        return v


def generators(p: ModuliPoint, dim: int = 3) -> GeneratorSet:
    """The reflections I1..I4 and A = I1 I2, B = I3 I1, C = I4 I1.

    dim = 3 gives 4x4 matrices; dim = 2 (only on the degenerate curve) deletes
    the third row and column.
    """
    if dim not in (2, 3):
        raise UsageError("dim must be 2 or 3")
    p.require()
    if dim == 2 and not p.is_2d_slice:
        raise InvalidModuliError("dim = 2 needs a point on the degenerate curve")
    ns = polar_vectors(p)
    refl = [complex_reflection(n, math.pi).matrix for n in ns]
    if dim == 2:
        refl = [_drop_third(M) for M in refl]
        ns = tuple(np.delete(n, 2) for n in ns)
    I1, I2, I3, I4 = (GroupElement(M, f"I{i + 1}") for i, M in enumerate(refl))
    return GeneratorSet(
        point=p, dim=dim, I1=I1, I2=I2, I3=I3, I4=I4,
        A=GroupElement(I1.matrix @ I2.matrix, "A"),
        B=GroupElement(I3.matrix @ I1.matrix, "B"),
        C=GroupElement(I4.matrix @ I1.matrix, "C"),
        polars=ns, D=p.D,
    )


def eval_word(word: str, gens: GeneratorSet) -> GroupElement:
    M = np.eye(gens.n + 1, dtype=complex)
    for letter, power in parse_word(word):
        base = gens.letter(letter)
        if power < 0:
            # the I_i are involutions, so only A, B, C need inverting
            if not letter.startswith("I"):
                base = gens.letter(letter.swapcase())
            power = -power
        for _ in range(power):
            M = M @ base
    return GroupElement(M, word)
