import cmath
import math

import mpmath
import numpy as np
import pytest

from fordpu.errors import UsageError
from fordpu.group import ModuliPoint, polar_vectors
from fordpu.hermitian import (HermitianForm, box_cross, box_cross_general, herm_inner,
                              preserves_form, projectively_equal, scalar_equiv, standard_form)


def test_standard_form_shapes():
    assert np.array_equal(standard_form(2), np.fliplr(np.eye(3)))
    H3 = standard_form(3)
    assert H3[0, 3] == H3[3, 0] == 1 and H3[1, 1] == H3[2, 2] == 1
    assert np.linalg.eigvalsh(H3).tolist().count(-1.0) == 1


def test_q_inf_is_null():
    for n in (2, 3):
        q = np.zeros(n + 1)
        q[0] = 1
        assert herm_inner(q, q) == 0


def test_polar_inner_n1_n2():
    n1, n2, _, _ = polar_vectors(ModuliPoint.base())
    assert herm_inner(n1, n2) == pytest.approx(-1)


def test_n4_norm_matches_high_precision_recomputation():
    # independent 50-digit evaluation of the n4 entries at the base point
    mpmath.mp.dps = 50
    h = mpmath.sqrt(2)
    t = mpmath.acos(mpmath.mpf(-7) / 8)
    e = mpmath.exp(-1j * t)
    D = mpmath.sqrt(max(4 * h * h * mpmath.cos(t) + 3 * h * h + 1, 0))
    n4 = [(4 * h * h + e) / (4 * h * h), -e / 2, D / (2 * h), -e / 2]
    H = [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]
    exact = sum(mpmath.conj(n4[i]) * H[i][j] * n4[j] for i in range(4) for j in range(4))
    assert float(mpmath.re(exact)) == pytest.approx(1.0, abs=1e-40)
    _, _, _, ours = polar_vectors(ModuliPoint.base())
    assert herm_inner(ours, ours) == pytest.approx(1.0, abs=1e-12)


def test_dimension_mismatch():
    with pytest.raises(UsageError):
        herm_inner(np.ones(3), np.ones(4))


def test_box_cross_self_is_zero():
    p = np.array([1 + 2j, 0.5, -1j])
    assert np.allclose(box_cross(p, p), 0)


def test_box_cross_wrong_dimension():
    with pytest.raises(UsageError):
        box_cross(np.ones(4), np.ones(4))


def test_box_cross_constant_column(g2):
    # V constant term of the I(C) n I(A^-1 C A) chart
    q = g2.q_inf
    v = box_cross(g2.word("c").apply(q), g2.word("C").apply(q))
    assert np.allclose(v, [-0.25 + 1j * math.sqrt(15) / 8, 0, -0.5], atol=1e-12)


def test_box_cross_general_orthogonal_and_alternating():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    HL = A + A.conj().T
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    y = rng.normal(size=3) + 1j * rng.normal(size=3)
    v = box_cross_general(x, y, HL)
    assert abs(herm_inner(v, x, HL)) < 1e-12 * np.linalg.norm(v) * 10
    assert abs(herm_inner(v, y, HL)) < 1e-12 * np.linalg.norm(v) * 10
    assert np.allclose(box_cross_general(x, x, HL), 0)


def test_hermitian_form_rejects_non_hermitian():
    with pytest.raises(UsageError):
        HermitianForm(np.array([[0, 1], [2, 0]]))


def test_scalar_equiv_examples(g2):
    M = g2.A.matrix
    assert scalar_equiv(g2.word("ACAC").matrix, np.eye(3))
    assert scalar_equiv(M, cmath.exp(0.7j) * M)
    assert not scalar_equiv(M, np.eye(3))


def test_projective_equality():
    x = np.array([1, 2j, 3])
    assert projectively_equal(x, -2.5j * x)
    assert not projectively_equal(x, np.array([1, 2j, 3.1]))


def test_group_element_composition(g2):
    AC = g2.A @ g2.C
    assert AC.word == "AC"
    assert np.allclose(AC.matrix, g2.A.matrix @ g2.C.matrix)
    assert scalar_equiv((g2.C.inverse() @ g2.C).matrix, np.eye(3))
    assert preserves_form(g2.C.power(-2).matrix)
