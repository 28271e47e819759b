import math

import numpy as np
import pytest

from fordpu.errors import FixesInfinityError, InvalidInputError
from fordpu.hermitian import herm_inner
from fordpu.heisenberg import (CyganSphere, HeisenbergPoint, a_action, cygan_distance, heisenberg_product,
                               isometric_sphere, lift, membership_value, project, sphere_membership,
                               sphere_relation)
from fordpu.words import a_conjugate

S15 = math.sqrt(15)
S53 = math.sqrt(5 / 3)


def P(x, y, t, u=0.0):
    return HeisenbergPoint((complex(x, y),), t, u)


def test_lift_examples():
    assert np.array_equal(lift(HeisenbergPoint.infinity(), 2), [1, 0, 0])
    assert np.allclose(lift(P(0, 0, 0)), [0, 0, 1])
    rng = np.random.default_rng(1)
    for _ in range(20):
        x, y, t, u = rng.normal(size=4)
        u = abs(u)
        v = lift(P(x, y, t, u))
        # direct expansion: 2 Re(v0 conj v2) + |v1|^2 = -(|z|^2 + u) + |z|^2
        assert herm_inner(v, v).real == pytest.approx(-u, abs=1e-12)
        back = project(v)
        assert back.xyt == pytest.approx((x, y, t)) and back.u == pytest.approx(u)


def test_point_validation():
    with pytest.raises(InvalidInputError):
        P(0, 0, 0, -1)
    with pytest.raises(InvalidInputError):
        cygan_distance(HeisenbergPoint.infinity(), P(0, 0, 0))


def test_cygan_basic():
    p = P(0.3, -1.2, 0.7)
    assert cygan_distance(p, p) == 0
    q = P(-2, 0.5, 1.1)
    assert cygan_distance(p, q) == pytest.approx(cygan_distance(q, p))
    # left invariance under the Heisenberg product
    g = P(1.5, 0.2, -3.0)
    assert cygan_distance(heisenberg_product(g, p), heisenberg_product(g, q)) == pytest.approx(cygan_distance(p, q))


@pytest.mark.parametrize("k", range(-5, 6))
def test_sphere_tables(g2, k):
    s = isometric_sphere(g2.word(a_conjugate("C", k)))
    assert s.center.xyt == pytest.approx((-2 * k - 1, 0, -S15 / 2), abs=1e-9)
    assert s.radius == pytest.approx(2)
    s = isometric_sphere(g2.word(a_conjugate("cBC", k)))
    assert s.center.xyt == pytest.approx((-2 * k, S53, (-7 + 8 * k) / 2 * S53), abs=1e-9)
    assert s.radius == pytest.approx(2 / math.sqrt(3))
    s = isometric_sphere(g2.word(a_conjugate("CBc", k)))
    assert s.center.xyt == pytest.approx((-2 * k, -S53, (-7 - 8 * k) / 2 * S53), abs=1e-9)
    s = isometric_sphere(g2.word(a_conjugate("CBC", k)))
    assert s.center.xyt == pytest.approx((-(1 + 4 * k) / 2, S15 / 2, (4 * k - 3) / 2 * S15), abs=1e-9)
    assert s.radius == pytest.approx(math.sqrt(2))
    s = isometric_sphere(g2.word(a_conjugate("cBc", k)))
    assert s.center.xyt == pytest.approx(((1 - 4 * k) / 2, -S15 / 2, (-4 * k - 3) / 2 * S15), abs=1e-9)


def test_distance_examples(g2):
    c = isometric_sphere(g2.word("C")).center
    for k in range(-5, 6):
        assert cygan_distance(c, isometric_sphere(g2.word(a_conjugate("C", k))).center) == pytest.approx(abs(2 * k), abs=1e-9)
    cbc = isometric_sphere(g2.word("cBc")).center
    for k in range(-5, 6):
        d = cygan_distance(cbc, isometric_sphere(g2.word(a_conjugate("CBC", k))).center)
        assert d == pytest.approx((4 * k * k + 4 * k + 16) ** 0.5, abs=1e-9)


def test_fixes_infinity(g2):
    with pytest.raises(FixesInfinityError):
        isometric_sphere(g2.A)


def test_a_action():
    assert a_action(P(0, 0, 0), 1).xyt == (-2, 0, 0)
    p = P(0.4, 1.3, -0.2)
    assert a_action(a_action(p, 1), -1).xyt == pytest.approx(p.xyt)
    assert a_action(p, 3).xyt == pytest.approx(a_action(a_action(a_action(p, 1), 1), 1).xyt)


def test_a_action_moves_centres(g2):
    c = isometric_sphere(g2.word("C")).center
    assert a_action(c, 1).xyt == pytest.approx((-3, 0, -S15 / 2))
    assert a_action(c, 1).xyt == pytest.approx(isometric_sphere(g2.word("ACa")).center.xyt)


def test_sphere_relation_examples(g2):
    sC = isometric_sphere(g2.word("C"))
    assert sphere_relation(sC, isometric_sphere(g2.word(a_conjugate("C", 3))))[0] == "disjoint"
    assert sphere_relation(sC, isometric_sphere(g2.word(a_conjugate("C", 2))))[0] == "tangent"
    rel, gap = sphere_relation(isometric_sphere(g2.word("cBc")), isometric_sphere(g2.word("CBc")))
    assert rel == "overlapping"
    d = gap + math.sqrt(2) + 2 / math.sqrt(3)
    assert d == pytest.approx(0.8164965807, abs=1e-9)


def test_tangent_point_membership(g2):
    P0 = P(-3, 0, -S15 / 2)
    assert sphere_membership(P0, isometric_sphere(g2.word("C"))) == "on"
    assert sphere_membership(P0, isometric_sphere(g2.word("AACaa"))) == "on"
    assert sphere_membership(P0, isometric_sphere(g2.word("ACa"))) == "interior"
    s = isometric_sphere(g2.word("C"))
    assert sphere_membership(HeisenbergPoint.infinity(), s) == "exterior"
    assert sphere_membership(s.center, s) == "interior"


def test_membership_value_sign(g2):
    s = isometric_sphere(g2.word("C"))
    assert membership_value(lift(s.center), g2.word("C")) > 0
    assert membership_value(lift(P(20, 0, 0)), g2.word("C")) < 0


def test_sphere_record_validation():
    with pytest.raises(InvalidInputError):
        CyganSphere(P(0, 0, 0), 0.0)
    with pytest.raises(InvalidInputError):
        CyganSphere(P(0, 0, 0, 1.0), 1.0)
