import math

import numpy as np
import pytest

from fordpu.group import ModuliPoint, generators

S15 = math.sqrt(15)


@pytest.fixture(scope="session")
def base_point():
    return ModuliPoint.base()


@pytest.fixture(scope="session")
def g2(base_point):
    return generators(base_point, 2)


@pytest.fixture(scope="session")
def g3(base_point):
    return generators(base_point, 3)


def moduli_samples(n: int, seed: int = 0, h_max: float = 3.0):
    """Deterministic sample of points inside the moduli region."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        h = rng.uniform(0.5, h_max)
        t = rng.uniform(0, math.pi)
        p = ModuliPoint(h, t)
        if p.in_moduli and 4 * h * h * math.cos(t) + 3 * h * h + 1 > 1e-6:
            out.append(p)
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
