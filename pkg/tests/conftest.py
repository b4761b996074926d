import random
from fractions import Fraction

import pytest

from bieberbach.affine import AffineElement, GroupSpec
from bieberbach.catalog import bundled_catalog_dir, bundled_fixture, parse_group


def load_fixture(name: str) -> GroupSpec:
    return parse_group(bundled_fixture(name).read_text())


@pytest.fixture
def hw_spec():
    return load_fixture("hw_standard")


@pytest.fixture
def example_spec():
    return load_fixture("example_05010606")


@pytest.fixture
def min88_spec():
    return load_fixture("min88")


@pytest.fixture
def klein_spec():
    return load_fixture("klein_bottle")


@pytest.fixture
def bundled_catalog_path():
    return bundled_catalog_dir()


def bundled_specs():
    """All valid bundled groups (catalog and standalone fixtures), for property suites."""
    specs = []
    for name in ("z1", "z2", "z3", "klein_bottle", "hw_standard",
                 "example_05010606", "min88"):
        specs.append(load_fixture(name))
    return specs


def random_unimodular(rng: random.Random, n: int):
    """Product of random elementary and signed-permutation matrices."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n + 2):
        op = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if op == 0 and i != j:
            c = rng.randint(-2, 2)
            for t in range(n):
                m[i][t] += c * m[j][t]
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-e for e in m[i]]
    return tuple(tuple(row) for row in m)


def random_affine(rng: random.Random, n: int) -> AffineElement:
    lin = random_unimodular(rng, n)
    tr = tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 4))) for _ in range(n))
    return AffineElement(lin, tr)
