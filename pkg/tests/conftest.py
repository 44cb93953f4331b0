import random
from fractions import Fraction
from pathlib import Path

import pytest

from walland import StabPoint, SurfaceLattice

SURFACE_DIR = Path(__file__).resolve().parent.parent / "surfaces"


@pytest.fixture(scope="session")
def p2():
    return SurfaceLattice.load(str(SURFACE_DIR / "p2.json"))


@pytest.fixture(scope="session")
def quartic():
    return SurfaceLattice.load(str(SURFACE_DIR / "k3_quartic.json"))


@pytest.fixture(scope="session")
def product_surface():
    return SurfaceLattice.load(str(SURFACE_DIR / "p1xp1_twisted.json"))


def rand_frac(rng: random.Random, num_bound: int = 12, den_bound: int = 8) -> Fraction:
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))


def rand_stab(rng: random.Random, num_bound: int = 8, den_bound: int = 6) -> StabPoint:
    # q must sit strictly above the parabola
    s = rand_frac(rng, num_bound, den_bound)
    lift = Fraction(rng.randint(1, 4 * den_bound), rng.randint(1, den_bound))
    return StabPoint.make(s, s * s / 2 + lift)
