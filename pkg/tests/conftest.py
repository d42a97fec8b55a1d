import json
import random
from pathlib import Path

import pytest

from cyquiver import CoordinateSpace, CyclicSeries, build_W_can, double_quiver
from cyquiver.quiver import quiver_from_dict
from cyquiver.words import canonical_words

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_fixture(name):
    with open(FIXTURES_DIR / f"{name}.json", "r") as f:
        return json.load(f)


def load_quiver(name):
    return quiver_from_dict(load_fixture(name))


def load_space(name, with_unit=True):
    return CoordinateSpace.from_quiver(double_quiver(load_quiver(name)), with_unit=with_unit)


def random_potential(rng, space, lengths, letters=None, degree=None, terms=4):
    """
    Random combination of canonical cyclic words with small integer coefficients.

    Only words of function degree `degree` (3-d by default) over `letters`
    (all letters by default) are drawn.
    """
    degree = 3 - space.d if degree is None else degree
    pool = [
        w
        for k in lengths
        for w in canonical_words(space, k, letters)
        if sum(space.degree[n] for n in w) == degree
    ]
    if not pool:
        return CyclicSeries.zero(space)
    picked = rng.sample(pool, min(terms, len(pool)))
    return CyclicSeries.from_words(
        space, [(w, rng.choice([-3, -2, -1, 1, 2, 3])) for w in picked]
    )


def admissible_letters(space):
    """x coordinates and the xi coordinates that may appear in W_0."""
    return space.of_kind("x", "xi") - space.ideal_generators()


@pytest.fixture
def one_loop():
    """d=3, one degree-0 loop x at the vertex 1 and its dual xi:x of degree -1."""
    return load_space("one_loop_d3")


@pytest.fixture
def xy_space():
    """d=4, loops x (degree 0) and y (middle degree -1) with their duals."""
    return load_space("xy_d4")


@pytest.fixture
def two_vertex():
    return load_space("two_vertex_d3")


@pytest.fixture
def w_can_x3(one_loop):
    """W_can + x³ on the d=3 one-loop quiver."""
    return build_W_can(one_loop) + CyclicSeries.from_names(one_loop, [(["x", "x", "x"], 1)])


@pytest.fixture
def failing_d4(xy_space):
    """W_can + x·x·y + x·x·y*: {W, W} is a nonzero multiple of x⁴."""
    w0 = CyclicSeries.from_names(
        xy_space, [(["x", "x", "y"], 1), (["x", "x", "xi:y"], 1)]
    )
    return build_W_can(xy_space) + w0


@pytest.fixture
def rng():
    return random.Random(20240517)
