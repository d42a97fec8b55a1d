from fractions import Fraction

import pytest

from cyquiver import (
    Arrow,
    CoordinateSpace,
    CyclicSeries,
    GradedQuiver,
    IncompatibleSpaceError,
    PathSeries,
    WordError,
    build_W_can,
    canonical_cyclic,
    double_quiver,
    grading,
    is_minimal,
    restrict,
)
from cyquiver.words import (
    canonical_words,
    concatenation_precision,
    enumerate_closed_words,
    rotation_signs,
)


@pytest.fixture
def two_loops():
    """d=3, two degree-0 loops x < y at one vertex."""
    quiver = GradedQuiver(("1",), (Arrow("x", "1", "1", 0), Arrow("y", "1", "1", 0)), 3)
    return CoordinateSpace.from_quiver(double_quiver(quiver))


def letters(space, *names):
    return tuple(space.letter(n) for n in names)


def test_coordinate_degrees(one_loop, xy_space):
    for space in (one_loop, xy_space):
        for n, c in enumerate(space.coordinates):
            if c.kind == "alpha":
                assert (c.degree, c.source) == (1, c.target)
            if c.kind == "beta":
                assert (c.degree, c.source) == (1 - space.d, c.target)
            if c.kind == "x":
                assert c.degree + space.degree[space.partner[n]] == 2 - space.d
            assert space.partner[space.partner[n]] == n


def test_global_order(one_loop):
    assert one_loop.names(range(len(one_loop))) == ["alpha_1", "x", "xi:x", "beta_1"]


def test_space_equality_by_content(one_loop):
    from .conftest import load_space

    assert load_space("one_loop_d3") == one_loop
    assert hash(load_space("one_loop_d3")) == hash(one_loop)
    assert load_space("one_loop_d3", with_unit=False) != one_loop


def test_canonical_degree_zero_rotation(two_loops):
    word, sign = canonical_cyclic(two_loops, two_loops.word(["y", "x"]))
    assert word.letters == letters(two_loops, "x", "y")
    assert sign == 1
    assert not word.zero


def test_canonical_symmetry_killed(one_loop):
    word, _ = canonical_cyclic(one_loop, letters(one_loop, "xi:x", "xi:x"))
    assert word.zero


def test_canonical_alpha_alpha_beta(one_loop):
    word, sign = canonical_cyclic(one_loop, letters(one_loop, "beta_1", "alpha_1", "alpha_1"))
    assert not word.zero
    assert word.letters == letters(one_loop, "alpha_1", "alpha_1", "beta_1")
    # moving beta (degree -2) past alpha^2 (degree 2) costs no sign
    assert sign == 1
    again, again_sign = canonical_cyclic(one_loop, word.letters)
    assert again == word and again_sign == 1


def test_canonical_odd_rotation_sign(one_loop):
    # xi:x * alpha_1 = (-1)^{(-1)(1)} alpha_1 * xi:x
    word, sign = canonical_cyclic(one_loop, letters(one_loop, "xi:x", "alpha_1"))
    assert word.letters == letters(one_loop, "alpha_1", "xi:x")
    assert sign == -1


def test_canonical_rejects_open_words(two_vertex):
    with pytest.raises(WordError):
        canonical_cyclic(two_vertex, letters(two_vertex, "a"))
    with pytest.raises(WordError):
        two_vertex.word(["a", "a"])
    with pytest.raises(WordError):
        canonical_cyclic(two_vertex, ())


def _words(space, max_length):
    for k in range(1, max_length + 1):
        yield from enumerate_closed_words(space, k)


def test_rotation_signs_compose(one_loop):
    for word in _words(one_loop, 5):
        signs = {k: (rotated, sign) for k, rotated, sign in rotation_signs(one_loop, word)}
        n = len(word)
        for k, (rotated, sign) in signs.items():
            for l, twice, step in rotation_signs(one_loop, rotated):
                target, target_sign = signs[(k + l) % n]
                assert twice == target
                assert target_sign == sign * step


def test_zero_detection_matches_symmetrization(one_loop):
    for word in _words(one_loop, 5):
        total = {}
        for _, rotated, sign in rotation_signs(one_loop, word):
            total[rotated] = total.get(rotated, 0) + sign
        vanishes = not any(total.values())
        canonical, _ = canonical_cyclic(one_loop, word)
        assert canonical.zero == vanishes, one_loop.names(word)


@pytest.mark.parametrize(
    "names, expected",
    [
        (["alpha_1", "alpha_1", "beta_1"], (0, 3, 1)),
        (["x", "x", "x"], (0, 3, 1)),
        (["xi:x"], (-1, 1, 0)),
    ],
)
def test_grading(one_loop, names, expected):
    g = grading(one_loop, letters(one_loop, *names))
    assert (g.func_degree, g.cyc_degree, g.coh_degree) == expected


def test_is_minimal(two_loops):
    assert is_minimal(CyclicSeries.from_names(two_loops, [(["x", "x", "x"], 1)]))
    assert not is_minimal(CyclicSeries.from_names(two_loops, [(["x", "y"], 1)]))
    assert is_minimal(CyclicSeries.zero(two_loops))


def test_restrict(one_loop, w_can_x3):
    x3 = CyclicSeries.from_names(one_loop, [(["x", "x", "x"], 1)])
    assert restrict(w_can_x3, one_loop.ideal_generators()) == x3
    assert restrict(w_can_x3, []) == w_can_x3
    assert not restrict(x3, ["x"])
    truncated = w_can_x3.truncate(5)
    assert restrict(truncated, ["x"]).precision == 5


def test_ideal_generators(one_loop, xy_space):
    assert sorted(one_loop.names(one_loop.ideal_generators())) == ["alpha_1", "beta_1", "xi:x"]
    assert sorted(xy_space.names(xy_space.ideal_generators())) == ["alpha_1", "beta_1", "xi:x"]


def test_series_arithmetic(one_loop):
    x3 = CyclicSeries.from_names(one_loop, [(["x", "x", "x"], 1)])
    w = build_W_can(one_loop)
    assert x3 + w == w + x3
    assert (x3 + w) - w == x3
    assert (x3 + w).scale(Fraction(1, 2)) == x3.scale(Fraction(1, 2)) + w.scale(Fraction(1, 2))
    assert not (x3 - x3)
    assert (x3.truncate(4) + w.truncate(6)).precision == 4
    assert (x3 + w).precision is None
    assert 2 * x3 == x3 + x3


def test_series_drops_terms_beyond_precision(one_loop):
    x4 = CyclicSeries.from_names(one_loop, [(["x", "x", "x", "x"], 1), (["x", "x", "x"], 2)])
    truncated = x4.truncate(3)
    assert len(truncated) == 1
    assert truncated.coefficient(["x", "x", "x"]) == 2


def test_coefficient_reads_through_rotation(one_loop):
    w = build_W_can(one_loop)
    assert w.coefficient(["alpha_1", "x", "xi:x"]) == 1
    assert w.coefficient(["x", "xi:x", "alpha_1"]) == -1
    assert w.coefficient(["alpha_1", "xi:x", "x"]) == -1
    assert w.coefficient(["xi:x", "x", "alpha_1"]) == 1


def test_homogeneity(one_loop, w_can_x3):
    assert w_can_x3.is_homogeneous(0)
    mixed = w_can_x3 + CyclicSeries.from_names(one_loop, [(["xi:x", "x", "x"], 1)])
    assert not mixed.is_homogeneous()
    assert mixed.function_degrees() == {0, -1}


def test_incompatible_spaces(one_loop, xy_space):
    with pytest.raises(IncompatibleSpaceError):
        build_W_can(one_loop) + build_W_can(xy_space)


def test_path_series(two_vertex):
    a = PathSeries.letter(two_vertex, "a")
    b = PathSeries.letter(two_vertex, "b")
    ab = a * b
    assert (ab.source, ab.target) == ("1", "1")
    assert list(ab.terms) == [letters(two_vertex, "a", "b")]
    assert ab.close() == CyclicSeries.from_names(two_vertex, [(["b", "a"], 1)])
    with pytest.raises(WordError):
        a * a
    with pytest.raises(WordError):
        a.close()
    with pytest.raises(WordError):
        PathSeries(two_vertex, "1", "1", {letters(two_vertex, "a"): 1})


def test_concatenation_precision(two_vertex):
    a = PathSeries.letter(two_vertex, "a").truncate(4)
    b = PathSeries.letter(two_vertex, "b").truncate(6)
    assert concatenation_precision(a, b) == 5
    assert (a * b).precision == 5


def test_enumerate_closed_words(two_vertex):
    ab = letters(two_vertex, "a", "b")
    allowed = two_vertex.letters(["a", "b"])
    assert sorted(enumerate_closed_words(two_vertex, 2, allowed)) == sorted(
        [ab, letters(two_vertex, "b", "a")]
    )
    assert canonical_words(two_vertex, 2, allowed) == [ab]
    assert canonical_words(two_vertex, 3, allowed) == []
