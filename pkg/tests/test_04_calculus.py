from fractions import Fraction

import pytest

from cyquiver import (
    Arrow,
    CoordinateSpace,
    CyclicSeries,
    DegreeError,
    GradedQuiver,
    InadmissiblePotentialError,
    InadmissibleTransformError,
    IncompatibleSpaceError,
    build_W_can,
    check_master,
    cyclic_derivative,
    cyclic_identity_residual,
    double_quiver,
    hamiltonian_flow,
    lift_potential,
    maurer_cartan_check,
    necklace_bracket,
    parse_path,
    parse_potential,
    print_path,
    print_potential,
    right_cyclic_derivative,
)
from cyquiver.calculus import admissibility_violations
from cyquiver.quiver import degree_range

from .conftest import admissible_letters, load_space, random_potential


def loops_space(d):
    """One vertex with a loop of every degree allowed in a half quiver."""
    arrows = tuple(Arrow(f"x{-r}", "1", "1", r) for r in degree_range(d))
    return CoordinateSpace.from_quiver(double_quiver(GradedQuiver(("1",), arrows, d)))


def series(space, text):
    return parse_potential(text, space)


def coh(space, p):
    (degree,) = p.function_degrees()
    return degree + space.d - 2


def test_derivative_alpha_even_d(xy_space):
    w = series(xy_space, "alpha_1*alpha_1*beta_1")
    expected = parse_path("alpha_1*beta_1 + beta_1*alpha_1", xy_space)
    assert cyclic_derivative(w, "alpha_1") == expected


def test_derivative_alpha_odd_d(one_loop):
    w = series(one_loop, "alpha_1*alpha_1*beta_1")
    expected = parse_path("alpha_1*beta_1 - beta_1*alpha_1", one_loop)
    assert cyclic_derivative(w, "alpha_1") == expected


def test_derivative_of_w_can_even_d(xy_space):
    w = build_W_can(xy_space)
    expected = parse_path("xi:x*alpha_1 - alpha_1*xi:x", xy_space)
    assert cyclic_derivative(w, "x") == expected


def test_derivative_of_w_can_in_alpha():
    space = CoordinateSpace.from_quiver(
        double_quiver(GradedQuiver(("1",), (Arrow("x", "1", "1", 0),), 4))
    )
    d_alpha = cyclic_derivative(build_W_can(space), "alpha_1")
    assert print_path(d_alpha) == "alpha_1*beta_1 + x*xi:x - xi:x*x + beta_1*alpha_1"


def test_derivative_of_w_can_in_alpha_odd_pair(xy_space):
    # y and xi:y both have odd degree, so the alpha*xi:y*y term enters with a plus sign
    d_alpha = cyclic_derivative(build_W_can(xy_space), "alpha_1")
    assert print_path(d_alpha) == (
        "alpha_1*beta_1 + y*xi:y + x*xi:x - xi:x*x + xi:y*y + beta_1*alpha_1"
    )


def test_derivative_of_cube(one_loop, two_vertex):
    x3 = series(one_loop, "x*x*x")
    assert cyclic_derivative(x3, "x") == parse_path("3*x*x", one_loop)
    assert right_cyclic_derivative(x3, "x") == parse_path("3*x*x", one_loop)
    zero = cyclic_derivative(x3, "xi:x")
    assert not zero and (zero.source, zero.target) == ("1", "1")
    d_a = cyclic_derivative(build_W_can(two_vertex), "a")
    assert (d_a.source, d_a.target) == ("2", "1")


def test_bracket_with_dual_letter(one_loop):
    bracket = necklace_bracket(series(one_loop, "x*x*x"), series(one_loop, "xi:x"))
    assert bracket == series(one_loop, "3*x*x")


@pytest.mark.parametrize("name", ["one_loop_d3", "xy_d4", "two_vertex_d3", "empty_d3"])
def test_w_can_master(name):
    space = load_space(name)
    w = build_W_can(space)
    assert w.is_homogeneous(3 - space.d)
    assert {len(word) for word in w.terms} == {3}
    assert not necklace_bracket(w, w)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_w_can_master_all_d(d):
    w = build_W_can(loops_space(d))
    assert check_master(w).passed


def test_w_can_shapes(one_loop, two_vertex):
    assert print_potential(build_W_can(one_loop)) == (
        "alpha_1*alpha_1*beta_1 + alpha_1*x*xi:x - alpha_1*xi:x*x"
    )
    assert print_potential(build_W_can(load_space("empty_d3"))) == "alpha_1*alpha_1*beta_1"
    w = build_W_can(two_vertex)
    assert w.coefficient(["alpha_1", "a", "xi:a"]) == 1
    assert w.coefficient(["alpha_2", "xi:a", "a"]) == -1
    assert w.coefficient(["alpha_2", "alpha_2", "beta_2"]) == 1


def test_alpha_squared_beta(one_loop):
    f = series(one_loop, "alpha_1*alpha_1*beta_1")
    assert not necklace_bracket(f, f)


def test_bracket_incompatible(one_loop, xy_space):
    with pytest.raises(IncompatibleSpaceError):
        necklace_bracket(build_W_can(one_loop), build_W_can(xy_space))


@pytest.mark.slow
def test_graded_antisymmetry_and_degree_law(one_loop, xy_space, two_vertex, rng):
    checked = 0
    for space in (one_loop, xy_space, two_vertex):
        for _ in range(100):
            degrees = [rng.choice([-1, 0, 1]) + 3 - space.d for _ in range(2)]
            f = random_potential(rng, space, (2, 3), degree=degrees[0], terms=3)
            g = random_potential(rng, space, (2, 3, 4), degree=degrees[1], terms=3)
            if not f or not g:
                continue
            checked += 1
            fg = necklace_bracket(f, g)
            gf = necklace_bracket(g, f)
            sign = -1 if (coh(space, f) * coh(space, g)) % 2 else 1
            assert fg == gf.scale(-sign)
            assert fg.is_homogeneous(degrees[0] + degrees[1] + space.d - 2)
            assert all(len(w) in {k + l - 2 for k in (2, 3) for l in (2, 3, 4)} for w in fg.terms)
    assert checked >= 200


@pytest.mark.slow
def test_graded_jacobi(one_loop, xy_space, rng):
    checked = 0
    for space in (one_loop, xy_space):
        for _ in range(120):
            f, g, h = (
                random_potential(rng, space, (2, 3), degree=3 - space.d + rng.choice([-1, 0]), terms=2)
                for _ in range(3)
            )
            if not (f and g and h):
                continue
            checked += 1
            sign = -1 if (coh(space, f) * coh(space, g)) % 2 else 1
            lhs = necklace_bracket(f, necklace_bracket(g, h))
            rhs = necklace_bracket(necklace_bracket(f, g), h) + necklace_bracket(
                g, necklace_bracket(f, h)
            ).scale(sign)
            assert lhs == rhs
    assert checked >= 200


@pytest.mark.slow
def test_cyclic_identity(one_loop, xy_space, two_vertex, rng):
    for space in (one_loop, xy_space, two_vertex):
        for _ in range(34):
            p = random_potential(rng, space, (1, 2, 3, 4, 5), degree=rng.choice([-2, -1, 0, 1]))
            residual = cyclic_identity_residual(p)
            assert set(residual) == set(space.vertices)
            assert not any(residual.values())


@pytest.mark.slow
@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_w_can_commutes_with_admissible_w0(d, rng):
    space = loops_space(d)
    w_can = build_W_can(space)
    for _ in range(25):
        w0 = random_potential(rng, space, (3, 4, 5), admissible_letters(space), terms=4)
        assert admissibility_violations(w0, space) == []
        assert not necklace_bracket(w_can, w0)
        w = lift_potential(w0, space)
        assert necklace_bracket(w, w) == necklace_bracket(w0, w0)


def test_lift_and_master(one_loop, w_can_x3):
    x3 = series(one_loop, "x*x*x")
    assert lift_potential(x3, one_loop) == w_can_x3
    assert lift_potential(CyclicSeries.zero(one_loop), one_loop) == build_W_can(one_loop)
    report = check_master(w_can_x3)
    assert report.passed
    assert report.to_dict() == {"pass": True, "residual_terms": [], "precision": None}


def test_failing_d4(xy_space, failing_d4):
    report = check_master(failing_d4)
    assert not report.passed
    assert report.residual == series(xy_space, "-2*x*x*x*x")
    assert report.to_dict()["residual_terms"] == [{"word": "x*x*x*x", "coeff": "-2"}]


def test_lift_accepts_d4_side_condition_case(xy_space, failing_d4):
    w0 = series(xy_space, "x*x*y + x*x*xi:y")
    assert lift_potential(w0, xy_space) == failing_d4


@pytest.mark.parametrize(
    "text, reason",
    [
        ("alpha_1*x*xi:x", "contains alpha"),
        ("beta_1*alpha_1*alpha_1", "contains beta"),
        ("x*x*xi:x", "degree-impossible variable"),
        ("x*x", "not minimal"),
        ("x*x*xi:x", "wrong degree"),
    ],
)
def test_inadmissible_w0(one_loop, text, reason):
    w0 = series(one_loop, text)
    with pytest.raises(InadmissiblePotentialError) as e:
        lift_potential(w0, one_loop)
    assert any(reason in v for v in e.value.violations)
    assert e.value.exit_code == 4


def test_d2_admits_no_w0():
    space = loops_space(2)
    w0 = CyclicSeries.from_names(space, [(["x0", "x0", "x0"], 1)])
    assert "d=2 admits no W_0" in admissibility_violations(w0, space)


def test_check_master_degree(one_loop):
    with pytest.raises(DegreeError):
        check_master(series(one_loop, "x*x*x + xi:x*x*x"))


def test_maurer_cartan(one_loop, xy_space):
    assert maurer_cartan_check(series(one_loop, "x*x*x"), one_loop).passed
    assert maurer_cartan_check(CyclicSeries.zero(one_loop), one_loop).passed
    report = maurer_cartan_check(series(xy_space, "x*x*y + x*x*xi:y"), xy_space)
    assert not report.passed
    assert report.residual == series(xy_space, "-1*x*x*x*x")
    assert report.label == "mc"


def test_maurer_cartan_requires_g_can(one_loop):
    with pytest.raises(DegreeError):
        maurer_cartan_check(series(one_loop, "x*x"), one_loop)
    with pytest.raises(DegreeError):
        maurer_cartan_check(series(one_loop, "xi:x*x*x"), one_loop)


def test_flow_fixes_commuting_series(one_loop):
    h = series(one_loop, "alpha_1*beta_1*x")
    x3 = series(one_loop, "x*x*x")
    assert not necklace_bracket(h, x3)
    assert hamiltonian_flow(h, x3, 8) == x3


def test_flow_preserves_master_and_inverts(one_loop, w_can_x3):
    h = series(one_loop, "x*x*xi:x")
    forward = hamiltonian_flow(h, w_can_x3, 7)
    assert forward.precision == 7
    assert forward != w_can_x3
    assert forward.is_homogeneous(0)
    assert check_master(forward).passed
    back = hamiltonian_flow(-h, forward, 7)
    assert back.truncate(7) == w_can_x3.truncate(7)


def test_flow_first_order_term(one_loop, w_can_x3):
    h = series(one_loop, "x*x*xi:x")
    forward = hamiltonian_flow(h, w_can_x3, 4)
    first = necklace_bracket(h, w_can_x3).truncate(4)
    assert forward.of_length(4) == first.of_length(4)


def test_flow_rejects_bad_generators(one_loop, w_can_x3):
    with pytest.raises(InadmissibleTransformError, match="cyc.deg at least 3"):
        hamiltonian_flow(series(one_loop, "x*xi:x"), w_can_x3, 6)
    with pytest.raises(InadmissibleTransformError, match="coh.deg 0"):
        hamiltonian_flow(series(one_loop, "x*x*x"), w_can_x3, 6)
    with pytest.raises(ValueError):
        hamiltonian_flow(series(one_loop, "x*x*xi:x"), w_can_x3, None)


def test_precision_of_bracket(one_loop):
    f = series(one_loop, "x*x*x").truncate(5)
    g = series(one_loop, "xi:x*x*x")
    assert necklace_bracket(f, g).precision == 5 + 3 - 2
    assert necklace_bracket(series(one_loop, "x*x*x"), g).precision is None
    assert Fraction(1, 2) * f == f.scale(Fraction(1, 2))


def test_w_can_master_on_random_ext_tables():
    from scripts.fixture_quivers import random_ext_tables

    from cyquiver.quiver import ext_table_from_dict, quiver_from_ext_table

    for d in (2, 3, 4, 5, 6):
        for data in random_ext_tables(seed=d, count=10, ds=(d,), max_vertices=3, max_dim=3):
            qbar = double_quiver(quiver_from_ext_table(ext_table_from_dict(data)))
            assert check_master(build_W_can(qbar)).passed, data
