import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fpdirections.errors import GuardError
from fpdirections.fp import PrimeModulus
from fpdirections.plane import (
    AffineTransform,
    Direction,
    Point,
    PointSet,
    all_directions,
    apply_affine,
    canonical_form,
    cartesian_product,
    direction_of,
    direction_set,
    direction_set_by_projections,
    full_line,
    function_graph,
    induced_direction_map,
    is_line,
    projection_polynomial,
    projection_values,
)
from fpdirections.poly import Polynomial

M3, M5, M7 = PrimeModulus(3), PrimeModulus(5), PrimeModulus(7)


def pt(m, x, y):
    return Point(m.element(x), m.element(y))


def graph(m, coeffs):
    return function_graph(Polynomial.from_coefficients(m, coeffs))


def random_set(m, k, rng):
    cells = rng.sample(range(m.p * m.p), k)
    return PointSet.from_cells(m, cells)


def test_direction_of_examples():
    assert direction_of(pt(M5, 0, 0), pt(M5, 0, 3)).is_vertical
    assert direction_of(pt(M5, 0, 0), pt(M5, 1, 4)).slope.value == 4
    assert direction_of(pt(M5, 2, 3), pt(M5, 3, 2)).slope.value == 4
    with pytest.raises(ValueError):
        direction_of(pt(M5, 1, 1), pt(M5, 1, 1))


def test_direction_of_is_symmetric():
    rng = random.Random(1)
    for _ in range(100):
        a = pt(M7, rng.randrange(7), rng.randrange(7))
        b = pt(M7, rng.randrange(7), rng.randrange(7))
        if a != b:
            assert direction_of(a, b) == direction_of(b, a)


def test_direction_set_examples():
    line = graph(M5, [1, 2])  # y = 2x + 1
    assert direction_set(line) == frozenset({Direction(M5.element(2))})
    parabola = graph(M5, [0, 0, 1])
    assert {d.slope.value for d in direction_set(parabola)} == set(range(5))
    cubic = graph(M5, [0, 0, 0, 1])
    assert {d.slope.value for d in direction_set(cubic)} == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        direction_set(PointSet.from_pairs(M5, [(0, 0)]))


def test_direction_set_matches_pair_oracle():
    """Re-derive the cubic graph's directions from raw pairs."""
    cubic = graph(M5, [0, 0, 0, 1])
    pts = cubic.sorted_points()
    expected = set()
    for a, b in itertools.combinations(pts, 2):
        expected.add(direction_of(a, b))
    assert direction_set(cubic) == frozenset(expected)


def test_two_algorithms_agree_exhaustively_at_p3():
    for cells in itertools.combinations(range(9), 3):
        h = PointSet.from_cells(M3, cells)
        assert direction_set(h) == direction_set_by_projections(h)


@given(p=st.sampled_from([5, 7]), data=st.data())
@settings(max_examples=60)
def test_two_algorithms_agree_on_random_sets(p, data):
    m = PrimeModulus(p)
    k = data.draw(st.integers(2, p + 2))
    cells = data.draw(
        st.lists(st.integers(0, p * p - 1), min_size=k, max_size=k, unique=True)
    )
    h = PointSet.from_cells(m, cells)
    assert direction_set(h) == direction_set_by_projections(h)


def test_projection_values_examples():
    g = graph(M5, [0, 0, 0, 1])
    assert projection_values(g, Direction.vertical()) == (1, 1, 1, 1, 1)
    v = full_line(M5, Direction.vertical(), 0)
    assert projection_values(v, Direction.vertical()) == (5, 0, 0, 0, 0)
    counts = projection_values(g, Direction(M5.element(1)))
    assert sum(counts) == 5
    assert counts == (3, 1, 0, 0, 1)  # x^3 - x has roots 0, 1, 4


def test_projection_counts_sum_to_set_size_in_every_direction():
    rng = random.Random(9)
    for _ in range(30):
        h = random_set(M7, rng.randrange(2, 12), rng)
        for c in all_directions(M7):
            assert sum(projection_values(h, c)) == len(h)


def test_line_indexing_concentrates_its_own_direction():
    for m_slope in range(5):
        c = Direction(M5.element(m_slope))
        line = full_line(M5, c, 3)
        counts = projection_values(line, c)
        assert counts[3] == 5 and sum(counts) == 5


def test_projection_polynomial_examples():
    g = graph(M5, [0, 0, 0, 1])
    r = projection_polynomial(g, Direction.vertical())
    assert r.coefficient_list() == [1] and r.degree == 0
    vline = full_line(M5, Direction.vertical(), 0)
    assert projection_polynomial(vline, Direction.vertical()).degree is None
    # counts (3,1,0,0,1) along slope 1 interpolate to 3x^2 + 3
    r1 = projection_polynomial(g, Direction(M5.element(1)))
    assert r1.coefficient_list() == [3, 0, 3]
    assert r1.degree == 2


def test_undetermined_direction_gives_uniform_counts():
    """For |H| = p: a direction is undetermined iff all its counts are 1."""
    g = graph(M5, [0, 0, 0, 1])
    dirs = direction_set(g)
    for c in all_directions(M5):
        uniform = projection_values(g, c) == (1,) * 5
        assert uniform == (c not in dirs)


def test_is_line_examples():
    assert is_line(graph(M5, [1, 2]))
    assert not is_line(graph(M5, [0, 0, 1]))
    assert is_line(PointSet.from_pairs(M5, [(0, 0), (3, 4)]))
    assert is_line(PointSet.from_pairs(M5, [(2, 2)]))
    assert is_line(full_line(M5, Direction.vertical(), 1))


def test_is_line_iff_one_direction_for_full_size_sets():
    rng = random.Random(4)
    for _ in range(50):
        h = random_set(M5, 5, rng)
        assert is_line(h) == (len(direction_set(h)) == 1)


def test_cartesian_product_examples():
    assert len(cartesian_product(M5, [0], [0])) == 1
    assert len(cartesian_product(M5, [0, 1], [0, 1, 2])) == 6
    grid = cartesian_product(M5, [0, 1], [0, 1])
    names = {str(d) for d in direction_set(grid)}
    assert names == {"0", "1", "4", "inf"}


def test_affine_transform_validation_and_group_ops():
    with pytest.raises(ValueError):
        AffineTransform.of(M5, 1, 2, 2, 4)  # det = 0
    t = AffineTransform.of(M5, 2, 1, 3, 1, 1, 2)
    ident = t.compose(t.inverse())
    assert ident == AffineTransform.identity(M5)
    assert t.apply(pt(M5, 0, 0)) == pt(M5, 1, 2)


def test_apply_affine_examples():
    h = graph(M5, [0, 0, 1])
    assert apply_affine(h, AffineTransform.identity(M5)) == h
    shift = AffineTransform.translation(M5, 2, 3)
    assert direction_set(apply_affine(h, shift)) == direction_set(h)
    swap = AffineTransform.of(M5, 0, 1, 1, 0)
    assert induced_direction_map(swap, Direction.vertical()) == Direction(M5.element(0))


@given(data=st.data())
@settings(max_examples=60)
def test_induced_map_matches_image_directions(data):
    p = data.draw(st.sampled_from([3, 5, 7]))
    m = PrimeModulus(p)
    k = data.draw(st.integers(2, min(p + 1, 6)))
    cells = data.draw(
        st.lists(st.integers(0, p * p - 1), min_size=k, max_size=k, unique=True)
    )
    h = PointSet.from_cells(m, cells)
    a, b, c, d = (data.draw(st.integers(0, p - 1)) for _ in range(4))
    if (a * d - b * c) % p == 0:
        return
    t = AffineTransform.of(m, a, b, c, d,
                           data.draw(st.integers(0, p - 1)),
                           data.draw(st.integers(0, p - 1)))
    image = apply_affine(h, t)
    assert len(image) == len(h)
    mapped = {induced_direction_map(t, q) for q in direction_set(h)}
    assert direction_set(image) == frozenset(mapped)


def test_direction_count_is_affine_invariant():
    rng = random.Random(12)
    h = random_set(M7, 7, rng)
    for _ in range(20):
        while True:
            a, b, c, d = (rng.randrange(7) for _ in range(4))
            if (a * d - b * c) % 7:
                break
        t = AffineTransform.of(M7, a, b, c, d, rng.randrange(7), rng.randrange(7))
        assert len(direction_set(apply_affine(h, t))) == len(direction_set(h))


def test_canonical_form_is_orbit_invariant():
    rng = random.Random(77)
    for p in (3, 5):
        m = PrimeModulus(p)
        h = random_set(m, p, rng)
        base = canonical_form(h)
        for _ in range(5):
            while True:
                a, b, c, d = (rng.randrange(p) for _ in range(4))
                if (a * d - b * c) % p:
                    break
            t = AffineTransform.of(m, a, b, c, d, rng.randrange(p), rng.randrange(p))
            assert canonical_form(apply_affine(h, t)) == base


def test_canonical_form_identifies_lines():
    lines = [
        full_line(M5, Direction.vertical(), 2),
        full_line(M5, Direction(M5.element(3)), 1),
        graph(M5, [4, 1]),
    ]
    forms = {canonical_form(line) for line in lines}
    assert len(forms) == 1


def test_canonical_form_equates_equivalent_parabolas():
    a = graph(M5, [0, 0, 1])
    b = graph(M5, [1, 1, 2])  # y = 2x^2 + x + 1
    # the explicit witness: (x, y) -> (x, 3y - 3x - 3) carries b onto a
    t = AffineTransform.of(M5, 1, 0, -3, 3, 0, -3)
    assert apply_affine(b, t) == a
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_separates_inequivalent_sets():
    line = graph(M5, [0, 1])
    parabola = graph(M5, [0, 0, 1])
    assert canonical_form(line) != canonical_form(parabola)


def test_canonical_form_guard():
    m = PrimeModulus(17)
    h = PointSet.from_pairs(m, [(0, 0), (1, 1), (2, 3)])
    with pytest.raises(GuardError):
        canonical_form(h)


def test_canonical_form_hex_width():
    h = graph(M5, [0, 1])
    form = canonical_form(h)
    assert len(form) == (25 + 3) // 4
    int(form, 16)


def test_direction_serialization_and_indexing():
    dirs = all_directions(M5)
    assert len(dirs) == 6
    assert [str(d) for d in dirs] == ["0", "1", "2", "3", "4", "inf"]
    assert [d.index(5) for d in dirs] == [0, 1, 2, 3, 4, 5]


def test_point_set_text_form_round_trip():
    h = PointSet.from_pairs(M5, [(4, 2), (0, 0), (1, 3)])
    assert h.text_form() == "0,0 1,3 4,2"
    assert PointSet.from_cells(M5, h.cells()) == h


def test_point_set_rejects_mixed_moduli():
    with pytest.raises(ValueError):
        PointSet(M5, frozenset({pt(M7, 1, 1)}))
    with pytest.raises(ValueError):
        Point(M5.element(1), M7.element(1))
