import itertools

import pytest

from cubic_orbits.core import pg3
from cubic_orbits.core.cubic import INF, LineTag, eng_class_size
from cubic_orbits.exceptions import Char3Axis, Char3Polarity
from cubic_orbits.services import families


def test_cubic_points(ctx):
    cubic = ctx(5).cubic
    assert cubic.cubic_point(0) == (0, 0, 0, 1)
    assert cubic.cubic_point(INF) == (1, 0, 0, 0)
    assert cubic.cubic_point(2) == pg3.normalize(cubic.field, (3, 4, 2, 1)) == (1, 3, 4, 2)
    assert len(cubic.cubic_points) == 6


@pytest.mark.parametrize("q", [5, 8, 9])
def test_cubic_points_are_normalized(ctx, q):
    cubic = ctx(q).cubic
    for P in cubic.cubic_points.values():
        assert P == pg3.normalize(cubic.field, P)


def test_osculating_planes(ctx):
    cubic = ctx(7).cubic
    assert cubic.osculating_plane(INF) == (0, 0, 0, 1)
    assert cubic.osculating_plane(0) == (1, 0, 0, 0)
    assert cubic.osculating_plane(1) == (1, 4, 3, 6)
    for t, P in cubic.cubic_points.items():
        assert pg3.plane_contains_point(cubic.field, cubic.osc_planes[t], P)


def test_chord_vectors(ctx):
    cubic = ctx(5).cubic
    assert cubic.chord_vector(0, 0) == (0, 0, 0, 0, 0, 1)
    assert cubic.classify_line((0, 0, 0, 0, 0, 1)).tag is LineTag.TANGENT
    assert cubic.chord_vector(1, 0) == pg3.line_through(cubic.field, cubic.cubic_point(0), cubic.cubic_point(1))


def test_axis_vector_gives_mu_one_ninth(ctx):
    cubic = ctx(11).cubic
    F = cubic.field
    assert cubic.axis_vector(0, F.from_fraction(1, 3)) == families.mu_line(11, F.from_fraction(1, 9))


def test_char3_guards(ctx):
    cubic = ctx(9).cubic
    with pytest.raises(Char3Axis):
        cubic.axis_vector(0, 1)
    with pytest.raises(Char3Polarity):
        cubic.null_polarity_point((1, 0, 0, 0))


def test_null_polarity_point(ctx):
    cubic = ctx(7).cubic
    assert cubic.null_polarity_point((1, 0, 0, 0)) == cubic.osculating_plane(INF)


def test_null_polarity_is_involutive(ctx, rng):
    c = ctx(7)
    keys = list(pg3.all_lines(c.field))
    for key in rng.sample(keys, 100):
        L = pg3.decode(7, key)
        assert c.cubic.null_polarity_line(c.cubic.null_polarity_line(L)) == L


def test_null_polarity_swaps_chords_and_axes(ctx):
    cubic = ctx(7).cubic
    F = cubic.field
    axes = {cubic.axis_vector(b1, b2) for b1 in F.elements() for b2 in F.elements()}
    for a1 in F.elements():
        for a2 in F.elements():
            assert cubic.null_polarity_line(cubic.chord_vector(a1, a2)) in axes


@pytest.mark.parametrize(
    "q, line, tag",
    [
        (7, "lambda", LineTag.ENG),
        (8, "lambda", LineTag.ENG),
        (9, "lambda", LineTag.EXTERNAL_IN_OSC_PLANE),
        (11, "one_ninth", LineTag.IMAGINARY_AXIS),
        (7, 0, LineTag.UNISECANT_NON_OSC),
        (7, 1, LineTag.REAL_CHORD),
        (8, 1, LineTag.TANGENT),
    ],
)
def test_classify_examples(ctx, q, line, tag):
    c = ctx(q)
    if line == "lambda":
        L = families.lambda_line(q)
    elif line == "one_ninth":
        L = families.mu_line(q, c.field.from_fraction(1, 9))
    else:
        L = families.mu_line(q, line, check=False)
    assert c.cubic.classify_line(L).tag is tag


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_class_census(ctx, q):
    census = ctx(q).cubic.class_census()
    assert census.total == pg3.line_count(q)
    assert census.counts["EnG"] == eng_class_size(q)
    assert census.counts["RealChord"] == (q + 1) * q // 2
    assert census.counts["Tangent"] == q + 1
    assert census.counts["Generator"] == 0
    assert census.counts["Char3PencilAxis"] == (1 if q % 3 == 0 else 0)


def test_class_census_collects_eng_keys(ctx):
    census = ctx(5).cubic.class_census(collect_eng=True)
    assert len(census.eng_keys) == 480
    assert census.eng_keys == sorted(census.eng_keys)


@pytest.mark.slow
@pytest.mark.parametrize("q", [11, 13, 16])
def test_class_census_larger(ctx, q):
    assert ctx(q).cubic.class_census().counts["EnG"] == eng_class_size(q)


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_no_four_cubic_points_coplanar(ctx, q):
    assert ctx(q).cubic.check_arc()


def test_no_four_coplanar_sampled(ctx):
    assert ctx(27).cubic.check_arc(samples=500)


@pytest.mark.parametrize("q", [5, 7, 9])
def test_real_chords_are_the_two_root_chord_vectors(ctx, q):
    c = ctx(q)
    F = c.field
    finite = [t for t in c.cubic.params if t != INF]
    expected = {c.cubic.chord_vector(F.add(s, t), F.mul(s, t)) for s, t in itertools.combinations(finite, 2)}
    measured = {
        pg3.decode(q, k)
        for k in pg3.all_lines(F)
        if len([t for t in c.cubic.meeting_parameters(pg3.decode(q, k)) if t != INF]) == 2
    }
    assert measured == expected


def test_osculating_planes_share_axis_in_char3(ctx):
    cubic = ctx(9).cubic
    for s, t in itertools.combinations(cubic.params, 2):
        meet = pg3.meet_planes(cubic.field, cubic.osc_planes[s], cubic.osc_planes[t])
        assert meet == cubic.char3_pencil_axis


@pytest.mark.parametrize("q", [5, 7])
def test_null_polarity_preserves_eng(ctx, q):
    c = ctx(q)
    eng = set(c.cubic.class_census(collect_eng=True).eng_keys)
    images = {pg3.encode(q, c.cubic.null_polarity_line(pg3.decode(q, k))) for k in eng}
    assert images == eng
