import pytest

from cubic_orbits.core.cubic import INF
from cubic_orbits.core.group import GL2Rep, canonical_matrix, identify_by_census, mat_mul
from cubic_orbits.exceptions import NotClosed, Singular
from cubic_orbits.services import families


@pytest.mark.parametrize("q", [5, 8])
def test_reps_enumerate_the_whole_group(ctx, q):
    group = ctx(q).group
    reps = group.reps()
    assert len(reps) == q**3 - q == group.order
    assert len(set(reps)) == len(reps)
    assert group.identity in reps


def test_identity_lift(ctx):
    group = ctx(7).group
    assert group.lift(group.identity).mat == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def test_singular_rep_rejected(ctx):
    with pytest.raises(Singular):
        ctx(5).group.canonical_rep(1, 2, 2, 4)


def test_lambda_template_fixes_lambda(ctx):
    group = ctx(5).group
    L = families.lambda_line(5)
    assert group.act_line(group.lift(GL2Rep(2, 1, 3, 3)), L) == L


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_generators_generate(ctx, q):
    group = ctx(q).group
    assert len(group.closure(group.generators())) == group.order


def test_lift_is_a_homomorphism(ctx, rng):
    c = ctx(7)
    group, f = c.group, c.field
    reps = group.reps()
    for _ in range(200):
        g, h = rng.choice(reps), rng.choice(reps)
        product = canonical_matrix(f, mat_mul(f, group.lift(g).mat, group.lift(h).mat))
        assert group.lift(group.compose(g, h)).mat == product


def test_inverse(ctx, rng):
    group = ctx(8).group
    for g in rng.sample(group.reps(), 50):
        assert group.compose(g, group.inverse(g)) == group.identity


@pytest.mark.parametrize("q", [5, 8, 9])
def test_lift_follows_the_parameter_action(ctx, q):
    c = ctx(q)
    group, cubic = c.group, c.cubic
    for g in group.reps():
        for t in cubic.params:
            assert group.act_point(g, cubic.cubic_point(t)) == cubic.cubic_point(group.act_param(g, t))


def test_sharply_three_transitive_on_the_cubic(ctx):
    c = ctx(5)
    group, cubic = c.group, c.cubic
    triples = {
        tuple(group.act_point(g, cubic.cubic_point(t)) for t in (0, 1, INF)) for g in group.enumerate_gq()
    }
    assert len(triples) == 120


def test_element_orders(ctx):
    group = ctx(7).group
    assert group.element_order(group.identity) == 1
    assert group.element_order(GL2Rep(1, 1, 0, 1)) == 7
    assert group.element_order(GL2Rep(0, 1, 1, 0)) == 2


def test_identify_small_groups(ctx):
    c = ctx(7)
    group, f = c.group, c.field
    assert group.identify_group([group.identity]).name == "Trivial"
    assert group.identify_group(group.closure([GL2Rep(1, 0, 0, f.neg(1))])).name == "C2"
    cube_roots = [group.canonical_rep(1, 0, 0, d) for d in f.cube_roots(1)]
    assert group.identify_group(cube_roots).name == "C3"
    klein = group.closure([GL2Rep(1, 0, 0, f.neg(1)), GL2Rep(0, 1, 1, 0)])
    assert group.identify_group(klein).name == "C2xC2"


def test_identify_rejects_open_sets(ctx):
    group = ctx(5).group
    with pytest.raises(NotClosed):
        group.identify_group([group.identity, GL2Rep(1, 1, 0, 1)])


def test_identify_by_census():
    assert identify_by_census(4, {1: 1, 2: 1, 4: 2}).name == "C4"
    assert identify_by_census(12, {1: 1, 2: 3, 3: 8}).name == "A4"
    other = identify_by_census(6, {1: 1, 2: 3, 3: 2})
    assert other.name == "OrderCensus"
    assert str(other) == "OrderCensus(6, {1: 1, 2: 3, 3: 2})"


@pytest.mark.parametrize("q", [5, 7, 8])
def test_stabilizer_of_the_point_q_infinity(ctx, q):
    group = ctx(q).group
    assert sorted(group.stabilizer_of_point((0, 0, 1, 0))) == families.q_infinity_stabilizer_templates(q)


def test_point_stabilizer_grows_in_char3(ctx):
    assert len(ctx(9).group.stabilizer_of_point((0, 0, 1, 0))) == 9 * 8


def test_generators_gq_are_lifted(ctx):
    group = ctx(8).group
    lifted = group.generators_gq()
    assert [p.source for p in lifted] == group.generators()
    assert all(len(p.mat) == 4 for p in lifted)


def test_every_element_fixes_the_cubic_setwise(ctx):
    c = ctx(5)
    cubic_set = set(c.cubic.cubic_points.values())
    for g in c.group.enumerate_gq():
        assert {c.group.act_point(g, P) for P in cubic_set} == cubic_set


def _even_lift(f, a, b, c, d):
    m = f.mul
    return (
        (m(m(a, a), a), m(m(a, a), c), m(a, m(c, c)), m(m(c, c), c)),
        (m(m(a, a), b), m(m(a, a), d), m(b, m(c, c)), m(m(c, c), d)),
        (m(a, m(b, b)), m(m(b, b), c), m(a, m(d, d)), m(c, m(d, d))),
        (m(m(b, b), b), m(m(b, b), d), m(b, m(d, d)), m(m(d, d), d)),
    )


def _char3_lift(f, a, b, c, d):
    m, s = f.mul, f.sub
    return (
        (m(m(a, a), a), m(m(a, a), c), m(a, m(c, c)), m(m(c, c), c)),
        (0, s(m(m(a, a), d), m(m(a, b), c)), s(m(b, m(c, c)), m(m(a, c), d)), 0),
        (0, s(m(m(b, b), c), m(m(a, b), d)), s(m(a, m(d, d)), m(m(b, c), d)), 0),
        (m(m(b, b), b), m(m(b, b), d), m(b, m(d, d)), m(m(d, d), d)),
    )


@pytest.mark.parametrize("q, reduced", [(8, _even_lift), (9, _char3_lift), (16, _even_lift), (27, _char3_lift)])
def test_lift_reduces_in_small_characteristic(ctx, q, reduced):
    c = ctx(q)
    group, f = c.group, c.field
    for r in group.reps():
        assert group.lift(r).mat == canonical_matrix(f, reduced(f, *r)), r
