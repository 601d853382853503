from fractions import Fraction

import pytest

from cubic_orbits.exceptions import BadMu, Char3NotApplicable, NotChar3, NotEnG
from cubic_orbits.services import families


@pytest.mark.parametrize(
    "q, order, name, length, case",
    [
        (5, 2, "C2", 60, "xim1_odd"),
        (7, 3, "C3", 112, "xi1_noncube"),
        (8, 1, "Trivial", 504, "xim1_even"),
        (13, 3, "C3", 728, "xi1_noncube"),
        (25, 12, "A4", 1300, "xi1_cube_A4"),
        (31, 12, "A4", 2480, "xi1_cube_A4"),
    ],
)
def test_lambda_expected(q, order, name, length, case):
    spec = families.lambda_expected(q)
    assert (spec.expected_stab_order, spec.expected_stab_id, spec.expected_orbit_len, spec.case) == (
        order,
        name,
        length,
        case,
    )


def test_lambda_expected_char3():
    with pytest.raises(Char3NotApplicable):
        families.lambda_expected(9)


@pytest.mark.parametrize("q", [5, 7, 8, 11, 13])
def test_lambda_templates_are_the_stabilizer(ctx, q):
    templates = families.lambda_stabilizer_matrices(q)
    L = families.lambda_line(q)
    assert families.templates_fix_line(q, L, templates)
    assert sorted(p.source for p in templates) == sorted(ctx(q).engine.stabilizer_of_line(L))
    assert len(templates) == families.lambda_expected(q).expected_stab_order


@pytest.mark.slow
def test_lambda_a4_stabilizer(ctx):
    stab = ctx(31).engine.stabilizer_of_line(families.lambda_line(31))
    assert ctx(31).group.identify_group(stab).name == "A4"


def test_mu_line_validation():
    with pytest.raises(BadMu):
        families.mu_line(7, 0)
    with pytest.raises(BadMu):
        families.mu_line(7, 1)
    with pytest.raises(BadMu):
        families.mu_line(7, 7)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11])
def test_mu_membership_matches_classification(ctx, q):
    cubic = ctx(q).cubic
    for mu in range(2, q):
        assert families.mu_is_EnG(q, mu) == cubic.is_eng(families.mu_line(q, mu))


def test_mu_expected_cases(ctx):
    assert families.mu_expected(7, 2).case == "odd_square"
    assert families.mu_expected(7, 2).expected_stab_id == "C2xC2"
    assert families.mu_expected(7, 3).case == "odd_nonsquare"
    assert families.mu_expected(8, 5).expected_orbit_len == 252
    assert families.mu_expected(9, 2).case.startswith("char3_")
    with pytest.raises(NotEnG):
        families.mu_expected(7, 4)


def test_mu_a4_case():
    f = families.get_context(37).field
    spec = families.mu_expected(37, f.from_fraction(-1, 3))
    assert (spec.case, spec.expected_stab_order) == ("odd_A4", 12)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11])
def test_mu_templates_are_the_stabilizers(ctx, q):
    engine = ctx(q).engine
    for mu in range(2, q):
        if not families.mu_is_EnG(q, mu):
            continue
        L = families.mu_line(q, mu)
        templates = families.mu_stabilizer_matrices(q, mu)
        assert families.templates_fix_line(q, L, templates)
        assert sorted(p.source for p in templates) == sorted(engine.stabilizer_of_line(L))


@pytest.mark.parametrize("q", [5, 7, 11])
def test_mu_reflection(q):
    assert all(families.mu_reflection_holds(q, mu) for mu in range(2, q))


def test_reflection_points_are_normalized():
    assert families.r_point(5, 2, 0) == (0, 1, 0, 3)
    assert families.r_point(5, 2, 1) == (1, 2, 1, 1)


def test_char3_pairs():
    assert families.char3_equivalent_pairs(9) == []
    assert families.predicted_pair_count(9) == 0
    assert len(families.char3_equivalent_pairs(27)) == families.predicted_pair_count(27) == 3
    with pytest.raises(NotChar3):
        families.char3_equivalent_pairs(7)


def test_char3_census_q9():
    census = families.char3_census(9)
    assert census.n_q == 7
    assert census.t_q == 0
    assert census.pairs == []
    low, high = families.char3_orbit_count_claim(9)
    assert low <= census.n_q <= high
    assert sorted(m for mus, _ in census.orbits for m in mus) == list(range(2, 9))
    assert census.to_dict()["n_q"] == 7


@pytest.mark.slow
def test_char3_census_q27():
    census = families.char3_census(27)
    assert census.n_q == families.char3_orbit_count_claim(27)[0]
    assert census.S_q == families.char3_covered_lines_claim(27)
    assert census.t_q == 0


def test_triple_formula_is_not_integral():
    assert families.triple_formula_value(9) == Fraction(-3, 48)
    assert families.triple_formula_value(81) == Fraction(57, 48)
    assert families.triple_formula_value(27) is None
    assert families.triple_bound(81) == 3
    assert families.triple_bound(27) is None


def test_lambda_mu_coincidence():
    assert families.lambda_mu_coincidence(11) == 7
    assert families.lambda_mu_coincidence(8) is None
    assert families.lambda_mu_coincidence(13) is None


def test_half_cube_consistency():
    for q in (5, 7, 11, 13, 25, 31):
        assert families.half_cube_consistency(q)["agree"]
    with pytest.raises(Char3NotApplicable):
        families.half_cube_consistency(8)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13, 16])
def test_predicted_census_covers_the_class(q):
    census = families.predicted_census(q)
    assert sum(length * count for length, count in census.items()) == (q * q - q) * (q * q - 1)
    assert sum(census.values()) == families.predicted_orbit_count(q)


def test_predicted_counts():
    assert families.predicted_total_line_orbits(5) == 16
    assert families.predicted_orbit_count(8) == 13
    assert families.even_coverage(8) == 2016


def test_field_order_searches():
    assert 31 in families.lambda_a4_orders(31)
    assert 13 not in families.lambda_a4_orders(31)
    assert 37 in families.mu_a4_orders(40)
    assert 13 not in families.mu_a4_orders(40)


@pytest.mark.parametrize("q, coincides", [(5, False), (7, False), (13, False), (23, True)])
def test_lambda_meets_minus_third_line(ctx, q, coincides):
    mu = ctx(q).field.from_fraction(-1, 3)
    assert (families.lambda_mu_coincidence(q) == mu) is coincides
    assert ctx(q).engine.same_orbit(families.lambda_line(q), families.mu_line(q, mu, check=False)) is coincides


@pytest.mark.slow
def test_lambda_a4_stabilizer_q25(ctx):
    stab = ctx(25).engine.stabilizer_of_line(families.lambda_line(25))
    assert len(stab) == 12
    assert ctx(25).group.identify_group(stab).name == "A4"


@pytest.mark.slow
def test_mu_a4_orbit_q37(ctx):
    result = ctx(37).engine.orbit_of_line(families.mu_line(37, 12))
    spec = families.mu_expected(37, 12)
    assert (result.size, result.stabilizer_order) == (4218, 12) == (spec.expected_orbit_len, spec.expected_stab_order)
    assert ctx(37).group.identify_group(result.stabilizer).name == "A4"


@pytest.mark.slow
def test_char3_pairs_share_an_orbit_q27(ctx):
    engine = ctx(27).engine
    pairs = families.char3_equivalent_pairs(27)
    assert len(pairs) == 3
    for mu1, mu2 in pairs:
        assert engine.same_orbit(families.mu_line(27, mu1), families.mu_line(27, mu2))
