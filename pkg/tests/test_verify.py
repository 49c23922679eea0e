from fractions import Fraction

import pytest

from forestcount.solver import cached_solution
from forestcount.verify import (CHECKS, ODD_EQUATION, P_MIN, Q_REFERENCE,
                                ZPolynomial, check_alt_tails,
                                check_asymptotics, check_cross_routes,
                                check_flat_row, check_fuss_convolution,
                                check_growth_constant, check_min_poly,
                                check_oracle, check_q_consistency,
                                check_q_factor, check_simple_closed_form,
                                check_support_bound, check_system_equation,
                                derived_q, growth_constant, linear_equation,
                                r_eval, residual_bivariate,
                                route_agreement_document, row_sum_check,
                                run_suite, suite_passed)

EXPECTED_ROW_SUMS = [1, 1, 8, 104, 1656, 29408, 558856, 11121272,
                     228823544, 4828576832, 103927948296]


def test_p_has_sixty_terms():
    assert len(P_MIN.terms) == 60


def test_q_derived_matches_reference():
    assert derived_q() == Q_REFERENCE
    assert check_q_consistency()["status"] == "pass"


def test_q_factors_at_y_zero():
    # Q(0, z) = -16 (1 - z)^6
    report = check_q_factor()
    assert report["status"] == "pass"
    coeffs = derived_q().z_coeffs_at_origin()
    assert coeffs == {0: -16, 1: 96, 2: -240, 3: 320, 4: -240, 5: 96, 6: -16}


def test_p_at_origin_is_identically_zero_in_z():
    # every term of P carries x or y, so P(0, 0, z) = 0; z = 1 a root
    assert P_MIN.z_coeffs_at_origin() == {}


def test_min_poly_residual_vanishes():
    report = check_min_poly(12, 12)
    assert report["status"] == "pass"
    assert report["offending_cells"] == []


def test_min_poly_on_tiny_box():
    # degenerate box: every term shifts out, residual trivially zero
    assert check_min_poly(0, 0)["status"] == "pass"


def test_system_equation_annihilates_odd_series():
    assert check_system_equation(10, 10)["status"] == "pass"


def test_alt_tail_z11_annihilates_linear_series():
    report = check_alt_tails()
    assert report["status"] == "pass"
    assert report["details"]["annihilating_tail"] == [11]
    z9 = report["details"]["variants"]["z9"]
    assert not z9["zero_residual"]
    first = z9["first_offending"][0]
    assert first[:2] == [3, 3]


def test_residual_of_difference_is_zero():
    # poly z - z is empty after normalization; residual must vanish
    poly = ZPolynomial.from_terms([(0, 0, 1, 1), (0, 0, 1, -1)])
    n1 = cached_solution("odd", 5, 5).n1
    assert residual_bivariate(poly, n1).is_zero()


def test_zpolynomial_algebra():
    a = ZPolynomial.from_terms([(0, 0, 0, 1), (1, 0, 1, 2)])
    b = ZPolynomial.from_terms([(0, 1, 0, 3)])
    assert (a * b).terms == ((0, 1, 0, 3), (1, 1, 1, 6))
    assert a.subs_x(2).terms == ((0, 0, 0, 1), (0, 0, 1, 4))


def test_odd_equation_shape():
    # expanded product has the eight-term shape the recurrence transcribes
    assert (0, 1, 4, 2) in ODD_EQUATION.terms
    assert (2, 2, 9, -1) in ODD_EQUATION.terms


def test_linear_equation_tail_power():
    eq9 = linear_equation(9)
    eq11 = linear_equation(11)
    assert (3, 2, 9, 1) in eq9.terms
    assert (3, 2, 11, 1) in eq11.terms


# ----------------------------------------------------------------------
# growth constant
# ----------------------------------------------------------------------

def test_growth_constant_value():
    value = growth_constant()
    assert abs(value - 25.327) <= 1e-3
    assert check_growth_constant()["status"] == "pass"


def test_growth_constant_stable_under_refinement():
    coarse = growth_constant(1e-9)
    fine = growth_constant(1e-13)
    assert abs(coarse - fine) <= 1e-4


def test_r_polynomial_endpoints():
    assert r_eval(Fraction(0)) == -84375
    y0 = Fraction(1, 25)  # past the root, R should already be positive
    assert r_eval(y0) > 0


def test_r_small_at_root():
    y0inv = growth_constant()
    r = float(r_eval(Fraction(1) / Fraction(y0inv).limit_denominator(10 ** 9)))
    assert abs(r) < 1e-6 * max(abs(c) for c in (-84375, 1620000, 12241152,
                                                21528576, 1048576))


# ----------------------------------------------------------------------
# row sums
# ----------------------------------------------------------------------

def test_row_sums_small_box():
    report = row_sum_check(10)
    sums = [int(s) for s in report["details"]["first_sums"]]
    assert sums == EXPECTED_ROW_SUMS[:8]
    assert report["details"]["residual_zero"]
    assert report["status"] == "pass"
    assert report["details"]["ratios_stable_from"] == 7


def test_row_sum_report_schema():
    report = row_sum_check(8)
    for key in ("schema", "check", "status", "offending_cells", "details"):
        assert key in report
    assert report["check"] == "row-sum"


# ----------------------------------------------------------------------
# aggregate checks at reduced scale
# ----------------------------------------------------------------------

def test_flat_row_check():
    assert check_flat_row(10)["status"] == "pass"


def test_simple_closed_form_check():
    assert check_simple_closed_form(4, 10)["status"] == "pass"


def test_fuss_convolution_check():
    assert check_fuss_convolution(4, 8)["status"] == "pass"


def test_support_bound_check():
    assert check_support_bound(10, 5)["status"] == "pass"


def test_asymptotics_check():
    report = check_asymptotics(d=200)
    assert report["status"] == "pass"
    for ratio in report["details"]["ratios"].values():
        assert 0.8 <= ratio <= 1.2


def test_oracle_check():
    report = check_oracle(2)
    assert report["status"] == "pass"
    assert report["details"]["counts"] == {"0": 1, "1": 1, "2": 4}


def test_cross_routes_check():
    report = check_cross_routes(5, 6)
    assert report["status"] == "pass"
    assert "odd" in report["details"]["matching_conventions"]


def test_run_suite_single_and_unknown():
    reports = run_suite(only="growth-constant")
    assert len(reports) == 1 and suite_passed(reports)
    with pytest.raises(ValueError):
        run_suite(only="no-such-check")


def test_every_check_is_registered():
    assert set(CHECKS) == {
        "flat-row", "codim1-row", "simple-closed-form", "fuss-convolution",
        "support-bound", "min-poly", "q-consistency", "q-factor",
        "system-equation", "alt-tail", "growth-constant", "asymptotics",
        "oracle", "cross-routes", "row-sum"}


def test_route_agreement_document_shape():
    doc = route_agreement_document(5, 6)
    assert doc["schema"] == "route-agreement@1"
    assert doc["dp_matches_conventions"] == ["odd"]
    assert doc["annihilating_tail_powers"] == [11]
    assert set(doc["per_convention"]) == {"odd", "linear"}
