"""Closed-form operators for the two parametrized layouts, checked against the matrix route."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lamconn.algebra import ABElement, homogeneous_components, linear_factor_product
from lamconn.errors import InputError
from lamconn.exact import LaurentPoly
from lamconn.exponents import Case, ExponentData, dependency
from lamconn.families import (
    cross_validate,
    factored_display,
    family_a,
    family_b,
    match_family,
    monodromy_candidates,
)

params_a = st.tuples(*[st.integers(min_value=1, max_value=5)] * 3)
params_b = st.tuples(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=4),
)


class TestFamilyA:
    def test_unit_parameters(self):
        result = family_a(1, 1, 1)
        assert result.roots_top == (F(3), F(2), F(1))
        assert result.roots_low == (F(3), F(3, 2))
        assert result.lambda_exponent == -2
        assert result.nabla_one == ABElement.parse("2*a - 3*b")

    def test_golden_instance(self):
        result = family_a(2, 2, 1)
        assert result.roots_top == (F(5, 2), F(7, 4), F(3, 4))
        assert result.roots_low == (F(5, 2), F(1))
        assert result.exponents.alphas == ((4, 0, 0), (0, 4, 0), (0, 0, 2), (2, 2, 1))
        assert result.nabla_one == ABElement.parse("2*a - 2*b")

    def test_golden_factored_display(self):
        text = factored_display(family_a(2, 2, 1))
        assert text == "(a - 5/2*b)*[(a - 7/4*b)*(a - 3/4*b) - 4*lam^-2*(a - b)]"

    def test_operator_assembly(self):
        result = family_a(2, 2, 1)
        top = linear_factor_product([F(5, 2), F(7, 4), F(3, 4)])
        low = linear_factor_product([F(5, 2), F(1)])
        assert result.top_part == top
        assert result.low_part == low
        assert result.full_operator == top + low.scale(LaurentPoly.lam_power(-2, -4))

    def test_components_split_by_degree(self):
        result = family_a(2, 2, 1)
        parts = homogeneous_components(result.full_operator)
        assert [p.degree for p in parts] == [3, 2]
        assert parts[0].element == result.top_part
        assert parts[1].element == result.low_part.scale(LaurentPoly.lam_power(-2, -4))

    def test_dependency_case(self):
        dep = dependency(family_a(2, 2, 1).exponents)
        assert dep.case is Case.CASE_II
        assert (dep.r, dep.p) == (2, (1, 1, 1))
        assert (dep.d, dep.h) == (2, 1)
        assert dep.sigma == F(-2)
        assert dep.lambda_exponent == -2

    @pytest.mark.parametrize("bad", [(0, 1, 1), (1, -2, 1), (1, 1, 0)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(InputError):
            family_a(*bad)

    @pytest.mark.parametrize("bad", [("2", 1, 1), (1, F(3, 2), 1), (1, 1, True)])
    def test_rejects_nonintegers(self, bad):
        with pytest.raises(InputError):
            family_a(*bad)


class TestFamilyB:
    def test_unit_parameters(self):
        result = family_b(1, 1, 1, 1)
        assert result.roots_top == (F(3), F(3, 2), F(1))
        assert result.roots_low == (F(5, 2), F(3, 2))
        assert result.lambda_exponent == 2
        assert result.nabla_one == ABElement.parse("-2*a + 2*b")

    def test_golden_instance(self):
        result = family_b(2, 2, 1, 1)
        assert result.roots_top == (F(5, 2), F(5, 4), F(3, 4))
        assert result.roots_low == (F(2), F(1))
        assert result.exponents.alphas == ((4, 0, 1), (0, 4, 1), (0, 0, 2), (2, 2, 0))
        assert result.nabla_one == ABElement.parse("-2*a + 3/2*b")

    def test_golden_factored_display(self):
        text = factored_display(family_b(2, 2, 1, 1))
        assert text == "(a - 5/2*b)*(a - 5/4*b)*(a - 3/4*b) - 4*lam^2*(a - 2*b)*(a - b)"

    def test_dependency_case(self):
        dep = dependency(family_b(2, 2, 1, 1).exponents)
        assert dep.case is Case.CASE_I
        assert (dep.r, dep.p) == (2, (1, 1, -1))
        assert (dep.d, dep.h) == (2, 1)
        assert dep.sigma == F(2)
        assert dep.lambda_exponent == 2

    def test_one_sided_powers_allowed(self):
        # u may be zero as long as u + v stays positive
        result = family_b(1, 2, 0, 3)
        assert result.exponents.alphas[0] == (2, 0, 0)
        assert cross_validate(result).passed

    @pytest.mark.parametrize("bad", [(0, 1, 1, 1), (1, 0, 1, 1), (1, 1, -1, 2), (1, 1, 0, 0)])
    def test_rejects_bad_parameters(self, bad):
        with pytest.raises(InputError):
            family_b(*bad)


class TestMonodromyCandidates:
    def test_golden_a(self):
        assert monodromy_candidates(family_a(2, 2, 1)) == [F(1, 2), F(0)]

    def test_golden_b(self):
        assert monodromy_candidates(family_b(2, 2, 1, 1)) == [F(0), F(0)]

    def test_multiplicity_kept(self):
        # equal residues are reported once per root, not deduplicated
        result = family_b(2, 2, 1, 1)
        assert len(monodromy_candidates(result)) == len(result.roots_low)

    @given(params_a)
    def test_residues_in_unit_interval(self, params):
        result = family_a(*params)
        for root, residue in zip(result.roots_low, monodromy_candidates(result)):
            assert 0 <= residue < 1
            assert (root - residue).denominator == 1


class TestMatchFamily:
    def test_round_trip_a(self):
        result = family_a(3, 1, 2)
        matched = match_family(result.exponents)
        assert matched is not None
        assert (matched.kind, matched.params) == ("A", (3, 1, 2))
        assert matched.full_operator == result.full_operator

    def test_round_trip_b(self):
        result = family_b(1, 1, 0, 1)
        matched = match_family(result.exponents)
        assert matched is not None
        assert (matched.kind, matched.params) == ("B", (1, 1, 0, 1))

    def test_rejects_cube(self):
        cube = ExponentData(n=2, alphas=((3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)))
        assert match_family(cube) is None

    def test_rejects_wrong_dimension(self):
        data = ExponentData(n=1, alphas=((2, 0), (0, 2), (1, 1)))
        assert match_family(data) is None

    def test_rejects_scaled_diagonal(self):
        data = ExponentData(n=2, alphas=((5, 0, 0), (0, 4, 0), (0, 0, 2), (2, 2, 1)))
        assert match_family(data) is None

    @given(params_b)
    def test_round_trip_b_random(self, params):
        result = family_b(*params)
        matched = match_family(result.exponents)
        assert matched is not None
        assert (matched.kind, matched.params) == ("B", params)


class TestCrossValidation:
    def test_golden_instances_pass(self):
        for result in (family_a(2, 2, 1), family_b(2, 2, 1, 1), family_a(3, 1, 2)):
            report = cross_validate(result)
            failed = [c.name for c in report.checks if not c.passed]
            assert report.passed, failed

    def test_check_names_stable(self):
        names = [c.name for c in cross_validate(family_a(1, 1, 1)).checks]
        assert names == [
            "hypotheses",
            "r",
            "p",
            "d",
            "h",
            "case",
            "sigma",
            "lambda_exponent",
            "determinant_identity",
            "sigma_from_inverse",
            "nabla_one",
            "operator_reconstruction",
        ]

    @given(params_a)
    def test_family_a_random(self, params):
        assert cross_validate(family_a(*params)).passed

    @given(params_b)
    def test_family_b_random(self, params):
        assert cross_validate(family_b(*params)).passed


class TestDisplayAndJson:
    def test_label(self):
        assert family_a(2, 2, 1).label() == "A(2, 2, 1)"
        assert family_b(1, 2, 3, 4).label() == "B(1, 2, 3, 4)"

    def test_pulled_out_form_only_when_shared(self):
        # the leftmost top and low roots of layout A agree exactly when w = 1
        assert "[" in factored_display(family_a(3, 2, 1))
        assert "[" not in factored_display(family_a(2, 2, 2))

    def test_json_fields(self):
        payload = family_a(2, 2, 1).to_json()
        assert payload["kind"] == "A"
        assert payload["params"] == [2, 2, 1]
        assert payload["roots_top"] == ["5/2", "7/4", "3/4"]
        assert payload["roots_low"] == ["5/2", "1"]
        assert payload["c_coeff"] == "-4"
        assert payload["lambda_exponent"] == -2
        assert payload["monodromy_candidates"] == ["1/2", "0"]
        assert payload["operator_factored"] == factored_display(family_a(2, 2, 1))
        assert payload["operator"] == str(family_a(2, 2, 1).full_operator)

    def test_cross_validation_json(self):
        report = cross_validate(family_b(2, 2, 1, 1)).to_json()
        assert report["label"] == "B(2, 2, 1, 1)"
        assert report["passed"] is True
        assert all(set(c) == {"name", "passed", "expected", "got"} for c in report["checks"])
