"""
Unit tests for the .lsys and .alp text formats.
"""

from fractions import Fraction

import pytest

from alp_feasibility.bench import random_system
from alp_feasibility.errors import ParseError, ValidationError
from alp_feasibility.model import CaseDescriptor, Constraint, Relop, Sign
from alp_feasibility.numeric import KPoly
from alp_feasibility.parser import parse_alp, parse_system, render_alp, render_system
from alp_feasibility.reduce import augment_nontrivial, reduce


def only(text: str) -> Constraint:
    system = parse_system(text)
    assert len(system.constraints) == 1
    return system.constraints[0]


class TestParseSystem:
    """Grammar and normalization."""

    def test_sum_of_terms(self):
        """Test parsing a sum of terms."""
        c = only("2 x1 + 3 x2 - x3 <= 5")
        assert c.coeffs == {"x1": 2, "x2": 3, "x3": -1}
        assert c.relop is Relop.LE
        assert c.rhs == 5

    def test_disequality(self):
        """Test parsing a != row."""
        c = only("x1 != 0")
        assert (c.coeffs, c.relop, c.rhs) == ({"x1": 1}, Relop.NE, 0)

    def test_ge_normalized(self):
        """Test that >= rows are normalized."""
        c = only("x1 >= 2")
        assert (c.coeffs, c.relop, c.rhs) == ({"x1": -1}, Relop.LE, -2)

    def test_star_and_fractions(self):
        """Test '*' and fractional coefficients."""
        c = only("1/2*x + 3/4 y - 1 < x")
        assert c.coeffs == {"x": Fraction(-1, 2), "y": Fraction(3, 4)}
        assert c.relop is Relop.LT
        assert c.rhs == 1

    def test_unicode_operators(self):
        """Test Unicode comparison operators."""
        assert only("x ≤ 1").relop is Relop.LE
        assert only("x ≠ 1").relop is Relop.NE
        assert only("x ≥ 1").coeffs == {"x": -1}

    def test_comments_and_declarations(self):
        """Test comments and vars declarations."""
        system = parse_system("# header\nvars a, b c\n\na <= 1  # trailing\n")
        assert system.variables == ("a", "b", "c")
        assert len(system.constraints) == 1

    def test_nonlinear_term_rejected(self):
        """Test that products of variables are rejected."""
        with pytest.raises(ParseError) as info:
            parse_system("x <= 1\n2 x y <= 3")
        assert info.value.span.line == 2
        assert "nonlinear" in info.value.message

    def test_syntax_error_span(self):
        """Test the span of a syntax error."""
        with pytest.raises(ParseError) as info:
            parse_system("x + <= 1")
        assert info.value.span.line == 1
        assert info.value.span.col_start == 5

    def test_missing_operator(self):
        """Test a row without a comparison."""
        with pytest.raises(ParseError):
            parse_system("x + y")

    def test_bad_character(self):
        """Test an unknown character."""
        with pytest.raises(ParseError):
            parse_system("x $ 1")

    def test_zero_denominator(self):
        """Test that 1/0 is a parse error at its own column."""
        with pytest.raises(ParseError) as info:
            parse_system("x <= 1/0")
        assert info.value.span.col_start == 6
        assert "1/0" in info.value.message

    def test_decimal_with_denominator(self):
        """Test that a decimal cannot carry a denominator."""
        for text in ("1.5/2 x <= 1", "x <= 1/2.5"):
            with pytest.raises(ParseError):
                parse_system(text)

    def test_undeclared_variable(self):
        """Test a variable missing from the declaration."""
        with pytest.raises(ValidationError):
            parse_system("vars x\ny <= 1")

    def test_k_coefficients_for_augmented_text(self):
        """Test K-polynomial coefficients in augmented text."""
        system = parse_system("x - (K+1) _w1 = 0\n_w1 != 0", allow_aux=True)
        assert system.constraints[0].coeffs["_w1"] == -(KPoly.k() + 1)

    def test_reserved_prefix_rejected_by_default(self):
        """Test that '_' names need allow_aux."""
        with pytest.raises(ValidationError):
            parse_system("_e <= 1")


class TestRenderSystem:
    """Canonical text."""

    def test_examples_round_trip(self):
        """Test that rendering is a fixed point."""
        text = "2 x1 + 3 x2 - x3 <= 5\nx1 != 0\nx1 >= 2\n"
        once = render_system(parse_system(text))
        assert render_system(parse_system(once)) == once
        assert "-x1 <= -2" in once

    def test_empty_system(self):
        """Test rendering an empty system."""
        text = render_system(parse_system(""))
        assert text.startswith("#")
        assert parse_system(text).constraints == ()

    def test_rational_coefficient(self):
        """Test rendering rational coefficients."""
        text = render_system(parse_system("1/2 x1 + x2 <= 1"))
        assert "1/2 x1 + x2 <= 1" in text

    def test_orientation_is_a_fixed_point(self):
        """Test that equality orientation survives rendering."""
        once = render_system(parse_system("vars x, y\ny - x = 0"))
        assert "x - y = 0" in once
        assert render_system(parse_system(once)) == once

    def test_random_systems_round_trip(self, rng):
        """Test rendering of seeded random systems."""
        for _ in range(100):
            system = random_system(rng, max_eq=1)
            again = parse_system(render_system(system))
            assert again == system

    def test_augmented_round_trip(self):
        """Test rendering of augmented systems."""
        system = augment_nontrivial(parse_system("vars x1, x2\nx1 <= 0\n-x1 <= 0"), ["x1", "x2"])
        text = render_system(system)
        assert "x1 - (K+1) _w1 = 0" in text
        assert parse_system(text, allow_aux=True) == system


class TestAlpText:
    """render_alp rows and the ALP reader."""

    def test_worked_rows(self, worked_example):
        """Test the rendered rows of the worked example."""
        bundle = reduce(worked_example)
        alp = next(a for a in bundle.alps if a.case == CaseDescriptor.of_pair(1, 3, Sign.POS, Sign.POS))
        lines = render_alp(alp).splitlines()
        assert lines[0] == f"# case {alp.index}: PAIR(1,3,POS,POS)"
        assert "(K+2) _y2 - _z2 <= 0" in lines
        assert "1 - K _e <= 0" in lines
        assert "_e - _z1 <= 0" in lines
        assert "_y2 + _y3 - _f1 <= 0" in lines

    def test_alp_round_trip(self, worked_example):
        """Test that ALP text parses back."""
        for alp in reduce(worked_example).alps:
            again = parse_alp(render_alp(alp))
            assert again == alp
            assert all(row.max_degree <= 1 for row in again.rows)

    def test_alp_rows_must_be_le(self):
        """Test that ALP rows must use <=."""
        with pytest.raises(ParseError):
            parse_alp("# case 1: EMPTY\nvars x\nx < 1\n")

    def test_malformed_header(self):
        """Test a malformed case header."""
        with pytest.raises(ParseError):
            parse_alp("# case 1: PAIR(1)\nvars x\nx <= 1\n")
