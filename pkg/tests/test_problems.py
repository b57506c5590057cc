"""Problem DSL: parsing, rendering, validation."""

from fractions import Fraction

import pytest

from gatpbench.problems import (BadArityError, DuplicatePointError, Fixed,
                                Free, Midpoint, ParseError, ProblemSyntaxError,
                                UndefinedPointError, parse_problem,
                                render_problem, validate_problem)

MIDLINE = """\
problem demo
# meta: midline of a triangle
free A
free B
midpoint M A B
fixed O 0 1/2
conjecture collinear A M B
conjecture eqdist O A O B
"""


def test_parse_basic_shape():
    p = parse_problem(MIDLINE)
    assert p.id == "demo"
    assert p.meta == "midline of a triangle"
    assert [type(s) for s in p.steps] == [Free, Free, Midpoint, Fixed]
    assert p.steps[3].x == Fraction(0) and p.steps[3].y == Fraction(1, 2)
    assert len(p.conjectures) == 2


def test_render_parse_round_trip():
    p = parse_problem(MIDLINE)
    text = render_problem(p)
    assert parse_problem(text) == p
    assert render_problem(parse_problem(text)) == text


def test_comments_and_blank_lines_ignored():
    noisy = MIDLINE.replace("free B", "free B   # second vertex\n\n")
    assert parse_problem(noisy).id == "demo"


def test_rational_literals_normalised():
    p = parse_problem("problem r\nfixed A 2/4 -6/3\nfree B\n"
                      "conjecture collinear A A B\n")
    assert p.steps[0].x == Fraction(1, 2)
    assert p.steps[0].y == Fraction(-2)


class TestErrors:
    def check(self, text, exc, line):
        with pytest.raises(exc) as info:
            parse_problem(text)
        assert info.value.line == line
        assert info.value.col >= 1

    def test_missing_header(self):
        self.check("free A\n", ProblemSyntaxError, 1)

    def test_unknown_keyword(self):
        self.check("problem p\nfrree A\nconjecture collinear A A A\n",
                   ProblemSyntaxError, 2)

    def test_undefined_point(self):
        self.check("problem p\nfree A\nmidpoint M A B\n"
                   "conjecture collinear A M B\n", UndefinedPointError, 3)

    def test_duplicate_point(self):
        self.check("problem p\nfree A\nfree A\n"
                   "conjecture collinear A A A\n", DuplicatePointError, 3)

    def test_bad_predicate_arity(self):
        self.check("problem p\nfree A\nfree B\nconjecture collinear A B\n",
                   BadArityError, 4)

    def test_zero_denominator(self):
        self.check("problem p\nfixed A 1/0 0\nconjecture collinear A A A\n",
                   ParseError, 2)

    def test_conjecture_required(self):
        with pytest.raises(ParseError):
            parse_problem("problem p\nfree A\n")

    def test_construction_after_conjecture_rejected(self):
        self.check("problem p\nfree A\nfree B\n"
                   "conjecture collinear A B B\nfree C\n",
                   ProblemSyntaxError, 5)

    def test_inter_same_line_pair_rejected(self):
        self.check("problem p\nfree A\nfree B\ninter P A B B A\n"
                   "conjecture collinear A B P\n", ParseError, 4)

    def test_fresh_point_must_be_fresh(self):
        self.check("problem p\nfree A\nfree B\nmidpoint A A B\n"
                   "conjecture collinear A B B\n", DuplicatePointError, 4)


class TestValidation:
    def test_clean_problem_has_no_warnings(self):
        assert validate_problem(parse_problem(MIDLINE)) == []

    def test_degenerate_step_flagged(self):
        p = parse_problem("problem p\nfree A\non_line P A A\n"
                          "conjecture collinear A P P\n")
        kinds = {w.kind for w in validate_problem(p)}
        assert "degenerate-step" in kinds

    def test_degenerate_predicate_flagged(self):
        p = parse_problem("problem p\nfree A\nfree B\n"
                          "conjecture collinear A A B\n")
        kinds = {w.kind for w in validate_problem(p)}
        assert "degenerate-predicate" in kinds

    def test_unused_point_flagged(self):
        p = parse_problem("problem p\nfree A\nfree B\nfree C\n"
                          "conjecture eqdist A B A B\n")
        warnings = validate_problem(p)
        assert any(w.kind == "unused-point" and w.subject == "C"
                   for w in warnings)

    def test_warnings_are_deterministic(self):
        text = ("problem p\nfree A\nfree B\nfree Z\n"
                "conjecture parallel A B A B\n")
        p = parse_problem(text)
        assert validate_problem(p) == validate_problem(parse_problem(text))
